#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "bnpid/dataset_io.hpp"
#include "cli/cli.hpp"

using namespace bnpid;
using namespace bnpid::cli;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> args(std::initializer_list<std::string> a) { return a; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("bnpid_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

const char* kCsvFiles[] = {"coverage.csv", "intervals.csv", "gamma_hist.csv"};

}  // namespace

TEST(ParseConfig, ScenarioDefaults) {
    const RunConfig c = parse_config(args({"run", "--scenario", "interval_censored", "--seed", "7"}));
    EXPECT_EQ(c.scenario, ScenarioId::IntervalCensored);
    EXPECT_EQ(c.n, 1000u);
    EXPECT_EQ(c.seed, 7u);
    EXPECT_EQ(c.n_draws, 1000u);
    EXPECT_FALSE(c.grid);
    const auto sc = default_config(c.scenario);
    EXPECT_EQ(sc.processes[0].n0, 10.0);
    EXPECT_EQ(sc.processes[1].n0, 20.0);
}

TEST(ParseConfig, UnknownScenarioNamesToken) {
    try {
        parse_config(args({"run", "--scenario", "nosuch"}));
        FAIL();
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("nosuch"), std::string::npos);
    }
}

TEST(ParseConfig, ToyTakesNoData) {
    try {
        parse_config(args({"run", "--scenario", "toy_analytic", "--n", "50"}));
        FAIL();
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("takes no data"), std::string::npos);
    }
}

TEST(ParseConfig, MalformedValuesNameToken) {
    const std::vector<std::vector<std::string>> bad = {
        {"run", "--scenario", "binary_missing", "--n", "12x"},
        {"run", "--scenario", "binary_missing", "--n", "0"},
        {"run", "--scenario", "binary_missing", "--n-draws", "0"},
        {"run", "--scenario", "binary_missing", "--alpha", "1.5"},
        {"run", "--scenario", "binary_missing", "--alpha", "0"},
        {"run", "--scenario", "binary_missing", "--grid", "0:1"},
        {"run", "--scenario", "binary_missing", "--prior-family", "VII"},
        {"run", "--scenario", "binary_missing", "--bogus", "1"},
        {"run", "--n", "5"},
    };
    for (const auto& a : bad) EXPECT_THROW(parse_config(a), UsageError) << a.back();
}

TEST(ParseConfig, FlagsOverrideConfigFile) {
    const fs::path dir = scratch("config");
    fs::create_directories(dir);
    const fs::path file = dir / "run.cfg";
    std::ofstream(file) << "# comment\nscenario = errors_in_variables\nn = 200\nn_draws=50\nseed=9\nprior-family=IV\n"
                           "grid = 0:2:0.1\nworkers = 3\n";
    const RunConfig c = parse_config(args({"run", "--config", file.string(), "--seed", "11"}));
    EXPECT_EQ(c.scenario, ScenarioId::ErrorsInVariables);
    EXPECT_EQ(c.n, 200u);
    EXPECT_EQ(c.n_draws, 50u);
    EXPECT_EQ(c.seed, 11u);
    EXPECT_EQ(c.prior_family, PriorFamily::ScaledBeta);
    ASSERT_TRUE(c.grid);
    EXPECT_EQ(c.grid->step, 0.1);
    EXPECT_EQ(c.workers, 3);

    std::ofstream(file) << "scenario = errors_in_variables\ncolour = red\n";
    EXPECT_THROW(parse_config(args({"run", "--config", file.string()})), UsageError);
}

TEST(RunScenario, ToyCoverageMatchesClosedForm) {
    RunConfig c = parse_config(args({"run", "--scenario", "toy_analytic", "--n-draws", "10000", "--grid", "0:2:0.05"}));
    c.out_dir = scratch("toy");
    const RunReport r = run_scenario(c);
    const auto rows = read_csv(r.run_dir / "coverage.csv");
    ASSERT_EQ(rows[0], (std::vector<std::string>{"gamma", "prior_coverage", "posterior_coverage"}));
    ASSERT_EQ(rows.size(), 42u);
    double worst = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        worst = std::max(worst, std::fabs(std::stod(rows[i][1]) - analytic_coverage_toy(std::stod(rows[i][0]))));
        EXPECT_EQ(rows[i][2], "");
    }
    EXPECT_LE(worst, 0.02);
    EXPECT_FALSE(r.posterior);
    EXPECT_EQ(r.estimate_source, DrawSource::Prior);
}

TEST(RunScenario, RepeatAndWorkerCountGiveIdenticalFiles) {
    RunConfig c = parse_config(args({"run", "--scenario", "interval_censored", "--prior-family", "II", "--n", "300",
                                     "--n-draws", "300", "--emit-data"}));
    std::map<std::string, std::string> first;
    for (int workers : {1, 1, 8}) {
        c.workers = workers;
        c.out_dir = scratch("det");
        const RunReport r = run_scenario(c);
        for (const char* f : {"coverage.csv", "intervals.csv", "gamma_hist.csv", "data.csv"}) {
            const std::string text = slurp(r.run_dir / f);
            if (first.contains(f)) {
                EXPECT_EQ(text, first[f]) << f << " workers=" << workers;
            } else {
                first[f] = text;
            }
        }
    }
}

TEST(RunScenario, ManifestAndSummaryAreConsistent) {
    RunConfig c = parse_config(args({"run", "--scenario", "binary_missing", "--prior-family", "III", "--n-draws", "400"}));
    c.out_dir = scratch("manifest");
    const RunReport r = run_scenario(c);
    EXPECT_EQ(r.run_dir, c.out_dir / "binary_missing_seed1");
    ASSERT_EQ(r.manifest.size(), 3u);
    for (const auto& m : r.manifest) {
        EXPECT_EQ(m.sha256, sha256_file(r.run_dir / m.file));
        EXPECT_EQ(m.bytes, fs::file_size(r.run_dir / m.file));
    }
    const auto j = nlohmann::json::parse(slurp(r.run_dir / "summary.json"));
    for (const char* key : {"true_set", "point_estimate", "credible_region", "skip_counts"}) EXPECT_TRUE(j.contains(key));
    EXPECT_EQ(j["true_set"][0].get<double>(), 0.4);

    // Skip counts agree with intervals.csv rows per source.
    const auto rows = read_csv(r.run_dir / "intervals.csv");
    std::map<std::string, std::size_t> kept;
    for (std::size_t i = 1; i < rows.size(); ++i) ++kept[rows[i][1]];
    for (const char* src : {"prior", "posterior"}) {
        const auto& sc = j["skip_counts"][src];
        EXPECT_EQ(sc["kept"].get<std::size_t>(), kept[src]);
        EXPECT_EQ(sc["kept"].get<std::size_t>() + sc["skipped"].get<std::size_t>(), 400u);
    }

    // Printed values parse back to the report within 12 significant digits.
    const auto pe = j["point_estimate"];
    EXPECT_EQ(format_number(pe[0].get<double>()), format_number(r.point_estimate.lo()));
    EXPECT_EQ(format_number(pe[1].get<double>()), format_number(r.point_estimate.hi()));
    EXPECT_NEAR(pe[1].get<double>(), r.point_estimate.hi(), 1e-11);
}

TEST(RunScenario, CsvRoundTripsToReportedEstimates) {
    RunConfig c = parse_config(args({"run", "--scenario", "errors_in_variables", "--n", "500", "--n-draws", "300"}));
    c.out_dir = scratch("roundtrip");
    const RunReport r = run_scenario(c);
    const auto rows = read_csv(r.run_dir / "intervals.csv");
    ASSERT_EQ(rows[0], (std::vector<std::string>{"draw_index", "source", "lo", "hi"}));
    SetDrawBatch post(DrawSource::Posterior, "errors_in_variables");
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i][1] == "posterior") post.add(IntervalSet(std::stod(rows[i][2]), std::stod(rows[i][3])));
    const IntervalSet pe = point_estimate_set(post);
    EXPECT_NEAR(pe.lo(), r.point_estimate.lo(), 1e-10);
    EXPECT_NEAR(pe.hi(), r.point_estimate.hi(), 1e-10);
    EXPECT_FALSE(fs::exists(r.run_dir / "gamma_hist.csv"));
}

TEST(RunScenario, NumericErrorsCarryScenarioContext) {
    RunConfig c;
    c.scenario = ScenarioId::BinaryMissing;
    c.n = 50;
    c.n_draws = 10;
    c.alpha = 0.0;  // bypasses parse-time validation
    c.out_dir = scratch("err");
    try {
        run_scenario(c);
        FAIL();
    } catch (const RunError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("binary_missing: ", 0), 0u) << e.what();
    }
}

TEST(Oracle, ToyAndBinary) {
    const auto toy = run_oracle(args({"oracle", "--scenario", "toy_analytic", "--gamma", "0.5", "--probe", "0.2,0.3"}));
    EXPECT_EQ(toy, (std::vector<std::string>{"gamma=0.5 coverage=0.5", "probe=[0.2,0.3] capacity=0.3"}));
    const auto bin = run_oracle(
        args({"oracle", "--scenario", "binary_missing", "--dirichlet", "2,3,1", "--counts", "10,5,5", "--gamma", "0"}));
    EXPECT_EQ(bin[0], "posterior_alpha=12,8,6");
    EXPECT_EQ(bin.back(), "gamma=0 posterior_coverage=0");
    EXPECT_THROW(run_oracle(args({"oracle", "--scenario", "interval_censored", "--gamma", "1"})), UsageError);
    EXPECT_THROW(run_oracle(args({"oracle", "--scenario", "toy_analytic", "--probe", "1"})), UsageError);
}

TEST(ListScenarios, OneLinePerScenario) {
    const auto lines = list_scenarios();
    EXPECT_EQ(lines.size(), all_scenarios().size());
    EXPECT_EQ(lines[1].rfind("interval_censored", 0), 0u);
}
