#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "bnpid/dataset_io.hpp"
#include "bnpid/errors.hpp"
#include "cli/cli.hpp"

namespace bnpid::cli {
namespace {

// Seed families for the independent parts of a run.
constexpr std::uint64_t kDataTag = 1;
constexpr std::uint64_t kPriorTag = 2;
constexpr std::uint64_t kPosteriorTag = 3;

using Json = nlohmann::ordered_json;

double rounded(double x) { return std::stod(format_number(x)); }

Json interval_json(const IntervalSet& s) { return Json::array({rounded(s.lo()), rounded(s.hi())}); }

struct SourceDraws {
    DrawSource source;
    std::vector<std::size_t> indices;
    std::vector<IntervalSet> intervals;
    std::vector<double> gammas;
    std::size_t skipped = 0;
    RejectionStats rejection_stats;

    SetDrawBatch batch(ScenarioId id) const { return SetDrawBatch(source, std::string(to_string(id)), intervals, skipped); }
};

SourceDraws collect(const Scenario& scenario, const RunConfig& cfg, DrawSource mode, const Dataset* data,
                    std::uint64_t seed) {
    SourceDraws out{mode, {}, {}, {}, 0, {}};
    if (cfg.prior_family) {
        const auto spec = default_prior_spec(cfg.scenario, *cfg.prior_family);
        auto m = marginal_sample(scenario, spec, mode, cfg.n_draws, data, seed, cfg.workers);
        out.indices = std::move(m.draw_indices);
        out.intervals = std::move(m.intervals);
        out.gammas = std::move(m.gammas);
        out.skipped = m.skipped;
        out.rejection_stats = std::move(m.rejection_stats);
        return out;
    }
    const auto draws = draw_realizations(scenario, mode, data, cfg.n_draws, seed, cfg.workers);
    for (std::size_t i = 0; i < draws.size(); ++i) {
        if (!draws[i]) {
            ++out.skipped;
            continue;
        }
        out.indices.push_back(i);
        out.intervals.push_back(draws[i]->interval);
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RunError("cannot open \"" + path.string() + "\" for writing");
    out << text;
    out.close();
    if (!out) throw RunError("failed writing \"" + path.string() + "\"");
}

std::string coverage_csv(const std::vector<double>& grid, const CoverageCurve& prior,
                         const std::optional<CoverageCurve>& posterior) {
    std::ostringstream os;
    os << "gamma,prior_coverage,posterior_coverage\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << format_number(grid[i]) << ',' << format_number(prior.values[i]) << ',';
        if (posterior) os << format_number(posterior->values[i]);
        os << '\n';
    }
    return os.str();
}

std::string intervals_csv(const std::vector<const SourceDraws*>& sources) {
    std::ostringstream os;
    os << "draw_index,source,lo,hi\n";
    for (const auto* s : sources) {
        for (std::size_t k = 0; k < s->intervals.size(); ++k) {
            os << s->indices[k] << ',' << to_string(s->source) << ',' << format_number(s->intervals[k].lo()) << ','
               << format_number(s->intervals[k].hi()) << '\n';
        }
    }
    return os.str();
}

std::string histogram_csv(const Histogram& prior, const std::optional<Histogram>& posterior) {
    std::ostringstream os;
    os << "bin_lo,bin_hi,prior_count,posterior_count\n";
    for (std::size_t k = 0; k < prior.counts.size(); ++k) {
        os << format_number(prior.bin_lo(k)) << ',' << format_number(prior.bin_hi(k)) << ',' << prior.counts[k] << ',';
        if (posterior) os << posterior->counts[k];
        os << '\n';
    }
    return os.str();
}

Json accounting_json(const DrawAccounting& a) {
    return Json{{"requested", a.requested}, {"kept", a.kept}, {"skipped", a.skipped}};
}

Json summary_json(const RunReport& r) {
    const auto& c = r.config;
    Json config{{"scenario", std::string(to_string(c.scenario))},
                {"n", c.n},
                {"n_draws", c.n_draws},
                {"seed", c.seed},
                {"grid", nullptr},
                {"prior_family", nullptr},
                {"alpha", rounded(c.alpha)},
                {"out_dir", c.out_dir.string()},
                {"workers", c.workers},
                {"hist_bins", c.hist_bins},
                {"emit_data", c.emit_data}};
    if (c.grid) config["grid"] = Json{{"lo", rounded(c.grid->lo)}, {"hi", rounded(c.grid->hi)}, {"step", rounded(c.grid->step)}};
    if (c.prior_family) config["prior_family"] = std::string(to_string(*c.prior_family));

    Json skips{{"prior", accounting_json(r.prior)}, {"posterior", nullptr}};
    if (r.posterior) skips["posterior"] = accounting_json(*r.posterior);

    Json manifest = Json::array();
    for (const auto& m : r.manifest) manifest.push_back(Json{{"file", m.file}, {"sha256", m.sha256}, {"bytes", m.bytes}});

    return Json{{"config", config},
                {"true_set", r.true_set ? interval_json(*r.true_set) : Json(nullptr)},
                {"point_estimate", interval_json(r.point_estimate)},
                {"estimate_source", std::string(to_string(r.estimate_source))},
                {"credible_region",
                 Json{{"alpha", rounded(c.alpha)},
                      {"region", interval_json(r.credible.region)},
                      {"containment", rounded(r.credible.containment)}}},
                {"credible_contains_point_estimate", r.credible_contains_point_estimate},
                {"skip_counts", skips},
                {"warnings", r.warnings},
                {"notes", r.notes},
                {"wall_time_seconds", rounded(r.wall_seconds)},
                {"manifest", manifest}};
}

RunReport run_unchecked(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    ScenarioConfig sc = default_config(cfg.scenario);
    if (scenario_has_data(cfg.scenario)) sc.n = cfg.n;
    if (cfg.grid) sc.grid = make_grid(cfg.grid->lo, cfg.grid->hi, cfg.grid->step);
    const Scenario scenario(sc);

    RunReport report;
    report.config = cfg;
    report.run_dir = run_directory(cfg);
    report.true_set = sc.true_set;
    report.notes = sc.notes;

    std::optional<Dataset> data;
    if (scenario_has_data(cfg.scenario)) {
        RngStream data_rng(derive_seed(cfg.seed, kDataTag), 0);
        data = scenario.generate_data(data_rng, cfg.n);
    }

    const SourceDraws prior = collect(scenario, cfg, DrawSource::Prior, nullptr, derive_seed(cfg.seed, kPriorTag));
    std::optional<SourceDraws> posterior;
    if (data) posterior = collect(scenario, cfg, DrawSource::Posterior, &*data, derive_seed(cfg.seed, kPosteriorTag));

    const SetDrawBatch prior_batch = prior.batch(cfg.scenario);
    if (prior_batch.empty()) throw RunError("every prior draw was skipped");
    report.prior = {cfg.n_draws, prior_batch.size(), prior_batch.skipped()};
    if (auto w = prior_batch.warning()) report.warnings.push_back("prior: " + *w);
    const CoverageCurve prior_cov = estimate_coverage(prior_batch, sc.grid);

    std::optional<CoverageCurve> posterior_cov;
    const SetDrawBatch* estimate_batch = &prior_batch;
    std::optional<SetDrawBatch> posterior_batch;
    if (posterior) {
        posterior_batch = posterior->batch(cfg.scenario);
        if (posterior_batch->empty()) throw RunError("every posterior draw was skipped");
        report.posterior = DrawAccounting{cfg.n_draws, posterior_batch->size(), posterior_batch->skipped()};
        if (auto w = posterior_batch->warning()) report.warnings.push_back("posterior: " + *w);
        posterior_cov = estimate_coverage(*posterior_batch, sc.grid);
        estimate_batch = &*posterior_batch;
    } else {
        report.notes.push_back("scenario has no data; estimates use prior draws");
    }
    report.estimate_source = estimate_batch->source();
    report.point_estimate = point_estimate_set(*estimate_batch);
    report.credible = credible_region(*estimate_batch, cfg.alpha);
    report.credible_contains_point_estimate = report.credible.region.contains(report.point_estimate);
    if (!report.credible_contains_point_estimate) {
        report.warnings.push_back("credible region does not contain the point estimate");
    }

    // Single writer phase.
    std::filesystem::create_directories(report.run_dir);
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("coverage.csv", coverage_csv(sc.grid, prior_cov, posterior_cov));
    std::vector<const SourceDraws*> sources{&prior};
    if (posterior) sources.push_back(&*posterior);
    files.emplace_back("intervals.csv", intervals_csv(sources));
    if (cfg.prior_family) {
        const double lo = sc.grid.front();
        const double hi = sc.grid.back();
        const Histogram ph = histogram(prior.gammas, cfg.hist_bins, lo, hi);
        std::optional<Histogram> qh;
        if (posterior) qh = histogram(posterior->gammas, cfg.hist_bins, lo, hi);
        const std::size_t outside = ph.underflow + ph.overflow + (qh ? qh->underflow + qh->overflow : 0);
        if (outside > 0) {
            report.notes.push_back(std::to_string(outside) + " gamma draws fall outside the histogram range");
        }
        files.emplace_back("gamma_hist.csv", histogram_csv(ph, qh));
        long worst = prior.rejection_stats.max_attempts;
        if (posterior) worst = std::max(worst, posterior->rejection_stats.max_attempts);
        if (*cfg.prior_family == PriorFamily::RejectedNormal) {
            report.notes.push_back("most rejection attempts for one gamma draw: " + std::to_string(worst));
        }
    }
    if (cfg.emit_data && data) {
        std::ostringstream os;
        write_dataset_csv(os, *data);
        files.emplace_back("data.csv", os.str());
    }
    for (const auto& [name, text] : files) {
        const auto path = report.run_dir / name;
        write_text(path, text);
        report.manifest.push_back({name, sha256_file(path), std::filesystem::file_size(path)});
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_text(report.run_dir / "summary.json", summary_json(report).dump(2) + "\n");
    return report;
}

}  // namespace

std::filesystem::path run_directory(const RunConfig& cfg) {
    return cfg.out_dir / (std::string(to_string(cfg.scenario)) + "_seed" + std::to_string(cfg.seed));
}

RunReport run_scenario(const RunConfig& cfg) {
    const std::string id(to_string(cfg.scenario));
    try {
        return run_unchecked(cfg);
    } catch (const RunError& e) {
        throw RunError(id + ": " + e.what());
    } catch (const std::exception& e) {
        throw RunError(id + ": " + e.what());
    }
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RunError("cannot read \"" + path.string() + "\"");
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw RunError("sha256 init failed");
    char buf[1 << 15];
    while (in) {
        in.read(buf, sizeof buf);
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::vector<std::string> list_scenarios() {
    std::vector<std::string> lines;
    for (ScenarioId id : all_scenarios()) {
        const ScenarioConfig c = default_config(id);
        std::string line(to_string(id));
        line += "  n=" + std::to_string(c.n);
        line += "  grid=[" + format_number(c.grid.front()) + "," + format_number(c.grid.back()) + "]";
        line += c.true_set ? "  true_set=[" + format_number(c.true_set->lo()) + "," + format_number(c.true_set->hi()) + "]"
                           : "  true_set=none";
        lines.push_back(line);
    }
    return lines;
}

}  // namespace bnpid::cli
