#include <CLI11.hpp>

#include <cmath>
#include <sstream>

#include "bnpid/dataset_io.hpp"
#include "cli/cli.hpp"

namespace bnpid::cli {
namespace {

std::vector<double> split_numbers(const std::string& flag, const std::string& text, std::size_t expected) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        try {
            out.push_back(std::stod(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw UsageError(flag + ": malformed number \"" + item + "\"");
    }
    if (out.size() != expected) {
        throw UsageError(flag + ": expected " + std::to_string(expected) + " comma-separated values, got \"" + text + "\"");
    }
    return out;
}

}  // namespace

std::vector<std::string> run_oracle(const std::vector<std::string>& args) {
    std::vector<std::string> rest(args.begin(), args.end());
    if (!rest.empty() && rest.front() == "oracle") rest.erase(rest.begin());

    CLI::App app{"bnpid oracle"};
    std::string scenario_token;
    std::vector<double> gammas;
    std::vector<std::string> probes;
    std::string dirichlet;
    std::string counts;
    app.add_option("--scenario", scenario_token)->required();
    app.add_option("--gamma", gammas);
    app.add_option("--probe", probes);
    app.add_option("--dirichlet", dirichlet);
    app.add_option("--counts", counts);
    try {
        std::vector<std::string> reversed(rest.rbegin(), rest.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    ScenarioId id;
    try {
        id = parse_scenario_id(scenario_token);
    } catch (const std::exception&) {
        throw UsageError("unknown scenario \"" + scenario_token + "\"");
    }

    std::vector<std::string> lines;
    if (id == ScenarioId::ToyAnalytic) {
        if (!dirichlet.empty() || !counts.empty()) throw UsageError("--dirichlet/--counts apply to binary_missing only");
        for (double g : gammas) lines.push_back("gamma=" + format_number(g) + " coverage=" + format_number(analytic_coverage_toy(g)));
        for (const auto& p : probes) {
            const auto v = split_numbers("--probe", p, 2);
            if (v[0] > v[1]) throw UsageError("--probe: lo exceeds hi in \"" + p + "\"");
            lines.push_back("probe=[" + format_number(v[0]) + "," + format_number(v[1]) +
                            "] capacity=" + format_number(analytic_capacity_toy(IntervalSet(v[0], v[1]))));
        }
    } else if (id == ScenarioId::BinaryMissing) {
        if (!probes.empty()) throw UsageError("--probe applies to toy_analytic only");
        std::array<double, 3> alpha = default_config(id).dirichlet_alpha;
        if (!dirichlet.empty()) {
            const auto v = split_numbers("--dirichlet", dirichlet, 3);
            alpha = {v[0], v[1], v[2]};
        }
        std::string label = "prior";
        if (!counts.empty()) {
            const auto v = split_numbers("--counts", counts, 3);
            for (double x : v) {
                if (x < 0 || x != std::floor(x)) throw UsageError("--counts: expected non-negative integers, got \"" + counts + "\"");
            }
            const BinaryCounts c{static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]), static_cast<std::size_t>(v[2])};
            const auto post = binary_posterior_params(alpha, c);
            const auto pe = binary_point_estimate(alpha, c);
            lines.push_back("posterior_alpha=" + format_number(post[0]) + "," + format_number(post[1]) + "," +
                            format_number(post[2]));
            lines.push_back("point_estimate=[" + format_number(pe.lo()) + "," + format_number(pe.hi()) + "]");
            alpha = post;
            label = "posterior";
        }
        for (double g : gammas) {
            if (g < 0.0 || g > 1.0) throw UsageError("--gamma: binary coverage needs gamma in [0, 1], got " + format_number(g));
            lines.push_back("gamma=" + format_number(g) + " " + label +
                            "_coverage=" + format_number(analytic_coverage_binary(g, alpha)));
        }
    } else {
        throw UsageError("no closed-form oracle for scenario \"" + scenario_token + "\"");
    }
    if (lines.empty()) throw UsageError("oracle: nothing to evaluate; pass --gamma, --probe or --counts");
    return lines;
}

}  // namespace bnpid::cli
