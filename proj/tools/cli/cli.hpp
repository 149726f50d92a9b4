#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bnpid/conditional_priors.hpp"
#include "bnpid/random_set.hpp"
#include "bnpid/scenarios.hpp"

namespace bnpid::cli {

/// Bad command line or config file; the message names the offending token.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure while running a scenario, prefixed with the scenario id.
class RunError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    double step = 0.05;
};

struct RunConfig {
    ScenarioId scenario = ScenarioId::ToyAnalytic;
    std::size_t n = 0;
    std::size_t n_draws = 1000;
    std::uint64_t seed = 1;
    std::optional<GridSpec> grid;
    std::optional<PriorFamily> prior_family;
    double alpha = 0.95;
    std::filesystem::path out_dir = "runs";
    int workers = 1;
    std::size_t hist_bins = 50;
    bool emit_data = false;
};

/// Parses `run [flags]`. Values come from scenario defaults, then an
/// optional `--config FILE` of key=value lines, then explicit flags.
RunConfig parse_config(const std::vector<std::string>& args);

struct ManifestEntry {
    std::string file;
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct DrawAccounting {
    std::size_t requested = 0;
    std::size_t kept = 0;
    std::size_t skipped = 0;
};

struct RunReport {
    RunConfig config;
    std::filesystem::path run_dir;
    std::optional<IntervalSet> true_set;
    IntervalSet point_estimate{0.0, 0.0};
    DrawSource estimate_source = DrawSource::Posterior;
    CredibleRegion credible{IntervalSet(0.0, 0.0), 0.0};
    DrawAccounting prior;
    std::optional<DrawAccounting> posterior;
    bool credible_contains_point_estimate = true;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
    double wall_seconds = 0.0;
    std::vector<ManifestEntry> manifest;
};

/// Runs one configuration and writes coverage.csv, intervals.csv,
/// gamma_hist.csv (with a prior family) and summary.json into
/// out_dir/<scenario>_seed<seed>/.
RunReport run_scenario(const RunConfig& cfg);

/// Directory a run writes to.
std::filesystem::path run_directory(const RunConfig& cfg);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// One line per scenario with its defaults.
std::vector<std::string> list_scenarios();

/// Parses `oracle [flags]` and returns the lines to print.
std::vector<std::string> run_oracle(const std::vector<std::string>& args);

}  // namespace bnpid::cli
