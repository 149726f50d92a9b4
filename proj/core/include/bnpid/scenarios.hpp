#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bnpid/dirichlet_process.hpp"
#include "bnpid/random_set.hpp"
#include "bnpid/rng.hpp"
#include "bnpid/sym_matrix.hpp"

namespace bnpid {

enum class ScenarioId { ToyAnalytic, IntervalCensored, ErrorsInVariables, IntervalRegression, BinaryMissing };

std::string_view to_string(ScenarioId id) noexcept;
/// Throws ParameterError naming the token when it is not a scenario id.
ScenarioId parse_scenario_id(std::string_view name);
const std::vector<ScenarioId>& all_scenarios();
bool scenario_has_data(ScenarioId id) noexcept;

/// Observed rows, row-major with named columns.
struct Dataset {
    std::vector<std::string> columns;
    std::vector<double> values;

    std::size_t cols() const noexcept { return columns.size(); }
    std::size_t rows() const noexcept { return columns.empty() ? 0 : values.size() / columns.size(); }
    double at(std::size_t row, std::size_t col) const { return values[row * columns.size() + col]; }
    std::vector<double> column(std::size_t col) const;
};

/// Normal base measure F0 and concentration of one Dirichlet process.
struct DirichletHyper {
    double n0 = 1.0;
    std::vector<double> base_mean;
    SymMatrix base_cov = SymMatrix(1);
};

struct ScenarioConfig {
    ScenarioId id = ScenarioId::ToyAnalytic;
    std::size_t n = 0;
    /// One entry per Dirichlet process (two for interval_censored).
    std::vector<DirichletHyper> processes;
    /// Dirichlet parameter over (p11, p01, p~.0) for binary_missing.
    std::array<double, 3> dirichlet_alpha{2.0, 3.0, 1.0};
    TruncationPolicy truncation = ToleranceTruncation{};
    std::vector<double> grid;
    std::optional<IntervalSet> true_set;
    /// Notes from building the config, e.g. covariance repairs.
    std::vector<std::string> notes;
};

/// The published configuration for each scenario.
ScenarioConfig default_config(ScenarioId id);

/// The 4x4 base covariance stated for the interval-regression example.
/// It has negative eigenvalues; default_config repairs it.
SymMatrix interval_regression_stated_covariance();

/// Interval draw together with the moments that the conditional priors on
/// gamma are anchored to: gamma0 = (anchor_lo + anchor_hi) / (2 c0).
struct SetRealization {
    IntervalSet interval;
    double anchor_lo = 0.0;
    double anchor_hi = 0.0;
    double c0 = 1.0;
};

// Identified-set functionals on drawn measures; nullopt marks a skip.
std::optional<SetRealization> interval_censored_bounds(const DiscreteMeasure& f1, const DiscreteMeasure& f2);
std::optional<SetRealization> errors_in_variables_bounds(const DiscreteMeasure& fyz);
std::optional<SetRealization> interval_regression_bounds(const DiscreteMeasure& f);
SetRealization binary_bounds(double p11, double p_missing);

/// A scenario with its base samplers and truncation levels resolved once.
class Scenario {
public:
    explicit Scenario(ScenarioConfig config);

    const ScenarioConfig& config() const noexcept { return config_; }
    ScenarioId id() const noexcept { return config_.id; }
    const std::vector<DirichletProcessSpec>& processes() const noexcept { return specs_; }

    Dataset generate_data(RngStream& rng) const;
    Dataset generate_data(RngStream& rng, std::size_t n) const;

    /// One identified-set draw, or nullopt when a scenario guard rejects it.
    /// Posterior mode requires `data`.
    std::optional<SetRealization> draw_set(DrawSource mode, const Dataset* data, RngStream& rng) const;

private:
    ScenarioConfig config_;
    std::vector<DirichletProcessSpec> specs_;
};

Dataset generate_data(const ScenarioConfig& cfg, RngStream& rng);
std::optional<SetRealization> draw_set(const ScenarioConfig& cfg, DrawSource mode, const Dataset* data,
                                       RngStream& rng);

/// Draws indexed 0..n_draws-1, draw i on substream(seed, i). Skipped draws
/// stay as nullopt at their index.
std::vector<std::optional<SetRealization>> draw_realizations(const Scenario& scenario, DrawSource mode,
                                                             const Dataset* data, std::size_t n_draws,
                                                             std::uint64_t seed, int workers = 1);

SetDrawBatch to_batch(const Scenario& scenario, DrawSource mode,
                      const std::vector<std::optional<SetRealization>>& draws);

SetDrawBatch draw_set_batch(const Scenario& scenario, DrawSource mode, const Dataset* data, std::size_t n_draws,
                            std::uint64_t seed, int workers = 1);

// Closed forms.
double analytic_coverage_toy(double gamma);
double analytic_capacity_toy(const IntervalSet& probe);

struct BinaryCounts {
    std::size_t n1 = 0;      ///< observed with y = 1
    std::size_t n0_obs = 0;  ///< observed with y = 0
    std::size_t m = 0;       ///< missing
    std::size_t total() const noexcept { return n1 + n0_obs + m; }
    bool operator==(const BinaryCounts&) const = default;
};

/// Tallies (y*d, d) rows. Throws ParameterError on a row that is not one of
/// (1,1), (0,1), (0,0).
BinaryCounts count_binary(const Dataset& data);
std::array<double, 3> binary_posterior_params(const std::array<double, 3>& alpha, const BinaryCounts& counts);
/// P(p11 <= gamma <= p11 + p~.0) under Dir(alpha).
double analytic_coverage_binary(double gamma, const std::array<double, 3>& alpha);
/// Posterior means of p11 and p11 + p~.0.
IntervalSet binary_point_estimate(const std::array<double, 3>& alpha, const BinaryCounts& counts);

}  // namespace bnpid
