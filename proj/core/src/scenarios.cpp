#include "bnpid/scenarios.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "bnpid/distributions.hpp"
#include "bnpid/errors.hpp"
#include "bnpid/parallel.hpp"
#include "bnpid/special_functions.hpp"

namespace bnpid {
namespace {

// Data-generating constants. N(a, b) reads as mean a, variance b.
constexpr double kCensoredMean1 = 0.0;
constexpr double kCensoredMean2 = 5.0;
constexpr double kCensoredVar = 0.1;
constexpr double kEivSlope = 1.0;
constexpr double kRegressionSlope1 = 2.0;
constexpr double kRegressionSlope2 = 6.0;
constexpr double kRegressionNoiseVar = 0.1;
constexpr double kBinaryPy = 0.8;
constexpr double kBinaryPd = 0.5;

DirichletHyper normal_process(double n0, std::vector<double> mean, SymMatrix cov) {
    return DirichletHyper{n0, std::move(mean), std::move(cov)};
}

DirichletProcessSpec make_spec(const DirichletHyper& hyper, const TruncationPolicy& truncation) {
    auto normal = std::make_shared<const MvNormal>(hyper.base_mean, hyper.base_cov);
    DirichletProcessSpec spec;
    spec.n0 = hyper.n0;
    spec.dim = hyper.base_mean.size();
    spec.base_sampler = [normal](RngStream& rng, std::span<double> out) { normal->sample(rng, out); };
    spec.truncation = FixedTruncation{resolve_truncation(truncation, hyper.n0)};
    return spec;
}

void require_data(const Dataset* data, ScenarioId id, std::size_t cols) {
    if (data == nullptr || data->rows() == 0) {
        throw ParameterError("scenario '" + std::string(to_string(id)) + "': posterior draws require a dataset");
    }
    if (data->cols() != cols) {
        throw ParameterError("scenario '" + std::string(to_string(id)) + "': dataset has " +
                             std::to_string(data->cols()) + " columns, expected " + std::to_string(cols));
    }
}

DiscreteMeasure draw_measure(const DirichletProcessSpec& spec, DrawSource mode, std::span<const double> data,
                             RngStream& rng) {
    return mode == DrawSource::Prior ? draw_prior(spec, rng) : draw_posterior(spec, data, rng);
}

}  // namespace

std::string_view to_string(ScenarioId id) noexcept {
    switch (id) {
        case ScenarioId::ToyAnalytic: return "toy_analytic";
        case ScenarioId::IntervalCensored: return "interval_censored";
        case ScenarioId::ErrorsInVariables: return "errors_in_variables";
        case ScenarioId::IntervalRegression: return "interval_regression";
        case ScenarioId::BinaryMissing: return "binary_missing";
    }
    return "unknown";
}

ScenarioId parse_scenario_id(std::string_view name) {
    for (ScenarioId id : all_scenarios()) {
        if (to_string(id) == name) return id;
    }
    throw ParameterError("unknown scenario \"" + std::string(name) + "\"");
}

const std::vector<ScenarioId>& all_scenarios() {
    static const std::vector<ScenarioId> ids = {ScenarioId::ToyAnalytic, ScenarioId::IntervalCensored,
                                                ScenarioId::ErrorsInVariables, ScenarioId::IntervalRegression,
                                                ScenarioId::BinaryMissing};
    return ids;
}

bool scenario_has_data(ScenarioId id) noexcept { return id != ScenarioId::ToyAnalytic; }

std::vector<double> Dataset::column(std::size_t col) const {
    std::vector<double> out;
    out.reserve(rows());
    for (std::size_t r = 0; r < rows(); ++r) out.push_back(at(r, col));
    return out;
}

SymMatrix interval_regression_stated_covariance() {
    return SymMatrix{{0.1, 0.0, 0.2, 1.5},
                     {0.0, 0.1, 0.2, 3.0},
                     {0.2, 0.2, 0.1, 0.5},
                     {1.5, 3.0, 0.5, 0.1}};
}

ScenarioConfig default_config(ScenarioId id) {
    ScenarioConfig cfg;
    cfg.id = id;
    switch (id) {
        case ScenarioId::ToyAnalytic:
            cfg.n = 0;
            cfg.grid = make_grid(0.0, 2.5, 0.05);
            break;
        case ScenarioId::IntervalCensored:
            cfg.n = 1000;
            cfg.processes = {normal_process(10.0, {0.0}, SymMatrix{{1.0}}),
                             normal_process(20.0, {10.0}, SymMatrix{{1.0}})};
            cfg.grid = make_grid(-3.0, 12.0, 0.05);
            cfg.true_set = IntervalSet(0.0, 5.0);
            break;
        case ScenarioId::ErrorsInVariables:
            cfg.n = 1000;
            cfg.processes = {normal_process(20.0, {0.0, 0.0}, SymMatrix{{2.0, 0.9}, {0.9, 2.0}})};
            cfg.grid = make_grid(0.0, 3.0, 0.05);
            cfg.true_set = IntervalSet(0.5, 2.0);
            break;
        case ScenarioId::IntervalRegression: {
            cfg.n = 1000;
            const PsdRepairResult repaired = psd_repair(interval_regression_stated_covariance());
            if (repaired.clipped) {
                std::ostringstream note;
                note << "interval_regression base covariance had minimum eigenvalue "
                     << repaired.min_eigenvalue_before << "; eigenvalues clipped at " << kDefaultEigenFloor;
                cfg.notes.push_back(note.str());
            }
            cfg.processes = {normal_process(20.0, {0.0, 4.0, 0.0, 0.5}, repaired.matrix)};
            cfg.grid = make_grid(-1.0, 20.0, 0.05);
            cfg.true_set = IntervalSet(2.0, 6.0);
            break;
        }
        case ScenarioId::BinaryMissing:
            cfg.n = 1000;
            cfg.dirichlet_alpha = {2.0, 3.0, 1.0};
            cfg.grid = make_grid(0.0, 1.0, 0.05);
            cfg.true_set = IntervalSet(kBinaryPy * kBinaryPd, kBinaryPy * kBinaryPd + (1.0 - kBinaryPd));
            break;
    }
    return cfg;
}

std::optional<SetRealization> interval_censored_bounds(const DiscreteMeasure& f1, const DiscreteMeasure& f2) {
    const double e1 = coordinate_mean(f1, 0);
    const double e2 = coordinate_mean(f2, 0);
    if (e2 < e1) return std::nullopt;
    return SetRealization{IntervalSet(e1, e2), e1, e2, 1.0};
}

std::optional<SetRealization> errors_in_variables_bounds(const DiscreteMeasure& fyz) {
    const double syy = covariance(fyz, 0, 0);
    const double szz = covariance(fyz, 1, 1);
    const double syz = covariance(fyz, 0, 1);
    if (!(syz > 0.0) || !(szz > 0.0)) return std::nullopt;
    const double forward = syz / szz;
    const double reverse = syy / syz;
    const double lo = std::min(forward, reverse);
    const double hi = std::max(forward, reverse);
    return SetRealization{IntervalSet(lo, hi), lo, hi, 1.0};
}

std::optional<SetRealization> interval_regression_bounds(const DiscreteMeasure& f) {
    // Columns: y1, y2, x, z.
    const double ey1z = cross_moment(f, 0, 3);
    const double ey2z = cross_moment(f, 1, 3);
    const double ezx = cross_moment(f, 3, 2);
    if (!(ezx > 0.0)) return std::nullopt;
    const double lo = ey1z / ezx;
    const double hi = ey2z / ezx;
    if (!(lo <= hi)) return std::nullopt;
    return SetRealization{IntervalSet(lo, hi), ey1z, ey2z, ezx};
}

SetRealization binary_bounds(double p11, double p_missing) {
    const double hi = p11 + p_missing;
    return SetRealization{IntervalSet(p11, hi), p11, hi, 1.0};
}

Scenario::Scenario(ScenarioConfig config) : config_(std::move(config)) {
    const std::size_t expected = config_.id == ScenarioId::IntervalCensored ? 2
                                 : (config_.id == ScenarioId::ErrorsInVariables ||
                                    config_.id == ScenarioId::IntervalRegression)
                                     ? 1
                                     : 0;
    if (config_.processes.size() != expected) {
        throw ParameterError("scenario '" + std::string(to_string(config_.id)) + "' needs " +
                             std::to_string(expected) + " Dirichlet processes, got " +
                             std::to_string(config_.processes.size()));
    }
    const std::size_t dims[] = {0, 1, 2, 4, 0};
    for (const auto& hyper : config_.processes) {
        if (hyper.base_mean.size() != dims[static_cast<int>(config_.id)]) {
            throw ParameterError("scenario '" + std::string(to_string(config_.id)) +
                                 "': base measure has the wrong dimension");
        }
        specs_.push_back(make_spec(hyper, config_.truncation));
    }
    for (double a : config_.dirichlet_alpha) {
        if (!(a > 0.0)) throw ParameterError("binary_missing: Dirichlet parameters must be positive");
    }
}

Dataset Scenario::generate_data(RngStream& rng) const { return generate_data(rng, config_.n); }

Dataset Scenario::generate_data(RngStream& rng, std::size_t n) const {
    if (!scenario_has_data(config_.id)) {
        throw ParameterError("scenario 'toy_analytic' has no data-generating process");
    }
    if (n == 0) throw ParameterError("generate_data: n must be at least 1");
    Dataset data;
    switch (config_.id) {
        case ScenarioId::IntervalCensored: {
            data.columns = {"y1", "y2"};
            const double sd = std::sqrt(kCensoredVar);
            for (std::size_t i = 0; i < n; ++i) {
                data.values.push_back(kCensoredMean1 + sd * sample_standard_normal(rng));
                data.values.push_back(kCensoredMean2 + sd * sample_standard_normal(rng));
            }
            break;
        }
        case ScenarioId::ErrorsInVariables: {
            data.columns = {"y", "z"};
            for (std::size_t i = 0; i < n; ++i) {
                const double xi = sample_standard_normal(rng);
                const double u = sample_standard_normal(rng);
                const double v = sample_standard_normal(rng);
                data.values.push_back(kEivSlope * xi + u);
                data.values.push_back(xi + v);
            }
            break;
        }
        case ScenarioId::IntervalRegression: {
            data.columns = {"y1", "y2", "x", "z"};
            const double sd = std::sqrt(kRegressionNoiseVar);
            for (std::size_t i = 0; i < n; ++i) {
                const double z = rng.uniform();
                const double x = z + sample_standard_normal(rng);
                const double y1 = kRegressionSlope1 * x + sd * sample_standard_normal(rng);
                const double y2 = kRegressionSlope2 * x + sd * sample_standard_normal(rng);
                data.values.insert(data.values.end(), {y1, y2, x, z});
            }
            break;
        }
        case ScenarioId::BinaryMissing: {
            data.columns = {"yd", "d"};
            for (std::size_t i = 0; i < n; ++i) {
                const double y = rng.uniform() < kBinaryPy ? 1.0 : 0.0;
                const double d = rng.uniform() < kBinaryPd ? 1.0 : 0.0;
                data.values.push_back(y * d);
                data.values.push_back(d);
            }
            break;
        }
        case ScenarioId::ToyAnalytic:
            break;
    }
    return data;
}

std::optional<SetRealization> Scenario::draw_set(DrawSource mode, const Dataset* data, RngStream& rng) const {
    const bool posterior = mode == DrawSource::Posterior;
    switch (config_.id) {
        case ScenarioId::ToyAnalytic: {
            if (posterior) throw ParameterError("scenario 'toy_analytic' has no posterior (no data)");
            const double theta1 = rng.uniform();
            const double theta2 = 1.0 + rng.uniform();
            return SetRealization{IntervalSet(theta1, theta2), theta1, theta2, 1.0};
        }
        case ScenarioId::IntervalCensored: {
            std::vector<double> y1;
            std::vector<double> y2;
            if (posterior) {
                require_data(data, config_.id, 2);
                y1 = data->column(0);
                y2 = data->column(1);
            }
            // F1 and F2 are independent: each gets its own child stream.
            RngStream rng1 = rng.child(1);
            RngStream rng2 = rng.child(2);
            const DiscreteMeasure f1 = draw_measure(specs_[0], mode, y1, rng1);
            const DiscreteMeasure f2 = draw_measure(specs_[1], mode, y2, rng2);
            return interval_censored_bounds(f1, f2);
        }
        case ScenarioId::ErrorsInVariables: {
            if (posterior) require_data(data, config_.id, 2);
            const DiscreteMeasure f = draw_measure(specs_[0], mode, posterior ? std::span<const double>(data->values)
                                                                              : std::span<const double>(), rng);
            return errors_in_variables_bounds(f);
        }
        case ScenarioId::IntervalRegression: {
            if (posterior) require_data(data, config_.id, 4);
            const DiscreteMeasure f = draw_measure(specs_[0], mode, posterior ? std::span<const double>(data->values)
                                                                              : std::span<const double>(), rng);
            return interval_regression_bounds(f);
        }
        case ScenarioId::BinaryMissing: {
            std::array<double, 3> alpha = config_.dirichlet_alpha;
            if (posterior) {
                require_data(data, config_.id, 2);
                alpha = binary_posterior_params(alpha, count_binary(*data));
            }
            const std::vector<double> p = sample_dirichlet(alpha, rng);
            return binary_bounds(p[0], p[2]);
        }
    }
    return std::nullopt;
}

Dataset generate_data(const ScenarioConfig& cfg, RngStream& rng) { return Scenario(cfg).generate_data(rng); }

std::optional<SetRealization> draw_set(const ScenarioConfig& cfg, DrawSource mode, const Dataset* data,
                                       RngStream& rng) {
    return Scenario(cfg).draw_set(mode, data, rng);
}

std::vector<std::optional<SetRealization>> draw_realizations(const Scenario& scenario, DrawSource mode,
                                                             const Dataset* data, std::size_t n_draws,
                                                             std::uint64_t seed, int workers) {
    std::vector<std::optional<SetRealization>> out(n_draws);
    parallel_for(n_draws, workers, [&](std::size_t i) {
        RngStream rng = substream(seed, i);
        out[i] = scenario.draw_set(mode, data, rng);
    });
    return out;
}

SetDrawBatch to_batch(const Scenario& scenario, DrawSource mode,
                      const std::vector<std::optional<SetRealization>>& draws) {
    SetDrawBatch batch(mode, std::string(to_string(scenario.id())));
    for (const auto& d : draws) {
        if (d) {
            batch.add(d->interval);
        } else {
            batch.add_skip();
        }
    }
    return batch;
}

SetDrawBatch draw_set_batch(const Scenario& scenario, DrawSource mode, const Dataset* data, std::size_t n_draws,
                            std::uint64_t seed, int workers) {
    return to_batch(scenario, mode, draw_realizations(scenario, mode, data, n_draws, seed, workers));
}

double analytic_coverage_toy(double gamma) {
    if (gamma >= 0.0 && gamma <= 1.0) return gamma;
    if (gamma > 1.0 && gamma <= 2.0) return 2.0 - gamma;
    return 0.0;
}

double analytic_capacity_toy(const IntervalSet& probe) {
    // P(theta1 <= probe.hi) * P(theta2 >= probe.lo), theta1 ~ U[0,1], theta2 ~ U[1,2].
    const double hit_lower = std::clamp(probe.hi(), 0.0, 1.0);
    const double hit_upper = std::clamp(2.0 - probe.lo(), 0.0, 1.0);
    return hit_lower * hit_upper;
}

BinaryCounts count_binary(const Dataset& data) {
    if (data.cols() != 2) throw ParameterError("count_binary: expected columns (yd, d)");
    BinaryCounts counts;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const double yd = data.at(r, 0);
        const double d = data.at(r, 1);
        if (d == 1.0 && yd == 1.0) {
            ++counts.n1;
        } else if (d == 1.0 && yd == 0.0) {
            ++counts.n0_obs;
        } else if (d == 0.0 && yd == 0.0) {
            ++counts.m;
        } else {
            throw ParameterError("count_binary: malformed row " + std::to_string(r) + " (" + std::to_string(yd) +
                                 ", " + std::to_string(d) + ")");
        }
    }
    return counts;
}

std::array<double, 3> binary_posterior_params(const std::array<double, 3>& alpha, const BinaryCounts& counts) {
    return {alpha[0] + static_cast<double>(counts.n1), alpha[1] + static_cast<double>(counts.n0_obs),
            alpha[2] + static_cast<double>(counts.m)};
}

double analytic_coverage_binary(double gamma, const std::array<double, 3>& alpha) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ParameterError("analytic_coverage_binary: gamma must lie in [0, 1], got " + std::to_string(gamma));
    }
    // lo ~ Be(a1, a2 + a3) and hi ~ Be(a1 + a3, a2); lo <= hi a.s., so
    // P(lo <= g <= hi) = P(lo <= g) - P(hi < g).
    const double lower = beta_cdf(gamma, alpha[0], alpha[1] + alpha[2]);
    const double upper = beta_cdf(gamma, alpha[0] + alpha[2], alpha[1]);
    return std::max(0.0, lower - upper);
}

IntervalSet binary_point_estimate(const std::array<double, 3>& alpha, const BinaryCounts& counts) {
    const double total = alpha[0] + alpha[1] + alpha[2] + static_cast<double>(counts.total());
    const double n1 = static_cast<double>(counts.n1);
    const double m = static_cast<double>(counts.m);
    return {(alpha[0] + n1) / total, (alpha[0] + alpha[2] + n1 + m) / total};
}

}  // namespace bnpid
