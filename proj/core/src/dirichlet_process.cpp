#include "bnpid/dirichlet_process.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bnpid/distributions.hpp"
#include "bnpid/errors.hpp"
#include "bnpid/special_functions.hpp"

namespace bnpid {
namespace {

void check_coordinate(const DiscreteMeasure& m, std::size_t i) {
    if (i >= m.dim()) {
        throw ParameterError("coordinate " + std::to_string(i) + " out of range for dimension " +
                             std::to_string(m.dim()));
    }
}

void check_spec(const DirichletProcessSpec& spec) {
    if (!(spec.n0 > 0.0) || !std::isfinite(spec.n0)) {
        throw ParameterError("Dirichlet process concentration n0 must be positive, got " + std::to_string(spec.n0));
    }
    if (spec.dim == 0) throw ParameterError("Dirichlet process base measure dimension must be positive");
    if (!spec.base_sampler) throw ParameterError("Dirichlet process spec has no base sampler");
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::size_t dim, std::vector<double> atoms, std::vector<double> weights)
    : dim_(dim), atoms_(std::move(atoms)), weights_(std::move(weights)) {
    if (dim_ == 0) throw ParameterError("DiscreteMeasure: dimension must be positive");
    if (weights_.empty()) throw ParameterError("DiscreteMeasure: needs at least one atom");
    if (atoms_.size() != weights_.size() * dim_) {
        throw ParameterError("DiscreteMeasure: " + std::to_string(weights_.size()) + " weights but " +
                             std::to_string(atoms_.size()) + " atom coordinates for dimension " +
                             std::to_string(dim_));
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ParameterError("DiscreteMeasure: weights must be nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw ParameterError("DiscreteMeasure: weights sum to zero");
    for (double& w : weights_) w /= total;
}

int choose_truncation_level(double n0, double eps, double delta) {
    if (!(n0 > 0.0)) throw ParameterError("choose_truncation_level: n0 must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("choose_truncation_level: eps must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("choose_truncation_level: delta must lie in (0, 1)");
    const double target = -std::log(eps);
    // The delta-quantile of Gamma(K, n0) is increasing in K: bracket, then bisect.
    auto ok = [&](int k) { return gamma_quantile(delta, static_cast<double>(k), n0) >= target; };
    int hi = 1;
    while (!ok(hi)) {
        if (hi > (1 << 28)) throw ParameterError("choose_truncation_level: no feasible K");
        hi *= 2;
    }
    int lo = hi / 2;  // ok(lo) is false unless lo == 0
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        if (ok(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

int resolve_truncation(const TruncationPolicy& policy, double n0) {
    if (const auto* fixed = std::get_if<FixedTruncation>(&policy)) {
        if (fixed->k < 1) throw ParameterError("fixed truncation level must be at least 1");
        return fixed->k;
    }
    const auto& tol = std::get<ToleranceTruncation>(policy);
    return choose_truncation_level(n0, tol.eps, tol.delta);
}

StickBreakingDraw stick_breaking(double n0, int k, RngStream& rng) {
    if (!(n0 > 0.0)) throw ParameterError("stick_breaking: n0 must be positive");
    if (k < 1) throw ParameterError("stick_breaking: K must be at least 1");
    StickBreakingDraw out;
    out.weights.resize(static_cast<std::size_t>(k));
    // Track log of the remaining stick; 1 - v with v ~ Be(1, n0) is U^(1/n0).
    double log_remaining = 0.0;
    for (auto& w : out.weights) {
        const double log_keep = std::log(rng.uniform_open()) / n0;
        w = std::exp(log_remaining) * -std::expm1(log_keep);
        log_remaining += log_keep;
    }
    out.neg_log_tail = -log_remaining;
    return out;
}

DiscreteMeasure draw_prior(const DirichletProcessSpec& spec, RngStream& rng) {
    check_spec(spec);
    const int k = resolve_truncation(spec.truncation, spec.n0);
    StickBreakingDraw sticks = stick_breaking(spec.n0, k, rng);
    std::vector<double> atoms(static_cast<std::size_t>(k) * spec.dim);
    for (int j = 0; j < k; ++j) {
        spec.base_sampler(rng, std::span<double>(atoms.data() + static_cast<std::size_t>(j) * spec.dim, spec.dim));
    }
    return DiscreteMeasure(spec.dim, std::move(atoms), std::move(sticks.weights));
}

DiscreteMeasure draw_posterior(const DirichletProcessSpec& spec, std::span<const double> data, RngStream& rng) {
    check_spec(spec);
    if (data.empty()) throw ParameterError("draw_posterior: no data; use draw_prior");
    if (data.size() % spec.dim != 0) {
        throw ParameterError("draw_posterior: data length " + std::to_string(data.size()) +
                             " is not a multiple of the base dimension " + std::to_string(spec.dim));
    }
    const std::size_t n = data.size() / spec.dim;
    const int k = resolve_truncation(spec.truncation, spec.n0);

    StickBreakingDraw sticks = stick_breaking(spec.n0, k, rng);
    const std::size_t total = static_cast<std::size_t>(k) + n;
    std::vector<double> atoms(total * spec.dim);
    for (int j = 0; j < k; ++j) {
        spec.base_sampler(rng, std::span<double>(atoms.data() + static_cast<std::size_t>(j) * spec.dim, spec.dim));
    }
    std::copy(data.begin(), data.end(), atoms.begin() + static_cast<std::ptrdiff_t>(k * spec.dim));

    const double rho = sample_beta(static_cast<double>(n), spec.n0, rng);
    std::vector<double> weights(total);
    double prior_total = 0.0;
    for (double w : sticks.weights) prior_total += w;
    for (int j = 0; j < k; ++j) {
        weights[static_cast<std::size_t>(j)] = (1.0 - rho) * sticks.weights[static_cast<std::size_t>(j)] / prior_total;
    }
    std::span<double> data_weights(weights.data() + k, n);
    sample_flat_dirichlet(data_weights, rng);
    for (double& w : data_weights) w *= rho;
    return DiscreteMeasure(spec.dim, std::move(atoms), std::move(weights));
}

double coordinate_mean(const DiscreteMeasure& m, std::size_t i) {
    check_coordinate(m, i);
    return expectation(m, [i](std::span<const double> x) { return x[i]; });
}

double cross_moment(const DiscreteMeasure& m, std::size_t i, std::size_t j) {
    check_coordinate(m, i);
    check_coordinate(m, j);
    return expectation(m, [i, j](std::span<const double> x) { return x[i] * x[j]; });
}

double covariance(const DiscreteMeasure& m, std::size_t i, std::size_t j) {
    check_coordinate(m, i);
    check_coordinate(m, j);
    // Two-pass form: centre first, then average the product.
    const double mi = coordinate_mean(m, i);
    const double mj = coordinate_mean(m, j);
    return expectation(m, [&](std::span<const double> x) { return (x[i] - mi) * (x[j] - mj); });
}

}  // namespace bnpid
