#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "bnpid/rng.hpp"

namespace bnpid {

/// Finite weighted-atom probability measure on R^d, the truncated form of a
/// Dirichlet-process draw. Atoms are stored row-major, one row per atom.
class DiscreteMeasure {
public:
    /// Weights are validated (nonnegative, positive total) and renormalized.
    DiscreteMeasure(std::size_t dim, std::vector<double> atoms, std::vector<double> weights);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return weights_.size(); }
    std::span<const double> atom(std::size_t k) const noexcept { return {atoms_.data() + k * dim_, dim_}; }
    double weight(std::size_t k) const noexcept { return weights_[k]; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::span<const double> atoms() const noexcept { return atoms_; }

private:
    std::size_t dim_;
    std::vector<double> atoms_;
    std::vector<double> weights_;
};

struct FixedTruncation {
    int k = 0;
};

/// Truncate where the discarded stick mass exceeds `eps` with probability at
/// most `delta`.
struct ToleranceTruncation {
    double eps = 1e-3;
    double delta = 0.01;
};

using TruncationPolicy = std::variant<FixedTruncation, ToleranceTruncation>;

/// Number of sticks the policy keeps for concentration n0.
int resolve_truncation(const TruncationPolicy& policy, double n0);

/// Smallest K with P(tail mass > eps) <= delta. The tail mass after K
/// sticks satisfies -ln(tail) ~ Gamma(K, rate n0).
int choose_truncation_level(double n0, double eps, double delta);

/// Fills one atom drawn from the base measure.
using BaseSampler = std::function<void(RngStream&, std::span<double>)>;

struct DirichletProcessSpec {
    double n0 = 1.0;
    std::size_t dim = 1;
    BaseSampler base_sampler;
    TruncationPolicy truncation = ToleranceTruncation{};
};

/// Raw stick-breaking output before renormalization.
struct StickBreakingDraw {
    std::vector<double> weights;  ///< alpha_j = v_j prod_{k<j} (1 - v_k)
    double neg_log_tail = 0.0;    ///< -ln(1 - sum of weights)
};

StickBreakingDraw stick_breaking(double n0, int k, RngStream& rng);

/// One truncated, renormalized draw F_K from Dir(n0, F0).
DiscreteMeasure draw_prior(const DirichletProcessSpec& spec, RngStream& rng);

/// One draw from the posterior Dir(n0 + n, (n0 F0 + n Fn) / (n0 + n)) given
/// `data` (row-major, spec.dim columns): a Be(n, n0) share goes to the data
/// atoms with flat-Dirichlet weights, the rest to a truncated prior draw.
DiscreteMeasure draw_posterior(const DirichletProcessSpec& spec, std::span<const double> data, RngStream& rng);

template <typename Fn>
double expectation(const DiscreteMeasure& m, Fn&& h) {
    double s = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) s += m.weight(k) * h(m.atom(k));
    return s;
}

/// E_m[x_i].
double coordinate_mean(const DiscreteMeasure& m, std::size_t i);
/// E_m[x_i x_j], uncentered.
double cross_moment(const DiscreteMeasure& m, std::size_t i, std::size_t j);
/// E_m[x_i x_j] - E_m[x_i] E_m[x_j].
double covariance(const DiscreteMeasure& m, std::size_t i, std::size_t j);

}  // namespace bnpid
