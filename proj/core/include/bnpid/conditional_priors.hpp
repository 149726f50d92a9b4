#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bnpid/random_set.hpp"
#include "bnpid/rng.hpp"
#include "bnpid/scenarios.hpp"

namespace bnpid {

/// Conditional prior families for gamma given the identified parameter,
/// each supported on the drawn interval [a0, b0].
enum class PriorFamily {
    RejectedNormal,   ///< (I)   N(gamma0, tau0^2), redrawn until inside [a0, b0]
    TruncatedNormal,  ///< (II)  N(0, sigma0^2) truncated to [a0, b0]
    Uniform,          ///< (III) U[a0, b0]
    ScaledBeta,       ///< (IV)  a0 + (b0 - a0) Be(p, q)
};

std::string_view to_string(PriorFamily family) noexcept;
/// Accepts "I".."IV" (case-insensitive) or the enum names in snake case.
PriorFamily parse_prior_family(std::string_view token);

struct ConditionalPriorSpec {
    PriorFamily family = PriorFamily::Uniform;
    double tau0_sq = 1.0;
    double sigma0_sq = 2.0;
    double p = 2.0;
    double q = 2.0;
    long max_rejections = 100000;
};

/// Hyperparameters used with each scenario.
ConditionalPriorSpec default_prior_spec(ScenarioId id, PriorFamily family);

/// Intervals narrower than this are treated as points.
inline constexpr double kDegenerateWidth = 1e-12;

/// Attempts per family-I draw, bucketed by floor(log2(attempts)).
struct RejectionStats {
    std::vector<std::size_t> attempt_buckets;
    long max_attempts = 0;
    void record(long attempts);
    void merge(const RejectionStats& other);
};

/// One draw of gamma given the drawn interval and its anchor moments.
/// Throws RejectionBudgetError when family I exhausts max_rejections.
double sample_gamma_given_theta(const ConditionalPriorSpec& spec, const SetRealization& theta, RngStream& rng,
                                RejectionStats* stats = nullptr);

/// Same with gamma0 at the interval midpoint and c0 = 1.
double sample_gamma_given_theta(const ConditionalPriorSpec& spec, const IntervalSet& interval, RngStream& rng,
                                RejectionStats* stats = nullptr);

struct MarginalSampleBatch {
    DrawSource source = DrawSource::Prior;
    std::vector<double> gammas;
    std::vector<IntervalSet> intervals;      ///< paired with gammas
    std::vector<std::size_t> draw_indices;   ///< index of the underlying set draw
    std::size_t skipped = 0;
    RejectionStats rejection_stats;
};

/// Two-stage sampler: draw i takes the identified-set draw on
/// substream(seed, i), then gamma from its child stream. With the same seed
/// the intervals match draw_realizations exactly.
MarginalSampleBatch marginal_sample(const Scenario& scenario, const ConditionalPriorSpec& spec, DrawSource mode,
                                    std::size_t n_draws, const Dataset* data, std::uint64_t seed, int workers = 1);

struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<std::size_t> counts;
    std::size_t underflow = 0;
    std::size_t overflow = 0;

    double bin_lo(std::size_t k) const;
    double bin_hi(std::size_t k) const;
};

/// Equal-width bins on [lo, hi]; hi itself falls in the last bin.
Histogram histogram(std::span<const double> values, std::size_t bins, double lo, double hi);

/// sup |ECDF(x) - (x - a)/(b - a)| of the sample against U[a, b].
double ks_distance_to_uniform(std::span<const double> values, const IntervalSet& support);

}  // namespace bnpid
