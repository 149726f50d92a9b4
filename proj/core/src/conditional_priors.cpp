#include "bnpid/conditional_priors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <string>

#include "bnpid/distributions.hpp"
#include "bnpid/errors.hpp"
#include "bnpid/parallel.hpp"

namespace bnpid {

RejectionBudgetError::RejectionBudgetError(double lo, double hi, double center, long attempts)
    : std::runtime_error("family I rejection sampler gave up after " + std::to_string(attempts) +
                         " attempts: N(" + std::to_string(center) + ", tau0^2) rarely lands in [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]"),
      lo_(lo), hi_(hi), center_(center), attempts_(attempts) {}

std::string_view to_string(PriorFamily family) noexcept {
    switch (family) {
        case PriorFamily::RejectedNormal: return "I";
        case PriorFamily::TruncatedNormal: return "II";
        case PriorFamily::Uniform: return "III";
        case PriorFamily::ScaledBeta: return "IV";
    }
    return "?";
}

PriorFamily parse_prior_family(std::string_view token) {
    std::string t(token);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "i" || t == "1" || t == "rejected_normal") return PriorFamily::RejectedNormal;
    if (t == "ii" || t == "2" || t == "truncated_normal") return PriorFamily::TruncatedNormal;
    if (t == "iii" || t == "3" || t == "uniform") return PriorFamily::Uniform;
    if (t == "iv" || t == "4" || t == "scaled_beta") return PriorFamily::ScaledBeta;
    throw ParameterError("unknown prior family \"" + std::string(token) + "\" (expected I, II, III or IV)");
}

ConditionalPriorSpec default_prior_spec(ScenarioId id, PriorFamily family) {
    ConditionalPriorSpec spec;
    spec.family = family;
    spec.tau0_sq = 1.0;
    spec.sigma0_sq = 2.0;
    switch (id) {
        case ScenarioId::ToyAnalytic:
        case ScenarioId::IntervalCensored:
            spec.p = 2.0;
            spec.q = 2.0;
            break;
        case ScenarioId::ErrorsInVariables:
        case ScenarioId::IntervalRegression:
        case ScenarioId::BinaryMissing:
            spec.p = 1.0;
            spec.q = 0.5;
            break;
    }
    return spec;
}

void RejectionStats::record(long attempts) {
    std::size_t bucket = 0;
    for (long a = attempts; a > 1; a >>= 1) ++bucket;
    if (attempt_buckets.size() <= bucket) attempt_buckets.resize(bucket + 1, 0);
    ++attempt_buckets[bucket];
    max_attempts = std::max(max_attempts, attempts);
}

void RejectionStats::merge(const RejectionStats& other) {
    if (attempt_buckets.size() < other.attempt_buckets.size()) attempt_buckets.resize(other.attempt_buckets.size(), 0);
    for (std::size_t b = 0; b < other.attempt_buckets.size(); ++b) attempt_buckets[b] += other.attempt_buckets[b];
    max_attempts = std::max(max_attempts, other.max_attempts);
}

double sample_gamma_given_theta(const ConditionalPriorSpec& spec, const SetRealization& theta, RngStream& rng,
                                RejectionStats* stats) {
    const double a0 = theta.interval.lo();
    const double b0 = theta.interval.hi();
    if (b0 - a0 < kDegenerateWidth) return theta.interval.midpoint();

    switch (spec.family) {
        case PriorFamily::RejectedNormal: {
            if (!(spec.tau0_sq > 0.0)) throw ParameterError("family I: tau0^2 must be positive");
            if (!(theta.c0 != 0.0)) throw ParameterError("family I: c0 must be nonzero");
            const double center = (theta.anchor_lo + theta.anchor_hi) / (2.0 * theta.c0);
            const double sd = std::sqrt(spec.tau0_sq);
            for (long attempt = 1; attempt <= spec.max_rejections; ++attempt) {
                const double g = center + sd * sample_standard_normal(rng);
                if (a0 <= g && g <= b0) {
                    if (stats) stats->record(attempt);
                    return g;
                }
            }
            throw RejectionBudgetError(a0, b0, center, spec.max_rejections);
        }
        case PriorFamily::TruncatedNormal:
            return sample_truncated_normal(0.0, spec.sigma0_sq, a0, b0, rng);
        case PriorFamily::Uniform:
            return std::clamp(a0 + (b0 - a0) * rng.uniform(), a0, b0);
        case PriorFamily::ScaledBeta:
            return std::clamp(a0 + (b0 - a0) * sample_beta(spec.p, spec.q, rng), a0, b0);
    }
    return theta.interval.midpoint();
}

double sample_gamma_given_theta(const ConditionalPriorSpec& spec, const IntervalSet& interval, RngStream& rng,
                                RejectionStats* stats) {
    return sample_gamma_given_theta(spec, SetRealization{interval, interval.lo(), interval.hi(), 1.0}, rng, stats);
}

MarginalSampleBatch marginal_sample(const Scenario& scenario, const ConditionalPriorSpec& spec, DrawSource mode,
                                    std::size_t n_draws, const Dataset* data, std::uint64_t seed, int workers) {
    struct Slot {
        std::optional<SetRealization> theta;
        double gamma = 0.0;
        long attempts = 0;
    };
    std::vector<Slot> slots(n_draws);
    parallel_for(n_draws, workers, [&](std::size_t i) {
        RngStream rng = substream(seed, i);
        Slot& slot = slots[i];
        slot.theta = scenario.draw_set(mode, data, rng);
        if (!slot.theta) return;
        RngStream gamma_rng = rng.child(0);
        RejectionStats local;
        slot.gamma = sample_gamma_given_theta(spec, *slot.theta, gamma_rng, &local);
        slot.attempts = local.max_attempts;
    });

    MarginalSampleBatch batch;
    batch.source = mode;
    batch.gammas.reserve(n_draws);
    for (std::size_t i = 0; i < n_draws; ++i) {
        const Slot& slot = slots[i];
        if (!slot.theta) {
            ++batch.skipped;
            continue;
        }
        batch.gammas.push_back(slot.gamma);
        batch.intervals.push_back(slot.theta->interval);
        batch.draw_indices.push_back(i);
        if (slot.attempts > 0) batch.rejection_stats.record(slot.attempts);
    }
    return batch;
}

double Histogram::bin_lo(std::size_t k) const {
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(counts.size());
}

double Histogram::bin_hi(std::size_t k) const {
    return lo + (hi - lo) * static_cast<double>(k + 1) / static_cast<double>(counts.size());
}

Histogram histogram(std::span<const double> values, std::size_t bins, double lo, double hi) {
    if (bins < 1) throw ParameterError("histogram: need at least one bin");
    if (!(lo < hi)) throw ParameterError("histogram: need lo < hi");
    Histogram h{lo, hi, std::vector<std::size_t>(bins, 0), 0, 0};
    const double width = (hi - lo) / static_cast<double>(bins);
    for (double v : values) {
        if (v < lo) {
            ++h.underflow;
        } else if (v > hi) {
            ++h.overflow;
        } else {
            auto k = static_cast<std::size_t>((v - lo) / width);
            ++h.counts[std::min(k, bins - 1)];
        }
    }
    return h;
}

double ks_distance_to_uniform(std::span<const double> values, const IntervalSet& support) {
    if (values.empty()) throw ParameterError("ks_distance_to_uniform: no values");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double width = support.width();
    auto cdf = [&](double x) {
        if (width <= 0.0) return x < support.lo() ? 0.0 : 1.0;
        return std::clamp((x - support.lo()) / width, 0.0, 1.0);
    };
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

}  // namespace bnpid
