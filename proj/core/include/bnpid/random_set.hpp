#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bnpid {

/// Closed interval [lo, hi] with lo <= hi; one realization of a random
/// identified set.
class IntervalSet {
public:
    IntervalSet(double lo, double hi);

    static IntervalSet point(double x) { return {x, x}; }

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double width() const noexcept { return hi_ - lo_; }
    double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }

    bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
    bool contains(const IntervalSet& other) const noexcept { return lo_ <= other.lo_ && other.hi_ <= hi_; }
    bool intersects(const IntervalSet& other) const noexcept { return lo_ <= other.hi_ && other.lo_ <= hi_; }

    bool operator==(const IntervalSet&) const = default;

private:
    double lo_;
    double hi_;
};

enum class DrawSource { Prior, Posterior };

std::string_view to_string(DrawSource source) noexcept;

/// Interval draws from one prior or posterior, with the count of draws the
/// scenario rejected (inverted bounds, sign guards).
class SetDrawBatch {
public:
    static constexpr double kSkipWarningRate = 0.05;

    SetDrawBatch(DrawSource source, std::string scenario_id, std::vector<IntervalSet> draws = {},
                 std::size_t skipped = 0);

    void add(const IntervalSet& draw) { draws_.push_back(draw); }
    void add_skip() { ++skipped_; }

    DrawSource source() const noexcept { return source_; }
    const std::string& scenario_id() const noexcept { return scenario_id_; }
    const std::vector<IntervalSet>& draws() const noexcept { return draws_; }
    std::size_t size() const noexcept { return draws_.size(); }
    bool empty() const noexcept { return draws_.empty(); }
    std::size_t skipped() const noexcept { return skipped_; }
    double skip_rate() const noexcept;

    /// Set when more than 5% of attempted draws were skipped.
    std::optional<std::string> warning() const;

private:
    DrawSource source_;
    std::string scenario_id_;
    std::vector<IntervalSet> draws_;
    std::size_t skipped_;
};

struct CoverageCurve {
    std::vector<double> grid;
    std::vector<double> values;
    std::size_t mc_draws = 0;
};

/// Evenly spaced grid lo, lo + step, ... up to hi (inclusive within step/1e6).
std::vector<double> make_grid(double lo, double hi, double step);

/// Fraction of draws covering each grid point. `grid` must be strictly increasing.
CoverageCurve estimate_coverage(const SetDrawBatch& batch, const std::vector<double>& grid);

/// Fraction of draws that hit `probe` (closed-interval overlap).
double estimate_capacity(const SetDrawBatch& batch, const IntervalSet& probe);

/// Fraction of draws contained in `region`.
double estimate_containment(const SetDrawBatch& batch, const IntervalSet& region);

struct CredibleRegion {
    IntervalSet region;
    double containment = 0.0;  ///< fraction of the batch inside `region`
};

/// Interval C with empirical P(draw subset of C) >= alpha, built from the
/// (1-alpha)/2 order statistic of the lower bounds and the matching upper
/// order statistic of the upper bounds, widened one order statistic at a
/// time until the containment target is met.
CredibleRegion credible_region(const SetDrawBatch& batch, double alpha);

/// [mean of lower bounds, mean of upper bounds].
IntervalSet point_estimate_set(const SetDrawBatch& batch);

}  // namespace bnpid
