#include "bnpid/random_set.hpp"

#include <algorithm>
#include <cmath>

#include "bnpid/errors.hpp"

namespace bnpid {
namespace {

void require_nonempty(const SetDrawBatch& batch, const char* what) {
    if (batch.empty()) {
        throw EmptyBatchError(std::string(what) + ": batch for scenario '" + batch.scenario_id() +
                              "' has no draws");
    }
}

}  // namespace

IntervalSet::IntervalSet(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) {
        throw ParameterError("IntervalSet: lo must not exceed hi, got [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
    }
}

std::string_view to_string(DrawSource source) noexcept {
    return source == DrawSource::Prior ? "prior" : "posterior";
}

SetDrawBatch::SetDrawBatch(DrawSource source, std::string scenario_id, std::vector<IntervalSet> draws,
                           std::size_t skipped)
    : source_(source), scenario_id_(std::move(scenario_id)), draws_(std::move(draws)), skipped_(skipped) {}

double SetDrawBatch::skip_rate() const noexcept {
    const std::size_t attempted = skipped_ + draws_.size();
    return attempted == 0 ? 0.0 : static_cast<double>(skipped_) / static_cast<double>(attempted);
}

std::optional<std::string> SetDrawBatch::warning() const {
    if (skip_rate() <= kSkipWarningRate) return std::nullopt;
    return "scenario '" + scenario_id_ + "' " + std::string(to_string(source_)) + ": skipped " +
           std::to_string(skipped_) + " of " + std::to_string(skipped_ + draws_.size()) + " draws";
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(lo <= hi)) throw ParameterError("make_grid: need lo <= hi and step > 0");
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-6)) + 1;
    grid.reserve(count);
    for (std::size_t k = 0; k < count; ++k) grid.push_back(lo + static_cast<double>(k) * step);
    return grid;
}

CoverageCurve estimate_coverage(const SetDrawBatch& batch, const std::vector<double>& grid) {
    require_nonempty(batch, "estimate_coverage");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) throw ParameterError("estimate_coverage: grid must be strictly increasing");
    }
    CoverageCurve curve{grid, std::vector<double>(grid.size(), 0.0), batch.size()};
    const double n = static_cast<double>(batch.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        std::size_t hits = 0;
        for (const auto& d : batch.draws()) hits += d.contains(grid[k]) ? 1 : 0;
        curve.values[k] = static_cast<double>(hits) / n;
    }
    return curve;
}

double estimate_capacity(const SetDrawBatch& batch, const IntervalSet& probe) {
    require_nonempty(batch, "estimate_capacity");
    std::size_t hits = 0;
    for (const auto& d : batch.draws()) hits += d.intersects(probe) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(batch.size());
}

double estimate_containment(const SetDrawBatch& batch, const IntervalSet& region) {
    require_nonempty(batch, "estimate_containment");
    std::size_t inside = 0;
    for (const auto& d : batch.draws()) inside += region.contains(d) ? 1 : 0;
    return static_cast<double>(inside) / static_cast<double>(batch.size());
}

CredibleRegion credible_region(const SetDrawBatch& batch, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ParameterError("credible_region: alpha must lie in (0, 1], got " + std::to_string(alpha));
    }
    require_nonempty(batch, "credible_region");

    const std::size_t n = batch.size();
    std::vector<double> los;
    std::vector<double> his;
    los.reserve(n);
    his.reserve(n);
    for (const auto& d : batch.draws()) {
        los.push_back(d.lo());
        his.push_back(d.hi());
    }
    std::sort(los.begin(), los.end());
    std::sort(his.begin(), his.end());

    // Trim `k` order statistics from the outer end of each endpoint sample.
    const double tail = 0.5 * (1.0 - alpha);
    auto k = static_cast<std::size_t>(std::floor(tail * static_cast<double>(n)));
    k = std::min(k, n - 1);
    for (;;) {
        const IntervalSet region(los[k], std::max(los[k], his[n - 1 - k]));
        const double containment = estimate_containment(batch, region);
        if (containment >= alpha || k == 0) return {region, containment};
        --k;
    }
}

IntervalSet point_estimate_set(const SetDrawBatch& batch) {
    require_nonempty(batch, "point_estimate_set");
    double lo = 0.0;
    double hi = 0.0;
    for (const auto& d : batch.draws()) {
        lo += d.lo();
        hi += d.hi();
    }
    lo /= static_cast<double>(batch.size());
    hi /= static_cast<double>(batch.size());
    if (lo > hi) {
        throw DegenerateEstimateError("point_estimate_set: mean lower bound " + std::to_string(lo) +
                                      " exceeds mean upper bound " + std::to_string(hi));
    }
    return {lo, hi};
}

}  // namespace bnpid
