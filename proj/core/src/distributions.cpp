#include "bnpid/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "bnpid/errors.hpp"
#include "bnpid/special_functions.hpp"

namespace bnpid {
namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ParameterError(std::string(what) + " must be positive and finite, got " + std::to_string(v));
    }
}

double clamp_open_unit(double v) {
    constexpr double lo = std::numeric_limits<double>::min();
    const double hi = std::nextafter(1.0, 0.0);
    return std::clamp(v, lo, hi);
}

// Standardized truncation [a, b] with a far in the upper tail: the normal
// density is exp(-a t) to first order in t = z - a, so invert that.
double upper_tail_exponential(double a, double b, double u) {
    const double width = b - a;
    const double mass = -std::expm1(-a * width);
    return a - std::log1p(-u * mass) / a;
}

}  // namespace

double sample_standard_normal(RngStream& rng) {
    return normal_quantile(rng.uniform_open());
}

double sample_exponential(RngStream& rng) {
    return -std::log(rng.uniform_open());
}

double sample_gamma(double shape, RngStream& rng) {
    require_positive(shape, "gamma shape");
    if (shape == 1.0) return sample_exponential(rng);
    if (shape < 1.0) {
        const double g = sample_gamma(shape + 1.0, rng);
        return g * std::exp(std::log(rng.uniform_open()) / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = sample_standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_open();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta(double a, double b, RngStream& rng) {
    require_positive(a, "beta shape a");
    require_positive(b, "beta shape b");
    if (a == 1.0) {
        // 1 - U^(1/b), computed without cancellation.
        return clamp_open_unit(-std::expm1(std::log(rng.uniform_open()) / b));
    }
    if (b == 1.0) {
        return clamp_open_unit(std::exp(std::log(rng.uniform_open()) / a));
    }
    const double x = sample_gamma(a, rng);
    const double y = sample_gamma(b, rng);
    return clamp_open_unit(x / (x + y));
}

std::vector<double> sample_dirichlet(std::span<const double> alpha, RngStream& rng) {
    if (alpha.empty()) throw ParameterError("sample_dirichlet: alpha must be nonempty");
    for (double a : alpha) require_positive(a, "dirichlet parameter");
    std::vector<double> w(alpha.size());
    if (w.size() == 1) {
        w[0] = 1.0;
        return w;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        w[i] = sample_gamma(alpha[i], rng);
        total += w[i];
    }
    for (double& v : w) v /= total;
    return w;
}

void sample_flat_dirichlet(std::span<double> out, RngStream& rng) {
    if (out.empty()) throw ParameterError("sample_flat_dirichlet: size must be positive");
    double total = 0.0;
    for (double& v : out) {
        v = sample_exponential(rng);
        total += v;
    }
    for (double& v : out) v /= total;
}

MvNormal::MvNormal(std::vector<double> mean, const SymMatrix& cov)
    : mean_(std::move(mean)) {
    if (mean_.size() != cov.dim()) {
        throw ParameterError("MvNormal: mean has dimension " + std::to_string(mean_.size()) +
                             " but covariance has dimension " + std::to_string(cov.dim()));
    }
    chol_ = cholesky_lower(cov);
}

void MvNormal::sample(RngStream& rng, std::span<double> out) const {
    const std::size_t n = mean_.size();
    if (out.size() != n) throw ParameterError("MvNormal::sample: output size mismatch");
    double z[16];
    std::vector<double> heap;
    double* zp = z;
    if (n > 16) {
        heap.resize(n);
        zp = heap.data();
    }
    for (std::size_t i = 0; i < n; ++i) zp[i] = sample_standard_normal(rng);
    for (std::size_t i = 0; i < n; ++i) {
        double s = mean_[i];
        for (std::size_t k = 0; k <= i; ++k) s += chol_[i * n + k] * zp[k];
        out[i] = s;
    }
}

std::vector<double> MvNormal::sample(RngStream& rng) const {
    std::vector<double> out(mean_.size());
    sample(rng, out);
    return out;
}

std::vector<double> sample_mvnormal(std::span<const double> mean, const SymMatrix& cov, RngStream& rng) {
    MvNormal dist(std::vector<double>(mean.begin(), mean.end()), cov);
    return dist.sample(rng);
}

double sample_truncated_normal(double mu, double sigma2, double lo, double hi, RngStream& rng) {
    require_positive(sigma2, "truncated normal variance");
    if (!(lo < hi)) {
        throw ParameterError("sample_truncated_normal: need lo < hi, got [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
    }
    const double sigma = std::sqrt(sigma2);
    const double a = (lo - mu) / sigma;
    const double b = (hi - mu) / sigma;
    const double u = rng.uniform_open();
    constexpr double kUnderflow = 1e-300;

    double z;
    if (a >= 0.0) {
        const double sa = normal_sf(a);
        const double sb = normal_sf(b);
        if (sa < kUnderflow) {
            z = upper_tail_exponential(a, b, u);
        } else {
            z = -normal_quantile(sb + u * (sa - sb));
        }
    } else if (b <= 0.0) {
        const double ca = normal_cdf(a);
        const double cb = normal_cdf(b);
        if (cb < kUnderflow) {
            z = -upper_tail_exponential(-b, -a, u);
        } else {
            z = normal_quantile(ca + u * (cb - ca));
        }
    } else {
        const double ca = normal_cdf(a);
        const double cb = normal_cdf(b);
        z = normal_quantile(ca + u * (cb - ca));
    }
    return std::clamp(mu + sigma * z, lo, hi);
}

}  // namespace bnpid
