#pragma once

#include <span>
#include <vector>

#include "bnpid/rng.hpp"
#include "bnpid/sym_matrix.hpp"

namespace bnpid {

/// Standard normal by inverse CDF of one uniform (no rejection step).
double sample_standard_normal(RngStream& rng);
double sample_exponential(RngStream& rng);

/// Gamma(shape, 1). Marsaglia-Tsang squeeze, boosted for shape < 1.
double sample_gamma(double shape, RngStream& rng);

/// Beta(a, b) draw in the open interval (0, 1).
double sample_beta(double a, double b, RngStream& rng);

/// Dirichlet(alpha) draw; weights are nonnegative and sum to one.
std::vector<double> sample_dirichlet(std::span<const double> alpha, RngStream& rng);

/// Flat Dirichlet(1, ..., 1) of size n written into `out` (n = out.size()).
void sample_flat_dirichlet(std::span<double> out, RngStream& rng);

/// Multivariate normal with a precomputed Cholesky factor.
class MvNormal {
public:
    MvNormal(std::vector<double> mean, const SymMatrix& cov);

    std::size_t dim() const noexcept { return mean_.size(); }
    void sample(RngStream& rng, std::span<double> out) const;
    std::vector<double> sample(RngStream& rng) const;

private:
    std::vector<double> mean_;
    std::vector<double> chol_;
};

std::vector<double> sample_mvnormal(std::span<const double> mean, const SymMatrix& cov, RngStream& rng);

/// N(mu, sigma2) conditioned on [lo, hi], sampled by inverting the CDF
/// restricted to the interval. `sigma2` is a variance.
double sample_truncated_normal(double mu, double sigma2, double lo, double hi, RngStream& rng);

}  // namespace bnpid
