#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bnpid {

/// Dense symmetric real matrix, row-major. Construction rejects any input
/// whose (i, j) and (j, i) entries differ.
class SymMatrix {
public:
    /// dim x dim zero matrix.
    explicit SymMatrix(std::size_t dim);
    SymMatrix(std::size_t dim, std::vector<double> row_major);
    SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static SymMatrix identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * dim_ + j]; }
    std::span<const double> entries() const noexcept { return entries_; }

    /// Writes both (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, double value);

    bool operator==(const SymMatrix&) const = default;

private:
    std::size_t dim_;
    std::vector<double> entries_;
};

struct PsdRepairResult {
    SymMatrix matrix;
    bool clipped = false;
    /// Smallest eigenvalue of the input.
    double min_eigenvalue_before = 0.0;
};

inline constexpr double kDefaultEigenFloor = 1e-6;

/// Raises every eigenvalue below `eigen_floor` to `eigen_floor` and rebuilds
/// the matrix. Inputs that already clear the floor come back unchanged.
PsdRepairResult psd_repair(const SymMatrix& m, double eigen_floor = kDefaultEigenFloor);

/// Eigenvalues in ascending order.
std::vector<double> symmetric_eigenvalues(const SymMatrix& m);

/// Lower-triangular Cholesky factor, row-major. Singular PSD input yields
/// zero columns; anything with a negative pivot throws ParameterError.
std::vector<double> cholesky_lower(const SymMatrix& m);

}  // namespace bnpid
