#include "bnpid/sym_matrix.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "bnpid/errors.hpp"

namespace bnpid {
namespace {

using MatrixX = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

MatrixX to_eigen(const SymMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    MatrixX out(n, n);
    std::copy(m.entries().begin(), m.entries().end(), out.data());
    return out;
}

}  // namespace

SymMatrix::SymMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {
    if (dim == 0) throw ParameterError("SymMatrix: dimension must be positive");
}

SymMatrix::SymMatrix(std::size_t dim, std::vector<double> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
    if (dim == 0) throw ParameterError("SymMatrix: dimension must be positive");
    if (entries_.size() != dim * dim) {
        throw ParameterError("SymMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                             std::to_string(entries_.size()));
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            if (entries_[i * dim + j] != entries_[j * dim + i]) {
                throw ParameterError("SymMatrix: entries (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") and (" + std::to_string(j) + "," +
                                     std::to_string(i) + ") differ");
            }
        }
    }
    for (double v : entries_) {
        if (!std::isfinite(v)) throw ParameterError("SymMatrix: non-finite entry");
    }
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymMatrix(rows.size(), [&] {
          std::vector<double> flat;
          for (const auto& row : rows) {
              if (row.size() != rows.size()) throw ParameterError("SymMatrix: matrix must be square");
              flat.insert(flat.end(), row.begin(), row.end());
          }
          return flat;
      }()) {}

SymMatrix SymMatrix::identity(std::size_t dim) {
    SymMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.entries_[i * dim + i] = 1.0;
    return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
    if (i >= dim_ || j >= dim_) throw ParameterError("SymMatrix::set: index out of range");
    entries_[i * dim_ + j] = value;
    entries_[j * dim_ + i] = value;
}

std::vector<double> symmetric_eigenvalues(const SymMatrix& m) {
    Eigen::SelfAdjointEigenSolver<MatrixX> solver(to_eigen(m), Eigen::EigenvaluesOnly);
    const auto& values = solver.eigenvalues();
    return {values.data(), values.data() + values.size()};
}

PsdRepairResult psd_repair(const SymMatrix& m, double eigen_floor) {
    if (!(eigen_floor > 0.0)) throw ParameterError("psd_repair: eigen_floor must be positive");
    Eigen::SelfAdjointEigenSolver<MatrixX> solver(to_eigen(m));
    if (solver.info() != Eigen::Success) throw ParameterError("psd_repair: eigen-decomposition failed");

    Eigen::VectorXd values = solver.eigenvalues();
    const double min_before = values.minCoeff();
    if (min_before >= eigen_floor) {
        return {m, false, min_before};
    }
    for (Eigen::Index k = 0; k < values.size(); ++k) values[k] = std::max(values[k], eigen_floor);

    const auto& vectors = solver.eigenvectors();
    MatrixX rebuilt = vectors * values.asDiagonal() * vectors.transpose();
    const std::size_t n = m.dim();
    SymMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            out.set(i, j, 0.5 * (rebuilt(ii, jj) + rebuilt(jj, ii)));
        }
    }
    return {std::move(out), true, min_before};
}

std::vector<double> cholesky_lower(const SymMatrix& m) {
    const std::size_t n = m.dim();
    std::vector<double> l(n * n, 0.0);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(m(i, i)));
    // Semidefinite pivots within rounding of zero leave a zero column.
    const double tol = 1e-12 * std::max(scale, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = m(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l[j * n + k] * l[j * n + k];
        if (diag < -tol || !std::isfinite(diag)) {
            throw ParameterError("cholesky: matrix is not positive semidefinite (pivot " + std::to_string(j) +
                                 " = " + std::to_string(diag) + "); run psd_repair first");
        }
        if (diag <= tol) {
            for (std::size_t i = j + 1; i < n; ++i) {
                double s = m(i, j);
                for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
                if (std::fabs(s) > std::sqrt(tol)) {
                    throw ParameterError("cholesky: matrix is not positive semidefinite; run psd_repair first");
                }
            }
            continue;
        }
        const double ljj = std::sqrt(diag);
        l[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
            l[i * n + j] = s / ljj;
        }
    }
    return l;
}

}  // namespace bnpid
