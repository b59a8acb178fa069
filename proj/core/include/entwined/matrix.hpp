#pragma once

#include <cstddef>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace entwined {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerances shared by the dense kernel.
namespace tol {
inline constexpr double hermitian = 1e-12;  // relative to max(1, ||M||_F)
inline constexpr double cluster = 1e-8;     // relative to max(1, ||M||_F)
inline constexpr double commuting = 1e-10;  // relative to max(1, ||A||_F * ||B||_F)
inline constexpr double phase_pivot = 1e-8;
} // namespace tol

/// max(1, ||M||_F), the scale every relative tolerance is measured against.
double scale_of(const ComplexMatrix& m);

/// max |M - M^dagger| (entrywise).
double hermiticity_residual(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double rel_tol = tol::hermitian);

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted ascending
/// and numerically degenerate eigenvalues grouped into clusters.
struct EigenSystem {
  RealVector values;
  ComplexMatrix vectors;  // column k pairs with values[k]
  std::vector<std::size_t> cluster_starts;  // first index of each cluster; cluster i spans [starts[i], starts[i+1])

  std::size_t cluster_count() const noexcept { return cluster_starts.size(); }
  std::size_t cluster_begin(std::size_t c) const { return cluster_starts.at(c); }
  std::size_t cluster_end(std::size_t c) const {
    return c + 1 < cluster_starts.size() ? cluster_starts[c + 1]
                                         : static_cast<std::size_t>(values.size());
  }
  std::size_t cluster_size(std::size_t c) const { return cluster_end(c) - cluster_begin(c); }

  /// Mean eigenvalue of cluster c; this is the value reported as a measurement outcome.
  double cluster_value(std::size_t c) const;

  /// Orthonormal basis of cluster c's eigenspace.
  ComplexMatrix cluster_basis(std::size_t c) const;
};

EigenSystem hermitian_eigen(const ComplexMatrix& m);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// exp(-i theta H) by spectral decomposition.
ComplexMatrix unitary_exp(const ComplexMatrix& h, double theta);
ComplexMatrix unitary_exp(const EigenSystem& eig, double theta);

/// Columns of a simultaneous eigenbasis of commuting Hermitian matrices.
/// Columns are grouped into joint eigenspaces ("blocks"); every column of a
/// block carries the same weight tuple.
struct SimultaneousBasis {
  std::vector<std::vector<double>> weights;  // one tuple per column
  ComplexMatrix basis;
  std::vector<std::size_t> block_starts;

  std::size_t block_count() const noexcept { return block_starts.size(); }
  std::size_t block_begin(std::size_t b) const { return block_starts.at(b); }
  std::size_t block_end(std::size_t b) const {
    return b + 1 < block_starts.size() ? block_starts[b + 1]
                                       : static_cast<std::size_t>(basis.cols());
  }
};

SimultaneousBasis simultaneous_eigenbasis(std::span<const ComplexMatrix> matrices);

/// Makes the first component with magnitude above tol::phase_pivot real positive.
void fix_phase(Eigen::Ref<ComplexVector> v);

ComplexMatrix identity(std::size_t n);

} // namespace entwined
