#include "entwined/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "entwined/error.hpp"

namespace entwined {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected square");
  }
}

void require_hermitian(const ComplexMatrix& m, const char* what) {
  require_square(m, what);
  if (!is_hermitian(m)) {
    throw Error(ErrorKind::NotHermitian,
                std::string(what) + ": hermiticity residual " +
                    std::to_string(hermiticity_residual(m)) + " exceeds tolerance");
  }
}

} // namespace

double scale_of(const ComplexMatrix& m) { return std::max(1.0, m.norm()); }

double hermiticity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  if (m.size() == 0) {
    return 0.0;
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  return m.rows() == m.cols() && hermiticity_residual(m) <= rel_tol * scale_of(m);
}

ComplexMatrix identity(std::size_t n) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

void fix_phase(Eigen::Ref<ComplexVector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > tol::phase_pivot) {
      v *= std::conj(v[i]) / mag;
      v[i] = Complex(mag, 0.0);
      return;
    }
  }
}

double EigenSystem::cluster_value(std::size_t c) const {
  const auto begin = cluster_begin(c);
  const auto end = cluster_end(c);
  double sum = 0.0;
  for (auto k = begin; k < end; ++k) {
    sum += values[static_cast<Eigen::Index>(k)];
  }
  return sum / static_cast<double>(end - begin);
}

ComplexMatrix EigenSystem::cluster_basis(std::size_t c) const {
  const auto begin = static_cast<Eigen::Index>(cluster_begin(c));
  const auto count = static_cast<Eigen::Index>(cluster_size(c));
  return vectors.middleCols(begin, count);
}

EigenSystem hermitian_eigen(const ComplexMatrix& m) {
  require_hermitian(m, "hermitian_eigen");
  EigenSystem out;
  if (m.size() == 0) {
    return out;
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  // Tridiagonal QR, capped by Eigen at m_maxIterations (30) sweeps per eigenvalue.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "hermitian_eigen: eigensolver did not converge");
  }
  // Eigen already returns ascending eigenvalues.
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
    fix_phase(out.vectors.col(k));
  }

  const double cluster_tol = tol::cluster * scale_of(m);
  out.cluster_starts.push_back(0);
  for (Eigen::Index k = 1; k < out.values.size(); ++k) {
    if (out.values[k] - out.values[k - 1] > cluster_tol) {
      out.cluster_starts.push_back(static_cast<std::size_t>(k));
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "commutator");
  require_square(b, "commutator");
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "commutator: operand sizes differ");
  }
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "anticommutator");
  require_square(b, "anticommutator");
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "anticommutator: operand sizes differ");
  }
  return a * b + b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix unitary_exp(const EigenSystem& eig, double theta) {
  ComplexVector phases(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    phases[k] = std::polar(1.0, -theta * eig.values[k]);
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix unitary_exp(const ComplexMatrix& h, double theta) {
  require_hermitian(h, "unitary_exp");
  return unitary_exp(hermitian_eigen(h), theta);
}

SimultaneousBasis simultaneous_eigenbasis(std::span<const ComplexMatrix> matrices) {
  if (matrices.empty()) {
    throw Error(ErrorKind::BadParameter, "simultaneous_eigenbasis: empty matrix list");
  }
  const auto n = matrices.front().rows();
  for (const auto& m : matrices) {
    require_hermitian(m, "simultaneous_eigenbasis");
    if (m.rows() != n) {
      throw Error(ErrorKind::DimensionMismatch, "simultaneous_eigenbasis: sizes differ");
    }
  }
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    for (std::size_t j = i + 1; j < matrices.size(); ++j) {
      const double scale = std::max(1.0, matrices[i].norm() * matrices[j].norm());
      const double residual = commutator(matrices[i], matrices[j]).norm();
      if (residual > tol::commuting * scale) {
        throw Error(ErrorKind::NonCommuting,
                    "simultaneous_eigenbasis: matrices " + std::to_string(i) + " and " +
                        std::to_string(j) + " do not commute (residual " +
                        std::to_string(residual) + ")");
      }
    }
  }

  struct Block {
    ComplexMatrix basis;
    std::vector<double> weight;
  };
  std::vector<Block> blocks{{ComplexMatrix::Identity(n, n), {}}};

  for (const auto& h : matrices) {
    std::vector<Block> refined;
    for (auto& block : blocks) {
      if (block.basis.cols() == 1) {
        const double value = (block.basis.adjoint() * h * block.basis)(0, 0).real();
        block.weight.push_back(value);
        refined.push_back(std::move(block));
        continue;
      }
      ComplexMatrix restricted = block.basis.adjoint() * h * block.basis;
      restricted = 0.5 * (restricted + restricted.adjoint()).eval();
      const auto eig = hermitian_eigen(restricted);
      for (std::size_t c = 0; c < eig.cluster_count(); ++c) {
        Block part{block.basis * eig.cluster_basis(c), block.weight};
        part.weight.push_back(eig.cluster_value(c));
        refined.push_back(std::move(part));
      }
    }
    blocks = std::move(refined);
  }

  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& a, const Block& b) { return a.weight < b.weight; });

  SimultaneousBasis out;
  out.basis.resize(n, n);
  Eigen::Index col = 0;
  for (const auto& block : blocks) {
    out.block_starts.push_back(static_cast<std::size_t>(col));
    for (Eigen::Index k = 0; k < block.basis.cols(); ++k, ++col) {
      out.basis.col(col) = block.basis.col(k);
      fix_phase(out.basis.col(col));
      out.weights.push_back(block.weight);
    }
  }
  return out;
}

} // namespace entwined
