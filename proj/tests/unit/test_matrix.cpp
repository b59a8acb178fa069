#include <random>

#include <gtest/gtest.h>

#include "entwined/error.hpp"
#include "entwined/matrix.hpp"
#include "oracles.hpp"

using namespace entwined;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an entwined::Error";
  return ErrorKind::Unsupported;
}

} // namespace

TEST(HermitianEigen, PauliX) {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const auto eig = hermitian_eigen(x);
  EXPECT_NEAR(eig.values[0], -1.0, 1e-14);
  EXPECT_NEAR(eig.values[1], 1.0, 1e-14);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(eig.vectors(0, 1) - Complex(r)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(eig.vectors(1, 1) - Complex(r)), 0.0, 1e-14);
}

TEST(HermitianEigen, DegenerateIdentityIsOneCluster) {
  const auto eig = hermitian_eigen(identity(4));
  EXPECT_EQ(eig.cluster_count(), 1u);
  EXPECT_EQ(eig.cluster_size(0), 4u);
  EXPECT_NEAR(eig.cluster_value(0), 1.0, 1e-15);
  EXPECT_TRUE(eig.cluster_basis(0).isUnitary(1e-12));
}

TEST(HermitianEigen, MatchesJacobiOracleOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = 2 + trial % 7;
    const auto h = oracle::random_hermitian(rng, n);
    const auto eig = hermitian_eigen(h);
    const auto ref = oracle::jacobi_eigenvalues(h);
    for (Eigen::Index k = 0; k < n; ++k) {
      EXPECT_NEAR(eig.values[k], ref[static_cast<std::size_t>(k)], 1e-10 * scale_of(h));
    }
    const ComplexMatrix back = eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    EXPECT_LT((back - h).cwiseAbs().maxCoeff(), 1e-12 * scale_of(h));
    EXPECT_TRUE(eig.vectors.isUnitary(1e-12));
  }
}

TEST(HermitianEigen, PhaseConventionFirstLargeComponentRealPositive) {
  std::mt19937_64 rng(5);
  const auto eig = hermitian_eigen(oracle::random_hermitian(rng, 5));
  for (Eigen::Index c = 0; c < eig.vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < eig.vectors.rows(); ++r) {
      if (std::abs(eig.vectors(r, c)) > tol::phase_pivot) {
        EXPECT_NEAR(eig.vectors(r, c).imag(), 0.0, 1e-15);
        EXPECT_GT(eig.vectors(r, c).real(), 0.0);
        break;
      }
    }
  }
}

TEST(HermitianEigen, Deterministic) {
  std::mt19937_64 rng(8);
  const auto h = oracle::random_hermitian(rng, 6);
  const auto a = hermitian_eigen(h);
  const auto b = hermitian_eigen(h);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(HermitianEigen, RejectsNonHermitianAndNonSquare) {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  EXPECT_EQ(kind_of([&] { hermitian_eigen(m); }), ErrorKind::NotHermitian);
  EXPECT_EQ(kind_of([&] { hermitian_eigen(ComplexMatrix::Zero(2, 3)); }), ErrorKind::DimensionMismatch);
}

TEST(UnitaryExp, ZeroAngleIsIdentity) {
  std::mt19937_64 rng(1);
  const auto h = oracle::random_hermitian(rng, 4);
  EXPECT_LT((unitary_exp(h, 0.0) - identity(4)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(UnitaryExp, PauliYQuarterTurnRotatesBasisVector) {
  const auto s = oracle::pauli_halves();
  const ComplexMatrix u = unitary_exp(s[1], M_PI / 2);
  ComplexVector up(2);
  up << 1, 0;
  const ComplexVector out = u * up;
  EXPECT_NEAR(std::abs(out[0]), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(std::abs(out[1]), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(UnitaryExp, MatchesTaylorOracle) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = oracle::random_hermitian(rng, 2 + trial % 5);
    const double theta = angle(rng);
    const auto u = unitary_exp(h, theta);
    EXPECT_LT((u - oracle::expm_taylor(h, theta)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_TRUE(u.isUnitary(1e-12));
    EXPECT_LT((u * unitary_exp(h, -theta) - identity(static_cast<std::size_t>(h.rows()))).cwiseAbs().maxCoeff(),
              1e-12);
  }
}

TEST(Kron, MatchesIndexFormula) {
  std::mt19937_64 rng(3);
  const auto a = oracle::random_hermitian(rng, 2);
  const auto b = oracle::random_hermitian(rng, 3);
  EXPECT_EQ(kron(a, b), oracle::kron_naive(a, b));
  EXPECT_EQ(kron(identity(2), identity(3)), identity(6));
}

TEST(Commutator, PauliAlgebra) {
  const auto s = oracle::pauli_halves();
  const ComplexMatrix c = commutator(s[0], s[1]);
  EXPECT_LT((c - Complex(0, 1) * s[2]).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((anticommutator(s[0], s[0]) - 0.5 * identity(2)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(kind_of([&] { commutator(identity(2), identity(3)); }), ErrorKind::DimensionMismatch);
}

TEST(SimultaneousEigenbasis, CartanOfGellMann) {
  const auto l = oracle::gell_mann_halves();
  const std::vector<ComplexMatrix> cartan{l[2], l[7]};
  const auto sb = simultaneous_eigenbasis(cartan);
  EXPECT_EQ(sb.block_count(), 3u);
  EXPECT_TRUE(sb.basis.isUnitary(1e-12));
  for (Eigen::Index c = 0; c < 3; ++c) {
    for (std::size_t k = 0; k < cartan.size(); ++k) {
      const ComplexVector v = sb.basis.col(c);
      EXPECT_LT((cartan[k] * v - sb.weights[static_cast<std::size_t>(c)][k] * v).norm(), 1e-12);
    }
  }
}

TEST(SimultaneousEigenbasis, RefinesDegenerateSpaces) {
  // diag(1,1,2) and a matrix splitting the degenerate pair.
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a.diagonal() << 1, 1, 2;
  ComplexMatrix b = ComplexMatrix::Zero(3, 3);
  b(0, 1) = 1;
  b(1, 0) = 1;
  const std::vector<ComplexMatrix> ms{a, b};
  const auto sb = simultaneous_eigenbasis(ms);
  EXPECT_EQ(sb.block_count(), 3u);
}

TEST(SimultaneousEigenbasis, RejectsNonCommuting) {
  const auto s = oracle::pauli_halves();
  const std::vector<ComplexMatrix> ms{s[0], s[1]};
  EXPECT_EQ(kind_of([&] { simultaneous_eigenbasis(ms); }), ErrorKind::NonCommuting);
}

TEST(FixPhase, MakesPivotRealPositive) {
  ComplexVector v(3);
  v << Complex(0, 0), Complex(0, -2), Complex(1, 1);
  fix_phase(v);
  EXPECT_NEAR(v[1].real(), 2.0, 1e-15);
  EXPECT_NEAR(v[1].imag(), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v[2]), std::sqrt(2.0), 1e-15);
}
