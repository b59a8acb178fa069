#include <random>

#include <gtest/gtest.h>

#include "entwined/error.hpp"
#include "entwined/lie.hpp"
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

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) { return (a * b).trace().real(); }

} // namespace

TEST(AlgebraId, CanonicalForms) {
  EXPECT_EQ(canonical_algebra_id("su2"), "su(2)");
  EXPECT_EQ(canonical_algebra_id("su(3)"), "su(3)");
  EXPECT_EQ(canonical_algebra_id("su5"), "su(5)");
  EXPECT_EQ(su_order("su(4)"), 4);
  EXPECT_EQ(kind_of([] { canonical_algebra_id("so3"); }), ErrorKind::UnknownAlgebra);
  EXPECT_EQ(kind_of([] { canonical_algebra_id("su1"); }), ErrorKind::UnknownAlgebra);
}

TEST(SuFundamental, SU2IsPauliHalves) {
  const auto rep = su_fundamental(2);
  const auto ref = oracle::pauli_halves();
  ASSERT_EQ(rep.d(), 3u);
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_LT((rep[a] - ref[a]).cwiseAbs().maxCoeff(), 1e-15) << a;
  }
  EXPECT_DOUBLE_EQ(rep.trace_index, 0.5);
}

TEST(SuFundamental, SU3IsGellMannHalves) {
  const auto rep = su_fundamental(3);
  const auto ref = oracle::gell_mann_halves();
  ASSERT_EQ(rep.d(), 8u);
  for (std::size_t a = 0; a < 8; ++a) {
    EXPECT_LT((rep[a] - ref[a]).cwiseAbs().maxCoeff(), 1e-15) << a;
  }
}

TEST(SuFundamental, TraceOrthonormalHermitianTraceless) {
  for (int n = 2; n <= 6; ++n) {
    const auto rep = su_fundamental(n);
    ASSERT_EQ(rep.d(), static_cast<std::size_t>(n * n - 1));
    for (std::size_t a = 0; a < rep.d(); ++a) {
      EXPECT_LT(hermiticity_residual(rep[a]), 1e-15);
      EXPECT_LT(std::abs(rep[a].trace()), 1e-14);
      for (std::size_t b = 0; b < rep.d(); ++b) {
        EXPECT_NEAR(trace_product(rep[a], rep[b]), a == b ? 0.5 : 0.0, 1e-14);
      }
    }
  }
  EXPECT_EQ(kind_of([] { su_fundamental(1); }), ErrorKind::BadParameter);
}

TEST(SuFundamental, CartanIndicesAreDiagonal) {
  for (int n = 2; n <= 5; ++n) {
    const auto rep = su_fundamental(n);
    const auto idx = su_cartan_indices(n);
    EXPECT_EQ(idx.size(), static_cast<std::size_t>(n - 1));
    for (auto i : idx) {
      ComplexMatrix off = rep[i];
      off.diagonal().setZero();
      EXPECT_EQ(off.cwiseAbs().maxCoeff(), 0.0);
    }
  }
  EXPECT_EQ(su_cartan_indices(3), (std::vector<std::size_t>{2, 7}));
}

TEST(StructureConstants, SU2IsLeviCivita) {
  const auto f = structure_constants(su_fundamental(2));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) EXPECT_NEAR(f(a, b, c), oracle::epsilon(a, b, c), 1e-14);
}

TEST(StructureConstants, SU3MatchesPublishedTable) {
  const auto f = structure_constants(su_fundamental(3));
  const auto table = oracle::su3_f_table();
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int c = 0; c < 8; ++c) EXPECT_NEAR(f(a, b, c), oracle::f_from_table(table, a, b, c), 1e-12);
}

TEST(StructureConstants, AntisymmetricAndJacobi) {
  for (int n = 2; n <= 5; ++n) {
    const auto f = structure_constants(su_fundamental(n));
    EXPECT_LE(antisymmetry_residual(f), 1e-12) << n;
    EXPECT_LE(jacobi_residual(f), 1e-12) << n;
  }
}

TEST(StructureConstants, InvariantUnderUnitaryChangeOfBasis) {
  std::mt19937_64 rng(4);
  auto rep = su_fundamental(3);
  const auto f0 = structure_constants(rep);
  const auto u = oracle::random_unitary(rng, 3);
  for (auto& t : rep.generators) t = u * t * u.adjoint();
  const auto f1 = structure_constants(rep);
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b)
      for (std::size_t c = 0; c < 8; ++c) EXPECT_NEAR(f0(a, b, c), f1(a, b, c), 1e-10);
}

TEST(StructureConstants, RejectsNonClosedSet) {
  auto rep = su_fundamental(3);
  rep.generators.pop_back();
  EXPECT_EQ(kind_of([&] { structure_constants(rep); }), ErrorKind::NotClosed);
}

TEST(JacobiResidual, DetectsCorruptedTensor) {
  auto f = structure_constants(su_fundamental(3));
  f.f(0, 1, 2) += 0.1;
  f.f(1, 0, 2) -= 0.1;
  EXPECT_GT(jacobi_residual(f), 1e-3);
}

TEST(DSymbols, SU3MatchesPublishedTable) {
  const auto d = d_symbols(su_fundamental(3));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int c = 0; c < 8; ++c) EXPECT_NEAR(d(a, b, c), oracle::d_from_table(a, b, c), 1e-12);
}

TEST(DSymbols, RequiresHalfNormalization) {
  auto rep = su_fundamental(3);
  for (auto& t : rep.generators) t *= 2.0;
  rep.trace_index = 2.0;
  EXPECT_EQ(kind_of([&] { d_symbols(rep); }), ErrorKind::WrongNormalization);
}

TEST(AlgebraCatalog, ClassicalDimensionsMatchRootCounts) {
  for (int n = 1; n <= 10; ++n) {
    EXPECT_EQ(algebra_catalog(AlgebraFamily::A, n).dimension, oracle::classical_dimension('A', n));
    EXPECT_EQ(algebra_catalog(AlgebraFamily::B, n).dimension, oracle::classical_dimension('B', n));
    EXPECT_EQ(algebra_catalog(AlgebraFamily::C, n).dimension, oracle::classical_dimension('C', n));
    if (n >= 3) {
      EXPECT_EQ(algebra_catalog(AlgebraFamily::D, n).dimension, oracle::classical_dimension('D', n));
    }
    EXPECT_EQ(algebra_catalog(AlgebraFamily::A, n).rank, n);
  }
}

TEST(AlgebraCatalog, Examples) {
  const auto a2 = algebra_catalog(AlgebraFamily::A, 2);
  EXPECT_EQ(a2.rank, 2);
  EXPECT_EQ(a2.dimension, 8);
  EXPECT_EQ(a2.alt_name, "su(3)");
  EXPECT_EQ(algebra_catalog(AlgebraFamily::D, 3).dimension, algebra_catalog(AlgebraFamily::A, 3).dimension);
  EXPECT_EQ(algebra_catalog(AlgebraFamily::B, 2).alt_name, "o(5)");
  EXPECT_EQ(algebra_catalog(AlgebraFamily::C, 2).alt_name, "usp(4)");
  const auto e8 = algebra_catalog(AlgebraFamily::E8);
  EXPECT_EQ(e8.rank, 8);
  EXPECT_EQ(e8.dimension, 248);
}

TEST(AlgebraCatalog, Exceptional) {
  EXPECT_EQ(algebra_catalog(AlgebraFamily::G2).dimension, 14);
  EXPECT_EQ(algebra_catalog(AlgebraFamily::F4).dimension, 52);
  EXPECT_EQ(algebra_catalog(AlgebraFamily::E6).dimension, 78);
  EXPECT_EQ(algebra_catalog(AlgebraFamily::E7).dimension, 133);
  EXPECT_EQ(algebra_catalog(AlgebraFamily::E8).dimension, 248);
}

TEST(AlgebraCatalog, BadParameters) {
  EXPECT_EQ(kind_of([] { algebra_catalog(AlgebraFamily::A, 0); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { algebra_catalog(AlgebraFamily::D, 2); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { algebra_catalog(AlgebraFamily::G2, 3); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { parse_family("x"); }), ErrorKind::BadParameter);
  EXPECT_EQ(parse_family("e8"), AlgebraFamily::E8);
}

TEST(VerifyGeneratorSet, FundamentalsPass) {
  for (int n = 2; n <= 4; ++n) {
    const auto report = verify_generator_set(su_fundamental(n));
    EXPECT_TRUE(report.ok());
    ASSERT_EQ(report.checks.size(), 4u);
    for (const auto& c : report.checks) {
      EXPECT_LE(c.residual, 1e-12) << c.name;
    }
  }
}

TEST(VerifyGeneratorSet, FlagsNonHermitianGenerator) {
  auto rep = su_fundamental(3);
  ComplexMatrix upper = rep[1];
  upper(1, 0) = 0.0;
  rep.generators[1] = upper;
  const auto report = verify_generator_set(rep);
  EXPECT_FALSE(report.ok());
  bool hermiticity_failed = false;
  for (const auto& c : report.checks) {
    if (c.name == "hermiticity") hermiticity_failed = !c.passed();
  }
  EXPECT_TRUE(hermiticity_failed);
}

TEST(VerifyGeneratorSet, EmptyIsDegenerate) {
  const auto report = verify_generator_set(GeneratorSet{});
  EXPECT_TRUE(report.degenerate);
  EXPECT_FALSE(report.ok());
}
