#include <algorithm>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "entwined/error.hpp"
#include "entwined/representations.hpp"
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

const std::vector<IrrepLabel>& su3_catalog() {
  static const auto c = build_irrep_catalog("su3", 27);
  return c;
}

std::map<std::string, std::size_t> multiplicities(const DecompositionResult& r) {
  std::map<std::string, std::size_t> out;
  for (const auto& p : r.parts) out[p.label.name] += p.multiplicity;
  return out;
}

double max_commutator_defect(const GeneratorSet& rep) {
  const auto f = structure_constants(rep);
  double worst = 0.0;
  for (std::size_t a = 0; a < rep.d(); ++a)
    for (std::size_t b = 0; b < rep.d(); ++b) {
      ComplexMatrix diff = commutator(rep[a], rep[b]);
      for (std::size_t c = 0; c < rep.d(); ++c) diff -= Complex(0, f(a, b, c)) * rep[c];
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  return worst;
}

std::vector<Weight> fundamental_weights(double sign) {
  const double s3 = std::sqrt(3.0);
  return {{-0.5, sign / (2 * s3)}, {0.0, -sign * 2 / (2 * s3)}, {0.5, sign / (2 * s3)}};
}

} // namespace

TEST(Su2SpinIrrep, SatisfiesAngularMomentumAlgebra) {
  for (std::size_t d = 1; d <= 7; ++d) {
    const auto rep = su2_spin_irrep(d);
    ASSERT_EQ(rep.d(), 3u);
    const double j = (static_cast<double>(d) - 1.0) / 2.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        ComplexMatrix expected = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (int c = 0; c < 3; ++c) expected += Complex(0, oracle::epsilon(a, b, c)) * rep[c];
        EXPECT_LT((commutator(rep[a], rep[b]) - expected).cwiseAbs().maxCoeff(), 1e-12);
      }
    const auto c2 = casimir_scalar(quadratic_casimir(rep));
    EXPECT_NEAR(c2.value, j * (j + 1), 1e-12);
    EXPECT_LT(c2.deviation, 1e-12);
    const auto w = weights(rep, cartan_indices("su2"));
    for (std::size_t k = 0; k < d; ++k) EXPECT_NEAR(w[k][0], -j + static_cast<double>(k), 1e-12);
  }
  EXPECT_EQ(kind_of([] { su2_spin_irrep(0); }), ErrorKind::BadParameter);
}

TEST(Su2SpinIrrep, DoubletIsFundamental) {
  EXPECT_TRUE(rep_equivalent(su2_spin_irrep(2), su_fundamental(2)));
}

TEST(AdjointRep, SU3IsEightDimensionalRepresentation) {
  const auto f = structure_constants(su_fundamental(3));
  const auto adj = adjoint_rep(f);
  EXPECT_EQ(adj.d(), 8u);
  EXPECT_EQ(adj.d_r(), 8u);
  EXPECT_LT(max_commutator_defect(adj), 1e-12);
  const auto c2 = casimir_scalar(quadratic_casimir(adj));
  EXPECT_NEAR(c2.value, 3.0, 1e-10);
  EXPECT_LT(c2.deviation, 1e-10);
  for (std::size_t a = 0; a < 8; ++a) EXPECT_LT(hermiticity_residual(adj[a]), 1e-15);
}

TEST(AdjointRep, RejectsTensorViolatingJacobi) {
  auto f = structure_constants(su_fundamental(3));
  f.f(0, 1, 2) = 2.0;
  f.f(1, 0, 2) = -2.0;
  EXPECT_EQ(kind_of([&] { adjoint_rep(f); }), ErrorKind::JacobiViolation);
}

TEST(ConjugateRep, WeightsNegate) {
  const auto fund = su_fundamental(3);
  const auto bar = conjugate_rep(fund);
  auto w = weights(fund, cartan_indices("su3"));
  for (auto& v : w)
    for (auto& x : v) x = -x;
  EXPECT_TRUE(same_weights(w, weights(bar, cartan_indices("su3")), 1e-12));
  EXPECT_LT(max_commutator_defect(bar), 1e-12);
}

TEST(Casimirs, FundamentalAndConjugate) {
  const auto dt = invariant_d_tensor("su3");
  const auto fund = su_fundamental(3);
  const auto bar = conjugate_rep(fund);
  EXPECT_NEAR(casimir_scalar(quadratic_casimir(fund)).value, 4.0 / 3.0, 1e-10);
  EXPECT_NEAR(casimir_scalar(quadratic_casimir(bar)).value, 4.0 / 3.0, 1e-10);
  EXPECT_NEAR(casimir_scalar(cubic_casimir(fund, dt)).value, 10.0 / 9.0, 1e-10);
  EXPECT_NEAR(casimir_scalar(cubic_casimir(bar, dt)).value, -10.0 / 9.0, 1e-10);
  EXPECT_NEAR(casimir_scalar(quadratic_casimir(su_fundamental(2))).value, 0.75, 1e-12);
  EXPECT_EQ(kind_of([&] { cubic_casimir(su_fundamental(2), dt); }), ErrorKind::AlgebraMismatch);
}

TEST(Casimirs, QuadraticFormulaForSUN) {
  for (int n = 2; n <= 5; ++n) {
    const auto c2 = casimir_scalar(quadratic_casimir(su_fundamental(n)));
    EXPECT_NEAR(c2.value, (n * n - 1.0) / (2.0 * n), 1e-12);
    EXPECT_LT(c2.deviation, 1e-12);
  }
}

TEST(Weights, MatchPublishedTables) {
  const auto cartan = cartan_indices("su3");
  EXPECT_TRUE(same_weights(weights(su_fundamental(3), cartan), fundamental_weights(1.0), 1e-10));
  EXPECT_TRUE(same_weights(weights(conjugate_rep(su_fundamental(3)), cartan), fundamental_weights(-1.0), 1e-10));
  const double h = std::sqrt(3.0) / 2;
  const std::vector<Weight> adj{{-1, 0}, {-0.5, -h}, {-0.5, h}, {0, 0}, {0, 0}, {0.5, -h}, {0.5, h}, {1, 0}};
  EXPECT_TRUE(same_weights(weights(adjoint_rep(structure_constants(su_fundamental(3))), cartan), adj, 1e-10));
}

TEST(Weights, IsospinOnFundamental) {
  // I^2 = t1^2 + t2^2 + t3^2 is diagonal in the weight basis: 3/4 on the two t3 = +-1/2 states, 0 on the third.
  const auto fund = su_fundamental(3);
  const ComplexMatrix i2 = fund[0] * fund[0] + fund[1] * fund[1] + fund[2] * fund[2];
  EXPECT_NEAR(i2(0, 0).real(), 0.75, 1e-12);
  EXPECT_NEAR(i2(1, 1).real(), 0.75, 1e-12);
  EXPECT_NEAR(i2(2, 2).real(), 0.0, 1e-12);
}

TEST(Weights, IsospinSpectrumOnAdjoint) {
  const auto adj = adjoint_rep(structure_constants(su_fundamental(3)));
  const ComplexMatrix i2 = adj[0] * adj[0] + adj[1] * adj[1] + adj[2] * adj[2];
  const auto values = oracle::jacobi_eigenvalues(i2);
  const std::vector<double> expected{0, 0.75, 0.75, 0.75, 0.75, 2, 2, 2};
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(values[k], expected[k], 1e-9);
}

TEST(RepEquivalent, ConjugationAndChangeOfBasis) {
  const auto f3 = su_fundamental(3);
  EXPECT_FALSE(rep_equivalent(f3, conjugate_rep(f3)));
  EXPECT_TRUE(rep_equivalent(su_fundamental(2), conjugate_rep(su_fundamental(2))));
  std::mt19937_64 rng(7);
  auto rotated = f3;
  const auto u = oracle::random_unitary(rng, 3);
  for (auto& t : rotated.generators) t = u * t * u.adjoint();
  EXPECT_TRUE(rep_equivalent(f3, rotated));
  EXPECT_FALSE(rep_equivalent(f3, su_fundamental(2)));
}

TEST(TensorRep, GeneratorsAreSums) {
  const auto a = su_fundamental(2);
  const auto b = su2_spin_irrep(3);
  const auto t = tensor_rep(a, b);
  ASSERT_EQ(t.d_r(), 6u);
  for (std::size_t k = 0; k < 3; ++k) {
    const ComplexMatrix expected = oracle::kron_naive(a[k], ComplexMatrix::Identity(3, 3)) +
                                   oracle::kron_naive(ComplexMatrix::Identity(2, 2), b[k]);
    EXPECT_LT((t[k] - expected).cwiseAbs().maxCoeff(), 1e-15);
  }
  EXPECT_EQ(kind_of([] { tensor_rep(su_fundamental(2), su_fundamental(3)); }), ErrorKind::AlgebraMismatch);
}

TEST(Decompose, SU2Branchings) {
  const auto two = su_fundamental(2);
  const auto m1 = multiplicities(decompose(tensor_rep(two, two)));
  EXPECT_EQ(m1, (std::map<std::string, std::size_t>{{"1", 1}, {"3", 1}}));
  const auto m2 = multiplicities(decompose(tensor_rep(two, su2_spin_irrep(3))));
  EXPECT_EQ(m2, (std::map<std::string, std::size_t>{{"2", 1}, {"4", 1}}));
}

TEST(Decompose, SU3Branchings) {
  const auto three = su_fundamental(3);
  const auto bar = conjugate_rep(three);
  const auto adj = adjoint_rep(structure_constants(three));
  const auto& cat = su3_catalog();
  EXPECT_EQ(multiplicities(decompose(tensor_rep(three, three), cat)),
            (std::map<std::string, std::size_t>{{"6", 1}, {"3bar", 1}}));
  EXPECT_EQ(multiplicities(decompose(tensor_rep(three, bar), cat)),
            (std::map<std::string, std::size_t>{{"8", 1}, {"1", 1}}));
  const auto r = decompose(tensor_rep(adj, adj), cat);
  EXPECT_EQ(multiplicities(r),
            (std::map<std::string, std::size_t>{{"27", 1}, {"10", 1}, {"10bar", 1}, {"8", 2}, {"1", 1}}));
  EXPECT_LE(r.residual, 1e-8);
  EXPECT_EQ(r.total_dimension(), 64u);
}

TEST(Decompose, IsometriesBlockDiagonalize) {
  const auto three = su_fundamental(3);
  const auto rep = tensor_rep(three, conjugate_rep(three));
  const auto r = decompose(rep, su3_catalog());
  ComplexMatrix w(9, 0);
  for (const auto& p : r.parts) {
    ComplexMatrix next(9, w.cols() + p.isometry.cols());
    next << w, p.isometry;
    w = next;
    for (std::size_t a = 0; a < rep.d(); ++a) {
      const ComplexMatrix inside = p.isometry * p.isometry.adjoint() * rep[a] * p.isometry;
      EXPECT_LT((rep[a] * p.isometry - inside).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
  ASSERT_EQ(w.cols(), 9);
  EXPECT_TRUE(w.isUnitary(1e-10));
}

TEST(Decompose, TraceOfCasimirIsConserved) {
  // tr C2(R1 x R2) = d2 tr C2(R1) + d1 tr C2(R2); the parts must account for it.
  const auto three = su_fundamental(3);
  const auto adj = adjoint_rep(structure_constants(three));
  for (const auto& [r1, r2] : {std::pair{three, adj}, std::pair{three, three}, std::pair{adj, adj}}) {
    const auto r = decompose(tensor_rep(r1, r2), su3_catalog());
    const double expected = static_cast<double>(r2.d_r()) * quadratic_casimir(r1).trace().real() +
                            static_cast<double>(r1.d_r()) * quadratic_casimir(r2).trace().real();
    double got = 0.0;
    for (const auto& p : r.parts) got += static_cast<double>(p.multiplicity * p.label.d_r) * p.label.c2;
    EXPECT_NEAR(got, expected, 1e-8);
  }
}

TEST(Decompose, SelfCataloguingOverloadMatches) {
  const auto three = su_fundamental(3);
  const auto rep = tensor_rep(three, three);
  EXPECT_EQ(multiplicities(decompose(rep)), multiplicities(decompose(rep, su3_catalog())));
}

TEST(Decompose, UnknownIrrepWhenCatalogTooSmall) {
  const auto three = su_fundamental(3);
  const auto small = build_irrep_catalog("su3", 3);
  EXPECT_EQ(kind_of([&] { decompose(tensor_rep(three, three), small); }), ErrorKind::UnknownIrrep);
}

TEST(Decompose, IrreducibleInputIsSinglePart) {
  const auto r = decompose(su_fundamental(3), su3_catalog());
  ASSERT_EQ(r.parts.size(), 1u);
  EXPECT_EQ(r.parts[0].label.name, "3");
  EXPECT_EQ(r.parts[0].multiplicity, 1u);
}

TEST(Catalog, SU3MatchesDynkinLabelFormulas) {
  const auto& cat = su3_catalog();
  const auto ref = oracle::su3_irreps_up_to(27);
  ASSERT_EQ(cat.size(), ref.size());
  std::vector<bool> used(cat.size(), false);
  for (const auto& r : ref) {
    bool found = false;
    for (std::size_t i = 0; i < cat.size() && !found; ++i) {
      if (!used[i] && static_cast<int>(cat[i].d_r) == r.dim() && std::abs(cat[i].c2 - r.c2()) < 1e-9 &&
          std::abs(cat[i].c3 - r.c3()) < 1e-9) {
        used[i] = found = true;
      }
    }
    EXPECT_TRUE(found) << "(" << r.p << "," << r.q << ")";
  }
}

TEST(Catalog, EveryIrrepHasScalarCasimir) {
  for (const auto& e : build_irrep_catalog_with_representatives("su3", 27)) {
    EXPECT_LE(casimir_scalar(quadratic_casimir(e.representative)).deviation, 1e-9) << e.label.name;
  }
  for (const auto& e : build_irrep_catalog_with_representatives("su2", 9)) {
    EXPECT_LE(casimir_scalar(quadratic_casimir(e.representative)).deviation, 1e-9) << e.label.name;
  }
}

TEST(Catalog, NamesAndLookup) {
  const auto& cat = su3_catalog();
  for (const char* name : {"1", "3", "3bar", "6", "6bar", "8", "10", "10bar", "15", "15bar", "27"}) {
    EXPECT_NE(find_irrep(cat, name), nullptr) << name;
  }
  EXPECT_EQ(find_irrep(cat, "9"), nullptr);
  const auto* ten = find_irrep(cat, "10");
  ASSERT_NE(ten, nullptr);
  EXPECT_GT(ten->c3, 0.0);
  EXPECT_EQ(kind_of([] { build_irrep_catalog("su4", 10); }), ErrorKind::Unsupported);
}
