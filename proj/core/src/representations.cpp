#include "entwined/representations.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>

#include "entwined/error.hpp"
#include "entwined/random.hpp"

namespace entwined {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kJacobiTol = 1e-10;
constexpr double kStructureMatchTol = 1e-10;
constexpr double kWeightEquivalenceTol = 1e-8;
// Kept eigenvalues of the commutant Gram operator (squared singular values),
// relative to max(1, largest eigenvalue).
constexpr double kCommutantNullTol = 1e-9;

double trace_index_of(const std::vector<ComplexMatrix>& gens) {
  if (gens.empty()) {
    return 0.0;
  }
  return (gens.front().transpose().cwiseProduct(gens.front())).sum().real();
}

bool uses_cubic_invariant(const std::string& algebra_id) { return su_order(algebra_id) >= 3; }

void require_same_algebra(const GeneratorSet& r1, const GeneratorSet& r2, const char* what) {
  if (canonical_algebra_id(r1.algebra_id) != canonical_algebra_id(r2.algebra_id) || r1.d() != r2.d()) {
    throw Error(ErrorKind::AlgebraMismatch, std::string(what) + ": representations of different algebras (" +
                                                r1.algebra_id + " vs " + r2.algebra_id + ")");
  }
  if (r1.trace_index > 1e-10 && r2.trace_index > 1e-10) {
    const auto f1 = structure_constants(r1);
    const auto f2 = structure_constants(r2);
    double diff = 0.0;
    for (std::size_t a = 0; a < f1.d(); ++a) {
      for (std::size_t b = 0; b < f1.d(); ++b) {
        for (std::size_t c = 0; c < f1.d(); ++c) {
          diff = std::max(diff, std::abs(f1(a, b, c) - f2(a, b, c)));
        }
      }
    }
    if (diff > kStructureMatchTol) {
      throw Error(ErrorKind::AlgebraMismatch, std::string(what) +
                                                  ": structure constants differ by " + std::to_string(diff));
    }
  }
}

// Commutant of a representation restricted to a subspace on which it acts as
// `rep` (d_r = D). Returns the irreducible invariant blocks as D x k isometries.
std::vector<ComplexMatrix> split_by_commutant(const GeneratorSet& rep, Rng& rng) {
  const auto dim = static_cast<Eigen::Index>(rep.d_r());
  if (dim == 1) {
    return {ComplexMatrix::Identity(1, 1)};
  }

  // Every commutant element commutes with the Cartan generators, so it is block
  // diagonal on the joint weight spaces; parametrize it there.
  std::vector<ComplexMatrix> cartan;
  for (auto idx : cartan_indices(rep.algebra_id)) {
    cartan.push_back(rep[idx]);
  }
  const auto wb = simultaneous_eigenbasis(cartan);
  const ComplexMatrix& w = wb.basis;

  struct Unknown {
    Eigen::Index i;
    Eigen::Index j;
  };
  std::vector<Unknown> unknowns;
  for (std::size_t b = 0; b < wb.block_count(); ++b) {
    const auto begin = static_cast<Eigen::Index>(wb.block_begin(b));
    const auto end = static_cast<Eigen::Index>(wb.block_end(b));
    for (auto i = begin; i < end; ++i) {
      for (auto j = begin; j < end; ++j) {
        unknowns.push_back({i, j});
      }
    }
  }
  const auto k = static_cast<Eigen::Index>(unknowns.size());

  // Gram matrix G_uv = sum_a <[E_u, A_a], [E_v, A_a]> with E_u = e_i e_j^T and
  // A_a the generators in the weight basis, evaluated in closed form.
  ComplexMatrix gram = ComplexMatrix::Zero(k, k);
  for (const auto& t : rep.generators) {
    const ComplexMatrix a = w.adjoint() * t * w;
    const ComplexMatrix aad = a * a.adjoint();
    const ComplexMatrix ada = a.adjoint() * a;
    for (Eigen::Index u = 0; u < k; ++u) {
      const auto [i, j] = unknowns[static_cast<std::size_t>(u)];
      for (Eigen::Index v = 0; v < k; ++v) {
        const auto [p, q] = unknowns[static_cast<std::size_t>(v)];
        Complex g = -std::conj(a(j, q)) * a(i, p) - std::conj(a(p, i)) * a(q, j);
        if (i == p) g += aad(q, j);
        if (j == q) g += ada(i, p);
        gram(u, v) += g;
      }
    }
  }
  gram = 0.5 * (gram + gram.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::CommutantFailure, "commutant: Gram eigensolver failed");
  }
  const auto& lambda = solver.eigenvalues();
  const double cutoff = kCommutantNullTol * std::max(1.0, lambda.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index c = 0; c < k; ++c) {
    if (lambda[c] < cutoff) {
      null_cols.push_back(c);
    }
  }
  if (null_cols.empty()) {
    throw Error(ErrorKind::CommutantFailure, "commutant: empty null space (identity missing)");
  }
  if (null_cols.size() == 1) {
    return {ComplexMatrix::Identity(dim, dim)};
  }

  // Generic element: random complex combination of null vectors, Hermitian part.
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(k);
  for (auto c : null_cols) {
    const double re = 2.0 * uniform01(rng) - 1.0;
    const double im = 2.0 * uniform01(rng) - 1.0;
    y += Complex(re, im) * solver.eigenvectors().col(c);
  }
  ComplexMatrix x = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index u = 0; u < k; ++u) {
    x(unknowns[static_cast<std::size_t>(u)].i, unknowns[static_cast<std::size_t>(u)].j) = y[u];
  }
  x = 0.5 * (x + x.adjoint()).eval();
  x /= std::max(1e-300, x.norm());
  const auto eig = hermitian_eigen(x);

  std::vector<ComplexMatrix> blocks;
  for (std::size_t c = 0; c < eig.cluster_count(); ++c) {
    blocks.push_back(w * eig.cluster_basis(c));
  }
  return blocks;
}

double projected_closure_residual(const GeneratorSet& s, const StructureConstants* f) {
  if (f == nullptr) {
    return 0.0;
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < s.d(); ++a) {
    for (std::size_t b = a + 1; b < s.d(); ++b) {
      ComplexMatrix diff = commutator(s[a], s[b]);
      for (std::size_t c = 0; c < s.d(); ++c) {
        if ((*f)(a, b, c) != 0.0) {
          diff -= kI * (*f)(a, b, c) * s[c];
        }
      }
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

struct BlockScalars {
  double c2 = 0.0;
  double c3 = 0.0;
};

BlockScalars block_scalars(const GeneratorSet& s, const Tensor3* dt) {
  BlockScalars out;
  out.c2 = casimir_scalar(quadratic_casimir(s)).value;
  if (dt != nullptr) {
    out.c3 = casimir_scalar(cubic_casimir(s, *dt)).value;
  }
  return out;
}

bool scalar_match(double a, double b) { return std::abs(a - b) <= kCasimirMatchTol * std::max(1.0, std::abs(b)); }

std::vector<Weight> sorted_weights(std::vector<Weight> w) {
  std::sort(w.begin(), w.end());
  return w;
}

GeneratorSet trivial_rep(const std::string& algebra_id, std::size_t d) {
  GeneratorSet rep;
  rep.algebra_id = algebra_id;
  rep.generators.assign(d, ComplexMatrix::Zero(1, 1));
  rep.trace_index = 0.0;
  return rep;
}

void assign_su3_names(std::vector<CatalogEntry>& entries) {
  // Group by (dimension, conjugation class); order each group by C2.
  std::map<std::size_t, std::vector<CatalogEntry*>> by_dim;
  for (auto& e : entries) {
    by_dim[e.label.d_r].push_back(&e);
  }
  for (auto& [dim, group] : by_dim) {
    std::vector<CatalogEntry*> plain;
    std::vector<CatalogEntry*> barred;
    for (auto* e : group) {
      (e->label.c3 < -kCasimirMatchTol ? barred : plain).push_back(e);
    }
    auto by_c2 = [](const CatalogEntry* a, const CatalogEntry* b) { return a->label.c2 < b->label.c2; };
    std::sort(plain.begin(), plain.end(), by_c2);
    std::sort(barred.begin(), barred.end(), by_c2);
    // Self-conjugate and positive-C3 irreps share the unbarred name sequence;
    // a barred irrep takes the primes of its conjugate partner.
    for (std::size_t i = 0; i < plain.size(); ++i) {
      plain[i]->label.name = std::to_string(dim) + std::string(i, '\'');
    }
    for (auto* e : barred) {
      std::string base = std::to_string(dim) + "?";
      for (auto* p : plain) {
        if (scalar_match(p->label.c2, e->label.c2) && scalar_match(p->label.c3, -e->label.c3)) {
          base = p->label.name;
        }
      }
      e->label.name = base + "bar";
    }
  }
}

} // namespace

std::size_t DecompositionResult::total_dimension() const {
  std::size_t total = 0;
  for (const auto& p : parts) {
    total += p.multiplicity * p.label.d_r;
  }
  return total;
}

GeneratorSet su2_spin_irrep(std::size_t d_r) {
  if (d_r < 1) {
    throw Error(ErrorKind::BadParameter, "su2_spin_irrep: d_r must be >= 1");
  }
  const auto n = static_cast<Eigen::Index>(d_r);
  const double j = (static_cast<double>(d_r) - 1.0) / 2.0;
  ComplexMatrix raise = ComplexMatrix::Zero(n, n);
  ComplexMatrix t3 = ComplexMatrix::Zero(n, n);
  // Basis index i carries m = j - i.
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = j - static_cast<double>(i);
    t3(i, i) = m;
    if (i > 0) {
      raise(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
  }
  const ComplexMatrix lower = raise.adjoint();
  GeneratorSet rep;
  rep.algebra_id = "su(2)";
  rep.generators.push_back(0.5 * (raise + lower));
  rep.generators.push_back(Complex(0.0, -0.5) * (raise - lower));
  rep.generators.push_back(t3);
  rep.trace_index = j * (j + 1.0) * (2.0 * j + 1.0) / 3.0;
  return rep;
}

GeneratorSet adjoint_rep(const StructureConstants& f) {
  const double residual = jacobi_residual(f);
  if (residual > kJacobiTol) {
    throw Error(ErrorKind::JacobiViolation,
                "adjoint_rep: Jacobi residual " + std::to_string(residual) + " exceeds tolerance");
  }
  const auto d = static_cast<Eigen::Index>(f.d());
  GeneratorSet rep;
  rep.algebra_id = f.algebra_id;
  for (Eigen::Index a = 0; a < d; ++a) {
    ComplexMatrix t(d, d);
    for (Eigen::Index b = 0; b < d; ++b) {
      for (Eigen::Index c = 0; c < d; ++c) {
        t(b, c) = -kI * f(static_cast<std::size_t>(a), static_cast<std::size_t>(b), static_cast<std::size_t>(c));
      }
    }
    rep.generators.push_back(std::move(t));
  }
  rep.trace_index = trace_index_of(rep.generators);
  return rep;
}

GeneratorSet conjugate_rep(const GeneratorSet& rep) {
  GeneratorSet out;
  out.algebra_id = rep.algebra_id;
  out.trace_index = rep.trace_index;
  out.generators.reserve(rep.d());
  for (const auto& t : rep.generators) {
    out.generators.push_back(-t.conjugate());
  }
  return out;
}

GeneratorSet tensor_rep(const GeneratorSet& r1, const GeneratorSet& r2) {
  require_same_algebra(r1, r2, "tensor_rep");
  const auto n1 = static_cast<std::size_t>(r1.d_r());
  const auto n2 = static_cast<std::size_t>(r2.d_r());
  const ComplexMatrix i1 = identity(n1);
  const ComplexMatrix i2 = identity(n2);
  GeneratorSet out;
  out.algebra_id = r1.algebra_id;
  for (std::size_t a = 0; a < r1.d(); ++a) {
    out.generators.push_back(kron(r1[a], i2) + kron(i1, r2[a]));
  }
  out.trace_index = r1.trace_index * static_cast<double>(n2) + r2.trace_index * static_cast<double>(n1);
  return out;
}

GeneratorSet restrict_rep(const GeneratorSet& rep, const ComplexMatrix& isometry) {
  GeneratorSet out;
  out.algebra_id = rep.algebra_id;
  for (const auto& t : rep.generators) {
    ComplexMatrix s = isometry.adjoint() * t * isometry;
    out.generators.push_back(0.5 * (s + s.adjoint()));
  }
  out.trace_index = trace_index_of(out.generators);
  return out;
}

ComplexMatrix quadratic_casimir(const GeneratorSet& rep) {
  const auto n = static_cast<Eigen::Index>(rep.d_r());
  ComplexMatrix c = ComplexMatrix::Zero(n, n);
  for (const auto& t : rep.generators) {
    c.noalias() += t * t;
  }
  return c;
}

ComplexMatrix cubic_casimir(const GeneratorSet& rep, const Tensor3& dt) {
  if (dt.d() != rep.d()) {
    throw Error(ErrorKind::AlgebraMismatch, "cubic_casimir: d-tensor has " + std::to_string(dt.d()) +
                                                " indices, representation has " + std::to_string(rep.d()) +
                                                " generators");
  }
  const auto n = static_cast<Eigen::Index>(rep.d_r());
  const auto d = rep.d();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  // C3 = sum_c (sum_a t_a (sum_b d_abc t_b)) t_c
  for (std::size_t c = 0; c < d; ++c) {
    ComplexMatrix inner = ComplexMatrix::Zero(n, n);
    bool any = false;
    for (std::size_t a = 0; a < d; ++a) {
      ComplexMatrix mix = ComplexMatrix::Zero(n, n);
      bool nonzero = false;
      for (std::size_t b = 0; b < d; ++b) {
        if (dt(a, b, c) != 0.0) {
          mix += dt(a, b, c) * rep[b];
          nonzero = true;
        }
      }
      if (nonzero) {
        inner.noalias() += rep[a] * mix;
        any = true;
      }
    }
    if (any) {
      out.noalias() += inner * rep[c];
    }
  }
  return out;
}

Tensor3 invariant_d_tensor(const std::string& algebra_id) {
  const int n = su_order(algebra_id);
  if (n == 2) {
    return Tensor3(3);
  }
  return d_symbols(su_fundamental(n));
}

std::vector<std::size_t> cartan_indices(const std::string& algebra_id) {
  return su_cartan_indices(su_order(algebra_id));
}

std::vector<Weight> weights(const GeneratorSet& rep, std::span<const std::size_t> cartan) {
  std::vector<ComplexMatrix> mats;
  for (auto idx : cartan) {
    if (idx >= rep.d()) {
      throw Error(ErrorKind::BadParameter, "weights: Cartan index " + std::to_string(idx) + " out of range");
    }
    mats.push_back(rep[idx]);
  }
  return sorted_weights(simultaneous_eigenbasis(mats).weights);
}

bool same_weights(std::vector<Weight> a, std::vector<Weight> b, double tolerance) {
  if (a.size() != b.size()) {
    return false;
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<bool> used(b.size(), false);
  for (const auto& wa : a) {
    bool matched = false;
    for (std::size_t i = 0; i < b.size() && !matched; ++i) {
      if (used[i] || b[i].size() != wa.size()) {
        continue;
      }
      bool close = true;
      for (std::size_t k = 0; k < wa.size(); ++k) {
        close = close && std::abs(wa[k] - b[i][k]) <= tolerance;
      }
      if (close) {
        used[i] = true;
        matched = true;
      }
    }
    if (!matched) {
      return false;
    }
  }
  return true;
}

bool rep_equivalent(const GeneratorSet& r1, const GeneratorSet& r2) {
  if (r1.d() != r2.d() || r1.d_r() != r2.d_r()) {
    return false;
  }
  std::string id1;
  std::string id2;
  try {
    id1 = canonical_algebra_id(r1.algebra_id);
    id2 = canonical_algebra_id(r2.algebra_id);
  } catch (const Error&) {
    return false;
  }
  if (id1 != id2) {
    return false;
  }
  const auto cartan = cartan_indices(id1);
  return same_weights(weights(r1, cartan), weights(r2, cartan), kWeightEquivalenceTol);
}

std::vector<ComplexMatrix> irreducible_blocks(const GeneratorSet& rep) {
  const auto n = static_cast<Eigen::Index>(rep.d_r());
  if (n == 0) {
    throw Error(ErrorKind::BadParameter, "irreducible_blocks: empty representation");
  }
  Rng rng(kCommutantSeed);
  // C2 lies in the commutant, so the commutant is block diagonal on its
  // eigenspaces; each eigenspace is handled separately.
  ComplexMatrix c2 = quadratic_casimir(rep);
  c2 = 0.5 * (c2 + c2.adjoint()).eval();
  const auto eig = hermitian_eigen(c2);

  std::vector<ComplexMatrix> blocks;
  for (std::size_t c = 0; c < eig.cluster_count(); ++c) {
    const ComplexMatrix q = eig.cluster_basis(c);
    const auto sub = restrict_rep(rep, q);
    for (auto& local : split_by_commutant(sub, rng)) {
      blocks.push_back(q * local);
    }
  }
  Eigen::Index tiled = 0;
  for (const auto& b : blocks) {
    tiled += b.cols();
  }
  if (tiled != n) {
    throw Error(ErrorKind::CommutantFailure, "irreducible_blocks: blocks span " + std::to_string(tiled) +
                                                 " of " + std::to_string(n) + " dimensions");
  }
  return blocks;
}

DecompositionResult label_blocks(const GeneratorSet& rep, std::span<const ComplexMatrix> blocks,
                                 std::span<const IrrepLabel> catalog) {
  const auto algebra = canonical_algebra_id(rep.algebra_id);
  const bool cubic = uses_cubic_invariant(algebra);
  const Tensor3 dt = invariant_d_tensor(algebra);
  std::optional<StructureConstants> f;
  if (rep.trace_index > 1e-10) {
    f = structure_constants(rep);
  }

  DecompositionResult result;
  for (const auto& block : blocks) {
    const auto sub = restrict_rep(rep, block);
    const auto scalars = block_scalars(sub, cubic ? &dt : nullptr);
    const auto k = static_cast<std::size_t>(block.cols());

    const IrrepLabel* match = nullptr;
    for (const auto& label : catalog) {
      if (canonical_algebra_id(label.algebra_id) == algebra && label.d_r == k && scalar_match(scalars.c2, label.c2) &&
          scalar_match(scalars.c3, label.c3)) {
        match = &label;
        break;
      }
    }
    if (match == nullptr) {
      throw Error(ErrorKind::UnknownIrrep, "decompose: block of dimension " + std::to_string(k) +
                                               " with C2 = " + std::to_string(scalars.c2) +
                                               ", C3 = " + std::to_string(scalars.c3) + " matches no catalog irrep");
    }

    double residual = projected_closure_residual(sub, f ? &*f : nullptr);
    for (std::size_t a = 0; a < rep.d(); ++a) {
      residual = std::max(residual, (rep[a] * block - block * sub[a]).cwiseAbs().maxCoeff());
    }

    auto existing = std::find_if(result.parts.begin(), result.parts.end(),
                                 [&](const DecompositionPart& p) { return p.label.name == match->name; });
    if (existing == result.parts.end()) {
      result.parts.push_back({*match, 1, block, residual});
    } else {
      ComplexMatrix joined(block.rows(), existing->isometry.cols() + block.cols());
      joined << existing->isometry, block;
      existing->isometry = std::move(joined);
      existing->multiplicity += 1;
      existing->residual = std::max(existing->residual, residual);
    }
    result.residual = std::max(result.residual, residual);
  }

  std::stable_sort(result.parts.begin(), result.parts.end(), [](const DecompositionPart& a, const DecompositionPart& b) {
    if (a.label.d_r != b.label.d_r) return a.label.d_r > b.label.d_r;
    if (a.label.c2 != b.label.c2) return a.label.c2 > b.label.c2;
    return a.label.c3 > b.label.c3;
  });
  return result;
}

DecompositionResult decompose(const GeneratorSet& rep, std::span<const IrrepLabel> catalog) {
  return label_blocks(rep, irreducible_blocks(rep), catalog);
}

DecompositionResult decompose(const GeneratorSet& rep) {
  const auto blocks = irreducible_blocks(rep);
  std::size_t largest = 1;
  for (const auto& b : blocks) {
    largest = std::max(largest, static_cast<std::size_t>(b.cols()));
  }
  const auto catalog = build_irrep_catalog(rep.algebra_id, largest);
  return label_blocks(rep, blocks, catalog);
}

std::vector<CatalogEntry> build_irrep_catalog_with_representatives(const std::string& algebra_id,
                                                                   std::size_t max_dim) {
  const auto algebra = canonical_algebra_id(algebra_id);
  const int order = su_order(algebra);
  std::vector<CatalogEntry> entries;

  if (order == 2) {
    for (std::size_t k = 1; k <= max_dim; ++k) {
      auto rep = su2_spin_irrep(k);
      IrrepLabel label;
      label.algebra_id = algebra;
      label.d_r = k;
      label.c2 = casimir_scalar(quadratic_casimir(rep)).value;
      label.c3 = 0.0;
      label.name = std::to_string(k);
      label.weights = weights(rep, cartan_indices(algebra));
      entries.push_back({std::move(label), std::move(rep)});
    }
    return entries;
  }
  if (order != 3) {
    throw Error(ErrorKind::Unsupported, "build_irrep_catalog: only su(2) and su(3) catalogs are supported");
  }

  const Tensor3 dt = invariant_d_tensor(algebra);
  const auto cartan = cartan_indices(algebra);
  const auto fundamental = su_fundamental(3);
  const auto antifundamental = conjugate_rep(fundamental);

  auto add = [&](GeneratorSet rep) -> bool {
    const auto k = rep.d_r();
    const auto scalars = k == 1 ? BlockScalars{} : block_scalars(rep, &dt);
    for (const auto& e : entries) {
      if (e.label.d_r == k && scalar_match(scalars.c2, e.label.c2) && scalar_match(scalars.c3, e.label.c3)) {
        return false;
      }
    }
    IrrepLabel label;
    label.algebra_id = algebra;
    label.d_r = k;
    label.c2 = scalars.c2;
    label.c3 = std::abs(scalars.c3) <= kCasimirMatchTol ? 0.0 : scalars.c3;
    label.weights = weights(rep, cartan);
    entries.push_back({std::move(label), std::move(rep)});
    return true;
  };

  add(trivial_rep(algebra, fundamental.d()));
  std::deque<std::size_t> pending;
  if (max_dim >= 3) {
    add(fundamental);
    add(antifundamental);
    pending = {1, 2};
  }
  while (!pending.empty()) {
    const auto idx = pending.front();
    pending.pop_front();
    for (const auto* factor : {&fundamental, &antifundamental}) {
      const auto product = tensor_rep(entries[idx].representative, *factor);
      for (const auto& block : irreducible_blocks(product)) {
        if (static_cast<std::size_t>(block.cols()) > max_dim) {
          continue;
        }
        if (add(restrict_rep(product, block))) {
          pending.push_back(entries.size() - 1);
        }
      }
    }
  }

  assign_su3_names(entries);
  std::stable_sort(entries.begin(), entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    if (a.label.d_r != b.label.d_r) return a.label.d_r < b.label.d_r;
    return a.label.name < b.label.name;
  });
  return entries;
}

std::vector<IrrepLabel> build_irrep_catalog(const std::string& algebra_id, std::size_t max_dim) {
  std::vector<IrrepLabel> labels;
  for (auto& e : build_irrep_catalog_with_representatives(algebra_id, max_dim)) {
    labels.push_back(std::move(e.label));
  }
  return labels;
}

const IrrepLabel* find_irrep(std::span<const IrrepLabel> catalog, const std::string& name) {
  for (const auto& label : catalog) {
    if (label.name == name) {
      return &label;
    }
  }
  return nullptr;
}

CasimirScalar casimir_scalar(const ComplexMatrix& casimir) {
  CasimirScalar out;
  const auto n = casimir.rows();
  if (n == 0) {
    return out;
  }
  out.value = casimir.trace().real() / static_cast<double>(n);
  out.deviation = (casimir - out.value * ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  return out;
}

} // namespace entwined
