#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "entwined/matrix.hpp"

namespace entwined {

/// Canonical algebra tag, "su(n)". Accepts "su2", "su3", "suN", "su(N)".
std::string canonical_algebra_id(const std::string& tag);

/// Rank parameter n of an "su(n)" tag; throws UnknownAlgebra for anything else.
int su_order(const std::string& algebra_id);

/// Hermitian generators t_a of a representation, with tr(t_a t_b) = T delta_ab.
struct GeneratorSet {
  std::string algebra_id;
  std::vector<ComplexMatrix> generators;
  double trace_index = 0.0;

  std::size_t d() const noexcept { return generators.size(); }
  std::size_t d_r() const noexcept {
    return generators.empty() ? 0 : static_cast<std::size_t>(generators.front().rows());
  }
  const ComplexMatrix& operator[](std::size_t a) const { return generators.at(a); }
};

/// Dense rank-3 real tensor indexed (a, b, c), all indices in [0, d).
class Tensor3 {
public:
  Tensor3() = default;
  explicit Tensor3(std::size_t d) : d_(d), data_(d * d * d, 0.0) {}

  std::size_t d() const noexcept { return d_; }
  double& operator()(std::size_t a, std::size_t b, std::size_t c) { return data_[(a * d_ + b) * d_ + c]; }
  double operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return data_[(a * d_ + b) * d_ + c];
  }
  double max_abs() const;

private:
  std::size_t d_ = 0;
  std::vector<double> data_;
};

/// f_abc with [t_a, t_b] = i f_abc t_c.
struct StructureConstants {
  std::string algebra_id;
  Tensor3 f;

  std::size_t d() const noexcept { return f.d(); }
  double operator()(std::size_t a, std::size_t b, std::size_t c) const { return f(a, b, c); }
};

enum class AlgebraFamily { A, B, C, D, G2, F4, E6, E7, E8 };

struct AlgebraInfo {
  AlgebraFamily family;
  int n = 0;
  int rank = 0;
  int dimension = 0;
  std::string alt_name;
};

/// Generalized Gell-Mann basis divided by two (T = 1/2). Ordering: for k = 2..n,
/// the symmetric then antisymmetric off-diagonal pair (j, k) for j < k, then the
/// k-th diagonal generator. n = 2 gives Pauli/2, n = 3 gives the Gell-Mann order.
GeneratorSet su_fundamental(int n);

/// Indices of the diagonal (Cartan) generators of su_fundamental(n): k*k - 2 for k = 2..n.
std::vector<std::size_t> su_cartan_indices(int n);

/// f_abc = -(i/T) tr([t_a, t_b] t_c), checked by reconstruction.
StructureConstants structure_constants(const GeneratorSet& rep);

/// max_{a,b,c,e} |f_abd f_dce + f_bcd f_dae + f_cad f_dbe|.
double jacobi_residual(const StructureConstants& f);

/// max |f_abc + f_bac|, |f_abc + f_acb|.
double antisymmetry_residual(const StructureConstants& f);

/// d_abc = 2 tr({t_a, t_b} t_c). Requires T = 1/2.
Tensor3 d_symbols(const GeneratorSet& rep);

AlgebraInfo algebra_catalog(AlgebraFamily family, int n = 0);
AlgebraFamily parse_family(const std::string& tag);
std::string to_string(AlgebraFamily family);

struct ResidualCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed() const noexcept { return residual <= tolerance; }
};

struct VerificationReport {
  bool degenerate = false;
  std::vector<ResidualCheck> checks;
  std::vector<std::string> failures;

  bool ok() const noexcept { return !degenerate && failures.empty(); }
};

/// Hermiticity, tracelessness, trace orthonormality and closure residuals.
VerificationReport verify_generator_set(const GeneratorSet& rep);

} // namespace entwined
