#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entwined/lie.hpp"
#include "entwined/matrix.hpp"

namespace entwined {

using Weight = std::vector<double>;

/// Identification of an irreducible representation by (dimension, C2, C3).
struct IrrepLabel {
  std::string algebra_id;
  std::size_t d_r = 0;
  double c2 = 0.0;
  double c3 = 0.0;  // 0 when undefined or self-conjugate
  std::string name;
  std::vector<Weight> weights;  // Cartan weight multiset, sorted
};

struct DecompositionPart {
  IrrepLabel label;
  std::size_t multiplicity = 0;
  ComplexMatrix isometry;  // d_r(R) x (multiplicity * label.d_r), one irrep copy per consecutive column group
  double residual = 0.0;
};

struct DecompositionResult {
  std::vector<DecompositionPart> parts;
  double residual = 0.0;

  std::size_t total_dimension() const;
};

/// Tolerance for C2 / C3 scalar comparison against catalog labels.
inline constexpr double kCasimirMatchTol = 1e-6;

/// Seed of the generic commutant element drawn by decompose.
inline constexpr std::uint64_t kCommutantSeed = 0x5eed'c0a1'7a47'0001ULL;

GeneratorSet su2_spin_irrep(std::size_t d_r);
GeneratorSet adjoint_rep(const StructureConstants& f);
GeneratorSet conjugate_rep(const GeneratorSet& rep);
GeneratorSet tensor_rep(const GeneratorSet& r1, const GeneratorSet& r2);

/// Restriction of a representation to the invariant subspace spanned by the isometry columns.
GeneratorSet restrict_rep(const GeneratorSet& rep, const ComplexMatrix& isometry);

ComplexMatrix quadratic_casimir(const GeneratorSet& rep);
ComplexMatrix cubic_casimir(const GeneratorSet& rep, const Tensor3& d_tensor);

/// Symmetric invariant tensor appropriate for an algebra: zero for su(2),
/// d_symbols of the fundamental otherwise.
Tensor3 invariant_d_tensor(const std::string& algebra_id);

/// Cartan generator indices used for weights and equivalence testing.
std::vector<std::size_t> cartan_indices(const std::string& algebra_id);

std::vector<Weight> weights(const GeneratorSet& rep, std::span<const std::size_t> cartan);

/// Equal-as-multisets comparison of weight lists, per-component tolerance.
bool same_weights(std::vector<Weight> a, std::vector<Weight> b, double tolerance);

bool rep_equivalent(const GeneratorSet& r1, const GeneratorSet& r2);

/// Irreducible invariant blocks of a representation, found from a generic
/// element of the commutant. Each returned matrix has orthonormal columns.
std::vector<ComplexMatrix> irreducible_blocks(const GeneratorSet& rep);

DecompositionResult decompose(const GeneratorSet& rep, std::span<const IrrepLabel> catalog);

/// Labels precomputed irreducible blocks against a catalog.
DecompositionResult label_blocks(const GeneratorSet& rep, std::span<const ComplexMatrix> blocks,
                                 std::span<const IrrepLabel> catalog);

/// decompose against a catalog built just large enough for the blocks found.
DecompositionResult decompose(const GeneratorSet& rep);

/// Irreps of su(2) (spin ladders) or su(3) (built by tensoring 3 and 3bar)
/// with dimension up to max_dim.
std::vector<IrrepLabel> build_irrep_catalog(const std::string& algebra_id, std::size_t max_dim);

/// Same as build_irrep_catalog but also returns one representative generator set per label.
struct CatalogEntry {
  IrrepLabel label;
  GeneratorSet representative;
};
std::vector<CatalogEntry> build_irrep_catalog_with_representatives(const std::string& algebra_id,
                                                                   std::size_t max_dim);

const IrrepLabel* find_irrep(std::span<const IrrepLabel> catalog, const std::string& name);

/// Scalar value of C (trace / dimension) and its deviation from scalar * I.
struct CasimirScalar {
  double value = 0.0;
  double deviation = 0.0;
};
CasimirScalar casimir_scalar(const ComplexMatrix& casimir);

} // namespace entwined
