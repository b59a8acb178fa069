#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entwined/lie.hpp"
#include "entwined/matrix.hpp"
#include "entwined/random.hpp"

namespace entwined {

/// Unit-norm pure state.
class StateVector {
public:
  /// Accepts amplitudes whose norm is within 1e-9 of one and renormalizes them exactly.
  explicit StateVector(ComplexVector amplitudes);

  /// Normalizes any nonzero vector.
  static StateVector normalized(const ComplexVector& amplitudes);
  static StateVector uniform(std::size_t dim);
  static StateVector basis(std::size_t dim, std::size_t index);

  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  /// |<this|other>|
  double overlap(const StateVector& other) const;

private:
  ComplexVector amplitudes_;
};

/// Unit-norm real combination of generators, with its resolved Hermitian
/// matrix and spectral decomposition computed once at construction.
class Observable {
public:
  Observable(RealVector coefficients, ComplexMatrix matrix);

  const RealVector& coefficients() const noexcept { return coefficients_; }
  const ComplexMatrix& matrix() const noexcept { return *matrix_; }
  const EigenSystem& eigen() const noexcept { return *eigen_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_->rows()); }

  /// The question asked with every answer's sign flipped.
  Observable negated() const;

private:
  RealVector coefficients_;
  std::shared_ptr<const ComplexMatrix> matrix_;
  std::shared_ptr<const EigenSystem> eigen_;
};

inline constexpr double kNormTol = 1e-9;
inline constexpr double kProbabilityFloor = 1e-14;

/// Rescales a coefficient vector to unit length; throws NotNormalized for the zero vector.
RealVector normalize_coefficients(const RealVector& coefficients);

Observable compose_question(const RealVector& coefficients, const GeneratorSet& rep);

struct Outcome {
  double eigenvalue = 0.0;
  double probability = 0.0;
  std::optional<StateVector> post_state;  // absent when probability < kProbabilityFloor
};

struct OutcomeDistribution {
  std::vector<Outcome> outcomes;

  double total_probability() const;
  const Outcome* find(double eigenvalue, double tolerance = 1e-9) const;
};

/// Born-rule distribution with Lueders post-measurement states; never modifies the state.
OutcomeDistribution peek(const StateVector& state, const Observable& question);

struct AskResult {
  double eigenvalue = 0.0;
  StateVector state;
  std::size_t outcome_index = 0;
  double draw = 0.0;  // the uniform variate consumed
};

/// Samples one outcome of `dist` with one uniform draw.
std::size_t sample_outcome(const OutcomeDistribution& dist, double u);

AskResult ask(const StateVector& state, const Observable& question, Rng& rng);

struct JointOutcome {
  std::vector<double> eigenvalues;
  double probability = 0.0;
  std::optional<StateVector> post_state;
};

struct JointDistribution {
  std::vector<JointOutcome> outcomes;

  double total_probability() const;
};

JointDistribution joint_peek(const StateVector& state, std::span<const Observable> questions);

double expectation(const StateVector& state, const Observable& question);

/// exp(-i theta H) applied to the state.
StateVector evolve(const StateVector& state, const Observable& hamiltonian, double theta);

struct FrequencyRow {
  std::vector<double> outcomes;
  std::uint64_t count = 0;
};

struct FrequencyTable {
  std::vector<std::string> chain;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<FrequencyRow> counts;  // sorted by outcome tuple

  /// P(outcome[target] == value | outcome[given] == given_value), NaN when the condition never occurs.
  double conditional_frequency(std::size_t target, double value, std::size_t given, double given_value,
                               double tolerance = 1e-9) const;
  /// Fraction of trials with outcome[position] == value.
  double marginal_frequency(std::size_t position, double value, double tolerance = 1e-9) const;
};

/// Runs `trials` independent measurement chains. Trial i draws from an mt19937_64
/// seeded with derive_stream_seed(seed, i); results do not depend on `threads`.
FrequencyTable simulate_sequence(const StateVector& initial, std::span<const Observable> questions,
                                 std::uint64_t trials, std::uint64_t seed, std::vector<std::string> names = {},
                                 unsigned threads = 1);

} // namespace entwined
