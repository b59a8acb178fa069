#include "entwined/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <thread>

#include "entwined/error.hpp"

namespace entwined {

namespace {

void require_dim(const StateVector& state, std::size_t dim, const char* what) {
  if (state.dim() != dim) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": state has dimension " +
                                                  std::to_string(state.dim()) + ", question acts on " +
                                                  std::to_string(dim));
  }
}

std::optional<StateVector> project(const ComplexMatrix& basis, const StateVector& state, double& probability) {
  const ComplexVector coords = basis.adjoint() * state.amplitudes();
  probability = coords.squaredNorm();
  if (probability < kProbabilityFloor) {
    probability = 0.0;
    return std::nullopt;
  }
  ComplexVector projected = basis * coords;
  projected /= projected.norm();
  fix_phase(projected);
  return StateVector(std::move(projected));
}

} // namespace

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  const double norm = amplitudes_.norm();
  if (amplitudes_.size() == 0 || std::abs(norm - 1.0) > kNormTol) {
    throw Error(ErrorKind::ValidationError,
                "state vector must have unit norm (got " + std::to_string(norm) + ")");
  }
  amplitudes_ /= norm;
}

StateVector StateVector::normalized(const ComplexVector& amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorKind::ValidationError, "cannot normalize a zero or non-finite state vector");
  }
  return StateVector(amplitudes / norm);
}

StateVector StateVector::uniform(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return StateVector(ComplexVector::Constant(n, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0)));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw Error(ErrorKind::BadParameter, "basis state index out of range");
  }
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(v));
}

double StateVector::overlap(const StateVector& other) const {
  if (other.dim() != dim()) {
    throw Error(ErrorKind::DimensionMismatch, "overlap: dimensions differ");
  }
  return std::abs(amplitudes_.dot(other.amplitudes_));
}

Observable::Observable(RealVector coefficients, ComplexMatrix matrix)
    : coefficients_(std::move(coefficients)) {
  if (std::abs(coefficients_.norm() - 1.0) > kNormTol) {
    throw Error(ErrorKind::NotNormalized, "question coefficients must have unit norm (got " +
                                              std::to_string(coefficients_.norm()) + ")");
  }
  auto eig = std::make_shared<const EigenSystem>(hermitian_eigen(matrix));
  matrix_ = std::make_shared<const ComplexMatrix>(std::move(matrix));
  eigen_ = std::move(eig);
}

Observable Observable::negated() const { return Observable(-coefficients_, -*matrix_); }

RealVector normalize_coefficients(const RealVector& coefficients) {
  const double norm = coefficients.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorKind::NotNormalized, "cannot normalize a zero coefficient vector");
  }
  return coefficients / norm;
}

Observable compose_question(const RealVector& coefficients, const GeneratorSet& rep) {
  if (static_cast<std::size_t>(coefficients.size()) != rep.d()) {
    throw Error(ErrorKind::LengthMismatch, "question has " + std::to_string(coefficients.size()) +
                                               " coefficients, algebra has " + std::to_string(rep.d()) +
                                               " generators");
  }
  if (std::abs(coefficients.norm() - 1.0) > kNormTol) {
    throw Error(ErrorKind::NotNormalized, "question coefficients must have unit norm (got " +
                                              std::to_string(coefficients.norm()) + ")");
  }
  const auto n = static_cast<Eigen::Index>(rep.d_r());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::size_t a = 0; a < rep.d(); ++a) {
    if (coefficients[static_cast<Eigen::Index>(a)] != 0.0) {
      m += coefficients[static_cast<Eigen::Index>(a)] * rep[a];
    }
  }
  return Observable(coefficients, std::move(m));
}

double OutcomeDistribution::total_probability() const {
  double total = 0.0;
  for (const auto& o : outcomes) {
    total += o.probability;
  }
  return total;
}

const Outcome* OutcomeDistribution::find(double eigenvalue, double tolerance) const {
  for (const auto& o : outcomes) {
    if (std::abs(o.eigenvalue - eigenvalue) <= tolerance) {
      return &o;
    }
  }
  return nullptr;
}

OutcomeDistribution peek(const StateVector& state, const Observable& question) {
  require_dim(state, question.dim(), "peek");
  const auto& eig = question.eigen();
  OutcomeDistribution dist;
  dist.outcomes.reserve(eig.cluster_count());
  for (std::size_t c = 0; c < eig.cluster_count(); ++c) {
    Outcome o;
    o.eigenvalue = eig.cluster_value(c);
    o.post_state = project(eig.cluster_basis(c), state, o.probability);
    dist.outcomes.push_back(std::move(o));
  }
  return dist;
}

std::size_t sample_outcome(const OutcomeDistribution& dist, double u) {
  const double total = dist.total_probability();
  double cumulative = 0.0;
  std::size_t last = dist.outcomes.size();
  for (std::size_t k = 0; k < dist.outcomes.size(); ++k) {
    const double p = dist.outcomes[k].probability;
    if (p <= 0.0) {
      continue;
    }
    last = k;
    cumulative += p / total;
    if (u < cumulative) {
      return k;
    }
  }
  if (last == dist.outcomes.size()) {
    throw Error(ErrorKind::ValidationError, "sample_outcome: distribution has no support");
  }
  // Rounding left u above the final cumulative sum.
  return last;
}

AskResult ask(const StateVector& state, const Observable& question, Rng& rng) {
  const auto dist = peek(state, question);
  const double u = uniform01(rng);
  const auto k = sample_outcome(dist, u);
  return AskResult{dist.outcomes[k].eigenvalue, *dist.outcomes[k].post_state, k, u};
}

double JointDistribution::total_probability() const {
  double total = 0.0;
  for (const auto& o : outcomes) {
    total += o.probability;
  }
  return total;
}

JointDistribution joint_peek(const StateVector& state, std::span<const Observable> questions) {
  if (questions.empty()) {
    throw Error(ErrorKind::BadParameter, "joint_peek: empty question list");
  }
  if (questions.size() == 1) {
    JointDistribution out;
    for (auto& o : peek(state, questions.front()).outcomes) {
      out.outcomes.push_back({{o.eigenvalue}, o.probability, std::move(o.post_state)});
    }
    return out;
  }
  std::vector<ComplexMatrix> mats;
  for (const auto& q : questions) {
    require_dim(state, q.dim(), "joint_peek");
    mats.push_back(q.matrix());
  }
  const auto basis = simultaneous_eigenbasis(mats);
  JointDistribution out;
  for (std::size_t b = 0; b < basis.block_count(); ++b) {
    const auto begin = static_cast<Eigen::Index>(basis.block_begin(b));
    const auto count = static_cast<Eigen::Index>(basis.block_end(b)) - begin;
    JointOutcome o;
    o.eigenvalues = basis.weights[basis.block_begin(b)];
    o.post_state = project(basis.basis.middleCols(begin, count), state, o.probability);
    out.outcomes.push_back(std::move(o));
  }
  return out;
}

double expectation(const StateVector& state, const Observable& question) {
  require_dim(state, question.dim(), "expectation");
  return state.amplitudes().dot(question.matrix() * state.amplitudes()).real();
}

StateVector evolve(const StateVector& state, const Observable& hamiltonian, double theta) {
  require_dim(state, hamiltonian.dim(), "evolve");
  if (theta == 0.0) {
    return state;
  }
  const auto& eig = hamiltonian.eigen();
  ComplexVector coords = eig.vectors.adjoint() * state.amplitudes();
  for (Eigen::Index k = 0; k < coords.size(); ++k) {
    coords[k] *= std::polar(1.0, -theta * eig.values[k]);
  }
  return StateVector(eig.vectors * coords);
}

double FrequencyTable::conditional_frequency(std::size_t target, double value, std::size_t given,
                                             double given_value, double tolerance) const {
  std::uint64_t joint = 0;
  std::uint64_t condition = 0;
  for (const auto& row : counts) {
    if (given >= row.outcomes.size() || target >= row.outcomes.size()) {
      continue;
    }
    if (std::abs(row.outcomes[given] - given_value) <= tolerance) {
      condition += row.count;
      if (std::abs(row.outcomes[target] - value) <= tolerance) {
        joint += row.count;
      }
    }
  }
  if (condition == 0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return static_cast<double>(joint) / static_cast<double>(condition);
}

double FrequencyTable::marginal_frequency(std::size_t position, double value, double tolerance) const {
  std::uint64_t hits = 0;
  for (const auto& row : counts) {
    if (position < row.outcomes.size() && std::abs(row.outcomes[position] - value) <= tolerance) {
      hits += row.count;
    }
  }
  return trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials);
}

FrequencyTable simulate_sequence(const StateVector& initial, std::span<const Observable> questions,
                                 std::uint64_t trials, std::uint64_t seed, std::vector<std::string> names,
                                 unsigned threads) {
  if (trials < 1) {
    throw Error(ErrorKind::BadParameter, "simulate_sequence: trials must be >= 1");
  }
  for (const auto& q : questions) {
    require_dim(initial, q.dim(), "simulate_sequence");
  }
  if (names.empty()) {
    for (std::size_t i = 0; i < questions.size(); ++i) {
      names.push_back("q" + std::to_string(i + 1));
    }
  }

  using Key = std::vector<std::size_t>;  // outcome cluster index per question
  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    std::map<Key, std::uint64_t> counts;
    Key key(questions.size());
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      Rng rng(derive_stream_seed(seed, trial));
      StateVector state = initial;
      for (std::size_t i = 0; i < questions.size(); ++i) {
        auto result = ask(state, questions[i], rng);
        key[i] = result.outcome_index;
        state = std::move(result.state);
      }
      ++counts[key];
    }
    return counts;
  };

  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(trials, 256))));
  std::vector<std::map<Key, std::uint64_t>> partial(threads);
  if (threads == 1) {
    partial[0] = run_range(0, trials);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = trials * t / threads;
      const std::uint64_t end = trials * (t + 1) / threads;
      workers.emplace_back([&, t, begin, end] { partial[t] = run_range(begin, end); });
    }
  }

  std::map<Key, std::uint64_t> merged;
  for (const auto& part : partial) {
    for (const auto& [key, count] : part) {
      merged[key] += count;
    }
  }

  FrequencyTable table;
  table.chain = std::move(names);
  table.trials = trials;
  table.seed = seed;
  for (const auto& [key, count] : merged) {
    FrequencyRow row;
    for (std::size_t i = 0; i < key.size(); ++i) {
      row.outcomes.push_back(questions[i].eigen().cluster_value(key[i]));
    }
    row.count = count;
    table.counts.push_back(std::move(row));
  }
  return table;
}

} // namespace entwined
