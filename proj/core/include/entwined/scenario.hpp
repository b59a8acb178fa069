#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "entwined/inference.hpp"
#include "entwined/lie.hpp"

namespace entwined {

struct RepresentationSpec {
  enum class Kind { Fundamental, Conjugate, Adjoint, Spin, Tensor };
  Kind kind = Kind::Fundamental;
  std::size_t d_r = 0;                      // Spin only
  std::vector<RepresentationSpec> factors;  // Tensor only, exactly two
};

struct InitialSpec {
  enum class Kind { Uniform, Eigenstate, Explicit };
  Kind kind = Kind::Uniform;
  std::string question;       // Eigenstate: option or derived name
  std::size_t rank = 0;       // Eigenstate: index of the distinct eigenvalue, ascending
  ComplexVector amplitudes;   // Explicit
};

/// Contents of a scenario document before validation.
struct ScenarioSpec {
  std::string name;
  std::string algebra_id;
  RepresentationSpec representation;
  std::vector<std::pair<std::string, std::size_t>> options;
  std::vector<std::pair<std::string, RealVector>> derived;
  InitialSpec initial;
};

/// Option name, derived name (optionally suffixed "@1"/"@2" in tensor scenarios)
/// or raw unit coefficients over the scenario's generators.
using QuestionRef = std::variant<std::string, RealVector>;

std::string describe(const QuestionRef& ref);

/// Validated, immutable scenario: option names bound to generators of a
/// constructed representation, plus its initial state. Copies share state.
class Scenario {
public:
  static Scenario build(ScenarioSpec spec);

  const ScenarioSpec& spec() const noexcept;
  const std::string& name() const noexcept { return spec().name; }
  const GeneratorSet& representation() const noexcept;
  const StateVector& initial_state() const noexcept;
  const std::vector<std::string>& warnings() const noexcept;

  /// Named questions in document order (options, derived, then participant names).
  std::vector<std::string> question_names() const;
  bool is_tensor() const noexcept;

  Observable resolve(const QuestionRef& ref) const;

private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

Scenario load_scenario(const nlohmann::json& document);
nlohmann::json scenario_document(const ScenarioSpec& spec);

inline Observable resolve_question(const Scenario& scenario, const QuestionRef& ref) {
  return scenario.resolve(ref);
}

std::vector<std::string> builtin_scenario_names();
nlohmann::json builtin_scenario_document(const std::string& name);
Scenario builtin_scenario(const std::string& name);

/// Built-in by name, or a path to a scenario document.
Scenario scenario_from_name_or_file(const std::string& name_or_path);

struct SessionEvent {
  enum class Kind { Ask, Evolve, Reset };
  Kind kind = Kind::Ask;
  std::size_t seq = 0;
  QuestionRef question = std::string{};
  double outcome = 0.0;         // Ask
  double theta = 0.0;           // Evolve
  std::uint64_t seed = 0;       // Ask: seed of the generator used for this draw
  double draw = 0.0;            // Ask: uniform variate consumed
  std::string timestamp;        // wall clock, UTC
};

std::string to_string(SessionEvent::Kind kind);

struct AskRecord {
  double outcome = 0.0;
  OutcomeDistribution distribution_before;
  SessionEvent event;
};

class Session {
public:
  Session(std::string id, Scenario scenario, std::uint64_t seed);

  /// Rebuilds a session by replaying `history` from the scenario's initial state.
  /// Throws ValidationError when a recorded outcome is not reproduced, or when
  /// `expected_state` (if given) differs from the replayed state by more than 1e-10.
  static Session restore(std::string id, Scenario scenario, std::uint64_t seed, std::vector<SessionEvent> history,
                         const std::optional<ComplexVector>& expected_state = std::nullopt);

  const std::string& id() const noexcept { return id_; }
  const Scenario& scenario() const noexcept { return scenario_; }
  const StateVector& state() const noexcept { return state_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<SessionEvent>& history() const noexcept { return history_; }

  /// Seed used by the next ask unless overridden: derive_stream_seed(seed, history size), masked to 53 bits.
  std::uint64_t next_ask_seed() const noexcept;

  OutcomeDistribution peek(const QuestionRef& ref) const;
  JointDistribution joint_peek(const std::vector<QuestionRef>& refs) const;
  AskRecord ask(const QuestionRef& ref, std::optional<std::uint64_t> seed = std::nullopt);
  void evolve(const QuestionRef& ref, double theta);
  void reset();

private:
  std::string id_;
  Scenario scenario_;
  std::uint64_t seed_;
  StateVector state_;
  std::vector<SessionEvent> history_;
};

Session new_session(const Scenario& scenario, std::uint64_t seed, std::string id = {});

/// Random 64-bit seed for callers that did not supply one.
std::uint64_t fresh_seed();

std::string utc_timestamp();

} // namespace entwined
