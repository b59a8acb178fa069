#include "entwined/scenario.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <map>
#include <random>
#include <set>

#include "entwined/error.hpp"
#include "entwined/io.hpp"
#include "entwined/representations.hpp"

namespace entwined {

namespace {

using json = nlohmann::json;

constexpr double kReplayTol = 1e-10;

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::SchemaError, path + ": " + message, path);
}

const json& require_field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) {
    schema_error(path, "expected an object");
  }
  const auto it = obj.find(key);
  if (it == obj.end()) {
    schema_error(path + "/" + key, "missing required field");
  }
  return *it;
}

std::string require_string(const json& j, const std::string& path) {
  if (!j.is_string()) {
    schema_error(path, "expected a string");
  }
  return j.get<std::string>();
}

std::size_t require_index(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) {
    return j.get<std::size_t>();
  }
  if (j.is_number_integer() && j.get<long long>() >= 0) {
    return static_cast<std::size_t>(j.get<long long>());
  }
  schema_error(path, "expected a non-negative integer");
}

RepresentationSpec parse_representation(const json& j, const std::string& path) {
  if (!j.is_object()) {
    schema_error(path, "expected an object");
  }
  RepresentationSpec spec;
  if (j.contains("tensor")) {
    const auto& factors = j.at("tensor");
    if (!factors.is_array() || factors.size() != 2) {
      schema_error(path + "/tensor", "expected an array of two representations");
    }
    if (j.contains("kind") && j.at("kind") != "tensor") {
      schema_error(path + "/kind", "a tensor representation cannot also have kind '" +
                                       j.at("kind").dump() + "'");
    }
    spec.kind = RepresentationSpec::Kind::Tensor;
    spec.factors.push_back(parse_representation(factors[0], path + "/tensor/0"));
    spec.factors.push_back(parse_representation(factors[1], path + "/tensor/1"));
    return spec;
  }
  const auto kind = require_string(require_field(j, "kind", path), path + "/kind");
  if (kind == "fundamental") {
    spec.kind = RepresentationSpec::Kind::Fundamental;
  } else if (kind == "conjugate") {
    spec.kind = RepresentationSpec::Kind::Conjugate;
  } else if (kind == "adjoint") {
    spec.kind = RepresentationSpec::Kind::Adjoint;
  } else if (kind == "spin") {
    spec.kind = RepresentationSpec::Kind::Spin;
    spec.d_r = require_index(require_field(j, "d_r", path), path + "/d_r");
  } else {
    schema_error(path + "/kind", "unknown representation kind '" + kind + "'");
  }
  return spec;
}

json representation_document(const RepresentationSpec& spec) {
  switch (spec.kind) {
  case RepresentationSpec::Kind::Fundamental: return {{"kind", "fundamental"}};
  case RepresentationSpec::Kind::Conjugate: return {{"kind", "conjugate"}};
  case RepresentationSpec::Kind::Adjoint: return {{"kind", "adjoint"}};
  case RepresentationSpec::Kind::Spin: return {{"kind", "spin"}, {"d_r", spec.d_r}};
  case RepresentationSpec::Kind::Tensor:
    return {{"tensor", json::array({representation_document(spec.factors.at(0)),
                                    representation_document(spec.factors.at(1))})}};
  }
  return {};
}

GeneratorSet build_representation(const RepresentationSpec& spec, const std::string& algebra) {
  const int n = su_order(algebra);
  switch (spec.kind) {
  case RepresentationSpec::Kind::Fundamental: return su_fundamental(n);
  case RepresentationSpec::Kind::Conjugate: return conjugate_rep(su_fundamental(n));
  case RepresentationSpec::Kind::Adjoint: return adjoint_rep(structure_constants(su_fundamental(n)));
  case RepresentationSpec::Kind::Spin:
    if (n != 2) {
      throw Error(ErrorKind::ValidationError, "spin representations exist only for su(2)", "/representation");
    }
    if (spec.d_r < 1) {
      throw Error(ErrorKind::ValidationError, "spin representation needs d_r >= 1", "/representation/d_r");
    }
    return su2_spin_irrep(spec.d_r);
  case RepresentationSpec::Kind::Tensor:
    return tensor_rep(build_representation(spec.factors.at(0), algebra),
                      build_representation(spec.factors.at(1), algebra));
  }
  throw Error(ErrorKind::ValidationError, "unknown representation kind");
}

std::string document_algebra_tag(const std::string& algebra) {
  const int n = su_order(algebra);
  return n <= 3 ? "su" + std::to_string(n) : algebra;
}

GeneratorSet participant_frame(const GeneratorSet& own, std::size_t other_dim, bool first) {
  GeneratorSet frame;
  frame.algebra_id = own.algebra_id;
  const ComplexMatrix other = identity(other_dim);
  for (const auto& t : own.generators) {
    frame.generators.push_back(first ? kron(t, other) : kron(other, t));
  }
  frame.trace_index = own.trace_index * static_cast<double>(other_dim);
  return frame;
}

RealVector basis_vector(std::size_t d, std::size_t index) {
  RealVector v = RealVector::Zero(static_cast<Eigen::Index>(d));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return v;
}

} // namespace

struct Scenario::Data {
  ScenarioSpec spec;
  GeneratorSet rep;
  std::optional<StateVector> initial;
  std::vector<std::string> warnings;
  std::vector<std::string> names;
  std::map<std::string, Observable> questions;
  bool tensor = false;
};

std::string describe(const QuestionRef& ref) {
  if (const auto* name = std::get_if<std::string>(&ref)) {
    return *name;
  }
  const auto& v = std::get<RealVector>(ref);
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out += (i ? "," : "") + std::to_string(v[i]);
  }
  return out + "]";
}

Scenario Scenario::build(ScenarioSpec spec) {
  auto data = std::make_shared<Data>();
  spec.algebra_id = canonical_algebra_id(spec.algebra_id);
  data->rep = build_representation(spec.representation, spec.algebra_id);
  const auto d = data->rep.d();

  std::set<std::size_t> used;
  std::set<std::string> names;
  auto claim_name = [&](const std::string& name, const std::string& path) {
    if (name.empty() || name.find('@') != std::string::npos) {
      throw Error(ErrorKind::ValidationError, "question names must be non-empty and must not contain '@'", path);
    }
    if (!names.insert(name).second) {
      throw Error(ErrorKind::ValidationError, "duplicate question name '" + name + "'", path);
    }
  };

  std::sort(spec.options.begin(), spec.options.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  std::vector<std::pair<std::string, RealVector>> named;
  for (const auto& [name, index] : spec.options) {
    const auto path = "/options/" + name;
    claim_name(name, path);
    if (index >= d) {
      throw Error(ErrorKind::ValidationError,
                  "option index " + std::to_string(index) + " outside [0, " + std::to_string(d) + ")", path);
    }
    if (!used.insert(index).second) {
      throw Error(ErrorKind::ValidationError, "option index " + std::to_string(index) + " used twice", path);
    }
    named.emplace_back(name, basis_vector(d, index));
  }
  for (const auto& [name, coeffs] : spec.derived) {
    const auto path = "/derived/" + name;
    claim_name(name, path);
    if (static_cast<std::size_t>(coeffs.size()) != d) {
      throw Error(ErrorKind::LengthMismatch, "derived question has " + std::to_string(coeffs.size()) +
                                                 " coefficients, algebra has " + std::to_string(d), path);
    }
    if (std::abs(coeffs.norm() - 1.0) > kNormTol) {
      throw Error(ErrorKind::NotNormalized, "derived question '" + name + "' is not unit-norm", path);
    }
    named.emplace_back(name, coeffs);
  }

  for (const auto& [name, coeffs] : named) {
    data->questions.emplace(name, compose_question(coeffs, data->rep));
    data->names.push_back(name);
  }
  if (spec.representation.kind == RepresentationSpec::Kind::Tensor) {
    data->tensor = true;
    const auto r1 = build_representation(spec.representation.factors[0], spec.algebra_id);
    const auto r2 = build_representation(spec.representation.factors[1], spec.algebra_id);
    const auto frames = std::array{participant_frame(r1, r2.d_r(), true), participant_frame(r2, r1.d_r(), false)};
    for (std::size_t p = 0; p < 2; ++p) {
      for (const auto& [name, coeffs] : named) {
        const auto participant = name + "@" + std::to_string(p + 1);
        data->questions.emplace(participant, compose_question(coeffs, frames[p]));
        data->names.push_back(participant);
      }
    }
  }

  const auto dim = data->rep.d_r();
  switch (spec.initial.kind) {
  case InitialSpec::Kind::Uniform: data->initial = StateVector::uniform(dim); break;
  case InitialSpec::Kind::Eigenstate: {
    const auto it = data->questions.find(spec.initial.question);
    if (it == data->questions.end()) {
      throw Error(ErrorKind::ValidationError, "initial eigenstate refers to unknown question '" +
                                                  spec.initial.question + "'", "/initial/question");
    }
    const auto& eig = it->second.eigen();
    if (spec.initial.rank >= eig.cluster_count()) {
      throw Error(ErrorKind::ValidationError,
                  "question '" + spec.initial.question + "' has " + std::to_string(eig.cluster_count()) +
                      " distinct answers; rank " + std::to_string(spec.initial.rank) + " is out of range",
                  "/initial/rank");
    }
    if (eig.cluster_size(spec.initial.rank) > 1) {
      data->warnings.push_back("initial eigenstate of '" + spec.initial.question + "' rank " +
                               std::to_string(spec.initial.rank) +
                               " is degenerate; using the first vector of its eigenspace");
    }
    data->initial = StateVector(eig.cluster_basis(spec.initial.rank).col(0));
    break;
  }
  case InitialSpec::Kind::Explicit:
    if (static_cast<std::size_t>(spec.initial.amplitudes.size()) != dim) {
      throw Error(ErrorKind::LengthMismatch, "explicit initial state has " +
                                                 std::to_string(spec.initial.amplitudes.size()) +
                                                 " amplitudes, representation dimension is " + std::to_string(dim),
                  "/initial/amplitudes");
    }
    try {
      data->initial = StateVector(spec.initial.amplitudes);
    } catch (const Error& e) {
      throw Error(ErrorKind::ValidationError, e.what(), "/initial/amplitudes");
    }
    break;
  }

  data->spec = std::move(spec);
  Scenario out;
  out.data_ = std::move(data);
  return out;
}

const ScenarioSpec& Scenario::spec() const noexcept { return data_->spec; }
const GeneratorSet& Scenario::representation() const noexcept { return data_->rep; }
const StateVector& Scenario::initial_state() const noexcept { return *data_->initial; }
const std::vector<std::string>& Scenario::warnings() const noexcept { return data_->warnings; }
std::vector<std::string> Scenario::question_names() const { return data_->names; }
bool Scenario::is_tensor() const noexcept { return data_->tensor; }

Observable Scenario::resolve(const QuestionRef& ref) const {
  if (const auto* name = std::get_if<std::string>(&ref)) {
    const auto it = data_->questions.find(*name);
    if (it == data_->questions.end()) {
      throw Error(ErrorKind::UnknownName, "scenario '" + data_->spec.name + "' has no question named '" + *name + "'");
    }
    return it->second;
  }
  return compose_question(std::get<RealVector>(ref), data_->rep);
}

Scenario load_scenario(const json& doc) {
  if (!doc.is_object()) {
    schema_error("", "scenario document must be an object");
  }
  ScenarioSpec spec;
  spec.name = require_string(require_field(doc, "name", ""), "/name");
  spec.algebra_id = canonical_algebra_id(require_string(require_field(doc, "algebra", ""), "/algebra"));
  spec.representation = parse_representation(require_field(doc, "representation", ""), "/representation");

  if (doc.contains("options")) {
    const auto& options = doc.at("options");
    if (!options.is_object()) {
      schema_error("/options", "expected an object of name -> generator index");
    }
    for (const auto& [name, index] : options.items()) {
      spec.options.emplace_back(name, require_index(index, "/options/" + name));
    }
  }
  if (doc.contains("derived")) {
    const auto& derived = doc.at("derived");
    if (!derived.is_object()) {
      schema_error("/derived", "expected an object of name -> coefficient list");
    }
    for (const auto& [name, coeffs] : derived.items()) {
      spec.derived.emplace_back(name, io::real_vector_from_json(coeffs, "/derived/" + name));
    }
  }
  if (doc.contains("initial")) {
    const auto& initial = doc.at("initial");
    const auto kind = require_string(require_field(initial, "kind", "/initial"), "/initial/kind");
    if (kind == "uniform") {
      spec.initial.kind = InitialSpec::Kind::Uniform;
    } else if (kind == "eigenstate") {
      spec.initial.kind = InitialSpec::Kind::Eigenstate;
      spec.initial.question = require_string(require_field(initial, "question", "/initial"), "/initial/question");
      spec.initial.rank = require_index(require_field(initial, "rank", "/initial"), "/initial/rank");
    } else if (kind == "explicit") {
      spec.initial.kind = InitialSpec::Kind::Explicit;
      spec.initial.amplitudes =
          io::complex_vector_from_json(require_field(initial, "amplitudes", "/initial"), "/initial/amplitudes");
    } else {
      schema_error("/initial/kind", "unknown initial state kind '" + kind + "'");
    }
  }
  return Scenario::build(std::move(spec));
}

json scenario_document(const ScenarioSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  doc["algebra"] = document_algebra_tag(spec.algebra_id);
  doc["representation"] = representation_document(spec.representation);
  json options = json::object();
  for (const auto& [name, index] : spec.options) {
    options[name] = index;
  }
  doc["options"] = options;
  json derived = json::object();
  for (const auto& [name, coeffs] : spec.derived) {
    derived[name] = std::vector<double>(coeffs.data(), coeffs.data() + coeffs.size());
  }
  doc["derived"] = derived;
  switch (spec.initial.kind) {
  case InitialSpec::Kind::Uniform: doc["initial"] = {{"kind", "uniform"}}; break;
  case InitialSpec::Kind::Eigenstate:
    doc["initial"] = {{"kind", "eigenstate"}, {"question", spec.initial.question}, {"rank", spec.initial.rank}};
    break;
  case InitialSpec::Kind::Explicit:
    doc["initial"] = {{"kind", "explicit"}, {"amplitudes", io::to_json(spec.initial.amplitudes)}};
    break;
  }
  return doc;
}

std::vector<std::string> builtin_scenario_names() {
  return {"child-su2", "adult-su3", "siblings-su2", "couple-su3"};
}

json builtin_scenario_document(const std::string& name) {
  const json child_options = {{"cola", 0}, {"apple-juice", 1}, {"water", 2}};
  const json adult_options = {{"wine", 0},     {"whisky", 1},   {"beer", 2}, {"coffee", 3},
                              {"tea", 4},      {"lemonade", 5}, {"cola", 6}, {"water", 7}};
  // Champagne lies mainly along wine with some lemonade; lager is the opposite of beer.
  const double wine = 0.95;
  const double lemonade = 0.312;
  const double norm = std::hypot(wine, lemonade);
  const json adult_derived = {
      {"champagne", {wine / norm, 0.0, 0.0, 0.0, 0.0, lemonade / norm, 0.0, 0.0}},
      {"lager", {0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0}},
  };
  const json uniform = {{"kind", "uniform"}};

  if (name == "child-su2") {
    return {{"name", name}, {"algebra", "su2"}, {"representation", {{"kind", "fundamental"}}},
            {"options", child_options}, {"derived", json::object()}, {"initial", uniform}};
  }
  if (name == "adult-su3") {
    return {{"name", name}, {"algebra", "su3"}, {"representation", {{"kind", "fundamental"}}},
            {"options", adult_options}, {"derived", adult_derived}, {"initial", uniform}};
  }
  if (name == "siblings-su2") {
    // A younger child in the 2 and an older child in the 3, asked independently.
    return {{"name", name},
            {"algebra", "su2"},
            {"representation", {{"tensor", {{{"kind", "fundamental"}}, {{"kind", "spin"}, {"d_r", 3}}}}}},
            {"options", child_options},
            {"derived", json::object()},
            {"initial", uniform}};
  }
  if (name == "couple-su3") {
    return {{"name", name},
            {"algebra", "su3"},
            {"representation", {{"tensor", {{{"kind", "fundamental"}}, {{"kind", "fundamental"}}}}}},
            {"options", adult_options},
            {"derived", adult_derived},
            {"initial", uniform}};
  }
  throw Error(ErrorKind::UnknownName, "no built-in scenario named '" + name + "'");
}

Scenario builtin_scenario(const std::string& name) { return load_scenario(builtin_scenario_document(name)); }

Scenario scenario_from_name_or_file(const std::string& name_or_path) {
  const auto names = builtin_scenario_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) {
    return builtin_scenario(name_or_path);
  }
  if (std::filesystem::exists(name_or_path)) {
    return load_scenario(io::read_json_file(name_or_path));
  }
  throw Error(ErrorKind::UnknownName, "'" + name_or_path + "' is neither a built-in scenario nor a readable file");
}

std::string to_string(SessionEvent::Kind kind) {
  switch (kind) {
  case SessionEvent::Kind::Ask: return "ask";
  case SessionEvent::Kind::Evolve: return "evolve";
  case SessionEvent::Kind::Reset: return "reset";
  }
  return "?";
}

Session::Session(std::string id, Scenario scenario, std::uint64_t seed)
    : id_(std::move(id)), scenario_(std::move(scenario)), seed_(seed), state_(scenario_.initial_state()) {}

Session Session::restore(std::string id, Scenario scenario, std::uint64_t seed, std::vector<SessionEvent> history,
                         const std::optional<ComplexVector>& expected_state) {
  Session session(std::move(id), std::move(scenario), seed);
  for (std::size_t i = 0; i < history.size(); ++i) {
    const auto& event = history[i];
    switch (event.kind) {
    case SessionEvent::Kind::Ask: {
      Rng rng(event.seed);
      const auto result = entwined::ask(session.state_, session.scenario_.resolve(event.question), rng);
      if (std::abs(result.eigenvalue - event.outcome) > 1e-9) {
        throw Error(ErrorKind::ValidationError,
                    "history replay: event " + std::to_string(i) + " recorded outcome " +
                        std::to_string(event.outcome) + " but replay produced " + std::to_string(result.eigenvalue),
                    "/history/" + std::to_string(i));
      }
      session.state_ = result.state;
      break;
    }
    case SessionEvent::Kind::Evolve:
      session.state_ = entwined::evolve(session.state_, session.scenario_.resolve(event.question), event.theta);
      break;
    case SessionEvent::Kind::Reset: session.state_ = session.scenario_.initial_state(); break;
    }
  }
  if (expected_state) {
    if (expected_state->size() != session.state_.amplitudes().size() ||
        (*expected_state - session.state_.amplitudes()).cwiseAbs().maxCoeff() > kReplayTol) {
      throw Error(ErrorKind::ValidationError, "history replay does not reproduce the recorded amplitudes",
                  "/amplitudes");
    }
  }
  session.history_ = std::move(history);
  return session;
}

std::uint64_t Session::next_ask_seed() const noexcept {
  return derive_stream_seed(seed_, history_.size()) & kSeedMask;
}

OutcomeDistribution Session::peek(const QuestionRef& ref) const { return entwined::peek(state_, scenario_.resolve(ref)); }

JointDistribution Session::joint_peek(const std::vector<QuestionRef>& refs) const {
  std::vector<Observable> questions;
  for (const auto& ref : refs) {
    questions.push_back(scenario_.resolve(ref));
  }
  return entwined::joint_peek(state_, questions);
}

AskRecord Session::ask(const QuestionRef& ref, std::optional<std::uint64_t> seed) {
  const auto question = scenario_.resolve(ref);
  const std::uint64_t used_seed = seed.value_or(next_ask_seed());
  AskRecord record;
  record.distribution_before = entwined::peek(state_, question);
  Rng rng(used_seed);
  auto result = entwined::ask(state_, question, rng);
  record.outcome = result.eigenvalue;
  record.event.kind = SessionEvent::Kind::Ask;
  record.event.seq = history_.size();
  record.event.question = ref;
  record.event.outcome = result.eigenvalue;
  record.event.seed = used_seed;
  record.event.draw = result.draw;
  record.event.timestamp = utc_timestamp();
  state_ = std::move(result.state);
  history_.push_back(record.event);
  return record;
}

void Session::evolve(const QuestionRef& ref, double theta) {
  const auto question = scenario_.resolve(ref);
  state_ = entwined::evolve(state_, question, theta);
  SessionEvent event;
  event.kind = SessionEvent::Kind::Evolve;
  event.seq = history_.size();
  event.question = ref;
  event.theta = theta;
  event.timestamp = utc_timestamp();
  history_.push_back(std::move(event));
}

void Session::reset() {
  state_ = scenario_.initial_state();
  SessionEvent event;
  event.kind = SessionEvent::Kind::Reset;
  event.seq = history_.size();
  event.timestamp = utc_timestamp();
  history_.push_back(std::move(event));
}

Session new_session(const Scenario& scenario, std::uint64_t seed, std::string id) {
  if (id.empty()) {
    id = "session-" + std::to_string(derive_stream_seed(seed, 0xffff'ffffULL) & 0xffff'ffffULL);
  }
  return Session(std::move(id), scenario, seed);
}

std::uint64_t fresh_seed() {
  std::random_device device;
  const std::uint64_t hi = device();
  const std::uint64_t lo = device();
  return ((hi << 32) | lo) & kSeedMask;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::system_clock::to_time_t(now);
  const auto millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(millis));
  return out;
}

} // namespace entwined
