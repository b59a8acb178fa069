#include "entwined/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "entwined/error.hpp"

namespace entwined::io {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::SchemaError, (path.empty() ? std::string("/") : path) + ": " + message, path);
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) {
    schema_error(path, "expected a number");
  }
  return j.get<double>();
}

} // namespace

std::uint64_t seed_from_json(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) {
    return j.get<std::uint64_t>();
  }
  if (j.is_number_integer() && j.get<long long>() >= 0) {
    return static_cast<std::uint64_t>(j.get<long long>());
  }
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(j.get<std::string>(), &used);
      if (used == j.get<std::string>().size()) {
        return value;
      }
    } catch (const std::exception&) {
    }
  }
  schema_error(path, "expected a non-negative integer seed");
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back(to_json(m(i, j)));
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

json to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(to_json(v[i]));
  }
  return out;
}

json to_json(const GeneratorSet& rep) {
  json matrices = json::array();
  for (const auto& t : rep.generators) {
    matrices.push_back(to_json(t));
  }
  return {{"algebra_id", rep.algebra_id}, {"d_r", rep.d_r()}, {"T", rep.trace_index}, {"matrices", matrices}};
}

json to_json(const StructureConstants& f) {
  json out = json::array();
  for (std::size_t a = 0; a < f.d(); ++a) {
    for (std::size_t b = a + 1; b < f.d(); ++b) {
      for (std::size_t c = 0; c < f.d(); ++c) {
        if (std::abs(f(a, b, c)) > 1e-14) {
          out.push_back({{"a", a}, {"b", b}, {"c", c}, {"value", f(a, b, c)}});
        }
      }
    }
  }
  return out;
}

json to_json(const IrrepLabel& label) {
  return {{"algebra_id", label.algebra_id}, {"name", label.name}, {"d_r", label.d_r},
          {"c2", label.c2},                 {"c3", label.c3},     {"weights", label.weights}};
}

json to_json(const DecompositionResult& result, bool with_isometries) {
  json parts = json::array();
  for (const auto& part : result.parts) {
    json p = {{"name", part.label.name},
              {"d_r", part.label.d_r},
              {"multiplicity", part.multiplicity},
              {"c2", part.label.c2},
              {"c3", part.label.c3},
              {"residual", part.residual}};
    if (with_isometries) {
      p["isometry"] = to_json(part.isometry);
    }
    parts.push_back(std::move(p));
  }
  return parts;
}

json to_json(const OutcomeDistribution& dist, bool with_states) {
  json out = json::array();
  for (const auto& o : dist.outcomes) {
    json entry = {{"eigenvalue", o.eigenvalue}, {"probability", o.probability}};
    if (with_states) {
      entry["post_state"] = o.post_state ? to_json(o.post_state->amplitudes()) : json(nullptr);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

json to_json(const JointDistribution& dist, bool with_states) {
  json out = json::array();
  for (const auto& o : dist.outcomes) {
    json entry = {{"eigenvalues", o.eigenvalues}, {"probability", o.probability}};
    if (with_states) {
      entry["post_state"] = o.post_state ? to_json(o.post_state->amplitudes()) : json(nullptr);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

json to_json(const FrequencyTable& table) {
  json counts = json::array();
  for (const auto& row : table.counts) {
    counts.push_back({{"outcomes", row.outcomes}, {"count", row.count}});
  }
  return {{"chain", table.chain}, {"trials", table.trials}, {"seed", table.seed}, {"counts", counts}};
}

FrequencyTable frequency_table_from_json(const json& j) {
  FrequencyTable table;
  try {
    table.chain = j.at("chain").get<std::vector<std::string>>();
    table.trials = j.at("trials").get<std::uint64_t>();
    table.seed = seed_from_json(j.at("seed"), "/seed");
    for (const auto& row : j.at("counts")) {
      table.counts.push_back({row.at("outcomes").get<std::vector<double>>(), row.at("count").get<std::uint64_t>()});
    }
  } catch (const json::exception& e) {
    schema_error("", std::string("malformed frequency table: ") + e.what());
  }
  return table;
}

json to_json(const QuestionRef& ref) {
  if (const auto* name = std::get_if<std::string>(&ref)) {
    return *name;
  }
  const auto& v = std::get<RealVector>(ref);
  return std::vector<double>(v.data(), v.data() + v.size());
}

json to_json(const SessionEvent& event) {
  json out = {{"seq", event.seq}, {"kind", to_string(event.kind)}, {"timestamp", event.timestamp}};
  switch (event.kind) {
  case SessionEvent::Kind::Ask:
    out["question"] = to_json(event.question);
    out["outcome"] = event.outcome;
    out["seed"] = event.seed;
    out["draw"] = event.draw;
    break;
  case SessionEvent::Kind::Evolve:
    out["question"] = to_json(event.question);
    out["theta"] = event.theta;
    break;
  case SessionEvent::Kind::Reset: break;
  }
  return out;
}

json history_to_json(const std::vector<SessionEvent>& history) {
  json out = json::array();
  for (const auto& e : history) {
    out.push_back(to_json(e));
  }
  return out;
}

json to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"passed", c.passed()}});
  }
  return {{"ok", report.ok()}, {"degenerate", report.degenerate}, {"checks", checks}, {"failures", report.failures}};
}

json session_snapshot(const Session& session) {
  return {{"id", session.id()},
          {"scenario", scenario_document(session.scenario().spec())},
          {"seed", session.seed()},
          {"amplitudes", to_json(session.state().amplitudes())},
          {"history", history_to_json(session.history())}};
}

Session session_from_snapshot(const json& snapshot) {
  if (!snapshot.is_object()) {
    schema_error("", "session snapshot must be an object");
  }
  for (const char* key : {"scenario", "seed", "amplitudes", "history"}) {
    if (!snapshot.contains(key)) {
      schema_error(std::string("/") + key, "missing required field");
    }
  }
  auto scenario = load_scenario(snapshot.at("scenario"));
  const auto seed = seed_from_json(snapshot.at("seed"), "/seed");
  const auto amplitudes = complex_vector_from_json(snapshot.at("amplitudes"), "/amplitudes");
  const auto& hist = snapshot.at("history");
  if (!hist.is_array()) {
    schema_error("/history", "expected an array");
  }
  std::vector<SessionEvent> history;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    history.push_back(event_from_json(hist[i], "/history/" + std::to_string(i)));
  }
  std::string id;
  if (snapshot.contains("id") && snapshot.at("id").is_string()) {
    id = snapshot.at("id").get<std::string>();
  }
  if (id.empty()) {
    id = new_session(scenario, seed).id();
  }
  return Session::restore(std::move(id), std::move(scenario), seed, std::move(history), amplitudes);
}

Complex complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) {
    return {j.get<double>(), 0.0};
  }
  if (!j.is_array() || j.size() != 2) {
    schema_error(path, "expected a complex number [re, im]");
  }
  return {number_at(j[0], path + "/0"), number_at(j[1], path + "/1")};
}

ComplexVector complex_vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) {
    schema_error(path, "expected an array of [re, im] pairs");
  }
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i], path + "/" + std::to_string(i));
  }
  return v;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries")) {
    schema_error(path, "expected {rows, cols, entries}");
  }
  const auto& rows_j = j.at("rows");
  const auto& cols_j = j.at("cols");
  if (!rows_j.is_number_integer() || !cols_j.is_number_integer() || rows_j.get<long long>() < 1 ||
      cols_j.get<long long>() < 1) {
    schema_error(path, "rows and cols must be positive integers");
  }
  const auto rows = static_cast<Eigen::Index>(rows_j.get<long long>());
  const auto cols = static_cast<Eigen::Index>(cols_j.get<long long>());
  const auto& entries = j.at("entries");
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != rows * cols) {
    schema_error(path + "/entries", "expected rows * cols entries");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto idx = static_cast<std::size_t>(i * cols + k);
      m(i, k) = complex_from_json(entries[idx], path + "/entries/" + std::to_string(idx));
    }
  }
  return m;
}

RealVector real_vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) {
    schema_error(path, "expected an array of numbers");
  }
  RealVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = number_at(j[i], path + "/" + std::to_string(i));
  }
  return v;
}

GeneratorSet generator_set_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) {
    schema_error(path, "expected a generator set object");
  }
  for (const char* key : {"algebra_id", "T", "matrices"}) {
    if (!j.contains(key)) {
      schema_error(path + "/" + key, "missing required field");
    }
  }
  GeneratorSet rep;
  if (!j.at("algebra_id").is_string()) {
    schema_error(path + "/algebra_id", "expected a string");
  }
  rep.algebra_id = j.at("algebra_id").get<std::string>();
  rep.trace_index = number_at(j.at("T"), path + "/T");
  const auto& matrices = j.at("matrices");
  if (!matrices.is_array()) {
    schema_error(path + "/matrices", "expected an array");
  }
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    rep.generators.push_back(matrix_from_json(matrices[i], path + "/matrices/" + std::to_string(i)));
  }
  if (j.contains("d_r") && j.at("d_r").is_number_integer() && !rep.generators.empty() &&
      j.at("d_r").get<long long>() != rep.generators.front().rows()) {
    schema_error(path + "/d_r", "d_r does not match the matrix size");
  }
  return rep;
}

QuestionRef question_ref_from_json(const json& j, const std::string& path) {
  if (j.is_string()) {
    return j.get<std::string>();
  }
  if (j.is_array()) {
    return real_vector_from_json(j, path);
  }
  schema_error(path, "expected a question name or a coefficient array");
}

SessionEvent event_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    schema_error(path, "expected an event object with a kind");
  }
  SessionEvent event;
  const auto kind = j.at("kind").get<std::string>();
  if (j.contains("seq") && j.at("seq").is_number_unsigned()) {
    event.seq = j.at("seq").get<std::size_t>();
  }
  if (j.contains("timestamp") && j.at("timestamp").is_string()) {
    event.timestamp = j.at("timestamp").get<std::string>();
  }
  auto need = [&](const char* key) -> const json& {
    if (!j.contains(key)) {
      schema_error(path + "/" + key, "missing required field");
    }
    return j.at(key);
  };
  if (kind == "ask") {
    event.kind = SessionEvent::Kind::Ask;
    event.question = question_ref_from_json(need("question"), path + "/question");
    event.outcome = number_at(need("outcome"), path + "/outcome");
    event.seed = seed_from_json(need("seed"), path + "/seed");
    if (j.contains("draw")) {
      event.draw = number_at(j.at("draw"), path + "/draw");
    }
  } else if (kind == "evolve") {
    event.kind = SessionEvent::Kind::Evolve;
    event.question = question_ref_from_json(need("question"), path + "/question");
    event.theta = number_at(need("theta"), path + "/theta");
  } else if (kind == "reset") {
    event.kind = SessionEvent::Kind::Reset;
  } else {
    schema_error(path + "/kind", "unknown event kind '" + kind + "'");
  }
  return event;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::ValidationError, "cannot open '" + path + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& document) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::ValidationError, "cannot write '" + path + "'");
  }
  out << document.dump(2) << '\n';
}

} // namespace entwined::io
