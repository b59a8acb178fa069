#include "entwined/error.hpp"
#include "entwined/io.hpp"
#include "entwined/service.hpp"

namespace entwined::service {

namespace {

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  const auto end = path.find('?');
  const std::string clean = path.substr(0, end);
  while (pos < clean.size()) {
    const auto slash = std::min(clean.find('/', pos), clean.size());
    if (slash > pos) {
      out.push_back(clean.substr(pos, slash - pos));
    }
    pos = slash + 1;
  }
  return out;
}

const json& require(const json& body, const char* key) {
  if (!body.is_object() || !body.contains(key)) {
    throw Error(ErrorKind::SchemaError, std::string("/") + key + ": missing required field", std::string("/") + key);
  }
  return body.at(key);
}

double number_field(const json& body, const char* key) {
  const auto& v = require(body, key);
  if (!v.is_number()) {
    throw Error(ErrorKind::SchemaError, std::string("/") + key + ": expected a number", std::string("/") + key);
  }
  return v.get<double>();
}

std::optional<std::uint64_t> optional_seed(const json& body) {
  if (body.is_object() && body.contains("seed") && !body.at("seed").is_null()) {
    return io::seed_from_json(body.at("seed"), "/seed");
  }
  return std::nullopt;
}

Response error_response(const ApiError& e) { return {http_status(e.code), e.to_json()}; }

Response not_found(const std::string& method, const std::string& path) {
  return {404, ApiError{ApiCode::UnknownName, "no route for " + method + " " + path, ""}.to_json()};
}

} // namespace

Response Service::handle(const std::string& method, const std::string& path, const std::string& body) {
  try {
    json parsed = json::object();
    if (!body.empty()) {
      parsed = json::parse(body);
    }
    auto response = dispatch(method, split_path(path), parsed);
    if (response.status == 404 && response.body.is_null()) {
      return not_found(method, path);
    }
    return response;
  } catch (...) {
    return error_response(classify_current());
  }
}

Response Service::dispatch(const std::string& method, const std::vector<std::string>& seg, const json& body) {
  if (seg.size() == 1 && seg[0] == "scenarios" && method == "GET") {
    json list = json::array();
    for (const auto& name : builtin_scenario_names()) {
      const auto s = builtin_scenario(name);
      list.push_back({{"name", name},
                      {"algebra", s.spec().algebra_id},
                      {"d_r", s.representation().d_r()},
                      {"questions", s.question_names()},
                      {"document", builtin_scenario_document(name)}});
    }
    return {200, {{"scenarios", list}}};
  }
  if (seg.size() == 1 && seg[0] == "sessions" && method == "POST") {
    return create_session(body);
  }
  if (seg.size() == 2 && seg[0] == "sessions" && method == "GET") {
    const auto entry = store_.find(seg[1]);
    std::lock_guard lock(entry->mutex);
    return {200, session_document(entry->session)};
  }
  if (seg.size() == 3 && seg[0] == "sessions") {
    return session_action(seg[1], seg[2], method, body);
  }
  if (seg.size() == 3 && seg[0] == "algebra" && seg[2] == "info" && method == "GET") {
    return {200, scenario_info(builtin_scenario(seg[1]))};
  }
  if (seg.size() == 1 && seg[0] == "decompose" && method == "POST") {
    const auto& algebra = require(body, "algebra");
    const auto& factors = require(body, "factors");
    if (!algebra.is_string()) {
      throw Error(ErrorKind::SchemaError, "/algebra: expected a string", "/algebra");
    }
    if (!factors.is_array()) {
      throw Error(ErrorKind::SchemaError, "/factors: expected an array of irrep names", "/factors");
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (!factors[i].is_string()) {
        const auto path = "/factors/" + std::to_string(i);
        throw Error(ErrorKind::SchemaError, path + ": expected a string", path);
      }
      names.push_back(factors[i].get<std::string>());
    }
    const bool iso = body.value("with_isometries", false);
    return {200, decompose_document(algebra.get<std::string>(), names, iso)};
  }
  return {404, nullptr};
}

Response Service::create_session(const json& body) {
  const auto& ref = require(body, "scenario");
  Scenario scenario = ref.is_string() ? builtin_scenario(ref.get<std::string>()) : load_scenario(ref);
  const auto seed = optional_seed(body).value_or(fresh_seed());
  std::string id;
  if (body.contains("id")) {
    if (!body.at("id").is_string() || body.at("id").get<std::string>().empty()) {
      throw Error(ErrorKind::SchemaError, "/id: expected a non-empty string", "/id");
    }
    id = body.at("id").get<std::string>();
  }
  const auto entry = store_.create(scenario, seed, id);
  std::lock_guard lock(entry->mutex);
  return {201, session_document(entry->session)};
}

Response Service::session_action(const std::string& id, const std::string& action, const std::string& method,
                                 const json& body) {
  const bool post = method == "POST";
  if (!(post && (action == "peek" || action == "ask" || action == "evolve" || action == "reset")) &&
      !(method == "GET" && action == "history")) {
    return {404, nullptr};
  }
  const auto entry = store_.find(id);
  std::lock_guard lock(entry->mutex);
  auto& session = entry->session;

  if (action == "history") {
    return {200, {{"id", session.id()}, {"history", io::history_to_json(session.history())}}};
  }
  if (action == "peek") {
    std::vector<QuestionRef> refs;
    if (body.contains("questions")) {
      const auto& list = body.at("questions");
      if (!list.is_array() || list.empty()) {
        throw Error(ErrorKind::SchemaError, "/questions: expected a non-empty array", "/questions");
      }
      for (std::size_t i = 0; i < list.size(); ++i) {
        refs.push_back(io::question_ref_from_json(list[i], "/questions/" + std::to_string(i)));
      }
    } else {
      refs.push_back(io::question_ref_from_json(require(body, "question"), "/question"));
    }
    return {200, peek_document(session, refs)};
  }
  if (action == "ask") {
    const auto ref = io::question_ref_from_json(require(body, "question"), "/question");
    const auto record = session.ask(ref, optional_seed(body));
    return {200, ask_document(record, session)};
  }
  if (action == "evolve") {
    const auto ref = io::question_ref_from_json(require(body, "question"), "/question");
    session.evolve(ref, number_field(body, "theta"));
    return {200, {{"state_summary", state_summary(session)}, {"event", io::to_json(session.history().back())}}};
  }
  session.reset();
  return {200, session_document(session)};
}

} // namespace entwined::service
