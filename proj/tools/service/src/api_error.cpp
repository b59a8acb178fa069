#include <nlohmann/json.hpp>

#include "entwined/error.hpp"
#include "entwined/service.hpp"

namespace entwined::service {

std::string to_string(ApiCode code) {
  switch (code) {
  case ApiCode::Schema: return "SCHEMA";
  case ApiCode::Validation: return "VALIDATION";
  case ApiCode::UnknownName: return "UNKNOWN_NAME";
  case ApiCode::UnknownSession: return "UNKNOWN_SESSION";
  case ApiCode::NonCommuting: return "NON_COMMUTING";
  case ApiCode::Internal: return "INTERNAL";
  }
  return "INTERNAL";
}

json ApiError::to_json() const {
  json out = {{"code", service::to_string(code)}, {"message", message}};
  if (!path.empty()) {
    out["path"] = path;
  }
  return out;
}

ApiError classify(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    ApiCode code = ApiCode::Validation;
    switch (err->kind()) {
    case ErrorKind::SchemaError: code = ApiCode::Schema; break;
    case ErrorKind::UnknownName:
    case ErrorKind::UnknownAlgebra:
    case ErrorKind::UnknownIrrep: code = ApiCode::UnknownName; break;
    case ErrorKind::UnknownSession: code = ApiCode::UnknownSession; break;
    case ErrorKind::NonCommuting: code = ApiCode::NonCommuting; break;
    case ErrorKind::NoConvergence:
    case ErrorKind::CommutantFailure: code = ApiCode::Internal; break;
    default: break;
    }
    return {code, std::string(entwined::to_string(err->kind())) + ": " + err->what(), err->path()};
  }
  if (const auto* parse = dynamic_cast<const nlohmann::json::exception*>(&e)) {
    return {ApiCode::Schema, parse->what(), ""};
  }
  return {ApiCode::Internal, e.what(), ""};
}

ApiError classify_current() {
  try {
    throw;
  } catch (const std::exception& e) {
    return classify(e);
  } catch (...) {
    return {ApiCode::Internal, "unknown failure", ""};
  }
}

int http_status(ApiCode code) {
  switch (code) {
  case ApiCode::UnknownSession: return 404;
  case ApiCode::NonCommuting: return 409;
  case ApiCode::Internal: return 500;
  default: return 400;
  }
}

int exit_code(ApiCode code) { return code == ApiCode::Internal ? 2 : 1; }

} // namespace entwined::service
