#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "entwined/representations.hpp"
#include "entwined/scenario.hpp"

namespace entwined::service {

using json = nlohmann::json;

enum class ApiCode { Schema, Validation, UnknownName, UnknownSession, NonCommuting, Internal };

std::string to_string(ApiCode code);

struct ApiError {
  ApiCode code = ApiCode::Internal;
  std::string message;
  std::string path;

  json to_json() const;
};

ApiError classify(const std::exception& e);
/// Classifies the exception currently being handled.
ApiError classify_current();

int http_status(ApiCode code);
int exit_code(ApiCode code);

// Response documents shared by the CLI and the HTTP service.

json algebra_info(const GeneratorSet& rep);
json scenario_info(const Scenario& scenario);
json verify_document(const GeneratorSet& rep);

/// Irrep of an algebra by catalog name: "2", "3", ... for su(2); "3", "3bar", "8", "10bar", "15'" ... for su(3);
/// "n", "nbar" and the adjoint dimension for su(n).
GeneratorSet irrep_by_name(const std::string& algebra, const std::string& name);
json decompose_document(const std::string& algebra, const std::vector<std::string>& factors,
                        bool with_isometries = false);

/// Question given as a name or as comma-separated coefficients.
QuestionRef parse_question_arg(const std::string& text);

json state_summary(const Session& session);
json session_document(const Session& session);
json peek_document(const Session& session, const std::vector<QuestionRef>& questions);
json ask_document(const AskRecord& record, const Session& session);

/// Human-readable rendering of any of the documents above.
std::string render_human(const json& document);

/// Thread-safe session store. Each session has its own mutex; distinct sessions
/// are mutated concurrently.
class SessionStore {
public:
  struct Entry {
    std::mutex mutex;
    Session session;
    explicit Entry(Session s) : session(std::move(s)) {}
  };

  std::shared_ptr<Entry> create(const Scenario& scenario, std::uint64_t seed, std::string id = {});
  std::shared_ptr<Entry> insert(Session session);
  /// Throws Error(UnknownSession).
  std::shared_ptr<Entry> find(const std::string& id) const;
  std::vector<std::string> ids() const;

  /// One snapshot file per session, named <id>.json.
  void save_all(const std::filesystem::path& dir) const;
  std::size_t load_all(const std::filesystem::path& dir);

private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

struct Response {
  int status = 200;
  json body;
};

/// Transport-independent HTTP routing.
class Service {
public:
  Service() = default;

  Response handle(const std::string& method, const std::string& path, const std::string& body);

  SessionStore& store() noexcept { return store_; }

private:
  Response dispatch(const std::string& method, const std::vector<std::string>& segments, const json& body);
  Response create_session(const json& body);
  Response session_action(const std::string& id, const std::string& action, const std::string& method,
                          const json& body);

  SessionStore store_;
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string allow_origin;
  std::optional<std::filesystem::path> snapshot_dir;
};

/// Blocks until the server stops (SIGINT / SIGTERM). Session snapshots are
/// written to snapshot_dir on shutdown and loaded from it on start.
int serve(Service& service, const ServerOptions& options);

} // namespace entwined::service
