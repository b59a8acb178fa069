#include "entwined/error.hpp"
#include "entwined/io.hpp"
#include "entwined/service.hpp"

namespace entwined::service {

std::shared_ptr<SessionStore::Entry> SessionStore::create(const Scenario& scenario, std::uint64_t seed,
                                                          std::string id) {
  std::unique_lock lock(mutex_);
  if (id.empty()) {
    id = new_session(scenario, seed).id();
    const auto base = id;
    for (int k = 2; sessions_.contains(id); ++k) {
      id = base + "-" + std::to_string(k);
    }
  } else if (sessions_.contains(id)) {
    throw Error(ErrorKind::ValidationError, "session '" + id + "' already exists", "/id");
  }
  auto entry = std::make_shared<Entry>(new_session(scenario, seed, id));
  sessions_.emplace(id, entry);
  return entry;
}

std::shared_ptr<SessionStore::Entry> SessionStore::insert(Session session) {
  std::unique_lock lock(mutex_);
  auto id = session.id();
  auto entry = std::make_shared<Entry>(std::move(session));
  sessions_[id] = entry;
  return entry;
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw Error(ErrorKind::UnknownSession, "no session with id '" + id + "'");
  }
  return it->second;
}

std::vector<std::string> SessionStore::ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) {
    out.push_back(id);
  }
  return out;
}

void SessionStore::save_all(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  std::vector<std::shared_ptr<Entry>> entries;
  {
    std::shared_lock lock(mutex_);
    for (const auto& [_, e] : sessions_) {
      entries.push_back(e);
    }
  }
  for (const auto& e : entries) {
    std::lock_guard lock(e->mutex);
    io::write_json_file((dir / (e->session.id() + ".json")).string(), io::session_snapshot(e->session));
  }
}

std::size_t SessionStore::load_all(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    return 0;
  }
  std::size_t loaded = 0;
  for (const auto& file : std::filesystem::directory_iterator(dir)) {
    if (file.path().extension() == ".json") {
      insert(io::session_from_snapshot(io::read_json_file(file.path().string())));
      ++loaded;
    }
  }
  return loaded;
}

} // namespace entwined::service
