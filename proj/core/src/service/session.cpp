#include "gaitcoach/service/session.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "gaitcoach/error.hpp"
#include "gaitcoach/motion/io.hpp"

namespace gaitcoach::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::not_found, "missing " + path.filename().string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool valid_id(const std::string& id) {
  return id.size() == 16 && id.find_first_not_of("0123456789abcdef") == std::string::npos;
}

[[noreturn]] void no_session(const std::string& id) {
  throw Error(ErrorCode::not_found, "no session '" + id + "'");
}

std::vector<attributes::AttributeMeta> user_metas(const json& doc) {
  if (doc.is_null()) return {};
  return attributes::metas_from_json(doc);
}

json metas_json(const std::vector<attributes::AttributeMeta>& metas) {
  json out = json::array();
  for (const auto& m : metas) out.push_back(attributes::to_json(m));
  return out;
}

}  // namespace

PipelineConfig pipeline_config_from_json(const json& doc) {
  PipelineConfig cfg;
  cfg.comparison = compare::config_from_json(doc);
  return cfg;
}

SessionStore::SessionStore(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

std::string SessionStore::new_id() {
  static thread_local std::mt19937_64 rng(std::random_device{}() ^
                                          static_cast<std::uint64_t>(
                                              std::chrono::steady_clock::now().time_since_epoch().count()));
  for (;;) {
    std::ostringstream ss;
    ss << std::hex;
    ss.width(16);
    ss.fill('0');
    ss << rng();
    const std::string id = ss.str();
    if (!fs::exists(dir(id))) return id;
  }
}

void SessionStore::rebuild(Session& s) {
  const auto sample = motion::parse_motion(read_file(dir(s.id) / "sample.json"));
  const auto exemplar = motion::parse_motion(read_file(dir(s.id) / "exemplar.json"));
  auto analysis = std::make_unique<Analysis>(analyze(sample, exemplar, s.user, pipeline_config_from_json(s.config_doc)));
  s.report_text = compare::serialize_report(analysis->report);
  s.analysis = std::move(analysis);
  s.animations.clear();
  std::error_code ec;
  fs::remove_all(dir(s.id) / "animations", ec);
  fs::create_directories(dir(s.id) / "animations");
  write_file(dir(s.id) / "report.json", s.report_text);
}

std::string SessionStore::create(const json& sample, const json& exemplar, const json& config,
                                 const json& attributes) {
  // Validate everything before touching the disk.
  const auto s_seq = [&] {
    try {
      return motion::motion_from_json(sample);
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError("sample", e.what());
    }
  }();
  const auto e_seq = [&] {
    try {
      return motion::motion_from_json(exemplar);
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError("exemplar", e.what());
    }
  }();
  auto session = std::make_shared<Session>();
  session->user = user_metas(attributes);
  session->config_doc = config.is_null() ? json(nullptr) : config;
  auto analysis = std::make_unique<Analysis>(
      analyze(s_seq, e_seq, session->user, pipeline_config_from_json(session->config_doc)));

  std::lock_guard lock(mutex_);
  session->id = new_id();
  const fs::path d = dir(session->id);
  fs::create_directories(d / "animations");
  session->info = {{"id", session->id},
                   {"createdAt", std::chrono::duration_cast<std::chrono::seconds>(
                                     std::chrono::system_clock::now().time_since_epoch())
                                     .count()},
                   {"config", session->config_doc}};
  write_file(d / "sample.json", motion::serialize_motion(s_seq));
  write_file(d / "exemplar.json", motion::serialize_motion(e_seq));
  write_file(d / "attributes.json", metas_json(session->user).dump(2));
  write_file(d / "session.json", session->info.dump(2));
  session->report_text = compare::serialize_report(analysis->report);
  session->analysis = std::move(analysis);
  write_file(d / "report.json", session->report_text);
  sessions_[session->id] = session;
  return session->id;
}

std::shared_ptr<SessionStore::Session> SessionStore::open(const std::string& id) {
  if (!valid_id(id)) no_session(id);
  std::lock_guard lock(mutex_);
  if (auto it = sessions_.find(id); it != sessions_.end()) return it->second;
  const fs::path d = dir(id);
  if (!fs::exists(d / "session.json")) no_session(id);
  auto s = std::make_shared<Session>();
  s->id = id;
  s->info = json::parse(read_file(d / "session.json"));
  s->config_doc = s->info.value("config", json(nullptr));
  s->user = user_metas(json::parse(read_file(d / "attributes.json")));
  rebuild(*s);
  sessions_[id] = s;
  return s;
}

bool SessionStore::exists(const std::string& id) {
  try {
    open(id);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::not_found) return false;
    throw;
  }
}

std::string SessionStore::report(const std::string& id) {
  auto s = open(id);
  std::shared_lock lock(s->mutex);
  return s->report_text;
}

json SessionStore::profile(const std::string& id) {
  auto s = open(id);
  std::shared_lock lock(s->mutex);
  return {{"sample", attributes::to_json(s->analysis->report.sample_profile)},
          {"exemplar", attributes::to_json(s->analysis->report.exemplar_profile)}};
}

std::string SessionStore::add_attribute(const std::string& id, const json& meta) {
  auto s = open(id);
  auto parsed = attributes::meta_from_json(meta);
  std::unique_lock lock(s->mutex);
  // Field paths relative to the posted document.
  attributes::require_valid(parsed, s->analysis->sample.skeleton());
  auto user = s->user;
  user.push_back(std::move(parsed));
  // Validates and detects duplicates before anything is replaced.
  attribute_set(user, s->analysis->sample.skeleton(), s->analysis->exemplar.skeleton());
  const auto previous = s->user;
  s->user = std::move(user);
  try {
    rebuild(*s);
  } catch (...) {
    s->user = previous;
    throw;
  }
  write_file(dir(id) / "attributes.json", metas_json(s->user).dump(2));
  return s->report_text;
}

std::string SessionStore::set_config(const std::string& id, const json& config) {
  auto s = open(id);
  pipeline_config_from_json(config);
  std::unique_lock lock(s->mutex);
  const json previous = s->config_doc;
  s->config_doc = config;
  try {
    rebuild(*s);
  } catch (...) {
    s->config_doc = previous;
    throw;
  }
  s->info["config"] = config;
  write_file(dir(id) / "session.json", s->info.dump(2));
  return s->report_text;
}

std::string SessionStore::animation(const std::string& id, const std::string& suggestion) {
  auto s = open(id);
  std::shared_lock lock(s->mutex);
  std::lock_guard cache(s->cache_mutex);
  if (auto it = s->animations.find(suggestion); it != s->animations.end()) return it->second;
  std::string text = animation_document(*s->analysis, suggestion).dump();
  write_file(dir(id) / "animations" / (suggestion + ".json"), text);
  s->animations.emplace(suggestion, text);
  return text;
}

void SessionStore::remove(const std::string& id) {
  auto s = open(id);
  std::unique_lock session_lock(s->mutex);
  std::lock_guard lock(mutex_);
  sessions_.erase(id);
  fs::remove_all(dir(id));
}

}  // namespace gaitcoach::service
