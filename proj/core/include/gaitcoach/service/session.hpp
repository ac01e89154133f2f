#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaitcoach/service/pipeline.hpp"

namespace gaitcoach::service {

/// Parses the optional "config" member of a session request.
PipelineConfig pipeline_config_from_json(const nlohmann::json& doc);

/// Sessions persisted as plain directories:
///   <root>/<id>/session.json     id, creation time, config
///   <root>/<id>/sample.json      inputs as received
///   <root>/<id>/exemplar.json
///   <root>/<id>/attributes.json  user-authored attributes
///   <root>/<id>/report.json
///   <root>/<id>/animations/<suggestion>.json
/// Writes within a session are serialized; reads share a lock and always see
/// the last complete report. Sessions are reloaded from disk on first use.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  /// Runs the pipeline and persists the session. Returns the new id.
  std::string create(const nlohmann::json& sample, const nlohmann::json& exemplar,
                     const nlohmann::json& config = nullptr, const nlohmann::json& attributes = nullptr);

  std::string report(const std::string& id);
  nlohmann::json profile(const std::string& id);
  /// Validates, adds and regenerates the report, which is returned.
  std::string add_attribute(const std::string& id, const nlohmann::json& meta);
  std::string set_config(const std::string& id, const nlohmann::json& config);
  std::string animation(const std::string& id, const std::string& suggestion);
  void remove(const std::string& id);
  bool exists(const std::string& id);

 private:
  struct Session {
    std::shared_mutex mutex;
    std::mutex cache_mutex;
    std::string id;
    nlohmann::json info;
    std::vector<attributes::AttributeMeta> user;
    nlohmann::json config_doc;
    std::unique_ptr<Analysis> analysis;
    std::string report_text;
    std::map<std::string, std::string> animations;
  };

  std::shared_ptr<Session> open(const std::string& id);
  std::filesystem::path dir(const std::string& id) const { return root_ / id; }
  void rebuild(Session& s);
  std::string new_id();

  std::filesystem::path root_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace gaitcoach::service
