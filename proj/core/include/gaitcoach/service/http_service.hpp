#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "gaitcoach/service/session.hpp"

namespace gaitcoach::service {

/// JSON-over-REST front end for a SessionStore.
///   POST   /sessions                     {sample, exemplar, config?, attributes?} -> 201 {id}
///   GET    /sessions/{id}/report
///   POST   /sessions/{id}/attributes     one attribute document -> report
///   PUT    /sessions/{id}/config         comparison config -> report
///   GET    /sessions/{id}/animations/{sid}
///   GET    /sessions/{id}/profile
///   DELETE /sessions/{id}
///   GET    /skeleton, GET /catalog
/// Errors are {"error": message, ...} with 400 validation, 404 unknown,
/// 409 duplicate name, 422 pipeline failure.
class HttpService {
 public:
  HttpService(SessionStore& store, std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Blocks until stop(). Returns false if the address cannot be bound.
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it, or -1. Serve with listen_after_bind().
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  bool running() const;
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// "host:port" or ":port"; the host defaults to 127.0.0.1.
std::pair<std::string, int> parse_listen_address(const std::string& text);

}  // namespace gaitcoach::service
