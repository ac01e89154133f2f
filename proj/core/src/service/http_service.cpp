#include "gaitcoach/service/http_service.hpp"

#include <httplib.h>

#include "gaitcoach/attributes/catalog.hpp"
#include "gaitcoach/error.hpp"
#include "gaitcoach/motion/io.hpp"

namespace gaitcoach::service {

using nlohmann::json;

struct HttpService::Impl {
  SessionStore& store;
  httplib::Server server;

  explicit Impl(SessionStore& s) : store(s) {}
};

namespace {

constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

// Runs a handler and maps engine exceptions onto status codes.
template <typename F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    json issues = json::array();
    for (const auto& i : e.issues()) issues.push_back({{"field", i.field}, {"message", i.message}});
    send_error(res, 400, {{"error", e.what()}, {"code", to_string(e.code())}, {"issues", issues}});
  } catch (const PipelineError& e) {
    send_error(res, 422, {{"error", e.what()}, {"code", to_string(e.code())}, {"stage", e.stage()},
                          {"input", e.input()}});
  } catch (const Error& e) {
    int status = 422;
    switch (e.code()) {
      case ErrorCode::not_found: status = 404; break;
      case ErrorCode::duplicate_name: status = 409; break;
      case ErrorCode::malformed_document:
      case ErrorCode::invalid_argument:
      case ErrorCode::unknown_joint:
      case ErrorCode::invalid_skeleton:
      case ErrorCode::invalid_rotation:
      case ErrorCode::validation_failed: status = 400; break;
      default: break;
    }
    send_error(res, status, {{"error", e.what()}, {"code", to_string(e.code())}});
  } catch (const std::exception& e) {
    send_error(res, 500, {{"error", e.what()}});
  }
}

json parse_body(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded()) throw ValidationError("body", "request body is not valid JSON");
  return body;
}

}  // namespace

HttpService::HttpService(SessionStore& store, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(store)) {
  auto& srv = impl_->server;
  auto& st = impl_->store;

  srv.Post("/sessions", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      if (!body.is_object() || !body.contains("sample") || !body.contains("exemplar")) {
        throw ValidationError("body", "expected {sample, exemplar}");
      }
      const std::string id = st.create(body["sample"], body["exemplar"], body.value("config", json(nullptr)),
                                       body.value("attributes", json(nullptr)));
      res.status = 201;
      res.set_content(json{{"id", id}}.dump(), kJson);
    });
  });
  srv.Get(R"(/sessions/([0-9a-z]+)/report)", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { res.set_content(st.report(req.matches[1]), kJson); });
  });
  srv.Get(R"(/sessions/([0-9a-z]+)/profile)", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { res.set_content(st.profile(req.matches[1]).dump(), kJson); });
  });
  srv.Post(R"(/sessions/([0-9a-z]+)/attributes)", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { res.set_content(st.add_attribute(req.matches[1], parse_body(req)), kJson); });
  });
  srv.Put(R"(/sessions/([0-9a-z]+)/config)", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { res.set_content(st.set_config(req.matches[1], parse_body(req)), kJson); });
  });
  srv.Get(R"(/sessions/([0-9a-z]+)/animations/([A-Za-z0-9_.\-]+))",
          [&st](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] { res.set_content(st.animation(req.matches[1], req.matches[2]), kJson); });
          });
  srv.Delete(R"(/sessions/([0-9a-z]+))", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      st.remove(req.matches[1]);
      res.status = 204;
    });
  });
  srv.Get("/skeleton", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(motion::to_json(motion::Skeleton::canonical()).dump(), kJson);
  });
  srv.Get("/catalog", [](const httplib::Request&, httplib::Response& res) {
    json out = json::array();
    for (const auto& m : attributes::catalog()) out.push_back(attributes::to_json(m));
    res.set_content(out.dump(), kJson);
  });
  if (static_dir) srv.set_mount_point("/", static_dir->string());
}

HttpService::~HttpService() { stop(); }

bool HttpService::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int HttpService::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpService::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpService::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool HttpService::running() const { return impl_->server.is_running(); }

void HttpService::wait_until_ready() const { impl_->server.wait_until_ready(); }

std::pair<std::string, int> parse_listen_address(const std::string& text) {
  const auto colon = text.rfind(':');
  std::string host = "127.0.0.1";
  std::string port = text;
  if (colon != std::string::npos) {
    if (colon > 0) host = text.substr(0, colon);
    port = text.substr(colon + 1);
  }
  try {
    std::size_t used = 0;
    const int p = std::stoi(port, &used);
    if (used != port.size() || p < 0 || p > 65535) throw std::invalid_argument(port);
    return {host, p};
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_argument, "invalid listen address '" + text + "'");
  }
}

}  // namespace gaitcoach::service
