#include "iqa/http_service.hpp"

#include <httplib.h>

#include "iqa/errors.hpp"

namespace iqa {

namespace {

void send_json(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, nlohmann::ordered_json{{"error", message}});
}

nlohmann::json parse_body(const httplib::Request& req) {
  nlohmann::json body;
  try {
    body = nlohmann::json::parse(req.body.empty() ? std::string("{}") : req.body);
  } catch (const nlohmann::json::parse_error&) {
    throw ValidationError("request body is not valid JSON");
  }
  if (!body.is_object()) throw ValidationError("request body must be a JSON object");
  return body;
}

std::string string_member(const nlohmann::json& body, const char* key, bool required,
                          const std::string& fallback = {}) {
  if (!body.contains(key)) {
    if (required) throw ValidationError(std::string("missing field ") + key);
    return fallback;
  }
  if (!body[key].is_string()) throw ValidationError(std::string(key) + " must be a string");
  return body[key].get<std::string>();
}

template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      send_json(res, 200, fn(req));
    } catch (const ValidationError& e) {
      send_error(res, 400, e.what());
    } catch (const ParseError& e) {
      send_error(res, 400, e.what());
    } catch (const NotFoundError& e) {
      send_error(res, 404, e.what());
    } catch (const InvalidStateError& e) {
      send_error(res, 409, e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, e.what());
    }
  };
}

}  // namespace

struct HttpService::Impl {
  SessionStore& store;
  httplib::Server server;

  explicit Impl(SessionStore& s) : store(s) {}
};

HttpService::HttpService(SessionStore& store, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(store)) {
  auto& server = impl_->server;
  auto& st = impl_->store;

  server.Get("/health", guarded([](const httplib::Request&) {
               return nlohmann::ordered_json{{"status", "ok"}};
             }));

  server.Post("/sessions", guarded([&st](const httplib::Request& req) {
                auto body = parse_body(req);
                auto question = string_member(body, "question", true);
                auto mode = string_member(body, "mode", false, "og");
                nlohmann::json overrides = nlohmann::json::object();
                if (body.contains("config")) overrides = body["config"];
                return st.create(question, mode, overrides);
              }));

  server.Get(R"(/sessions/([^/]+))", guarded([&st](const httplib::Request& req) {
               return st.get(req.matches[1]);
             }));

  server.Post(R"(/sessions/([^/]+)/feedback)", guarded([&st](const httplib::Request& req) {
                auto body = parse_body(req);
                auto decision_text = string_member(body, "decision", true);
                auto decision = parse_decision(decision_text);
                if (!decision) throw ValidationError("unknown decision " + decision_text);
                auto option_id =
                    string_member(body, "option_id", *decision != Decision::AcceptCQI, "top");
                return st.feedback(req.matches[1], option_id, *decision);
              }));

  server.Post(R"(/sessions/([^/]+)/skip)", guarded([&st](const httplib::Request& req) {
                auto body = parse_body(req);
                return st.skip(req.matches[1], string_member(body, "reason", false, "other"));
              }));

  server.Post(R"(/sessions/([^/]+)/rating)", guarded([&st](const httplib::Request& req) {
                auto body = parse_body(req);
                if (!body.contains("rating") || !body["rating"].is_number_integer()) {
                  throw ValidationError("rating must be an integer");
                }
                return st.rate(req.matches[1], body["rating"].get<int>());
              }));

  if (static_dir) {
    if (!server.set_mount_point("/", static_dir->string())) {
      throw Error("static directory not found: " + static_dir->string());
    }
  }
}

HttpService::~HttpService() { stop(); }

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpService::listen() { return impl_->server.listen_after_bind(); }

void HttpService::stop() {
  if (impl_) impl_->server.stop();
}

void HttpService::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace iqa
