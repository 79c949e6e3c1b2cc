#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "iqa/session_store.hpp"

namespace iqa {

/// HTTP+JSON front end of a SessionStore.
///
///   POST /sessions                 {question, mode, config?}
///   GET  /sessions/{id}
///   POST /sessions/{id}/feedback   {option_id, decision}
///   POST /sessions/{id}/skip       {reason}
///   POST /sessions/{id}/rating     {rating}
///   GET  /health
///
/// Errors are {"error": message} with 400 (bad input), 404 (unknown
/// session or option) or 409 (session state forbids the operation).
class HttpService {
 public:
  explicit HttpService(SessionStore& store,
                       std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Serves until stop(); returns false if the server failed.
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace iqa
