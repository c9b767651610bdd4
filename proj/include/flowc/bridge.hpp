#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace flowc {

struct BridgeOptions {
  /// Upper bound applied to the max_steps of /v1/run requests.
  std::uint64_t max_steps_cap = 1'000'000;
  /// Value of Access-Control-Allow-Origin.
  std::string cors_origin = "*";
};

struct BridgeResponse {
  int status = 200;
  /// JSON text; empty for preflight responses.
  std::string body;
};

/// Stateless request handler behind the HTTP server. Paths live under /v1/.
BridgeResponse handle_request(std::string_view method, std::string_view path, std::string_view body,
                              const BridgeOptions& options = {});

/// HTTP front end over handle_request. Requests are served concurrently.
class BridgeServer {
 public:
  explicit BridgeServer(BridgeOptions options = {});
  ~BridgeServer();
  BridgeServer(const BridgeServer&) = delete;
  BridgeServer& operator=(const BridgeServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called. Call after a successful bind().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace flowc
