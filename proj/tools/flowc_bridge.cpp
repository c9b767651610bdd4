#include <CLI11.hpp>
#include <iostream>

#include "flowc/bridge.hpp"

int main(int argc, char** argv) {
  CLI::App app{"HTTP bridge between the flowchart editor and the flowc core", "flowc-bridge"};
  std::string host = "127.0.0.1";
  int port = 8765;
  flowc::BridgeOptions options;
  app.add_option("--host", host, "Bind address");
  app.add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  app.add_option("--cors-origin", options.cors_origin, "Access-Control-Allow-Origin value");
  app.add_option("--max-steps-cap", options.max_steps_cap, "Upper bound on /v1/run step budgets")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  flowc::BridgeServer server(options);
  const int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "error: IOError: cannot bind " << host << ":" << port << '\n';
    return 2;
  }
  std::cerr << "flowc-bridge listening on http://" << host << ":" << bound << "/v1/\n";
  return server.listen() ? 0 : 1;
}
