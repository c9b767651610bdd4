#include "flowc/bridge.hpp"

#include <httplib.h>

#include "flowc/codegen.hpp"
#include "flowc/json_io.hpp"
#include "flowc/runtime.hpp"
#include "flowc/structure.hpp"
#include "flowc/validate.hpp"

namespace flowc {

namespace {

struct BadRequest {
  std::string message;
};

BridgeResponse reply(int status, const Json& body) { return BridgeResponse{status, body.dump()}; }

// Wraps a handler result with the request's "meta" object, when present.
Json with_meta(Json body, const Json& request) {
  if (request.is_object()) {
    auto meta = request.find("meta");
    if (meta != request.end()) body["meta"] = *meta;
  }
  return body;
}

Json parse_body(std::string_view body) {
  Json request = Json::parse(body, nullptr, false);
  if (request.is_discarded() || !request.is_object()) throw BadRequest{"request body must be a JSON object"};
  return request;
}

// The document is the body itself, or its "doc" member for endpoints that
// take extra arguments.
FlowchartDoc read_doc(const Json& source) {
  try {
    return parse_document(source.dump());
  } catch (const MalformedDocument& e) {
    throw BadRequest{std::string("malformed document: ") + e.detail()};
  }
}

const Json& member(const Json& request, const char* name) {
  auto it = request.find(name);
  if (it == request.end()) throw BadRequest{std::string("missing \"") + name + "\""};
  return *it;
}

NodeId node_member(const Json& request, const char* name) {
  const Json& value = member(request, name);
  if (!value.is_string()) throw BadRequest{std::string("\"") + name + "\" must be a string"};
  return NodeId(value.get<std::string>());
}

BridgeResponse validate_endpoint(const Json& request) {
  const auto doc = read_doc(request.contains("doc") ? request["doc"] : request);
  return reply(200, with_meta(Json{{"diagnostics", to_json(validate(doc))}}, request));
}

BridgeResponse can_connect_endpoint(const Json& request) {
  const auto doc = read_doc(member(request, "doc"));
  const ConnectDecision decision = can_connect(doc, node_member(request, "from"), node_member(request, "to"));
  return reply(200, with_meta(to_json(decision), request));
}

BridgeResponse labels_endpoint(const Json& request) {
  const auto doc = read_doc(member(request, "doc"));
  const auto labels = allowed_edge_labels(doc, node_member(request, "branch"));
  return reply(200, with_meta(Json{{"allowed", to_json(labels)}}, request));
}

BridgeResponse generate_endpoint(const Json& request) {
  const auto doc = read_doc(request.contains("doc") ? request["doc"] : request);
  const auto diagnostics = validate(doc);
  if (has_errors(diagnostics)) return reply(422, with_meta(Json{{"diagnostics", to_json(diagnostics)}}, request));
  const Program program = structure(doc);
  return reply(200, with_meta(Json{{"python", emit_python(program)}, {"ast", to_json(program)}}, request));
}

BridgeResponse run_endpoint(const Json& request, const BridgeOptions& options) {
  const auto doc = read_doc(member(request, "doc"));
  Limits limits;
  if (auto it = request.find("max_steps"); it != request.end()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() <= 0) {
      throw BadRequest{"\"max_steps\" must be a positive integer"};
    }
    limits.max_steps = it->get<std::uint64_t>();
  }
  limits.max_steps = std::min(limits.max_steps, options.max_steps_cap);
  const auto diagnostics = validate(doc);
  if (has_errors(diagnostics)) return reply(422, with_meta(Json{{"diagnostics", to_json(diagnostics)}}, request));
  return reply(200, with_meta(to_json(run_program(structure(doc), limits)), request));
}

}  // namespace

BridgeResponse handle_request(std::string_view method, std::string_view path, std::string_view body,
                              const BridgeOptions& options) {
  constexpr std::string_view kPrefix = "/v1/";
  if (path.substr(0, kPrefix.size()) != kPrefix) return reply(404, Json{{"error", "unknown path"}});
  const std::string_view endpoint = path.substr(kPrefix.size());
  if (method == "OPTIONS") return BridgeResponse{204, ""};

  if (endpoint == "health") {
    if (method != "GET") return reply(405, Json{{"error", "use GET"}});
    return reply(200, Json{{"status", "ok"}});
  }
  static constexpr std::string_view kPosts[] = {"validate", "can-connect", "labels", "generate", "run"};
  if (std::find(std::begin(kPosts), std::end(kPosts), endpoint) == std::end(kPosts)) {
    return reply(404, Json{{"error", "unknown path"}});
  }
  if (method != "POST") return reply(405, Json{{"error", "use POST"}});

  try {
    const Json request = parse_body(body);
    if (endpoint == "validate") return validate_endpoint(request);
    if (endpoint == "can-connect") return can_connect_endpoint(request);
    if (endpoint == "labels") return labels_endpoint(request);
    if (endpoint == "generate") return generate_endpoint(request);
    return run_endpoint(request, options);
  } catch (const BadRequest& e) {
    return reply(400, Json{{"error", e.message}});
  } catch (const std::invalid_argument& e) {
    // UnknownNode, NotABranch
    return reply(400, Json{{"error", e.what()}});
  }
}

struct BridgeServer::Impl {
  BridgeOptions options;
  httplib::Server server;
};

BridgeServer::BridgeServer(BridgeOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  Impl* impl = impl_.get();
  auto dispatch = [impl](const httplib::Request& req, httplib::Response& res) {
    BridgeResponse r = handle_request(req.method, req.path, req.body, impl->options);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", impl->options.cors_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    if (!r.body.empty()) res.set_content(r.body, "application/json");
  };
  const std::string pattern = R"(/.*)";
  impl->server.Get(pattern, dispatch);
  impl->server.Post(pattern, dispatch);
  impl->server.Options(pattern, dispatch);
}

BridgeServer::~BridgeServer() { stop(); }

int BridgeServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool BridgeServer::listen() { return impl_->server.listen_after_bind(); }

void BridgeServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace flowc
