#include "flowc/json_io.hpp"

namespace flowc {

Json to_json(const Diagnostic& diagnostic) {
  Json subject = nullptr;
  if (const auto* node = std::get_if<NodeId>(&diagnostic.subject)) {
    subject = Json{{"node", node->str()}};
  } else if (const auto* edge = std::get_if<EdgeRef>(&diagnostic.subject)) {
    subject = Json{{"edge", Json{{"from", edge->from.str()}, {"to", edge->to.str()}}}};
  }
  return Json{{"code", to_string(diagnostic.code)},
              {"severity", to_string(diagnostic.severity)},
              {"subject", std::move(subject)},
              {"message", diagnostic.message}};
}

Json to_json(const std::vector<Diagnostic>& diagnostics) {
  Json out = Json::array();
  for (const auto& d : diagnostics) out.push_back(to_json(d));
  return out;
}

Json to_json(const std::vector<EdgeLabel>& labels) {
  Json out = Json::array();
  for (EdgeLabel label : labels) out.push_back(to_string(label));
  return out;
}

Json to_json(const ConnectDecision& decision) {
  Json out{{"allowed", decision.allowed}};
  if (decision.reason) out["reason"] = to_string(*decision.reason);
  if (!decision.allowed_labels.empty()) out["allowed_labels"] = to_json(decision.allowed_labels);
  return out;
}

Json to_json(const Trace& trace) {
  Json status;
  switch (trace.status) {
    case TraceStatus::Completed: status = "completed"; break;
    case TraceStatus::StepLimitExceeded: status = "step_limit"; break;
    case TraceStatus::RuntimeError: status = Json{{"error", trace.error}}; break;
  }
  return Json{{"lines", trace.lines}, {"status", std::move(status)}};
}

}  // namespace flowc
