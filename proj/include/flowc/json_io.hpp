#pragma once

#include <json.hpp>

#include "flowc/runtime.hpp"
#include "flowc/structure.hpp"
#include "flowc/validate.hpp"

namespace flowc {

using Json = nlohmann::ordered_json;

/// {"code", "severity", "subject": {"node": id} | {"edge": {"from", "to"}} | null, "message"}
Json to_json(const Diagnostic& diagnostic);
Json to_json(const std::vector<Diagnostic>& diagnostics);

/// {"allowed": bool, "reason"?: code, "allowed_labels"?: ["true"|"false"]}
Json to_json(const ConnectDecision& decision);
Json to_json(const std::vector<EdgeLabel>& labels);

/// {"lines": [...], "status": "completed" | "step_limit" | {"error": "Kind: detail"}}
Json to_json(const Trace& trace);

Json to_json(const Program& program);

}  // namespace flowc
