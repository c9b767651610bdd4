#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "flowc/document.hpp"

namespace flowc {

enum class DiagnosticCode {
  SelfLoop,
  MissingStart,
  MultipleStart,
  MissingEnd,
  BlockOutDegree,
  BranchOutDegree,
  BranchLabelMissing,
  BranchLabelDuplicate,
  StartInDegree,
  EndOutDegree,
  UnreachableNode,
  IllegalBackEdge,
  NoJoin,
  BadBlockText,
  BadBranchText,
};

enum class Severity { Error, Warning };

std::string_view to_string(DiagnosticCode code);
std::optional<DiagnosticCode> diagnostic_code_from_string(std::string_view name);
std::string_view to_string(Severity severity);

struct EdgeRef {
  NodeId from;
  NodeId to;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

/// What a diagnostic points at. monostate is used for document-wide problems
/// (no Start, no End).
using Subject = std::variant<std::monostate, NodeId, EdgeRef>;

struct Diagnostic {
  DiagnosticCode code;
  Severity severity;
  Subject subject;
  std::string message;

  bool is_error() const noexcept { return severity == Severity::Error; }
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// UnreachableNode is the only warning.
Severity severity_of(DiagnosticCode code);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Degree, label, text and reachability rules. Ordered: document-wide
/// problems, then per-node in node order, then per-edge in edge order.
std::vector<Diagnostic> validate_local(const FlowchartDoc& doc);

/// Loop and join rules of the constrained-GOTO class. Requires a locally
/// valid document; returns an empty list when the precondition does not hold.
std::vector<Diagnostic> validate_structure(const FlowchartDoc& doc);

/// validate_local followed by validate_structure when the former has no errors.
std::vector<Diagnostic> validate(const FlowchartDoc& doc);

// ---------------------------------------------------------------------------
// Preemptive feedback

class UnknownNode : public std::invalid_argument {
 public:
  explicit UnknownNode(const std::string& id) : std::invalid_argument("unknown node \"" + id + "\"") {}
};

class NotABranch : public std::invalid_argument {
 public:
  explicit NotABranch(const std::string& id) : std::invalid_argument("node \"" + id + "\" is not a branch") {}
};

struct ConnectDecision {
  bool allowed = false;
  std::optional<DiagnosticCode> reason;
  /// Only meaningful when the source is a branch.
  std::vector<EdgeLabel> allowed_labels;

  friend bool operator==(const ConnectDecision&, const ConnectDecision&) = default;
};

/// Would drawing from -> to be accepted? Refuses anything that would create a
/// SelfLoop, BlockOutDegree, BranchOutDegree, EndOutDegree or StartInDegree
/// problem. Throws UnknownNode.
ConnectDecision can_connect(const FlowchartDoc& doc, const NodeId& from, const NodeId& to);

/// {True, False} minus the labels already used on the branch's outgoing edges,
/// in that order. Throws UnknownNode or NotABranch.
std::vector<EdgeLabel> allowed_edge_labels(const FlowchartDoc& doc, const NodeId& branch);

}  // namespace flowc
