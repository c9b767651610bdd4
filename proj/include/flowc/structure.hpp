#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "flowc/document.hpp"
#include "flowc/expr.hpp"
#include "flowc/regions.hpp"
#include "flowc/validate.hpp"

namespace flowc {

struct SNode;
using SBody = std::vector<SNode>;

struct SAssign {
  std::string target;
  ExprPtr value;
};

struct SPrint {
  ExprPtr value;
};

/// Loops while `cond` is truthy, or while it is falsy when `negated`.
struct SWhile {
  ExprPtr cond;
  bool negated = false;
  SBody body;
};

struct SIf {
  ExprPtr cond;
  SBody then_body;
  SBody else_body;
};

struct SNode {
  std::variant<SAssign, SPrint, SWhile, SIf> node;
};

struct Program {
  SBody body;
};

bool operator==(const SNode& a, const SNode& b);
bool operator==(const Program& a, const Program& b);

/// Thrown by structure() for documents that fail validation.
class StructureError : public std::runtime_error {
 public:
  explicit StructureError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// GOTO-to-WHILE transformation. Validates first and throws StructureError
/// carrying every error diagnostic when the document is not convertible.
Program structure(const FlowchartDoc& doc);

/// Loop or conditional, decided by tracing from the branch with the nodes of
/// `open_path` (ids on the traversal path above it) already visited. With an
/// empty path the whole document is traced from Start. Throws UnknownNode,
/// NotABranch, or InternalError when the document is not structurally valid.
BranchClassification classify_branch(const FlowchartDoc& doc, const NodeId& branch,
                                     const std::vector<NodeId>& open_path = {});

}  // namespace flowc
