#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <variant>
#include <vector>

#include "flowc/document.hpp"
#include "flowc/validate.hpp"

namespace flowc {

// Shape of a constrained-GOTO flowchart recovered by tracing it from Start:
// the nesting of loops and conditionals over node indices, before any node
// text is interpreted. The validator reports the diagnostics collected while
// tracing; the structurer turns the shape into a Program.

struct ShapeItem;
using ShapeSeq = std::vector<ShapeItem>;

struct ShapeBlock {
  std::size_t node;
};

struct ShapeLoop {
  std::size_t branch;
  /// Which outgoing edge of the branch leads around the loop.
  EdgeLabel back_side;
  ShapeSeq body;
};

struct ShapeIf {
  std::size_t branch;
  ShapeSeq then_body;
  ShapeSeq else_body;
};

struct ShapeItem {
  std::variant<ShapeBlock, ShapeLoop, ShapeIf> node;

  /// Index of the flowchart node this item was built from.
  std::size_t origin() const;
};

struct LoopClass {
  EdgeLabel back_side;
  friend bool operator==(const LoopClass&, const LoopClass&) = default;
};

struct ConditionalClass {
  /// First node shared by both sides; nullopt when the sides only meet by
  /// ending the program.
  std::optional<NodeId> join;
  friend bool operator==(const ConditionalClass&, const ConditionalClass&) = default;
};

using BranchClassification = std::variant<LoopClass, ConditionalClass>;

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RegionAnalysis {
  ShapeSeq body;
  /// IllegalBackEdge and NoJoin diagnostics, in discovery order.
  std::vector<Diagnostic> diagnostics;
  /// Keyed by branch node index.
  std::unordered_map<std::size_t, BranchClassification> classes;

  bool ok() const { return diagnostics.empty(); }
};

/// Traces the document from Start. The document must have exactly one Start
/// and correct out-degrees (validate_local without degree errors); throws
/// InternalError otherwise. Uses an explicit work stack, so nesting depth is
/// bounded by memory rather than the call stack.
RegionAnalysis analyze_regions(const FlowchartDoc& doc);

/// Traces starting at `entry` with the nodes of `open_path` treated as
/// already on the traversal path.
RegionAnalysis analyze_regions_from(const FlowchartDoc& doc, std::size_t entry,
                                    const std::vector<std::size_t>& open_path);

}  // namespace flowc
