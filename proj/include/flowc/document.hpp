#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace flowc {

/// Identifier of a node inside one document. Must match [A-Za-z_][A-Za-z0-9_]*.
class NodeId {
 public:
  NodeId() = default;
  explicit NodeId(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  static bool is_valid(std::string_view text);

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;

 private:
  std::string value_;
};

enum class NodeKind { Start, End, Block, Branch };
enum class EdgeLabel { None, True, False };

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeLabel label);

struct Node {
  NodeId id;
  NodeKind kind = NodeKind::Block;
  /// Statement source for blocks, condition source for branches, empty otherwise.
  std::string text;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  NodeId from;
  NodeId to;
  EdgeLabel label = EdgeLabel::None;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Raised for syntactically or referentially broken documents. Line and
/// column are 1-based; both are 0 when the document was built in memory.
class MalformedDocument : public std::runtime_error {
 public:
  MalformedDocument(const std::string& message, std::size_t line = 0, std::size_t column = 0);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

/// A flowchart: nodes and edges in file order. Immutable once built.
///
/// Construction enforces referential integrity only (unique ids, known edge
/// endpoints, labels only on branch edges). Semantic problems such as
/// self-loops or missing labels are representable so the validator can
/// report them.
class FlowchartDoc {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  FlowchartDoc() = default;
  FlowchartDoc(std::vector<Node> nodes, std::vector<Edge> edges);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Index of the node with this id, or npos.
  std::size_t index_of(const NodeId& id) const;
  std::size_t index_of(std::string_view id) const;
  const Node* find(const NodeId& id) const;

  /// Edge indices leaving / entering node `index`, in edge order.
  const std::vector<std::size_t>& out_edges(std::size_t index) const { return out_[index]; }
  const std::vector<std::size_t>& in_edges(std::size_t index) const { return in_[index]; }
  std::size_t edge_source(std::size_t edge) const { return edge_ends_[edge].first; }
  std::size_t edge_target(std::size_t edge) const { return edge_ends_[edge].second; }

  /// Copy of this document with one more edge appended.
  FlowchartDoc with_edge(Edge edge) const;

  friend bool operator==(const FlowchartDoc& a, const FlowchartDoc& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::pair<std::size_t, std::size_t>> edge_ends_;
};

/// Parses the `.flow.json` format. Does not run semantic validation.
FlowchartDoc parse_document(std::string_view text);

/// Canonical text: fixed key order, one node or edge per line, LF endings.
std::string serialize_document(const FlowchartDoc& doc);

}  // namespace flowc

template <>
struct std::hash<flowc::NodeId> {
  std::size_t operator()(const flowc::NodeId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
