#include "flowc/codegen.hpp"

namespace flowc {

namespace {

std::string dot_string(std::string_view raw) {
  std::string out = "\"";
  for (char c : raw) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string_view shape_of(NodeKind kind) {
  switch (kind) {
    case NodeKind::Start:
    case NodeKind::End:
      return "oval";
    case NodeKind::Block:
      return "box";
    case NodeKind::Branch:
      return "diamond";
  }
  return "box";
}

}  // namespace

std::string emit_dot(const FlowchartDoc& doc) {
  std::string out = "digraph flowchart {\n";
  for (const Node& node : doc.nodes()) {
    std::string label;
    if (node.kind == NodeKind::Start) label = "start";
    else if (node.kind == NodeKind::End) label = "end";
    else label = node.text;
    out += "  " + dot_string(node.id.str()) + " [shape=" + std::string(shape_of(node.kind)) +
           ", label=" + dot_string(label) + "];\n";
  }
  for (const Edge& edge : doc.edges()) {
    out += "  " + dot_string(edge.from.str()) + " -> " + dot_string(edge.to.str());
    if (edge.label != EdgeLabel::None) out += " [label=" + dot_string(to_string(edge.label)) + "]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace flowc
