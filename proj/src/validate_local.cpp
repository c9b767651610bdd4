#include <array>
#include <deque>

#include "flowc/expr.hpp"
#include "flowc/regions.hpp"
#include "flowc/validate.hpp"

namespace flowc {

namespace {

constexpr std::array<std::pair<DiagnosticCode, std::string_view>, 15> kCodeNames{{
    {DiagnosticCode::SelfLoop, "SelfLoop"},
    {DiagnosticCode::MissingStart, "MissingStart"},
    {DiagnosticCode::MultipleStart, "MultipleStart"},
    {DiagnosticCode::MissingEnd, "MissingEnd"},
    {DiagnosticCode::BlockOutDegree, "BlockOutDegree"},
    {DiagnosticCode::BranchOutDegree, "BranchOutDegree"},
    {DiagnosticCode::BranchLabelMissing, "BranchLabelMissing"},
    {DiagnosticCode::BranchLabelDuplicate, "BranchLabelDuplicate"},
    {DiagnosticCode::StartInDegree, "StartInDegree"},
    {DiagnosticCode::EndOutDegree, "EndOutDegree"},
    {DiagnosticCode::UnreachableNode, "UnreachableNode"},
    {DiagnosticCode::IllegalBackEdge, "IllegalBackEdge"},
    {DiagnosticCode::NoJoin, "NoJoin"},
    {DiagnosticCode::BadBlockText, "BadBlockText"},
    {DiagnosticCode::BadBranchText, "BadBranchText"},
}};

Diagnostic make(DiagnosticCode code, Subject subject, std::string message) {
  return Diagnostic{code, severity_of(code), std::move(subject), std::move(message)};
}

std::string quoted(const NodeId& id) { return "\"" + id.str() + "\""; }

}  // namespace

std::string_view to_string(DiagnosticCode code) {
  for (const auto& [c, name] : kCodeNames) {
    if (c == code) return name;
  }
  return "Unknown";
}

std::optional<DiagnosticCode> diagnostic_code_from_string(std::string_view name) {
  for (const auto& [c, n] : kCodeNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::string_view to_string(Severity severity) { return severity == Severity::Error ? "error" : "warning"; }

Severity severity_of(DiagnosticCode code) {
  return code == DiagnosticCode::UnreachableNode ? Severity::Warning : Severity::Error;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.is_error()) return true;
  }
  return false;
}

std::vector<Diagnostic> validate_local(const FlowchartDoc& doc) {
  std::vector<Diagnostic> out;
  const auto& nodes = doc.nodes();
  const auto& edges = doc.edges();

  std::size_t start = FlowchartDoc::npos;
  std::size_t start_count = 0;
  std::size_t end_count = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind == NodeKind::Start) {
      if (start == FlowchartDoc::npos) start = i;
      ++start_count;
    }
    if (nodes[i].kind == NodeKind::End) ++end_count;
  }
  if (start_count == 0) out.push_back(make(DiagnosticCode::MissingStart, {}, "the flowchart has no start node"));
  if (end_count == 0) out.push_back(make(DiagnosticCode::MissingEnd, {}, "the flowchart has no end node"));

  std::vector<bool> reachable(nodes.size(), false);
  if (start != FlowchartDoc::npos) {
    std::deque<std::size_t> queue{start};
    reachable[start] = true;
    while (!queue.empty()) {
      const std::size_t n = queue.front();
      queue.pop_front();
      for (std::size_t e : doc.out_edges(n)) {
        const std::size_t t = doc.edge_target(e);
        if (!reachable[t]) {
          reachable[t] = true;
          queue.push_back(t);
        }
      }
    }
  }

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& node = nodes[i];
    const std::size_t out_degree = doc.out_edges(i).size();
    switch (node.kind) {
      case NodeKind::Start:
        if (i != start) {
          out.push_back(make(DiagnosticCode::MultipleStart, node.id,
                             "start node " + quoted(node.id) + " is not the only start node"));
        }
        if (!doc.in_edges(i).empty()) {
          out.push_back(make(DiagnosticCode::StartInDegree, node.id,
                             "start node " + quoted(node.id) + " must not have incoming edges"));
        }
        if (out_degree != 1) {
          out.push_back(make(DiagnosticCode::BlockOutDegree, node.id,
                             "start node " + quoted(node.id) + " needs exactly one outgoing edge, has " +
                                 std::to_string(out_degree)));
        }
        break;
      case NodeKind::End:
        if (out_degree != 0) {
          out.push_back(make(DiagnosticCode::EndOutDegree, node.id,
                             "end node " + quoted(node.id) + " must not have outgoing edges"));
        }
        break;
      case NodeKind::Block:
        if (out_degree != 1) {
          out.push_back(make(DiagnosticCode::BlockOutDegree, node.id,
                             "block " + quoted(node.id) + " needs exactly one outgoing edge, has " +
                                 std::to_string(out_degree)));
        }
        try {
          parse_statement(node.text);
        } catch (const SyntaxError& e) {
          out.push_back(make(DiagnosticCode::BadBlockText, node.id,
                             "block " + quoted(node.id) + ": " + e.what()));
        }
        break;
      case NodeKind::Branch:
        if (out_degree != 2) {
          out.push_back(make(DiagnosticCode::BranchOutDegree, node.id,
                             "branch " + quoted(node.id) + " needs exactly two outgoing edges, has " +
                                 std::to_string(out_degree)));
        }
        try {
          parse_expression(node.text);
        } catch (const SyntaxError& e) {
          out.push_back(make(DiagnosticCode::BadBranchText, node.id,
                             "branch " + quoted(node.id) + ": " + e.what()));
        }
        break;
    }
    if (!reachable[i] && start != FlowchartDoc::npos) {
      out.push_back(make(DiagnosticCode::UnreachableNode, node.id,
                         "node " + quoted(node.id) + " cannot be reached from the start node"));
    }
  }

  std::vector<std::array<bool, 2>> seen_labels(nodes.size(), {false, false});
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& edge = edges[e];
    const EdgeRef ref{edge.from, edge.to};
    if (edge.from == edge.to) {
      out.push_back(make(DiagnosticCode::SelfLoop, ref,
                         "edge " + edge.from.str() + " -> " + edge.to.str() + " connects a node to itself"));
    }
    const std::size_t src = doc.edge_source(e);
    if (nodes[src].kind != NodeKind::Branch) continue;
    if (edge.label == EdgeLabel::None) {
      out.push_back(make(DiagnosticCode::BranchLabelMissing, ref,
                         "edge " + edge.from.str() + " -> " + edge.to.str() + " leaves a branch without a true/false label"));
      continue;
    }
    bool& seen = seen_labels[src][edge.label == EdgeLabel::True ? 0 : 1];
    if (seen) {
      out.push_back(make(DiagnosticCode::BranchLabelDuplicate, ref,
                         "branch " + quoted(edge.from) + " already has a " + std::string(to_string(edge.label)) +
                             " edge"));
    }
    seen = true;
  }
  return out;
}

std::vector<Diagnostic> validate_structure(const FlowchartDoc& doc) {
  if (has_errors(validate_local(doc))) return {};
  return analyze_regions(doc).diagnostics;
}

std::vector<Diagnostic> validate(const FlowchartDoc& doc) {
  std::vector<Diagnostic> out = validate_local(doc);
  if (has_errors(out)) return out;
  auto structural = analyze_regions(doc).diagnostics;
  out.insert(out.end(), structural.begin(), structural.end());
  return out;
}

}  // namespace flowc
