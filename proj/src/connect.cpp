#include "flowc/validate.hpp"

namespace flowc {

namespace {

std::size_t require(const FlowchartDoc& doc, const NodeId& id) {
  const std::size_t index = doc.index_of(id);
  if (index == FlowchartDoc::npos) throw UnknownNode(id.str());
  return index;
}

std::vector<EdgeLabel> unused_labels(const FlowchartDoc& doc, std::size_t branch) {
  bool has_true = false;
  bool has_false = false;
  for (std::size_t e : doc.out_edges(branch)) {
    has_true |= doc.edges()[e].label == EdgeLabel::True;
    has_false |= doc.edges()[e].label == EdgeLabel::False;
  }
  std::vector<EdgeLabel> out;
  if (!has_true) out.push_back(EdgeLabel::True);
  if (!has_false) out.push_back(EdgeLabel::False);
  return out;
}

ConnectDecision refuse(DiagnosticCode code) { return ConnectDecision{false, code, {}}; }

}  // namespace

ConnectDecision can_connect(const FlowchartDoc& doc, const NodeId& from, const NodeId& to) {
  const std::size_t src = require(doc, from);
  const std::size_t dst = require(doc, to);
  if (src == dst) return refuse(DiagnosticCode::SelfLoop);

  const auto out_degree = doc.out_edges(src).size();
  switch (doc.nodes()[src].kind) {
    case NodeKind::End:
      return refuse(DiagnosticCode::EndOutDegree);
    case NodeKind::Start:
    case NodeKind::Block:
      if (out_degree >= 1) return refuse(DiagnosticCode::BlockOutDegree);
      break;
    case NodeKind::Branch:
      if (out_degree >= 2) return refuse(DiagnosticCode::BranchOutDegree);
      break;
  }
  if (doc.nodes()[dst].kind == NodeKind::Start) return refuse(DiagnosticCode::StartInDegree);

  ConnectDecision decision{true, std::nullopt, {}};
  if (doc.nodes()[src].kind == NodeKind::Branch) {
    decision.allowed_labels = unused_labels(doc, src);
  }
  return decision;
}

std::vector<EdgeLabel> allowed_edge_labels(const FlowchartDoc& doc, const NodeId& branch) {
  const std::size_t index = require(doc, branch);
  if (doc.nodes()[index].kind != NodeKind::Branch) throw NotABranch(branch.str());
  return unused_labels(doc, index);
}

}  // namespace flowc
