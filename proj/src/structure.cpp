#include "flowc/structure.hpp"

namespace flowc {

namespace {

bool same_body(const SBody& a, const SBody& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::string out = "flowchart cannot be structured";
  for (const auto& d : diagnostics) {
    if (!d.is_error()) continue;
    out += "; ";
    out += to_string(d.code);
    out += ": ";
    out += d.message;
  }
  return out;
}

class Builder {
 public:
  explicit Builder(const FlowchartDoc& doc) : doc_(doc) {}

  SBody build(const ShapeSeq& seq) {
    SBody out;
    out.reserve(seq.size());
    for (const ShapeItem& item : seq) {
      if (const auto* block = std::get_if<ShapeBlock>(&item.node)) {
        Stmt stmt = parse_statement(doc_.nodes()[block->node].text);
        if (auto* a = std::get_if<Assign>(&stmt)) {
          out.push_back(SNode{SAssign{std::move(a->target), std::move(a->value)}});
        } else {
          out.push_back(SNode{SPrint{std::get<Print>(stmt).value}});
        }
      } else if (const auto* loop = std::get_if<ShapeLoop>(&item.node)) {
        out.push_back(SNode{SWhile{condition(loop->branch), loop->back_side == EdgeLabel::False, build(loop->body)}});
      } else {
        const auto& branch = std::get<ShapeIf>(item.node);
        out.push_back(SNode{SIf{condition(branch.branch), build(branch.then_body), build(branch.else_body)}});
      }
    }
    return out;
  }

 private:
  ExprPtr condition(std::size_t node) const { return parse_expression(doc_.nodes()[node].text); }

  const FlowchartDoc& doc_;
};

}  // namespace

bool operator==(const SNode& a, const SNode& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, SAssign>) {
          return x.target == y.target && same_expr(x.value, y.value);
        } else if constexpr (std::is_same_v<T, SPrint>) {
          return same_expr(x.value, y.value);
        } else if constexpr (std::is_same_v<T, SWhile>) {
          return x.negated == y.negated && same_expr(x.cond, y.cond) && same_body(x.body, y.body);
        } else {
          return same_expr(x.cond, y.cond) && same_body(x.then_body, y.then_body) &&
                 same_body(x.else_body, y.else_body);
        }
      },
      a.node);
}

bool operator==(const Program& a, const Program& b) { return same_body(a.body, b.body); }

StructureError::StructureError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

Program structure(const FlowchartDoc& doc) {
  auto local = validate_local(doc);
  if (has_errors(local)) throw StructureError(std::move(local));
  RegionAnalysis analysis = analyze_regions(doc);
  if (!analysis.ok()) throw StructureError(std::move(analysis.diagnostics));
  return Program{Builder(doc).build(analysis.body)};
}

BranchClassification classify_branch(const FlowchartDoc& doc, const NodeId& branch,
                                     const std::vector<NodeId>& open_path) {
  const std::size_t index = doc.index_of(branch);
  if (index == FlowchartDoc::npos) throw UnknownNode(branch.str());
  if (doc.nodes()[index].kind != NodeKind::Branch) throw NotABranch(branch.str());

  RegionAnalysis analysis;
  if (open_path.empty()) {
    analysis = analyze_regions(doc);
    if (!analysis.ok()) throw InternalError("flowchart violates the loop and join rules");
  } else {
    std::vector<std::size_t> path;
    path.reserve(open_path.size());
    for (const NodeId& id : open_path) {
      const std::size_t i = doc.index_of(id);
      if (i == FlowchartDoc::npos) throw UnknownNode(id.str());
      if (i != index) path.push_back(i);
    }
    analysis = analyze_regions_from(doc, index, path);
  }
  auto it = analysis.classes.find(index);
  if (it == analysis.classes.end()) {
    throw InternalError("branch \"" + branch.str() + "\" could not be classified");
  }
  return it->second;
}

}  // namespace flowc
