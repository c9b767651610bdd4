#include <stdexcept>

#include "flowc/runtime.hpp"
#include "flowc/validate.hpp"

namespace flowc {

namespace {

struct Compiled {
  std::vector<std::optional<Stmt>> stmts;
  std::vector<ExprPtr> conds;
  std::vector<std::size_t> next;
  std::vector<std::size_t> on_true;
  std::vector<std::size_t> on_false;
  std::size_t entry = FlowchartDoc::npos;
};

Compiled compile(const FlowchartDoc& doc) {
  const auto diagnostics = validate_local(doc);
  for (const auto& d : diagnostics) {
    if (d.is_error()) {
      throw std::invalid_argument("flowchart is not locally valid: " + std::string(to_string(d.code)) + ": " +
                                  d.message);
    }
  }
  const std::size_t n = doc.nodes().size();
  Compiled c;
  c.stmts.resize(n);
  c.conds.resize(n);
  c.next.assign(n, FlowchartDoc::npos);
  c.on_true.assign(n, FlowchartDoc::npos);
  c.on_false.assign(n, FlowchartDoc::npos);
  for (std::size_t i = 0; i < n; ++i) {
    const Node& node = doc.nodes()[i];
    for (std::size_t e : doc.out_edges(i)) {
      const std::size_t t = doc.edge_target(e);
      switch (doc.edges()[e].label) {
        case EdgeLabel::None: c.next[i] = t; break;
        case EdgeLabel::True: c.on_true[i] = t; break;
        case EdgeLabel::False: c.on_false[i] = t; break;
      }
    }
    if (node.kind == NodeKind::Block) c.stmts[i] = parse_statement(node.text);
    if (node.kind == NodeKind::Branch) c.conds[i] = parse_expression(node.text);
    if (node.kind == NodeKind::Start) c.entry = c.next[i];
  }
  return c;
}

}  // namespace

Trace run_graph(const FlowchartDoc& doc, const Limits& limits) {
  const Compiled c = compile(doc);
  const auto& nodes = doc.nodes();
  Trace trace;
  Env env;
  std::uint64_t steps = 0;
  std::size_t at = c.entry;
  try {
    while (nodes[at].kind != NodeKind::End) {
      if (steps == limits.max_steps) {
        trace.status = TraceStatus::StepLimitExceeded;
        return trace;
      }
      ++steps;
      if (nodes[at].kind == NodeKind::Branch) {
        at = truthy(eval_expr(*c.conds[at], env)) ? c.on_true[at] : c.on_false[at];
        continue;
      }
      const Stmt& stmt = *c.stmts[at];
      if (const auto* a = std::get_if<Assign>(&stmt)) {
        env.insert_or_assign(a->target, eval_expr(*a->value, env));
      } else {
        trace.lines.push_back(render(eval_expr(*std::get<Print>(stmt).value, env)));
      }
      at = c.next[at];
    }
  } catch (const EvalError& e) {
    trace.status = TraceStatus::RuntimeError;
    trace.error = e.what();
  }
  return trace;
}

}  // namespace flowc
