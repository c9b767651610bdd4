#include <random>

#include "flowc/runtime.hpp"

namespace flowc {

namespace {

constexpr std::int64_t kModulus = 1000;
constexpr int kMaxNesting = 3;
const char* const kVars[] = {"a", "b", "c", "d"};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-enough integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

class ProgramGenerator {
 public:
  ProgramGenerator(std::uint64_t seed, std::size_t size) : rng_(seed), budget_(size > 2 ? size - 2 : 0) {}

  Program run() {
    Program program;
    const std::size_t init = std::min<std::size_t>(4, budget_);
    for (std::size_t i = 0; i < init; ++i) {
      program.body.push_back(SNode{SAssign{kVars[i], make_int(rng_.between(0, 20))}});
    }
    vars_ = init;
    budget_ -= init;
    program.body = concat(std::move(program.body), sequence(budget_, 0));
    return program;
  }

 private:
  static SBody concat(SBody head, SBody tail) {
    for (auto& item : tail) head.push_back(std::move(item));
    return head;
  }

  // Fills up to `budget` flowchart nodes.
  SBody sequence(std::size_t budget, int depth) {
    SBody out;
    while (budget > 0) {
      const auto roll = rng_.below(100);
      if (depth < kMaxNesting && budget >= 4 && roll < 15) {
        std::size_t inner = 1 + rng_.below(std::min<std::size_t>(budget - 3, 8));
        budget -= inner + 3;
        loop(out, inner, depth);
      } else if (depth < kMaxNesting && budget >= 2 && roll < 35) {
        std::size_t inner = 1 + rng_.below(std::min<std::size_t>(budget - 1, 8));
        budget -= inner + 1;
        out.push_back(conditional(inner, depth));
      } else {
        --budget;
        out.push_back(simple());
      }
    }
    return out;
  }

  void loop(SBody& out, std::size_t inner, int depth) {
    const std::string counter = "k" + std::to_string(counters_++);
    out.push_back(SNode{SAssign{counter, make_int(rng_.between(0, 4))}});
    // The decrement goes last: a conditional at the end of a loop body would
    // close on the loop header from inside an open branch.
    SBody body = sequence(inner, depth + 1);
    body.push_back(SNode{SAssign{counter, make_binary(BinaryOp::Sub, make_var(counter), make_int(1))}});
    if (rng_.chance(50)) {
      out.push_back(SNode{SWhile{make_binary(BinaryOp::Gt, make_var(counter), make_int(0)), false, std::move(body)}});
    } else {
      out.push_back(SNode{SWhile{make_binary(BinaryOp::Le, make_var(counter), make_int(0)), true, std::move(body)}});
    }
  }

  SNode conditional(std::size_t inner, int depth) {
    std::size_t then_size = rng_.below(inner + 1);
    std::size_t else_size = inner - then_size;
    SBody then_body = sequence(then_size, depth + 1);
    SBody else_body = sequence(else_size, depth + 1);
    if (then_body.empty() && else_body.empty()) else_body.push_back(simple());
    return SNode{SIf{condition(), std::move(then_body), std::move(else_body)}};
  }

  SNode simple() {
    if (vars_ == 0 || rng_.chance(25)) {
      if (rng_.chance(30)) return SNode{SPrint{make_str(rng_.chance(50) ? "x" : "done:")}};
      return SNode{SPrint{vars_ == 0 ? make_int(rng_.between(0, 5)) : arith(1)}};
    }
    const char* target = kVars[rng_.below(vars_)];
    return SNode{SAssign{target, make_binary(BinaryOp::Mod, arith(2), make_int(kModulus))}};
  }

  ExprPtr atom() {
    if (vars_ > 0 && rng_.chance(60)) return make_var(kVars[rng_.below(vars_)]);
    return make_int(rng_.between(0, 20));
  }

  ExprPtr arith(int depth) {
    if (depth == 0 || rng_.chance(30)) return atom();
    static constexpr BinaryOp kOps[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::FloorDiv, BinaryOp::Mod};
    const BinaryOp op = kOps[rng_.below(5)];
    if (op == BinaryOp::FloorDiv || op == BinaryOp::Mod) {
      ExprPtr divisor = make_int(rng_.between(1, 9));
      if (rng_.chance(30)) divisor = make_unary(UnaryOp::Neg, divisor);
      return make_binary(op, arith(depth - 1), divisor);
    }
    ExprPtr lhs = arith(depth - 1);
    ExprPtr rhs = arith(depth - 1);
    if (rng_.chance(10)) rhs = make_unary(UnaryOp::Neg, rhs);
    return make_binary(op, lhs, rhs);
  }

  ExprPtr comparison() {
    static constexpr BinaryOp kOps[] = {BinaryOp::Eq, BinaryOp::Ne, BinaryOp::Lt,
                                        BinaryOp::Le, BinaryOp::Gt, BinaryOp::Ge};
    return make_binary(kOps[rng_.below(6)], arith(1), arith(1));
  }

  ExprPtr condition() {
    const auto roll = rng_.below(100);
    if (roll < 15) return make_binary(rng_.chance(50) ? BinaryOp::And : BinaryOp::Or, comparison(), comparison());
    if (roll < 25) return make_unary(UnaryOp::Not, comparison());
    if (roll < 35 && vars_ > 0) return arith(1);
    return comparison();
  }

  Rng rng_;
  std::size_t budget_;
  std::size_t vars_ = 0;
  std::size_t counters_ = 0;
};

class Unparser {
 public:
  explicit Unparser(bool fresh_ends) : fresh_ends_(fresh_ends) {}

  FlowchartDoc run(const Program& program) {
    const std::size_t start = add(NodeKind::Start, "");
    const std::size_t end = add(NodeKind::End, "");
    const std::size_t entry = chain(program.body, end, true);
    connect(start, entry, EdgeLabel::None);
    return FlowchartDoc(std::move(nodes_), std::move(edges_));
  }

 private:
  std::size_t add(NodeKind kind, std::string text) {
    const std::size_t index = nodes_.size();
    std::string prefix = kind == NodeKind::Start ? "start" : kind == NodeKind::End ? "end" : "n";
    nodes_.push_back(Node{NodeId(prefix + std::to_string(index)), kind, std::move(text)});
    return index;
  }

  void connect(std::size_t from, std::size_t to, EdgeLabel label) {
    edges_.push_back(Edge{nodes_[from].id, nodes_[to].id, label});
  }

  // Lays out `body` so that it falls through to `next`; returns its entry.
  std::size_t chain(const SBody& body, std::size_t next, bool top_level) {
    for (std::size_t i = body.size(); i-- > 0;) {
      const bool last = i + 1 == body.size();
      next = item(body[i], next, top_level && last);
    }
    return next;
  }

  std::size_t item(const SNode& node, std::size_t next, bool program_tail) {
    if (const auto* a = std::get_if<SAssign>(&node.node)) {
      const std::size_t n = add(NodeKind::Block, a->target + " = " + to_source(*a->value));
      connect(n, next, EdgeLabel::None);
      return n;
    }
    if (const auto* p = std::get_if<SPrint>(&node.node)) {
      const std::size_t n = add(NodeKind::Block, "print " + to_source(*p->value));
      connect(n, next, EdgeLabel::None);
      return n;
    }
    if (const auto* w = std::get_if<SWhile>(&node.node)) {
      const std::size_t branch = add(NodeKind::Branch, to_source(*w->cond));
      const std::size_t body = chain(w->body, branch, false);
      connect(branch, w->negated ? next : body, EdgeLabel::True);
      connect(branch, w->negated ? body : next, EdgeLabel::False);
      return branch;
    }
    const auto& s = std::get<SIf>(node.node);
    const std::size_t branch = add(NodeKind::Branch, to_source(*s.cond));
    std::size_t then_next = next;
    std::size_t else_next = next;
    if (program_tail && fresh_ends_) {
      then_next = add(NodeKind::End, "");
      else_next = add(NodeKind::End, "");
    }
    connect(branch, chain(s.then_body, then_next, false), EdgeLabel::True);
    connect(branch, chain(s.else_body, else_next, false), EdgeLabel::False);
    return branch;
  }

  bool fresh_ends_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

}  // namespace

Program generate_program(std::uint64_t seed, std::size_t size) { return ProgramGenerator(seed, size).run(); }

FlowchartDoc unparse_program(const Program& program, bool fresh_ends) { return Unparser(fresh_ends).run(program); }

FlowchartDoc generate_constrained(std::uint64_t seed, std::size_t size) {
  return unparse_program(generate_program(seed, size), seed % 4 == 3);
}

std::optional<FlowchartDoc> break_constrained(const FlowchartDoc& doc, std::uint64_t seed) {
  const auto& nodes = doc.nodes();
  std::size_t start = FlowchartDoc::npos;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind == NodeKind::Start) start = i;
  }
  if (start == FlowchartDoc::npos) return std::nullopt;

  // Iterative DFS, true sides first, recording (block, ancestor block) pairs.
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  std::vector<bool> seen(nodes.size(), false);
  std::vector<std::size_t> path_blocks;
  struct Visit {
    std::size_t node;
    std::size_t next_child;
  };
  auto children = [&](std::size_t n) {
    std::vector<std::size_t> out;
    for (EdgeLabel want : {EdgeLabel::None, EdgeLabel::True, EdgeLabel::False}) {
      for (std::size_t e : doc.out_edges(n)) {
        if (doc.edges()[e].label == want) out.push_back(doc.edge_target(e));
      }
    }
    return out;
  };
  std::vector<Visit> stack{{start, 0}};
  seen[start] = true;
  while (!stack.empty()) {
    Visit& top = stack.back();
    const auto kids = children(top.node);
    if (top.next_child == 0 && nodes[top.node].kind == NodeKind::Block) {
      for (std::size_t ancestor : path_blocks) candidates.emplace_back(top.node, ancestor);
      path_blocks.push_back(top.node);
    }
    if (top.next_child < kids.size()) {
      const std::size_t child = kids[top.next_child++];
      if (!seen[child]) {
        seen[child] = true;
        stack.push_back(Visit{child, 0});
      }
      continue;
    }
    if (nodes[top.node].kind == NodeKind::Block) path_blocks.pop_back();
    stack.pop_back();
  }
  if (candidates.empty()) return std::nullopt;

  Rng rng(seed);
  const auto [u, v] = candidates[rng.below(candidates.size())];
  std::vector<Edge> edges = doc.edges();
  for (auto& edge : edges) {
    if (edge.from == nodes[u].id) edge.to = nodes[v].id;
  }
  return FlowchartDoc(nodes, std::move(edges));
}

}  // namespace flowc
