#include "flowc/regions.hpp"

#include <algorithm>
#include <set>

namespace flowc {

std::size_t ShapeItem::origin() const {
  return std::visit(
      [](const auto& item) -> std::size_t {
        using T = std::decay_t<decltype(item)>;
        if constexpr (std::is_same_v<T, ShapeBlock>) return item.node;
        else return item.branch;
      },
      node);
}

namespace {

constexpr std::size_t npos = FlowchartDoc::npos;

// How a traced level stopped.
struct Exit {
  enum class Kind { End, Jump, Error };
  Kind kind = Kind::End;
  std::size_t target = npos;
  /// Edges that arrive at `target`. More than one after a shared join.
  std::vector<std::size_t> edges;
  /// Set when the jump leaves a conditional whose sides never met before it:
  /// such a jump may only close an enclosing conditional, never a loop.
  bool shared = false;
};

struct LevelResult {
  ShapeSeq seq;
  Exit exit;
};

// One level of the trace: a run of items at the same nesting depth.
struct Frame {
  ShapeSeq seq;
  std::size_t instr = npos;
  std::size_t last_edge = npos;
  // Branch whose sides are being traced, and which side we are waiting for.
  std::size_t branch = npos;
  int phase = 0;
  LevelResult true_side;
  std::size_t true_begin = 0;
  std::size_t true_end = 0;
};

class Tracer {
 public:
  explicit Tracer(const FlowchartDoc& doc) : doc_(doc), order_(doc.nodes().size(), npos) {
    const std::size_t n = doc.nodes().size();
    next_.assign(n, npos);
    on_true_.assign(n, npos);
    on_false_.assign(n, npos);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& out = doc.out_edges(i);
      switch (doc.nodes()[i].kind) {
        case NodeKind::Start:
        case NodeKind::Block:
          if (out.size() != 1) throw InternalError("node \"" + id(i) + "\" needs exactly one outgoing edge");
          next_[i] = out[0];
          break;
        case NodeKind::Branch:
          for (std::size_t e : out) {
            if (doc.edges()[e].label == EdgeLabel::True && on_true_[i] == npos) on_true_[i] = e;
            else if (doc.edges()[e].label == EdgeLabel::False && on_false_[i] == npos) on_false_[i] = e;
          }
          if (out.size() != 2 || on_true_[i] == npos || on_false_[i] == npos) {
            throw InternalError("branch \"" + id(i) + "\" needs one true and one false edge");
          }
          break;
        case NodeKind::End:
          break;
      }
    }
  }

  void mark_open(std::size_t node) { order_[node] = counter_++; }

  RegionAnalysis run(std::size_t entry, std::size_t entry_edge) {
    stack_.push_back(Frame{});
    stack_.back().instr = entry;
    stack_.back().last_edge = entry_edge;

    std::optional<LevelResult> delivered;
    while (!stack_.empty()) {
      if (delivered) {
        LevelResult result = std::move(*delivered);
        delivered.reset();
        if (stack_.back().phase == 1) {
          true_side_done(std::move(result));
        } else {
          delivered = false_side_done(std::move(result));
          stack_.pop_back();
        }
        continue;
      }
      if (auto finished = step()) {
        delivered = std::move(finished);
        stack_.pop_back();
      }
    }

    if (delivered && delivered->exit.kind == Exit::Kind::Jump) {
      for (std::size_t e : delivered->exit.edges) illegal_back_edge(e);
    }
    if (delivered) analysis_.body = std::move(delivered->seq);
    return std::move(analysis_);
  }

 private:
  std::string id(std::size_t node) const { return doc_.nodes()[node].id.str(); }
  std::size_t target(std::size_t edge) const { return doc_.edge_target(edge); }
  bool processed(std::size_t node) const { return order_[node] != npos; }

  // Walks the top frame forward. Returns the frame's result when it stops;
  // nullopt when it pushed a child frame or is waiting on one.
  std::optional<LevelResult> step() {
    Frame& frame = stack_.back();
    while (true) {
      const std::size_t node = frame.instr;
      const NodeKind kind = doc_.nodes()[node].kind;
      if (kind == NodeKind::End) {
        return LevelResult{std::move(frame.seq), Exit{Exit::Kind::End, node, {frame.last_edge}, false}};
      }
      if (processed(node)) {
        return LevelResult{std::move(frame.seq), Exit{Exit::Kind::Jump, node, {frame.last_edge}, false}};
      }
      order_[node] = counter_++;
      if (kind == NodeKind::Branch) {
        frame.branch = node;
        frame.phase = 1;
        frame.true_begin = counter_;
        Frame child;
        child.instr = target(on_true_[node]);
        child.last_edge = on_true_[node];
        stack_.push_back(std::move(child));
        return std::nullopt;
      }
      // Start can only be reached again through an edge that validate_local
      // rejects; treat it like a block so the trace still terminates.
      if (kind == NodeKind::Block) frame.seq.push_back(ShapeItem{ShapeBlock{node}});
      frame.last_edge = next_[node];
      frame.instr = target(next_[node]);
    }
  }

  void true_side_done(LevelResult result) {
    Frame& frame = stack_.back();
    const std::size_t branch = frame.branch;
    if (result.exit.kind == Exit::Kind::Jump && result.exit.target == branch) {
      if (result.exit.shared) {
        for (std::size_t e : result.exit.edges) illegal_back_edge(e);
      }
      analysis_.classes[branch] = LoopClass{EdgeLabel::True};
      frame.seq.push_back(ShapeItem{ShapeLoop{branch, EdgeLabel::True, std::move(result.seq)}});
      frame.branch = npos;
      frame.phase = 0;
      frame.last_edge = on_false_[branch];
      frame.instr = target(on_false_[branch]);
      return;
    }
    frame.true_side = std::move(result);
    frame.true_end = counter_;
    frame.phase = 2;
    Frame child;
    child.instr = target(on_false_[branch]);
    child.last_edge = on_false_[branch];
    stack_.push_back(std::move(child));
  }

  LevelResult false_side_done(LevelResult fside) {
    Frame& frame = stack_.back();
    const std::size_t branch = frame.branch;
    LevelResult& tside = frame.true_side;
    const Exit& te = tside.exit;
    const Exit& fe = fside.exit;
    ShapeSeq& seq = frame.seq;

    auto finish = [&](Exit exit) { return LevelResult{std::move(seq), std::move(exit)}; };

    if (te.kind == Exit::Kind::Error || fe.kind == Exit::Kind::Error) {
      seq.push_back(ShapeItem{ShapeIf{branch, std::move(tside.seq), std::move(fside.seq)}});
      return finish(Exit{Exit::Kind::Error, npos, {}, false});
    }

    // Loop drawn through the false side: the true side is the exit path and
    // has already been traced to the end of this level.
    if (fe.kind == Exit::Kind::Jump && fe.target == branch) {
      if (fe.shared) {
        for (std::size_t e : fe.edges) illegal_back_edge(e);
      }
      analysis_.classes[branch] = LoopClass{EdgeLabel::False};
      seq.push_back(ShapeItem{ShapeLoop{branch, EdgeLabel::False, std::move(fside.seq)}});
      splice(seq, tside.seq, 0);
      return finish(std::move(tside.exit));
    }

    // The false side ran into a top-level node of the true trace: that node
    // is the join. Everything the true trace collected past it belongs after
    // the conditional.
    if (fe.kind == Exit::Kind::Jump) {
      auto at = std::find_if(tside.seq.begin(), tside.seq.end(),
                             [&](const ShapeItem& item) { return item.origin() == fe.target; });
      if (at != tside.seq.end()) {
        const auto split = static_cast<std::size_t>(at - tside.seq.begin());
        analysis_.classes[branch] = ConditionalClass{doc_.nodes()[fe.target].id};
        ShapeSeq then_body(std::make_move_iterator(tside.seq.begin()),
                           std::make_move_iterator(tside.seq.begin() + static_cast<std::ptrdiff_t>(split)));
        seq.push_back(ShapeItem{ShapeIf{branch, std::move(then_body), std::move(fside.seq)}});
        splice(seq, tside.seq, split);
        return finish(std::move(tside.exit));
      }
    }

    if (te.kind == Exit::Kind::End && fe.kind == Exit::Kind::End) {
      analysis_.classes[branch] = ConditionalClass{std::nullopt};
      seq.push_back(ShapeItem{ShapeIf{branch, std::move(tside.seq), std::move(fside.seq)}});
      return finish(Exit{Exit::Kind::End, npos, {}, false});
    }

    // Both sides leave towards the same node outside the true trace, e.g. the
    // join of an enclosing conditional.
    if (te.kind == Exit::Kind::Jump && fe.kind == Exit::Kind::Jump && te.target == fe.target) {
      analysis_.classes[branch] = ConditionalClass{doc_.nodes()[te.target].id};
      Exit merged{Exit::Kind::Jump, te.target, te.edges, true};
      merged.edges.insert(merged.edges.end(), fe.edges.begin(), fe.edges.end());
      seq.push_back(ShapeItem{ShapeIf{branch, std::move(tside.seq), std::move(fside.seq)}});
      return finish(std::move(merged));
    }

    bool reported_no_join = false;
    for (const Exit* side : {&te, &fe}) {
      if (side->kind != Exit::Kind::Jump) continue;
      if (inside_pending_true_side(side->target)) {
        if (!reported_no_join) no_join(branch);
        reported_no_join = true;
      } else {
        for (std::size_t e : side->edges) illegal_back_edge(e);
      }
    }
    seq.push_back(ShapeItem{ShapeIf{branch, std::move(tside.seq), std::move(fside.seq)}});
    return finish(Exit{Exit::Kind::Error, npos, {}, false});
  }

  static void splice(ShapeSeq& into, ShapeSeq& from, std::size_t first) {
    into.insert(into.end(), std::make_move_iterator(from.begin() + static_cast<std::ptrdiff_t>(first)),
                std::make_move_iterator(from.end()));
  }

  // True when `node` was traced as part of the true side of a conditional
  // whose false side is still being traced: reaching it from elsewhere means
  // the two sides meet below their own nesting level.
  bool inside_pending_true_side(std::size_t node) const {
    const std::size_t at = order_[node];
    for (const Frame& frame : stack_) {
      if (frame.phase == 2 && at >= frame.true_begin && at < frame.true_end) return true;
    }
    return false;
  }

  void illegal_back_edge(std::size_t edge) {
    if (!reported_edges_.insert(edge).second) return;
    const Edge& e = doc_.edges()[edge];
    analysis_.diagnostics.push_back(
        Diagnostic{DiagnosticCode::IllegalBackEdge, Severity::Error, EdgeRef{e.from, e.to},
                   "edge " + e.from.str() + " -> " + e.to.str() + " jumps back to \"" + e.to.str() +
                       "\", which is not the innermost open branch"});
  }

  void no_join(std::size_t branch) {
    const NodeId& b = doc_.nodes()[branch].id;
    analysis_.diagnostics.push_back(
        Diagnostic{DiagnosticCode::NoJoin, Severity::Error, b,
                   "the true and false sides of branch \"" + b.str() +
                       "\" do not meet at a common node on the same nesting level"});
  }

  const FlowchartDoc& doc_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> next_;
  std::vector<std::size_t> on_true_;
  std::vector<std::size_t> on_false_;
  std::size_t counter_ = 0;
  std::vector<Frame> stack_;
  std::set<std::size_t> reported_edges_;
  RegionAnalysis analysis_;
};

}  // namespace

RegionAnalysis analyze_regions(const FlowchartDoc& doc) {
  std::size_t start = npos;
  for (std::size_t i = 0; i < doc.nodes().size(); ++i) {
    if (doc.nodes()[i].kind != NodeKind::Start) continue;
    if (start != npos) throw InternalError("document has more than one start node");
    start = i;
  }
  if (start == npos) throw InternalError("document has no start node");
  Tracer tracer(doc);
  tracer.mark_open(start);
  std::size_t edge = doc.out_edges(start).front();
  return tracer.run(doc.edge_target(edge), edge);
}

RegionAnalysis analyze_regions_from(const FlowchartDoc& doc, std::size_t entry,
                                    const std::vector<std::size_t>& open_path) {
  Tracer tracer(doc);
  for (std::size_t node : open_path) tracer.mark_open(node);
  const auto& in = doc.in_edges(entry);
  return tracer.run(entry, in.empty() ? npos : in.front());
}

}  // namespace flowc
