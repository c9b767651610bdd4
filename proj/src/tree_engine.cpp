#include "flowc/runtime.hpp"

namespace flowc {

namespace {

struct Frame {
  const SBody* body;
  std::size_t next;
  /// Set when `body` is a loop body: the guard is re-checked on completion.
  const SWhile* loop;
};

bool guard_holds(const SWhile& loop, const Env& env) {
  return truthy(eval_expr(*loop.cond, env)) != loop.negated;
}

}  // namespace

Trace run_program(const Program& program, const Limits& limits) {
  Trace trace;
  Env env;
  std::uint64_t steps = 0;
  std::vector<Frame> stack{{&program.body, 0, nullptr}};

  auto take_step = [&] {
    if (steps == limits.max_steps) return false;
    ++steps;
    return true;
  };

  try {
    while (!stack.empty()) {
      Frame& frame = stack.back();
      if (frame.next == frame.body->size()) {
        const SWhile* loop = frame.loop;
        if (loop == nullptr) {
          stack.pop_back();
          continue;
        }
        if (!take_step()) {
          trace.status = TraceStatus::StepLimitExceeded;
          return trace;
        }
        if (guard_holds(*loop, env)) frame.next = 0;
        else stack.pop_back();
        continue;
      }
      const SNode& item = (*frame.body)[frame.next++];
      if (!take_step()) {
        trace.status = TraceStatus::StepLimitExceeded;
        return trace;
      }
      if (const auto* a = std::get_if<SAssign>(&item.node)) {
        env.insert_or_assign(a->target, eval_expr(*a->value, env));
      } else if (const auto* p = std::get_if<SPrint>(&item.node)) {
        trace.lines.push_back(render(eval_expr(*p->value, env)));
      } else if (const auto* w = std::get_if<SWhile>(&item.node)) {
        if (guard_holds(*w, env)) stack.push_back(Frame{&w->body, 0, w});
      } else {
        const auto& branch = std::get<SIf>(item.node);
        const SBody& taken = truthy(eval_expr(*branch.cond, env)) ? branch.then_body : branch.else_body;
        stack.push_back(Frame{&taken, 0, nullptr});
      }
    }
  } catch (const EvalError& e) {
    trace.status = TraceStatus::RuntimeError;
    trace.error = e.what();
  }
  return trace;
}

}  // namespace flowc
