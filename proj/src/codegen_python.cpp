#include "flowc/codegen.hpp"

namespace flowc {

namespace {

class PythonWriter {
 public:
  std::string finish() { return std::move(out_); }

  void body(const SBody& items, int depth) {
    if (items.empty()) {
      line(depth, "pass");
      return;
    }
    for (const SNode& item : items) statement(item, depth);
  }

 private:
  void line(int depth, const std::string& text) {
    out_.append(static_cast<std::size_t>(depth) * 4, ' ');
    out_ += text;
    out_ += '\n';
  }

  static std::string negation(const Expr& cond) { return "not (" + to_source(cond) + ")"; }

  void statement(const SNode& item, int depth) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, SAssign>) {
            line(depth, node.target + " = " + to_source(*node.value));
          } else if constexpr (std::is_same_v<T, SPrint>) {
            line(depth, "print(" + to_source(*node.value) + ")");
          } else if constexpr (std::is_same_v<T, SWhile>) {
            line(depth, "while " + (node.negated ? negation(*node.cond) : to_source(*node.cond)) + ":");
            body(node.body, depth + 1);
          } else {
            if (node.then_body.empty() && !node.else_body.empty()) {
              line(depth, "if " + negation(*node.cond) + ":");
              body(node.else_body, depth + 1);
              return;
            }
            line(depth, "if " + to_source(*node.cond) + ":");
            body(node.then_body, depth + 1);
            if (!node.else_body.empty()) {
              line(depth, "else:");
              body(node.else_body, depth + 1);
            }
          }
        },
        item.node);
  }

  std::string out_;
};

}  // namespace

std::string emit_python(const Program& program) {
  PythonWriter writer;
  writer.body(program.body, 0);
  return writer.finish();
}

}  // namespace flowc
