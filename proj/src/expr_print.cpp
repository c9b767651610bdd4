#include <cstdio>

#include "flowc/expr.hpp"

namespace flowc {

namespace {

// Binding strength, loosest first. Mirrors the parser's levels.
enum Level : int { kOr = 1, kAnd, kNot, kCompare, kAdd, kMul, kUnary, kAtom };

int level_of(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return kOr;
    case BinaryOp::And: return kAnd;
    case BinaryOp::Eq: case BinaryOp::Ne: case BinaryOp::Lt:
    case BinaryOp::Le: case BinaryOp::Gt: case BinaryOp::Ge:
      return kCompare;
    case BinaryOp::Add: case BinaryOp::Sub:
      return kAdd;
    default:
      return kMul;
  }
}

int level_of(const Expr& expr) {
  if (const auto* u = std::get_if<Unary>(&expr.node)) return u->op == UnaryOp::Not ? kNot : kUnary;
  if (const auto* b = std::get_if<Binary>(&expr.node)) return level_of(b->op);
  if (const auto* i = std::get_if<IntLit>(&expr.node)) return i->value < 0 ? kUnary : kAtom;
  return kAtom;
}

void emit(const Expr& expr, int min_level, std::string& out) {
  const bool parens = level_of(expr) < min_level;
  if (parens) out += '(';
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          out += std::to_string(node.value);
        } else if constexpr (std::is_same_v<T, StrLit>) {
          out += quote_string(node.value);
        } else if constexpr (std::is_same_v<T, Var>) {
          out += node.name;
        } else if constexpr (std::is_same_v<T, Unary>) {
          if (node.op == UnaryOp::Not) {
            out += "not ";
            emit(*node.arg, kNot, out);
          } else {
            out += '-';
            emit(*node.arg, kUnary, out);
          }
        } else {
          const int level = level_of(node.op);
          // Left-associative chains keep the lhs at the same level; comparisons
          // do not chain, so both operands must bind tighter.
          const int lhs_min = level == kCompare ? kAdd : level;
          const int rhs_min = level == kCompare ? kAdd : level + 1;
          emit(*node.lhs, lhs_min, out);
          out += ' ';
          out += spelling(node.op);
          out += ' ';
          emit(*node.rhs, rhs_min, out);
        }
      },
      expr.node);
  if (parens) out += ')';
}

}  // namespace

std::string quote_string(std::string_view raw) {
  std::string out = "\"";
  for (char ch : raw) {
    auto c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20 || c == 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\x%02x", c);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

std::string to_source(const Expr& expr) {
  std::string out;
  emit(expr, kOr, out);
  return out;
}

std::string to_source(const Stmt& stmt) {
  if (const auto* a = std::get_if<Assign>(&stmt)) return a->target + " = " + to_source(*a->value);
  return "print " + to_source(*std::get<Print>(stmt).value);
}

}  // namespace flowc
