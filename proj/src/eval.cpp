#include <limits>

#include "flowc/expr.hpp"

namespace flowc {

std::string_view name_of(EvalErrorKind kind) {
  switch (kind) {
    case EvalErrorKind::UnboundVariable: return "UnboundVariable";
    case EvalErrorKind::DivisionByZero: return "DivisionByZero";
    case EvalErrorKind::TypeMismatch: return "TypeMismatch";
    case EvalErrorKind::Overflow: return "Overflow";
  }
  return "RuntimeError";
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  if (b == 0) throw EvalError(EvalErrorKind::DivisionByZero, "integer division by zero");
  if (a == std::numeric_limits<std::int64_t>::min() && b == -1) {
    throw EvalError(EvalErrorKind::Overflow, "integer overflow in //");
  }
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  if (b == 0) throw EvalError(EvalErrorKind::DivisionByZero, "integer modulo by zero");
  if (b == -1) return 0;
  std::int64_t r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

bool truthy(const Value& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return *i != 0;
  if (const auto* b = std::get_if<bool>(&value)) return *b;
  return !std::get<std::string>(value).empty();
}

std::string render(const Value& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&value)) return *b ? "True" : "False";
  return std::get<std::string>(value);
}

namespace {

std::string_view type_name(const Value& value) {
  switch (value.index()) {
    case 0: return "int";
    case 1: return "bool";
    default: return "str";
  }
}

[[noreturn]] void mismatch(std::string_view op, const Value& a) {
  throw EvalError(EvalErrorKind::TypeMismatch,
                  "unsupported operand type for " + std::string(op) + ": " + std::string(type_name(a)));
}

[[noreturn]] void mismatch(std::string_view op, const Value& a, const Value& b) {
  throw EvalError(EvalErrorKind::TypeMismatch, "unsupported operand types for " + std::string(op) + ": " +
                                                   std::string(type_name(a)) + " and " +
                                                   std::string(type_name(b)));
}

bool as_bool(BinaryOp op, const Value& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  mismatch(spelling(op), v);
}

std::int64_t arithmetic(BinaryOp op, std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  switch (op) {
    case BinaryOp::Add:
      if (__builtin_add_overflow(a, b, &out)) break;
      return out;
    case BinaryOp::Sub:
      if (__builtin_sub_overflow(a, b, &out)) break;
      return out;
    case BinaryOp::Mul:
      if (__builtin_mul_overflow(a, b, &out)) break;
      return out;
    case BinaryOp::FloorDiv:
      return floor_div(a, b);
    case BinaryOp::Mod:
      return floor_mod(a, b);
    default:
      return 0;
  }
  throw EvalError(EvalErrorKind::Overflow, "integer overflow in " + std::string(spelling(op)));
}

bool compare_ints(BinaryOp op, std::int64_t a, std::int64_t b) {
  switch (op) {
    case BinaryOp::Eq: return a == b;
    case BinaryOp::Ne: return a != b;
    case BinaryOp::Lt: return a < b;
    case BinaryOp::Le: return a <= b;
    case BinaryOp::Gt: return a > b;
    case BinaryOp::Ge: return a >= b;
    default: return false;
  }
}

}  // namespace

Value eval_expr(const Expr& expr, const Env& env) {
  return std::visit(
      [&](const auto& node) -> Value {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return node.value;
        } else if constexpr (std::is_same_v<T, StrLit>) {
          return node.value;
        } else if constexpr (std::is_same_v<T, Var>) {
          auto it = env.find(node.name);
          if (it == env.end()) {
            throw EvalError(EvalErrorKind::UnboundVariable, "name '" + node.name + "' is not defined");
          }
          return it->second;
        } else if constexpr (std::is_same_v<T, Unary>) {
          Value arg = eval_expr(*node.arg, env);
          if (node.op == UnaryOp::Not) {
            if (const auto* b = std::get_if<bool>(&arg)) return !*b;
            mismatch("not", arg);
          }
          const auto* i = std::get_if<std::int64_t>(&arg);
          if (i == nullptr) mismatch("unary -", arg);
          if (*i == std::numeric_limits<std::int64_t>::min()) {
            throw EvalError(EvalErrorKind::Overflow, "integer overflow in unary -");
          }
          return -*i;
        } else {
          const BinaryOp op = node.op;
          if (op == BinaryOp::And || op == BinaryOp::Or) {
            bool lhs = as_bool(op, eval_expr(*node.lhs, env));
            if (op == BinaryOp::And && !lhs) return false;
            if (op == BinaryOp::Or && lhs) return true;
            return as_bool(op, eval_expr(*node.rhs, env));
          }
          Value lhs = eval_expr(*node.lhs, env);
          Value rhs = eval_expr(*node.rhs, env);
          const auto* li = std::get_if<std::int64_t>(&lhs);
          const auto* ri = std::get_if<std::int64_t>(&rhs);
          switch (op) {
            case BinaryOp::Add:
            case BinaryOp::Sub:
            case BinaryOp::Mul:
            case BinaryOp::FloorDiv:
            case BinaryOp::Mod:
              if (li == nullptr || ri == nullptr) mismatch(spelling(op), lhs, rhs);
              return arithmetic(op, *li, *ri);
            case BinaryOp::Eq:
            case BinaryOp::Ne: {
              if (li != nullptr && ri != nullptr) return compare_ints(op, *li, *ri);
              const auto* ls = std::get_if<std::string>(&lhs);
              const auto* rs = std::get_if<std::string>(&rhs);
              if (ls == nullptr || rs == nullptr) mismatch(spelling(op), lhs, rhs);
              return (*ls == *rs) == (op == BinaryOp::Eq);
            }
            default:
              if (li == nullptr || ri == nullptr) mismatch(spelling(op), lhs, rhs);
              return compare_ints(op, *li, *ri);
          }
        }
      },
      expr.node);
}

}  // namespace flowc
