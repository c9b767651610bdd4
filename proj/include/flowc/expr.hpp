#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace flowc {

// ---------------------------------------------------------------------------
// Tokens

enum class TokenKind { Int, Str, Ident, Op, Keyword, LParen, RParen, Eq };

struct Token {
  TokenKind kind;
  /// Source spelling; for Str the decoded contents.
  std::string text;
  /// 0-based column of the first character.
  std::size_t position = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Base for lexing and parsing failures; carries the 0-based column.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : std::runtime_error("column " + std::to_string(position + 1) + ": " + message),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class LexError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class ParseError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

std::vector<Token> tokenize(std::string_view text);

// ---------------------------------------------------------------------------
// Expressions

enum class UnaryOp { Neg, Not };
enum class BinaryOp { Add, Sub, Mul, FloorDiv, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

std::string_view spelling(UnaryOp op);
std::string_view spelling(BinaryOp op);
std::string_view name_of(UnaryOp op);
std::string_view name_of(BinaryOp op);

struct Expr;
/// Expressions are immutable trees; sharing subtrees is safe.
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLit {
  std::int64_t value;
};
struct StrLit {
  std::string value;
};
struct Var {
  std::string name;
};
struct Unary {
  UnaryOp op;
  ExprPtr arg;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  std::variant<IntLit, StrLit, Var, Unary, Binary> node;
};

bool operator==(const Expr& a, const Expr& b);
/// Structural equality; null pointers compare equal only to each other.
bool same_expr(const ExprPtr& a, const ExprPtr& b);

ExprPtr make_int(std::int64_t value);
ExprPtr make_str(std::string value);
ExprPtr make_var(std::string name);
ExprPtr make_unary(UnaryOp op, ExprPtr arg);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);

// ---------------------------------------------------------------------------
// Statements

struct Assign {
  std::string target;
  ExprPtr value;
};
struct Print {
  ExprPtr value;
};
using Stmt = std::variant<Assign, Print>;

bool same_stmt(const Stmt& a, const Stmt& b);

ExprPtr parse_expression(std::string_view text);
Stmt parse_statement(std::string_view text);

/// Renders with the minimum parentheses needed to re-parse to the same tree.
/// The output is also valid Python 3 with identical meaning.
std::string to_source(const Expr& expr);
std::string to_source(const Stmt& stmt);
/// Python 3 string literal (double-quoted) for raw UTF-8 contents.
std::string quote_string(std::string_view raw);

// ---------------------------------------------------------------------------
// Evaluation

using Value = std::variant<std::int64_t, bool, std::string>;
using Env = std::map<std::string, Value, std::less<>>;

enum class EvalErrorKind { UnboundVariable, DivisionByZero, TypeMismatch, Overflow };

std::string_view name_of(EvalErrorKind kind);

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(name_of(kind)) + ": " + detail), kind_(kind) {}
  EvalErrorKind kind() const noexcept { return kind_; }

 private:
  EvalErrorKind kind_;
};

/// Integers are 64-bit; any result outside that range raises Overflow.
Value eval_expr(const Expr& expr, const Env& env);
/// Python truthiness: nonzero Int, true Bool, nonempty Str.
bool truthy(const Value& value);
/// Int as decimal, Str raw, Bool as True/False.
std::string render(const Value& value);

/// Floor division and modulo with the remainder taking the divisor's sign.
/// Both throw EvalError on a zero divisor or overflow.
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t floor_mod(std::int64_t a, std::int64_t b);

}  // namespace flowc
