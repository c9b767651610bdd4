#include <cstdlib>
#include <optional>

#include "flowc/expr.hpp"

namespace flowc {

std::string_view spelling(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "not"; }

std::string_view spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::FloorDiv: return "//";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
  }
  return "?";
}

std::string_view name_of(UnaryOp op) { return op == UnaryOp::Neg ? "neg" : "not"; }

std::string_view name_of(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "add";
    case BinaryOp::Sub: return "sub";
    case BinaryOp::Mul: return "mul";
    case BinaryOp::FloorDiv: return "floordiv";
    case BinaryOp::Mod: return "mod";
    case BinaryOp::Eq: return "eq";
    case BinaryOp::Ne: return "ne";
    case BinaryOp::Lt: return "lt";
    case BinaryOp::Le: return "le";
    case BinaryOp::Gt: return "gt";
    case BinaryOp::Ge: return "ge";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
  }
  return "?";
}

ExprPtr make_int(std::int64_t value) { return std::make_shared<const Expr>(Expr{IntLit{value}}); }
ExprPtr make_str(std::string value) { return std::make_shared<const Expr>(Expr{StrLit{std::move(value)}}); }
ExprPtr make_var(std::string name) { return std::make_shared<const Expr>(Expr{Var{std::move(name)}}); }
ExprPtr make_unary(UnaryOp op, ExprPtr arg) {
  return std::make_shared<const Expr>(Expr{Unary{op, std::move(arg)}});
}
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}});
}

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return a == b || *a == *b;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, IntLit>) return lhs.value == rhs.value;
        else if constexpr (std::is_same_v<T, StrLit>) return lhs.value == rhs.value;
        else if constexpr (std::is_same_v<T, Var>) return lhs.name == rhs.name;
        else if constexpr (std::is_same_v<T, Unary>) return lhs.op == rhs.op && same_expr(lhs.arg, rhs.arg);
        else return lhs.op == rhs.op && same_expr(lhs.lhs, rhs.lhs) && same_expr(lhs.rhs, rhs.rhs);
      },
      a.node);
}

bool same_stmt(const Stmt& a, const Stmt& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<Assign>(&a)) {
    const auto& y = std::get<Assign>(b);
    return x->target == y.target && same_expr(x->value, y.value);
  }
  return same_expr(std::get<Print>(a).value, std::get<Print>(b).value);
}

namespace {

// Recursive descent, one function per precedence level:
//   or < and < not < comparison < additive < multiplicative < unary minus < atom
class Parser {
 public:
  Parser(std::vector<Token> tokens, std::size_t text_size)
      : tokens_(std::move(tokens)), end_position_(text_size) {}

  ExprPtr expression() {
    Nest nest(*this);
    return disjunction();
  }

  Stmt statement() {
    if (at_keyword("print")) {
      ++pos_;
      if (at_end()) fail("expected an expression after 'print'");
      return Print{expression()};
    }
    if (peek() != nullptr && peek()->kind == TokenKind::Ident && pos_ + 1 < tokens_.size() &&
        tokens_[pos_ + 1].kind == TokenKind::Eq) {
      std::string target = peek()->text;
      pos_ += 2;
      if (at_end()) fail("expected an expression after '='");
      return Assign{std::move(target), expression()};
    }
    if (peek() != nullptr && peek()->kind == TokenKind::Keyword && peek()->text != "not") {
      fail("'" + peek()->text + "' is a reserved word");
    }
    if (at_end()) fail("expected a statement");
    fail("expected 'print <expr>' or '<name> = <expr>'");
  }

  void expect_end() {
    if (!at_end()) fail("unexpected '" + peek()->text + "'");
  }

 private:
  ExprPtr disjunction() {
    ExprPtr lhs = conjunction();
    while (at_keyword("or")) {
      ++pos_;
      lhs = make_binary(BinaryOp::Or, lhs, conjunction());
    }
    return lhs;
  }

  ExprPtr conjunction() {
    ExprPtr lhs = negation();
    while (at_keyword("and")) {
      ++pos_;
      lhs = make_binary(BinaryOp::And, lhs, negation());
    }
    return lhs;
  }

  ExprPtr negation() {
    if (at_keyword("not")) {
      ++pos_;
      Nest nest(*this);
      return make_unary(UnaryOp::Not, negation());
    }
    return comparison();
  }

  ExprPtr comparison() {
    ExprPtr lhs = additive();
    if (auto op = comparison_op()) {
      ++pos_;
      ExprPtr rhs = additive();
      if (comparison_op()) fail("comparisons cannot be chained");
      return make_binary(*op, lhs, rhs);
    }
    return lhs;
  }

  ExprPtr additive() {
    ExprPtr lhs = multiplicative();
    while (true) {
      if (at_op("+")) {
        ++pos_;
        lhs = make_binary(BinaryOp::Add, lhs, multiplicative());
      } else if (at_op("-")) {
        ++pos_;
        lhs = make_binary(BinaryOp::Sub, lhs, multiplicative());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr multiplicative() {
    ExprPtr lhs = unary();
    while (true) {
      BinaryOp op;
      if (at_op("*")) op = BinaryOp::Mul;
      else if (at_op("//")) op = BinaryOp::FloorDiv;
      else if (at_op("%")) op = BinaryOp::Mod;
      else return lhs;
      ++pos_;
      lhs = make_binary(op, lhs, unary());
    }
  }

  ExprPtr unary() {
    if (at_op("-")) {
      ++pos_;
      Nest nest(*this);
      return make_unary(UnaryOp::Neg, unary());
    }
    return atom();
  }

  ExprPtr atom() {
    const Token* tok = peek();
    if (tok == nullptr) fail("expected an expression");
    switch (tok->kind) {
      case TokenKind::Int: {
        ++pos_;
        return make_int(std::strtoll(tok->text.c_str(), nullptr, 10));
      }
      case TokenKind::Str:
        ++pos_;
        return make_str(tok->text);
      case TokenKind::Ident:
        ++pos_;
        return make_var(tok->text);
      case TokenKind::LParen: {
        ++pos_;
        ExprPtr inner = expression();
        if (peek() == nullptr || peek()->kind != TokenKind::RParen) fail("expected ')'");
        ++pos_;
        return inner;
      }
      case TokenKind::Keyword:
        if (tok->text == "and" || tok->text == "or" || tok->text == "not" || tok->text == "print") {
          fail("expected an expression, found '" + tok->text + "'");
        }
        fail("'" + tok->text + "' is a reserved word");
      default:
        fail("expected an expression, found '" + tok->text + "'");
    }
  }

  std::optional<BinaryOp> comparison_op() const {
    const Token* tok = peek();
    if (tok == nullptr || tok->kind != TokenKind::Op) return std::nullopt;
    const std::string& t = tok->text;
    if (t == "==") return BinaryOp::Eq;
    if (t == "!=") return BinaryOp::Ne;
    if (t == "<") return BinaryOp::Lt;
    if (t == "<=") return BinaryOp::Le;
    if (t == ">") return BinaryOp::Gt;
    if (t == ">=") return BinaryOp::Ge;
    return std::nullopt;
  }

  const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }
  bool at_end() const { return pos_ >= tokens_.size(); }
  bool at_op(std::string_view op) const {
    const Token* tok = peek();
    return tok != nullptr && tok->kind == TokenKind::Op && tok->text == op;
  }
  bool at_keyword(std::string_view kw) const {
    const Token* tok = peek();
    return tok != nullptr && tok->kind == TokenKind::Keyword && tok->text == kw;
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::size_t position = pos_ < tokens_.size() ? tokens_[pos_].position : end_position_;
    throw ParseError(message, position);
  }

  static constexpr int kMaxDepth = 256;

  struct Nest {
    explicit Nest(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) parser.fail("expression nested too deeply");
    }
    ~Nest() { --parser.depth_; }
    Parser& parser;
  };

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  std::size_t end_position_;
};

}  // namespace

ExprPtr parse_expression(std::string_view text) {
  Parser parser(tokenize(text), text.size());
  ExprPtr expr = parser.expression();
  parser.expect_end();
  return expr;
}

Stmt parse_statement(std::string_view text) {
  Parser parser(tokenize(text), text.size());
  Stmt stmt = parser.statement();
  parser.expect_end();
  return stmt;
}

}  // namespace flowc
