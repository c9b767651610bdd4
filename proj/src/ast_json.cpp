#include "flowc/codegen.hpp"
#include "flowc/json_io.hpp"

namespace flowc {

namespace {

Json expr_json(const Expr& expr) {
  return std::visit(
      [](const auto& node) -> Json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return Json{{"int", node.value}};
        } else if constexpr (std::is_same_v<T, StrLit>) {
          return Json{{"str", node.value}};
        } else if constexpr (std::is_same_v<T, Var>) {
          return Json{{"var", node.name}};
        } else if constexpr (std::is_same_v<T, Unary>) {
          return Json{{"unary", Json{{"op", name_of(node.op)}, {"arg", expr_json(*node.arg)}}}};
        } else {
          return Json{{"binary", Json{{"op", name_of(node.op)},
                                      {"lhs", expr_json(*node.lhs)},
                                      {"rhs", expr_json(*node.rhs)}}}};
        }
      },
      expr.node);
}

Json body_json(const SBody& body);

Json stmt_json(const SNode& item) {
  return std::visit(
      [](const auto& node) -> Json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, SAssign>) {
          return Json{{"assign", Json{{"target", node.target}, {"value", expr_json(*node.value)}}}};
        } else if constexpr (std::is_same_v<T, SPrint>) {
          return Json{{"print", expr_json(*node.value)}};
        } else if constexpr (std::is_same_v<T, SWhile>) {
          return Json{{"while", Json{{"cond", expr_json(*node.cond)},
                                     {"negated", node.negated},
                                     {"body", body_json(node.body)}}}};
        } else {
          return Json{{"if", Json{{"cond", expr_json(*node.cond)},
                                  {"then", body_json(node.then_body)},
                                  {"else", body_json(node.else_body)}}}};
        }
      },
      item.node);
}

Json body_json(const SBody& body) {
  Json out = Json::array();
  for (const SNode& item : body) out.push_back(stmt_json(item));
  return out;
}

// Reading -------------------------------------------------------------------

[[noreturn]] void bad(const std::string& what) { throw BadProgramJson("bad program JSON: " + what); }

const Json& single(const Json& j, std::string& key) {
  if (!j.is_object() || j.size() != 1) bad("expected an object with exactly one key");
  key = j.begin().key();
  return j.begin().value();
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) bad(std::string("expected an object holding \"") + name + "\"");
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing \"") + name + "\"");
  return *it;
}

std::string string_field(const Json& j) {
  if (!j.is_string()) bad("expected a string");
  return j.get<std::string>();
}

BinaryOp binary_op(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(BinaryOp::Or); ++i) {
    auto op = static_cast<BinaryOp>(i);
    if (name_of(op) == name) return op;
  }
  bad("unknown binary operator \"" + name + "\"");
}

ExprPtr read_expr(const Json& j) {
  std::string key;
  const Json& v = single(j, key);
  if (key == "int") {
    if (!v.is_number_integer()) bad("\"int\" needs an integer");
    return make_int(v.get<std::int64_t>());
  }
  if (key == "str") return make_str(string_field(v));
  if (key == "var") return make_var(string_field(v));
  if (key == "unary") {
    const std::string op = string_field(field(v, "op"));
    if (op != "neg" && op != "not") bad("unknown unary operator \"" + op + "\"");
    return make_unary(op == "neg" ? UnaryOp::Neg : UnaryOp::Not, read_expr(field(v, "arg")));
  }
  if (key == "binary") {
    return make_binary(binary_op(string_field(field(v, "op"))), read_expr(field(v, "lhs")),
                       read_expr(field(v, "rhs")));
  }
  bad("unknown expression tag \"" + key + "\"");
}

SBody read_body(const Json& j);

SNode read_stmt(const Json& j) {
  std::string key;
  const Json& v = single(j, key);
  if (key == "assign") return SNode{SAssign{string_field(field(v, "target")), read_expr(field(v, "value"))}};
  if (key == "print") return SNode{SPrint{read_expr(v)}};
  if (key == "while") {
    const Json& negated = field(v, "negated");
    if (!negated.is_boolean()) bad("\"negated\" needs a boolean");
    return SNode{SWhile{read_expr(field(v, "cond")), negated.get<bool>(), read_body(field(v, "body"))}};
  }
  if (key == "if") {
    return SNode{SIf{read_expr(field(v, "cond")), read_body(field(v, "then")), read_body(field(v, "else"))}};
  }
  bad("unknown statement tag \"" + key + "\"");
}

SBody read_body(const Json& j) {
  if (!j.is_array()) bad("expected an array of statements");
  SBody out;
  out.reserve(j.size());
  for (const Json& item : j) out.push_back(read_stmt(item));
  return out;
}

}  // namespace

Json to_json(const Program& program) { return Json{{"body", body_json(program.body)}}; }

std::string emit_ast_json(const Program& program) {
  return to_json(program).dump(-1, ' ', false, Json::error_handler_t::replace);
}

Program program_from_json(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw BadProgramJson(e.what());
  }
  return Program{read_body(field(root, "body"))};
}

}  // namespace flowc
