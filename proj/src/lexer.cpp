#include <array>
#include <cctype>
#include <charconv>

#include "flowc/expr.hpp"

namespace flowc {

namespace {

// Our own keywords plus every Python 3 reserved word, so identifiers never
// collide with the emitted language.
constexpr std::array<std::string_view, 36> kKeywords = {
    "print",  "and",    "or",     "not",     "False", "None",     "True",   "as",    "assert",
    "async",  "await",  "break",  "class",   "continue", "def",   "del",    "elif",  "else",
    "except", "finally", "for",   "from",    "global", "if",      "import", "in",    "is",
    "lambda", "nonlocal", "pass", "raise",   "return", "try",     "while",  "with",  "yield"};

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    const std::size_t start = i;

    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i < n && ident_char(text[i])) throw LexError("invalid integer literal", start);
      std::string_view digits = text.substr(start, i - start);
      if (digits.size() > 1 && digits.front() == '0') {
        throw LexError("leading zeros in integer literal", start);
      }
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw LexError("integer literal out of range", start);
      }
      tokens.push_back({TokenKind::Int, std::string(digits), start});
      continue;
    }

    if (ident_start(c)) {
      while (i < n && ident_char(text[i])) ++i;
      std::string word(text.substr(start, i - start));
      TokenKind kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Ident;
      tokens.push_back({kind, std::move(word), start});
      continue;
    }

    if (c == '"') {
      ++i;
      std::string contents;
      bool closed = false;
      while (i < n) {
        char d = text[i];
        if (d == '"') {
          closed = true;
          ++i;
          break;
        }
        if (d == '\n') break;
        if (d == '\\') {
          if (i + 1 >= n) break;
          char e = text[i + 1];
          switch (e) {
            case '\\': contents += '\\'; i += 2; continue;
            case '"': contents += '"'; i += 2; continue;
            case 'n': contents += '\n'; i += 2; continue;
            case 't': contents += '\t'; i += 2; continue;
            case 'r': contents += '\r'; i += 2; continue;
            case 'x': {
              int hi = i + 2 < n ? hex_value(text[i + 2]) : -1;
              int lo = i + 3 < n ? hex_value(text[i + 3]) : -1;
              if (hi < 0 || lo < 0 || hi >= 8) throw LexError("invalid \\x escape", i);
              contents += static_cast<char>(hi * 16 + lo);
              i += 4;
              continue;
            }
            default:
              throw LexError("unknown escape sequence", i);
          }
        }
        contents += d;
        ++i;
      }
      if (!closed) throw LexError("unterminated string literal", start);
      tokens.push_back({TokenKind::Str, std::move(contents), start});
      continue;
    }

    auto two = i + 1 < n ? text.substr(i, 2) : std::string_view{};
    if (two == "==" || two == "!=" || two == "<=" || two == ">=" || two == "//") {
      tokens.push_back({TokenKind::Op, std::string(two), start});
      i += 2;
      continue;
    }
    switch (c) {
      case '+': case '-': case '*': case '%': case '<': case '>':
        tokens.push_back({TokenKind::Op, std::string(1, c), start});
        ++i;
        continue;
      case '=':
        tokens.push_back({TokenKind::Eq, "=", start});
        ++i;
        continue;
      case '(':
        tokens.push_back({TokenKind::LParen, "(", start});
        ++i;
        continue;
      case ')':
        tokens.push_back({TokenKind::RParen, ")", start});
        ++i;
        continue;
      default:
        break;
    }
    throw LexError(std::string("unexpected character '") + c + "'", start);
  }
  return tokens;
}

}  // namespace flowc
