#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

#include "lpverify/errors.hpp"
#include "lpverify/expr.hpp"

namespace lpv {
namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  double number = 0.0;
  std::size_t column = 0;  // 1-based
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    Token t;
    t.column = pos_ + 1;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      t.kind = Tok::Ident;
      t.text = src_.substr(start, pos_ - start);
      return t;
    }
    t.text = src_.substr(pos_, 1);
    ++pos_;
    switch (c) {
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '/': t.kind = Tok::Slash; break;
      case '^': t.kind = Tok::Caret; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      default:
        throw ParseError("unexpected character '" + std::string(t.text) + "'", 0, t.column);
    }
    return t;
  }

 private:
  Token number(Token t) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      ++pos_;
    // Optional exponent: 1e-3, 2.5E+4. A bare 'e' not followed by digits is
    // left for the identifier lexer (as in "2e" -> error later).
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    t.kind = Tok::Number;
    t.text = src_.substr(start, pos_ - start);
    const auto* first = t.text.data();
    const auto* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, t.number);
    if (ec != std::errc() || ptr != last)
      throw ParseError("malformed number '" + std::string(t.text) + "'", 0, t.column);
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view src, std::span<const std::string> vars) : lexer_(src), vars_(vars) {
    advance();
  }

  Expr parse() {
    Expr e = expression();
    if (cur_.kind != Tok::End) fail_unexpected();
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void fail_unexpected() const {
    if (cur_.kind == Tok::End) throw ParseError("unexpected end of expression", 0, cur_.column);
    throw ParseError("unexpected '" + std::string(cur_.text) + "'", 0, cur_.column);
  }

  Expr expression() {
    Expr lhs = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const bool plus = cur_.kind == Tok::Plus;
      advance();
      Expr rhs = term();
      lhs = plus ? lhs + rhs : lhs - rhs;
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const bool mul = cur_.kind == Tok::Star;
      advance();
      Expr rhs = unary();
      lhs = mul ? lhs * rhs : lhs / rhs;
    }
    return lhs;
  }

  Expr unary() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return -unary();
    }
    if (cur_.kind == Tok::Plus) {
      advance();
      return unary();
    }
    return power();
  }

  Expr power() {
    const Token base_tok = cur_;
    const bool euler = base_tok.kind == Tok::Ident && base_tok.text == "e" && !is_variable("e");
    Expr base = primary();
    if (cur_.kind != Tok::Caret) return base;
    advance();
    const Token exp_tok = cur_;
    // Right-associative; the exponent may carry its own sign.
    Expr exponent = unary();
    if (euler) return exp(exponent);
    if (!exponent.is_constant())
      throw ParseError("exponent must be an integer constant", 0, exp_tok.column);
    const double v = exponent.constant_value();
    if (v != std::round(v) || std::abs(v) > 1024.0)
      throw ParseError("exponent must be an integer constant", 0, exp_tok.column);
    return pow(base, static_cast<int>(v));
  }

  Expr primary() {
    switch (cur_.kind) {
      case Tok::Number: {
        const double v = cur_.number;
        advance();
        return Expr::constant(v);
      }
      case Tok::LParen: {
        advance();
        Expr e = expression();
        if (cur_.kind != Tok::RParen) {
          if (cur_.kind == Tok::End) throw ParseError("missing ')'", 0, cur_.column);
          fail_unexpected();
        }
        advance();
        return e;
      }
      case Tok::Ident:
        return identifier();
      default:
        fail_unexpected();
    }
  }

  Expr identifier() {
    const Token tok = cur_;
    advance();
    if (cur_.kind == Tok::LParen) {
      using Fn = Expr (*)(const Expr&);
      Fn fn = nullptr;
      if (tok.text == "exp") fn = [](const Expr& a) { return exp(a); };
      if (tok.text == "sin") fn = [](const Expr& a) { return sin(a); };
      if (tok.text == "cos") fn = [](const Expr& a) { return cos(a); };
      if (tok.text == "log") fn = [](const Expr& a) { return log(a); };
      if (fn == nullptr) throw ParseError("unknown function '" + std::string(tok.text) + "'", 0, tok.column);
      advance();
      Expr arg = expression();
      if (cur_.kind != Tok::RParen) {
        if (cur_.kind == Tok::End) throw ParseError("missing ')'", 0, cur_.column);
        fail_unexpected();
      }
      advance();
      return fn(arg);
    }
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == tok.text) return Expr::variable(i, vars_[i]);
    if (tok.text == "e") return Expr::constant(std::numbers::e);
    if (tok.text == "pi") return Expr::constant(std::numbers::pi);
    throw ParseError("unknown identifier '" + std::string(tok.text) + "'", 0, tok.column);
  }

  bool is_variable(std::string_view name) const {
    for (const auto& v : vars_)
      if (v == name) return true;
    return false;
  }

  Lexer lexer_;
  std::span<const std::string> vars_;
  Token cur_;
};

}  // namespace

Expr parse_expr(std::string_view text, std::span<const std::string> variables) {
  return Parser(text, variables).parse();
}

}  // namespace lpv
