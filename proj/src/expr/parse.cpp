#include <cctype>
#include <charconv>
#include <optional>
#include <string>

#include "wpb/error.hpp"
#include "wpb/expr.hpp"

namespace wpb {

namespace {

std::optional<Func> parseable_function(std::string_view name) {
  static constexpr std::pair<std::string_view, Func> table[] = {
      {"sin", Func::sin},       {"cos", Func::cos},       {"tan", Func::tan},
      {"exp", Func::exp},       {"ln", Func::ln},         {"sqrt", Func::sqrt},
      {"abs", Func::abs},       {"arcsin", Func::arcsin}, {"arccos", Func::arccos},
      {"arctan", Func::arctan}, {"erf", Func::erf},       {"besseli0", Func::besseli0},
  };
  for (const auto& [n, f] : table) {
    if (n == name) return f;
  }
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    skip_space();
    if (at_end()) throw ParseError("empty expression", pos_);
    Expr e = parse_expr();
    skip_space();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinOp::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinOp::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinOp::mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinOp::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::binary(BinOp::sub, Expr::constant(0.0), parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return Expr::binary(BinOp::pow, base, parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_space();
    if (at_end()) throw ParseError("unexpected end of expression", pos_);
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if (peek() == 'e' || peek() == 'E') {
      // Only an exponent when digits follow; "2e" is not a literal.
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    const std::string_view lit = text_.substr(start, pos_ - start);
    if (lit == ".") throw ParseError("malformed number", start);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), v);
    if (ec != std::errc() || ptr != lit.data() + lit.size()) {
      throw ParseError("malformed number '" + std::string(lit) + "'", start);
    }
    if (std::isalpha(static_cast<unsigned char>(peek()))) {
      throw ParseError("missing operator after number", pos_);
    }
    return Expr::constant(v);
  }

  Expr parse_name() {
    const std::size_t start = pos_;
    while (!at_end() &&
           (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    skip_space();
    if (peek() == '(') {
      auto f = parseable_function(name);
      if (!f) throw ParseError("unknown function '" + name + "'", start);
      ++pos_;
      Expr arg = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return Expr::unary(*f, std::move(arg));
    }
    if (name == "pi") return Expr::named(NamedConst::pi);
    if (name == "e") return Expr::named(NamedConst::e);
    if (parseable_function(name) || name == "besseli1" || name == "sgn") {
      throw ParseError("function '" + name + "' requires an argument", start);
    }
    return Expr::variable(name);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace wpb
