// Recursive-descent parser for the expression grammar.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'x' | 'y' | 'z' | 'pi' | func '(' expr ')' | '(' expr ')'
//   func    := 'sin' | 'cos' | 'exp' | 'sqrt'

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "contactmax/error.hpp"
#include "contactmax/expr.hpp"

namespace contactmax {

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : Error([&] {
        std::string msg = "syntax error at offset " + std::to_string(offset) + ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
          if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
          msg += expected[i];
        }
        return msg + ", found " + found;
      }()),
      offset_(offset),
      expected_(std::move(expected)) {}

UnknownIdentifierError::UnknownIdentifierError(std::size_t offset, std::string name)
    : Error("unknown identifier \"" + name + "\" at offset " + std::to_string(offset)),
      offset_(offset),
      name_(std::move(name)) {}

namespace {

using Kind = Expression::Kind;

const std::vector<std::string>& operand_start() {
  static const std::vector<std::string> v{"number", "identifier", "'('", "'-'"};
  return v;
}

bool contains_variable(const Expression& e) {
  if (e.kind() == Kind::Variable) return true;
  if (e.is_binary()) return contains_variable(e.lhs()) || contains_variable(e.rhs());
  if (e.is_unary() || e.kind() == Kind::Pow) return contains_variable(e.lhs());
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression run() {
    Expression e = expr();
    skip_space();
    if (pos_ != text_.size()) fail({"operator", "end of input"});
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::string found() const {
    if (pos_ >= text_.size()) return "end of input";
    unsigned char c = static_cast<unsigned char>(text_[pos_]);
    if (c >= 0x80 || !std::isprint(c)) return "byte 0x" + [&] {
        char buf[3];
        auto r = std::to_chars(buf, buf + 3, static_cast<int>(c), 16);
        return std::string(buf, r.ptr);
      }();
    return "'" + std::string(1, text_[pos_]) + "'";
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    throw ParseError(pos_, std::move(expected), found());
  }

  void expect(char c) {
    if (peek() != c) fail({std::string("'") + c + "'"});
    ++pos_;
  }

  Expression expr() {
    Expression lhs = term();
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      lhs = Expression::make_binary(c == '+' ? Kind::Add : Kind::Sub, lhs, term());
    }
  }

  Expression term() {
    Expression lhs = unary();
    for (;;) {
      char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      lhs = Expression::make_binary(c == '*' ? Kind::Mul : Kind::Div, lhs, unary());
    }
  }

  Expression unary() {
    if (peek() == '-') {
      ++pos_;
      return Expression::make_unary(Kind::Neg, unary());
    }
    return power();
  }

  Expression power() {
    Expression base = primary();
    if (peek() != '^') return base;
    ++pos_;
    skip_space();
    std::size_t at = pos_;
    Expression exponent = unary();
    double n = 0.0;
    bool ok = !contains_variable(exponent);
    if (ok) {
      try {
        n = exponent.evaluate(Point{});
      } catch (const DomainError&) {
        ok = false;
      }
    }
    if (!ok || n != std::trunc(n) || std::fabs(n) > 1e9) {
      pos_ = at;
      fail({"integer constant exponent"});
    }
    return Expression::make_pow(base, static_cast<int>(n));
  }

  Expression primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expression e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(operand_start());
  }

  Expression number() {
    std::size_t start = pos_;
    auto is_digit = [&](std::size_t i) { return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i])); };
    std::size_t i = pos_;
    while (is_digit(i)) ++i;
    if (i < text_.size() && text_[i] == '.') {
      ++i;
      while (is_digit(i)) ++i;
    }
    if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
      if (is_digit(j)) {
        while (is_digit(j)) ++j;
        i = j;
      }
    }
    double v = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + i, v);
    if (res.ec != std::errc() || res.ptr != text_.data() + i || !std::isfinite(v)) fail({"number"});
    pos_ = i;
    return Expression::constant(v);
  }

  Expression identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name == "x") return Expression::variable(Var::X);
    if (name == "y") return Expression::variable(Var::Y);
    if (name == "z") return Expression::variable(Var::Z);
    if (name == "pi") return Expression::constant(std::numbers::pi);
    Kind fn;
    if (name == "sin") {
      fn = Kind::Sin;
    } else if (name == "cos") {
      fn = Kind::Cos;
    } else if (name == "exp") {
      fn = Kind::Exp;
    } else if (name == "sqrt") {
      fn = Kind::Sqrt;
    } else {
      throw UnknownIdentifierError(start, name);
    }
    expect('(');
    Expression arg = expr();
    expect(')');
    return Expression::make_unary(fn, arg);
  }
};

}  // namespace

Expression parse(std::string_view text) { return Parser(text).run(); }

}  // namespace contactmax
