#include "contactmax/expr.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <system_error>

#include "contactmax/error.hpp"

namespace contactmax {

struct ExprNode {
  Expression::Kind kind;
  double value = 0.0;
  Var var = Var::X;
  int exponent = 0;
  Expression lhs{Expression::NullTag{}};
  Expression rhs{Expression::NullTag{}};
};

namespace {

using Kind = Expression::Kind;

const Expression& empty_expression() {
  static const Expression e;
  return e;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";  // also maps -0 to 0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int precedence(const Expression& e) {
  switch (e.kind()) {
    case Kind::Add:
    case Kind::Sub:
      return 1;
    case Kind::Mul:
    case Kind::Div:
      return 2;
    case Kind::Neg:
      return 3;
    case Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

const char* function_name(Kind k) {
  switch (k) {
    case Kind::Sin:
      return "sin";
    case Kind::Cos:
      return "cos";
    case Kind::Exp:
      return "exp";
    case Kind::Sqrt:
      return "sqrt";
    default:
      return "";
  }
}

char operator_symbol(Kind k) {
  switch (k) {
    case Kind::Add:
      return '+';
    case Kind::Sub:
      return '-';
    case Kind::Mul:
      return '*';
    case Kind::Div:
      return '/';
    default:
      return '?';
  }
}

std::string wrap(const Expression& e, bool parens) {
  return parens ? "(" + e.to_string() + ")" : e.to_string();
}

// Applies one operation to already-evaluated operands; nullopt when the result
// leaves the domain.
std::optional<double> apply_unary(Kind k, double a) {
  double r = 0.0;
  switch (k) {
    case Kind::Neg:
      r = -a;
      break;
    case Kind::Sin:
      r = std::sin(a);
      break;
    case Kind::Cos:
      r = std::cos(a);
      break;
    case Kind::Exp:
      r = std::exp(a);
      break;
    case Kind::Sqrt:
      if (a < 0.0) return std::nullopt;
      r = std::sqrt(a);
      break;
    default:
      return std::nullopt;
  }
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}

std::optional<double> apply_binary(Kind k, double a, double b) {
  double r = 0.0;
  switch (k) {
    case Kind::Add:
      r = a + b;
      break;
    case Kind::Sub:
      r = a - b;
      break;
    case Kind::Mul:
      r = a * b;
      break;
    case Kind::Div:
      if (b == 0.0) return std::nullopt;
      r = a / b;
      break;
    default:
      return std::nullopt;
  }
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}

std::optional<double> apply_pow(double base, int n) {
  if (base == 0.0 && n < 0) return std::nullopt;
  double r = std::pow(base, n);
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}

[[noreturn]] void domain_failure(const Expression& e, const char* what) {
  throw DomainError(what, e.to_string());
}

double eval(const Expression& e, const Point& p) {
  switch (e.kind()) {
    case Kind::Constant:
      return e.value();
    case Kind::Variable:
      return p[static_cast<int>(e.var())];
    case Kind::Neg:
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp:
    case Kind::Sqrt: {
      double a = eval(e.lhs(), p);
      auto r = apply_unary(e.kind(), a);
      if (!r) domain_failure(e, e.kind() == Kind::Sqrt && a < 0.0 ? "square root of a negative number" : "non-finite value");
      return *r;
    }
    case Kind::Pow: {
      double a = eval(e.lhs(), p);
      auto r = apply_pow(a, e.exponent());
      if (!r) domain_failure(e, a == 0.0 ? "division by zero" : "non-finite value");
      return *r;
    }
    default: {
      double a = eval(e.lhs(), p);
      double b = eval(e.rhs(), p);
      auto r = apply_binary(e.kind(), a, b);
      if (!r) domain_failure(e, e.kind() == Kind::Div && b == 0.0 ? "division by zero" : "non-finite value");
      return *r;
    }
  }
}

}  // namespace

DomainError::DomainError(const std::string& what, std::string node)
    : Error("domain error: " + what + " in '" + node + "'"), node_(std::move(node)) {}

std::string_view var_name(Var v) {
  switch (v) {
    case Var::X:
      return "x";
    case Var::Y:
      return "y";
    case Var::Z:
      return "z";
  }
  return "?";
}

Expression::Expression() : Expression(0.0) {}

Expression::Expression(double value)
    : node_(std::make_shared<const ExprNode>(ExprNode{Kind::Constant, value})) {}

Expression::Expression(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

Expression Expression::constant(double value) { return Expression(value); }

Expression Expression::variable(Var v) {
  ExprNode n{Kind::Variable};
  n.var = v;
  return Expression(std::make_shared<const ExprNode>(std::move(n)));
}

Expression Expression::make_unary(Kind kind, Expression operand) {
  ExprNode n{kind};
  n.lhs = std::move(operand);
  return Expression(std::make_shared<const ExprNode>(std::move(n)));
}

Expression Expression::make_binary(Kind kind, Expression lhs, Expression rhs) {
  ExprNode n{kind};
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return Expression(std::make_shared<const ExprNode>(std::move(n)));
}

Expression Expression::make_pow(Expression base, int exponent) {
  ExprNode n{Kind::Pow};
  n.exponent = exponent;
  n.lhs = std::move(base);
  return Expression(std::make_shared<const ExprNode>(std::move(n)));
}

Expression::Kind Expression::kind() const { return node_->kind; }
double Expression::value() const { return node_->value; }
Var Expression::var() const { return node_->var; }
int Expression::exponent() const { return node_->exponent; }

const Expression& Expression::lhs() const {
  return (is_unary() || is_binary() || kind() == Kind::Pow) ? node_->lhs : empty_expression();
}

const Expression& Expression::rhs() const { return is_binary() ? node_->rhs : empty_expression(); }

bool Expression::is_unary() const {
  switch (kind()) {
    case Kind::Neg:
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp:
    case Kind::Sqrt:
      return true;
    default:
      return false;
  }
}

bool Expression::is_binary() const {
  switch (kind()) {
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div:
      return true;
    default:
      return false;
  }
}

std::size_t Expression::size() const {
  if (is_binary()) return 1 + lhs().size() + rhs().size();
  if (is_unary() || kind() == Kind::Pow) return 1 + lhs().size();
  return 1;
}

bool Expression::same_as(const Expression& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Constant:
      return value() == other.value();
    case Kind::Variable:
      return var() == other.var();
    case Kind::Pow:
      return exponent() == other.exponent() && lhs().same_as(other.lhs());
    default:
      if (is_unary()) return lhs().same_as(other.lhs());
      return lhs().same_as(other.lhs()) && rhs().same_as(other.rhs());
  }
}

double Expression::evaluate(const Point& p) const { return eval(*this, p); }

std::string Expression::to_string() const {
  switch (kind()) {
    case Kind::Constant:
      return value() < 0.0 ? "(" + format_number(value()) + ")" : format_number(value());
    case Kind::Variable:
      return std::string(var_name(var()));
    case Kind::Neg:
      return "-" + wrap(lhs(), precedence(lhs()) <= precedence(*this));
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp:
    case Kind::Sqrt:
      return std::string(function_name(kind())) + "(" + lhs().to_string() + ")";
    case Kind::Pow: {
      std::string exp = exponent() < 0 ? "(" + std::to_string(exponent()) + ")" : std::to_string(exponent());
      return wrap(lhs(), precedence(lhs()) <= precedence(*this)) + "^" + exp;
    }
    default: {
      int prec = precedence(*this);
      return wrap(lhs(), precedence(lhs()) < prec) + operator_symbol(kind()) +
             wrap(rhs(), precedence(rhs()) <= prec);
    }
  }
}

// Smart constructors: the local rules of simplify().

Expression operator-(const Expression& a) {
  if (a.is_constant()) return Expression(-a.value());
  if (a.kind() == Kind::Neg) return a.lhs();
  if (a.kind() == Kind::Sub) return a.rhs() - a.lhs();
  return Expression::make_unary(Kind::Neg, a);
}

Expression operator+(const Expression& a, const Expression& b) {
  if (a.is_constant() && b.is_constant()) {
    if (auto r = apply_binary(Kind::Add, a.value(), b.value())) return Expression(*r);
  }
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  if (b.kind() == Kind::Neg) return a - b.lhs();
  if (a.kind() == Kind::Neg) return b - a.lhs();
  return Expression::make_binary(Kind::Add, a, b);
}

Expression operator-(const Expression& a, const Expression& b) {
  if (a.is_constant() && b.is_constant()) {
    if (auto r = apply_binary(Kind::Sub, a.value(), b.value())) return Expression(*r);
  }
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  if (a.same_as(b)) return Expression(0.0);
  if (b.kind() == Kind::Neg) return a + b.lhs();
  return Expression::make_binary(Kind::Sub, a, b);
}

Expression operator*(const Expression& a, const Expression& b) {
  if (a.is_constant() && b.is_constant()) {
    if (auto r = apply_binary(Kind::Mul, a.value(), b.value())) return Expression(*r);
  }
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expression(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(-1.0)) return -b;
  if (b.is_constant(-1.0)) return -a;
  if (b.is_constant() && !a.is_constant()) return b * a;
  if (a.kind() == Kind::Neg) return -(a.lhs() * b);
  if (b.kind() == Kind::Neg) return -(a * b.lhs());
  if (a.is_constant() && b.kind() == Kind::Mul && b.lhs().is_constant()) {
    if (auto r = apply_binary(Kind::Mul, a.value(), b.lhs().value())) return Expression(*r) * b.rhs();
  }
  return Expression::make_binary(Kind::Mul, a, b);
}

Expression operator/(const Expression& a, const Expression& b) {
  if (a.is_constant() && b.is_constant()) {
    if (auto r = apply_binary(Kind::Div, a.value(), b.value())) return Expression(*r);
  }
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expression(0.0);
  if (a.kind() == Kind::Neg) return -(a.lhs() / b);
  return Expression::make_binary(Kind::Div, a, b);
}

Expression pow(const Expression& base, int exponent) {
  if (exponent == 0) return Expression(1.0);
  if (exponent == 1) return base;
  if (base.is_constant()) {
    if (auto r = apply_pow(base.value(), exponent)) return Expression(*r);
  }
  if (base.kind() == Kind::Pow) {
    long long n = static_cast<long long>(base.exponent()) * exponent;
    // (u^a)^b = u^(ab) for integer exponents wherever both sides are defined.
    if (n >= INT32_MIN && n <= INT32_MAX) return pow(base.lhs(), static_cast<int>(n));
  }
  return Expression::make_pow(base, exponent);
}

namespace {

Expression fold_unary(Kind k, const Expression& a) {
  if (a.is_constant()) {
    if (auto r = apply_unary(k, a.value())) return Expression(*r);
  }
  return Expression::make_unary(k, a);
}

}  // namespace

Expression sin(const Expression& a) { return fold_unary(Kind::Sin, a); }
Expression cos(const Expression& a) { return fold_unary(Kind::Cos, a); }
Expression exp(const Expression& a) { return fold_unary(Kind::Exp, a); }
Expression sqrt(const Expression& a) { return fold_unary(Kind::Sqrt, a); }

Expression simplify(const Expression& e) {
  switch (e.kind()) {
    case Kind::Constant:
    case Kind::Variable:
      return e;
    case Kind::Neg:
      return -simplify(e.lhs());
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp:
    case Kind::Sqrt:
      return fold_unary(e.kind(), simplify(e.lhs()));
    case Kind::Pow:
      return pow(simplify(e.lhs()), e.exponent());
    case Kind::Add:
      return simplify(e.lhs()) + simplify(e.rhs());
    case Kind::Sub:
      return simplify(e.lhs()) - simplify(e.rhs());
    case Kind::Mul:
      return simplify(e.lhs()) * simplify(e.rhs());
    case Kind::Div:
      return simplify(e.lhs()) / simplify(e.rhs());
  }
  return e;
}

namespace {

Expression derivative(const Expression& e, Var v) {
  switch (e.kind()) {
    case Kind::Constant:
      return Expression(0.0);
    case Kind::Variable:
      return Expression(e.var() == v ? 1.0 : 0.0);
    case Kind::Neg:
      return -derivative(e.lhs(), v);
    case Kind::Sin:
      return cos(e.lhs()) * derivative(e.lhs(), v);
    case Kind::Cos:
      return -(sin(e.lhs()) * derivative(e.lhs(), v));
    case Kind::Exp:
      return e * derivative(e.lhs(), v);
    case Kind::Sqrt:
      return derivative(e.lhs(), v) / (Expression(2.0) * e);
    case Kind::Pow: {
      Expression du = derivative(e.lhs(), v);
      if (du.is_constant(0.0)) return Expression(0.0);
      return Expression(static_cast<double>(e.exponent())) * pow(e.lhs(), e.exponent() - 1) * du;
    }
    case Kind::Add:
      return derivative(e.lhs(), v) + derivative(e.rhs(), v);
    case Kind::Sub:
      return derivative(e.lhs(), v) - derivative(e.rhs(), v);
    case Kind::Mul: {
      const Expression& u = e.lhs();
      const Expression& w = e.rhs();
      return derivative(u, v) * w + u * derivative(w, v);
    }
    case Kind::Div: {
      const Expression& u = e.lhs();
      const Expression& w = e.rhs();
      Expression du = derivative(u, v);
      Expression dw = derivative(w, v);
      if (dw.is_constant(0.0)) return du / w;
      return (du * w - u * dw) / pow(w, 2);
    }
  }
  return Expression(0.0);
}

}  // namespace

Expression differentiate(const Expression& e, Var v) { return simplify(derivative(e, v)); }

}  // namespace contactmax
