#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

namespace contactmax {

/// A point of the coordinate chart.
struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  bool operator==(const Point&) const = default;
};

/// Chart coordinate.
enum class Var { X = 0, Y = 1, Z = 2 };

std::string_view var_name(Var v);

struct ExprNode;

/// Immutable scalar field on the chart, stored as a shared expression tree.
///
/// Grammar: real constants, the coordinates x, y, z, the unary operations
/// neg, sin, cos, exp, sqrt and the binary operations add, sub, mul, div and
/// pow with a constant integer exponent. Copies share structure, so
/// expressions are cheap to pass by value and safe to read concurrently.
///
/// The arithmetic operators and the free functions below fold constants and
/// drop neutral elements as they build (see simplify()); the raw factories
/// `make_unary` / `make_binary` build exactly the node requested.
class Expression {
 public:
  enum class Kind { Constant, Variable, Neg, Sin, Cos, Exp, Sqrt, Add, Sub, Mul, Div, Pow };

  /// The constant 0.
  Expression();
  /// Implicit so that literals mix with expressions: `2.0 * x`.
  Expression(double value);  // NOLINT(google-explicit-constructor)

  static Expression constant(double value);
  static Expression variable(Var v);
  static Expression make_unary(Kind kind, Expression operand);
  static Expression make_binary(Kind kind, Expression lhs, Expression rhs);
  static Expression make_pow(Expression base, int exponent);

  Kind kind() const;
  /// Value of a Constant node.
  double value() const;
  /// Coordinate of a Variable node.
  Var var() const;
  /// Exponent of a Pow node.
  int exponent() const;
  /// Operand of a unary node, left operand of a binary node.
  const Expression& lhs() const;
  /// Right operand of a binary node (not set for Pow).
  const Expression& rhs() const;

  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_constant(double v) const { return is_constant() && value() == v; }
  bool is_unary() const;
  bool is_binary() const;

  /// Number of nodes in the tree, counting shared subtrees once per use.
  std::size_t size() const;

  /// Syntactic equality of trees (constants compared bitwise by value).
  bool same_as(const Expression& other) const;

  /// Evaluate at a point. Throws DomainError on sqrt of a negative number,
  /// division by zero or a non-finite result.
  double evaluate(const Point& p) const;

  /// Text form that parse() accepts and that evaluates identically.
  std::string to_string() const;

  /// Identity of the shared node; equal ids imply same_as().
  const void* id() const { return node_.get(); }

 private:
  friend struct ExprNode;
  struct NullTag {};
  explicit Expression(NullTag) {}
  explicit Expression(std::shared_ptr<const ExprNode> node);

  std::shared_ptr<const ExprNode> node_;
};

Expression operator-(const Expression& a);
Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator*(const Expression& a, const Expression& b);
Expression operator/(const Expression& a, const Expression& b);
Expression pow(const Expression& base, int exponent);
Expression sin(const Expression& a);
Expression cos(const Expression& a);
Expression exp(const Expression& a);
Expression sqrt(const Expression& a);

inline Expression var_x() { return Expression::variable(Var::X); }
inline Expression var_y() { return Expression::variable(Var::Y); }
inline Expression var_z() { return Expression::variable(Var::Z); }

/// Parse expression text.
///
/// Precedence, loosest first: `+ -` (left), `* /` (left), unary minus, `^`
/// (right; the exponent must fold to an integer constant). Functions
/// `sin cos exp sqrt` require parentheses. Identifiers are `x y z pi`.
/// Whitespace is ignored. Builds the tree literally, without simplification.
Expression parse(std::string_view text);

/// Partial derivative with respect to one coordinate, simplified.
Expression differentiate(const Expression& e, Var v);

/// Value-preserving local rewriting: constant folding, 0+e, e+0, e-0, 0-e,
/// 0*e, 1*e, e/1, 0/e, e^0, e^1, --e and e-e for syntactically identical e.
Expression simplify(const Expression& e);

}  // namespace contactmax
