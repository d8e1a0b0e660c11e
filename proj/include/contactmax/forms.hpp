#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "contactmax/expr.hpp"

namespace contactmax {

/// Differential form of degree 0..3 on the chart with expression coefficients.
///
/// Canonical bases:
///   degree 0: [c]
///   degree 1: [a1, a2, a3]  for a1 dx + a2 dy + a3 dz
///   degree 2: [b1, b2, b3]  for b1 dy^dz + b2 dz^dx + b3 dx^dy
///   degree 3: [v]           for v dx^dy^dz
///
/// The cyclic degree-2 ordering makes the Euclidean Hodge star the identity
/// on coefficient slots between degrees 1 and 2.
class KForm {
 public:
  KForm(int degree, std::vector<Expression> coefficients);

  static KForm zero(int degree);
  static KForm function(Expression c);
  static KForm one_form(Expression a1, Expression a2, Expression a3);
  static KForm two_form(Expression b1, Expression b2, Expression b3);
  static KForm three_form(Expression v);

  /// Parse one coefficient string per slot.
  static KForm parse(int degree, std::span<const std::string> coefficients);

  int degree() const { return degree_; }
  std::size_t size() const { return coefficients_.size(); }
  const Expression& operator[](std::size_t i) const { return coefficients_[i]; }
  std::span<const Expression> coefficients() const { return coefficients_; }

  /// Coefficient values at a point, in slot order.
  std::vector<double> evaluate(const Point& p) const;

  KForm simplified() const;

 private:
  int degree_;
  std::vector<Expression> coefficients_;
};

/// Number of coefficient slots of a form of the given degree: 1, 3, 3, 1.
std::size_t slot_count(int degree);

KForm wedge(const KForm& p, const KForm& q);
KForm exterior_derivative(const KForm& w);
KForm linear_combine(double c1, const KForm& p, double c2, const KForm& q);
/// Multiply every coefficient by a scalar field.
KForm scale(const Expression& f, const KForm& w);

KForm operator+(const KForm& p, const KForm& q);
KForm operator-(const KForm& p, const KForm& q);
KForm operator-(const KForm& p);

enum class PhaseRole { RealPart, ImagPart };

/// Re{a e^{i omega t}} (RealPart) or Im{a e^{i omega t}} (ImagPart) for a real
/// amplitude a, that is a cos(omega t) or a sin(omega t).
class TimeHarmonicField {
 public:
  TimeHarmonicField(KForm amplitude, double omega, PhaseRole role);

  const KForm& amplitude() const { return amplitude_; }
  double omega() const { return omega_; }
  PhaseRole role() const { return role_; }

  /// Time factor cos(omega t) or sin(omega t).
  double phase_factor(double t) const;
  std::vector<double> evaluate(const Point& p, double t) const;

 private:
  KForm amplitude_;
  double omega_;
  PhaseRole role_;
};

/// Euclidean norm of a coefficient vector.
double coefficient_norm(std::span<const double> c);

}  // namespace contactmax
