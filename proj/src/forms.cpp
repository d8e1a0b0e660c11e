#include "contactmax/forms.hpp"

#include <cmath>
#include <string>

#include "contactmax/error.hpp"

namespace contactmax {

std::size_t slot_count(int degree) {
  switch (degree) {
    case 0:
    case 3:
      return 1;
    case 1:
    case 2:
      return 3;
    default:
      throw DegreeError("form degree must be in 0..3, got " + std::to_string(degree));
  }
}

KForm::KForm(int degree, std::vector<Expression> coefficients)
    : degree_(degree), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != slot_count(degree_)) {
    throw DegreeError("a " + std::to_string(degree_) + "-form needs " + std::to_string(slot_count(degree_)) +
                      " coefficients, got " + std::to_string(coefficients_.size()));
  }
}

KForm KForm::zero(int degree) { return KForm(degree, std::vector<Expression>(slot_count(degree))); }

KForm KForm::function(Expression c) { return KForm(0, {std::move(c)}); }

KForm KForm::one_form(Expression a1, Expression a2, Expression a3) {
  return KForm(1, {std::move(a1), std::move(a2), std::move(a3)});
}

KForm KForm::two_form(Expression b1, Expression b2, Expression b3) {
  return KForm(2, {std::move(b1), std::move(b2), std::move(b3)});
}

KForm KForm::three_form(Expression v) { return KForm(3, {std::move(v)}); }

KForm KForm::parse(int degree, std::span<const std::string> coefficients) {
  std::vector<Expression> c;
  c.reserve(coefficients.size());
  for (const auto& s : coefficients) c.push_back(contactmax::parse(s));
  return KForm(degree, std::move(c));
}

std::vector<double> KForm::evaluate(const Point& p) const {
  std::vector<double> out;
  out.reserve(coefficients_.size());
  for (const auto& c : coefficients_) out.push_back(c.evaluate(p));
  return out;
}

KForm KForm::simplified() const {
  std::vector<Expression> c;
  c.reserve(coefficients_.size());
  for (const auto& e : coefficients_) c.push_back(simplify(e));
  return KForm(degree_, std::move(c));
}

KForm wedge(const KForm& p, const KForm& q) {
  const int dp = p.degree();
  const int dq = q.degree();
  if (dp + dq > 3) {
    throw DegreeError("wedge of a " + std::to_string(dp) + "-form and a " + std::to_string(dq) +
                      "-form exceeds degree 3");
  }
  if (dp == 0) return scale(p[0], q);
  if (dq == 0) return scale(q[0], p);
  if (dp == 1 && dq == 1) {
    return KForm::two_form(p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]);
  }
  // (1,2) and (2,1): dx^i wedge the dual slot i is +dx^dy^dz, and a 2-form
  // commutes with a 1-form.
  return KForm::three_form(p[0] * q[0] + p[1] * q[1] + p[2] * q[2]);
}

KForm exterior_derivative(const KForm& w) {
  auto d = [](const Expression& e, Var v) { return differentiate(e, v); };
  switch (w.degree()) {
    case 0:
      return KForm::one_form(d(w[0], Var::X), d(w[0], Var::Y), d(w[0], Var::Z));
    case 1:
      return KForm::two_form(d(w[2], Var::Y) - d(w[1], Var::Z), d(w[0], Var::Z) - d(w[2], Var::X),
                             d(w[1], Var::X) - d(w[0], Var::Y));
    case 2:
      return KForm::three_form(d(w[0], Var::X) + d(w[1], Var::Y) + d(w[2], Var::Z));
    default:
      throw DegreeError("exterior derivative of a 3-form on a 3-dimensional chart is not representable");
  }
}

KForm linear_combine(double c1, const KForm& p, double c2, const KForm& q) {
  if (p.degree() != q.degree()) {
    throw DegreeError("cannot combine a " + std::to_string(p.degree()) + "-form with a " +
                      std::to_string(q.degree()) + "-form");
  }
  std::vector<Expression> c;
  c.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) c.push_back(Expression(c1) * p[i] + Expression(c2) * q[i]);
  return KForm(p.degree(), std::move(c));
}

KForm scale(const Expression& f, const KForm& w) {
  std::vector<Expression> c;
  c.reserve(w.size());
  for (const auto& e : w.coefficients()) c.push_back(f * e);
  return KForm(w.degree(), std::move(c));
}

KForm operator+(const KForm& p, const KForm& q) { return linear_combine(1.0, p, 1.0, q); }
KForm operator-(const KForm& p, const KForm& q) { return linear_combine(1.0, p, -1.0, q); }
KForm operator-(const KForm& p) { return scale(Expression(-1.0), p); }

TimeHarmonicField::TimeHarmonicField(KForm amplitude, double omega, PhaseRole role)
    : amplitude_(std::move(amplitude)), omega_(omega), role_(role) {
  if (amplitude_.degree() != 1) throw DegreeError("time-harmonic field amplitude must be a 1-form");
  if (omega_ == 0.0 || !std::isfinite(omega_)) throw PreconditionError("angular frequency must be finite and nonzero");
}

double TimeHarmonicField::phase_factor(double t) const {
  return role_ == PhaseRole::RealPart ? std::cos(omega_ * t) : std::sin(omega_ * t);
}

std::vector<double> TimeHarmonicField::evaluate(const Point& p, double t) const {
  std::vector<double> v = amplitude_.evaluate(p);
  const double f = phase_factor(t);
  for (double& c : v) c *= f;
  return v;
}

double coefficient_norm(std::span<const double> c) {
  double s = 0.0;
  for (double v : c) s += v * v;
  return std::sqrt(s);
}

}  // namespace contactmax
