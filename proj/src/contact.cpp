#include "contactmax/contact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "contactmax/error.hpp"

namespace contactmax {

namespace {

constexpr double kTiny = 1e-300;

}  // namespace

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Positive:
      return "+1";
    case Sign::Negative:
      return "-1";
    case Sign::Mixed:
      return "mixed";
  }
  return "?";
}

Expression contact_density(const KForm& alpha) {
  if (alpha.degree() != 1) throw DegreeError("contact form must be a 1-form");
  return wedge(alpha, exterior_derivative(alpha))[0];
}

ContactReport contact_defect(const KForm& alpha, const SampleSet& samples, double tol) {
  const Expression density = contact_density(alpha);
  const KForm dalpha = exterior_derivative(alpha);

  ContactReport r;
  r.min_abs = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  bool positive = false;
  bool negative = false;
  for (const Point& p : samples) {
    const double v = density.evaluate(p);
    const double a = std::fabs(v);
    if (a < r.min_abs) {
      r.min_abs = a;
      r.witness = p;
    }
    r.max_abs = std::max(r.max_abs, a);
    positive |= v > 0.0;
    negative |= v < 0.0;
    scale = std::max(scale, coefficient_norm(alpha.evaluate(p)) * coefficient_norm(dalpha.evaluate(p)));
  }
  r.sign = (positive && negative) ? Sign::Mixed : (negative ? Sign::Negative : Sign::Positive);
  r.threshold = tol * (1.0 + scale);
  r.is_contact = r.sign != Sign::Mixed && r.min_abs > r.threshold;
  return r;
}

BeltramiEstimate beltrami_factor(const MetricField& g, const KForm& alpha, const SampleSet& samples, double tol) {
  if (alpha.degree() != 1) throw DegreeError("Beltrami factor needs a 1-form");
  g.audit(samples);
  const KForm dalpha = exterior_derivative(alpha);
  const KForm star_alpha = hodge(g, alpha);

  const std::size_t n = samples.size();
  std::vector<std::vector<double>> d_vals(n), s_vals(n);
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    d_vals[k] = dalpha.evaluate(samples.points()[k]);
    s_vals[k] = star_alpha.evaluate(samples.points()[k]);
    scale = std::max({scale, coefficient_norm(d_vals[k]), coefficient_norm(s_vals[k])});
  }
  const double floor = tol * std::max(scale, kTiny);

  BeltramiEstimate est;
  est.factor_values.resize(n);
  est.residual.resize(n);
  est.min_abs_factor = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const Point& p = samples.points()[k];
    const auto& d = d_vals[k];
    const auto& s = s_vals[k];
    const double dn = coefficient_norm(d);
    const double sn = coefficient_norm(s);
    double f = 0.0;
    double res = 0.0;
    if (sn <= floor) {
      if (dn > floor) {
        res = 1.0;
        if (!est.degenerate_witness) est.degenerate_witness = p;
      }
    } else {
      f = (d[0] * s[0] + d[1] * s[1] + d[2] * s[2]) / (sn * sn);
      const double e[3] = {d[0] - f * s[0], d[1] - f * s[1], d[2] - f * s[2]};
      res = coefficient_norm(e) / std::max({dn, sn, kTiny});
    }
    est.factor_values[k] = f;
    est.residual[k] = res;
    if (res > est.max_residual || k == 0) {
      est.max_residual = res;
      est.residual_witness = p;
    }
    if (std::fabs(f) < est.min_abs_factor) {
      est.min_abs_factor = std::fabs(f);
      est.min_factor_witness = p;
    }
    sum += f;
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  const double mean = sum / static_cast<double>(n);
  est.is_beltrami = !est.degenerate_witness && est.max_residual <= tol;
  est.is_rotational = est.is_beltrami && est.min_abs_factor > tol;
  est.is_constant = est.is_beltrami && (hi - lo) <= tol * (1.0 + std::fabs(mean));
  est.constant_value = mean;
  return est;
}

AdaptedReport check_adapted(const MetricField& g, const KForm& alpha, const SampleSet& samples, double tol) {
  if (alpha.degree() != 1) throw DegreeError("adapted-metric check needs a 1-form");
  g.audit(samples);
  const KForm dalpha = exterior_derivative(alpha);
  const KForm star_alpha = hodge(g, alpha);
  const Expression norm2 = inner_product(g, alpha, alpha);

  AdaptedReport r;
  bool first = true;
  for (const Point& p : samples) {
    const auto d = dalpha.evaluate(p);
    const auto s = star_alpha.evaluate(p);
    const double e[3] = {d[0] - 2.0 * s[0], d[1] - 2.0 * s[1], d[2] - 2.0 * s[2]};
    const double rs = coefficient_norm(e) / std::max({coefficient_norm(d), 2.0 * coefficient_norm(s), kTiny});
    const double rn = std::fabs(norm2.evaluate(p) - 1.0);
    if (first || rs > r.residual_star) {
      r.residual_star = rs;
      r.witness_star = p;
    }
    if (first || rn > r.residual_norm) {
      r.residual_norm = rn;
      r.witness_norm = p;
    }
    first = false;
  }
  r.adapted = r.residual_star <= tol && r.residual_norm <= tol;
  return r;
}

MetricField rescale_to_factor(const MetricField& g, const KForm& alpha, const Expression& f_target,
                              const SampleSet& samples, double tol) {
  const BeltramiEstimate base = beltrami_factor(g, alpha, samples, tol);
  if (!base.is_beltrami) {
    throw PreconditionError("alpha is not a Beltrami form for the given metric (max residual " +
                            std::to_string(base.max_residual) + " at " + to_string(base.residual_witness) + ")");
  }

  for (std::size_t k = 0; k < samples.size(); ++k) {
    const Point& p = samples.points()[k];
    const double ft = f_target.evaluate(p);
    const double f0 = base.factor_values[k];
    if (!(std::fabs(ft) > tol)) {
      throw PreconditionError("target factor " + f_target.to_string() + " vanishes at " + to_string(p));
    }
    if (!(std::fabs(f0) > tol) || (ft > 0.0) != (f0 > 0.0)) {
      throw PreconditionError("target factor and Beltrami factor differ in sign at " + to_string(p) +
                              " (target " + std::to_string(ft) + ", current " + std::to_string(f0) +
                              "); a conformal rescaling cannot change the sign");
    }
  }

  Expression f0;
  if (base.is_constant) {
    f0 = Expression(base.constant_value);
  } else {
    // Symbolic form of the pointwise least-squares fit used by beltrami_factor.
    const KForm dalpha = exterior_derivative(alpha);
    const KForm star_alpha = hodge(g, alpha);
    Expression num, den;
    for (int i = 0; i < 3; ++i) {
      num = num + dalpha[i] * star_alpha[i];
      den = den + star_alpha[i] * star_alpha[i];
    }
    f0 = num / den;
  }
  const Expression mu = pow(f0 / f_target, 2);
  MetricField rescaled = conformal_rescale(g, mu, samples);

  const BeltramiEstimate check = beltrami_factor(rescaled, alpha, samples, tol);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double ft = f_target.evaluate(samples.points()[k]);
    if (!check.is_beltrami || std::fabs(check.factor_values[k] - ft) > tol * (1.0 + std::fabs(ft))) {
      throw Error("rescaled metric does not reproduce the target factor at " +
                  to_string(samples.points()[k]));
    }
  }
  return rescaled;
}

}  // namespace contactmax
