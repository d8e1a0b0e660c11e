#include "contactmax/maxwell.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "contactmax/error.hpp"

namespace contactmax {

namespace {

constexpr double kScaleFloor = 1e-30;

// Phase used for the constitutive re-evaluation; cos and sin are both far from 0.
constexpr double kConstitutivePhase = 1.0;

void require_nonzero(double omega) {
  if (omega == 0.0 || !std::isfinite(omega)) {
    throw PreconditionError("angular frequency must be a finite nonzero real");
  }
}

// Samplewise residual norms and the scale each is measured against.
struct Sampled {
  double residual;
  double scale;
};

ResidualStat reduce(const SampleSet& samples, const std::function<Sampled(const Point&)>& fn) {
  const std::size_t n = samples.size();
  std::vector<double> raw(n);
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Sampled s = fn(samples.points()[k]);
    raw[k] = s.residual;
    scale = std::max(scale, s.scale);
  }
  ResidualStat stat;
  stat.scale = std::max(scale, kScaleFloor);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = raw[k] / stat.scale;
    sum += r;
    if (k == 0 || r > stat.max) {
      stat.max = r;
      stat.argmax = samples.points()[k];
    }
  }
  stat.mean = sum / static_cast<double>(n);
  return stat;
}

double norm3(const std::vector<double>& v) { return coefficient_norm(v); }

std::vector<double> axpy(const std::vector<double>& a, double c, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + c * b[i];
  return out;
}

double diff_norm(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

VectorField curl(const MetricField& g, const VectorField& x) {
  return sharp(g, hodge(g, exterior_derivative(flat(g, x))));
}

KForm build_beta(const MetricField& g, const KForm& alpha, double omega) {
  require_nonzero(omega);
  if (alpha.degree() != 1) throw DegreeError("build_beta expects a 1-form");
  return scale(Expression(-1.0 / omega), hodge(g, exterior_derivative(alpha)));
}

TimeHarmonicSolution::TimeHarmonicSolution(KForm alpha, KForm beta, Media media, double omega)
    : media_(std::move(media)),
      e_(alpha, omega, PhaseRole::RealPart),
      h_(beta, omega, PhaseRole::ImagPart),
      d_(hodge(media_.eps, alpha)),
      b_(hodge(media_.mu, beta)) {}

FieldValues TimeHarmonicSolution::at(const Point& p, double t) const {
  auto copy3 = [](const std::vector<double>& v, double factor) {
    return std::array<double, 3>{v[0] * factor, v[1] * factor, v[2] * factor};
  };
  const double c = e_.phase_factor(t);
  const double s = h_.phase_factor(t);
  FieldValues f;
  f.E = copy3(e_.amplitude().evaluate(p), c);
  f.H = copy3(h_.amplitude().evaluate(p), s);
  f.D = copy3(d_.evaluate(p), c);
  f.B = copy3(b_.evaluate(p), s);
  return f;
}

FieldValues fields_at(const KForm& alpha, const KForm& beta, const Media& media, double omega, const Point& p,
                      double t) {
  return TimeHarmonicSolution(alpha, beta, media, omega).at(p, t);
}

std::vector<std::pair<std::string, ResidualStat>> ResidualReport::entries() const {
  std::vector<std::pair<std::string, ResidualStat>> out{
      {"R1", r1}, {"R2", r2}, {"R3", r3}, {"R4", r4}, {"C1", c1}, {"C2", c2}, {"double_curl", double_curl}};
  if (beta_closed_form) out.emplace_back("beta_closed_form", *beta_closed_form);
  return out;
}

double ResidualReport::max_residual() const {
  double m = 0.0;
  for (const auto& [name, stat] : entries()) m = std::max(m, stat.max);
  return m;
}

ResidualReport maxwell_residuals(const KForm& alpha, const KForm& beta, const Media& media, double omega,
                                 const SampleSet& samples) {
  require_nonzero(omega);
  if (alpha.degree() != 1 || beta.degree() != 1) throw DegreeError("alpha and beta must be 1-forms");
  media.eps.audit(samples);
  media.mu.audit(samples);

  const KForm dalpha = exterior_derivative(alpha);
  const KForm dbeta = exterior_derivative(beta);
  const KForm star_eps_alpha = hodge(media.eps, alpha);
  const KForm star_mu_beta = hodge(media.mu, beta);
  const KForm div_d = exterior_derivative(star_eps_alpha);
  const KForm div_b = exterior_derivative(star_mu_beta);
  const KForm double_curl = hodge(media.eps, exterior_derivative(hodge(media.mu, dalpha)));
  const double w = std::fabs(omega);

  ResidualReport rep;
  rep.samples = samples.size();
  rep.seed = samples.seed();
  rep.omega = omega;

  rep.r1 = reduce(samples, [&](const Point& p) {
    const auto d = dalpha.evaluate(p);
    const auto s = star_mu_beta.evaluate(p);
    return Sampled{norm3(axpy(d, omega, s)), std::max(norm3(d), w * norm3(s))};
  });
  rep.r2 = reduce(samples, [&](const Point& p) {
    const auto d = dbeta.evaluate(p);
    const auto s = star_eps_alpha.evaluate(p);
    return Sampled{norm3(axpy(d, omega, s)), std::max(norm3(d), w * norm3(s))};
  });
  // Divergence residuals are measured against the derivative scale of the
  // field they come from.
  rep.r3 = reduce(samples, [&](const Point& p) {
    return Sampled{std::fabs(div_d[0].evaluate(p)),
                   std::max(norm3(dalpha.evaluate(p)), w * norm3(star_eps_alpha.evaluate(p)))};
  });
  rep.r4 = reduce(samples, [&](const Point& p) {
    return Sampled{std::fabs(div_b[0].evaluate(p)),
                   std::max(norm3(dbeta.evaluate(p)), w * norm3(star_mu_beta.evaluate(p)))};
  });
  rep.double_curl = reduce(samples, [&](const Point& p) {
    const auto c = double_curl.evaluate(p);
    const auto a = alpha.evaluate(p);
    return Sampled{norm3(axpy(c, -omega * omega, a)), std::max(norm3(c), omega * omega * norm3(a))};
  });

  const TimeHarmonicSolution sol(alpha, beta, media, omega);
  const double t = kConstitutivePhase / omega;
  rep.c1 = reduce(samples, [&](const Point& p) {
    const FieldValues f = sol.at(p, t);
    const auto expect = hodge_at(media.eps.evaluate(p), 1, f.E);
    return Sampled{diff_norm(f.D, expect), std::max(coefficient_norm(f.D), coefficient_norm(expect))};
  });
  rep.c2 = reduce(samples, [&](const Point& p) {
    const FieldValues f = sol.at(p, t);
    const auto expect = hodge_at(media.mu.evaluate(p), 1, f.H);
    return Sampled{diff_norm(f.B, expect), std::max(coefficient_norm(f.B), coefficient_norm(expect))};
  });
  return rep;
}

Theorem1Result verify_theorem1(const KForm& alpha, const MetricField& g_adapted, double omega,
                               const SampleSet& samples, double tol) {
  require_nonzero(omega);
  const AdaptedReport pre = check_adapted(g_adapted, alpha, samples, tol);
  if (!pre.adapted) {
    throw PreconditionError("metric is not adapted to alpha: residual_star " + std::to_string(pre.residual_star) +
                            " at " + to_string(pre.witness_star) + ", residual_norm " +
                            std::to_string(pre.residual_norm) + " at " + to_string(pre.witness_norm));
  }
  MetricField g = rescale_to_factor(g_adapted, alpha, Expression(std::fabs(omega)), samples, tol);
  const Media media{g, g};
  KForm beta = build_beta(g, alpha, omega);

  ResidualReport rep = maxwell_residuals(alpha, beta, media, omega, samples);
  const double sign = omega > 0.0 ? 1.0 : -1.0;
  rep.beta_closed_form = reduce(samples, [&](const Point& p) {
    const auto b = beta.evaluate(p);
    const auto a = alpha.evaluate(p);
    return Sampled{norm3(axpy(b, sign, a)), std::max(norm3(b), norm3(a))};
  });
  return Theorem1Result{std::move(rep), pre, std::move(g), std::move(beta)};
}

}  // namespace contactmax
