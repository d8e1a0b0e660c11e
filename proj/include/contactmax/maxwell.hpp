#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "contactmax/contact.hpp"
#include "contactmax/forms.hpp"
#include "contactmax/metric.hpp"
#include "contactmax/sampling.hpp"

namespace contactmax {

/// Electromagnetic medium: the permittivity and permeability metrics whose
/// Hodge stars give D = *_eps E and B = *_mu H.
struct Media {
  MetricField eps;
  MetricField mu;
};

/// (curl X)^flat = * d (X^flat).
VectorField curl(const MetricField& g, const VectorField& x);

/// The unique beta with d(alpha) = -omega * beta, i.e. beta = -(1/omega) * d(alpha).
KForm build_beta(const MetricField& g, const KForm& alpha, double omega);

/// Field values at one point and time, as coefficient triples.
struct FieldValues {
  std::array<double, 3> E{};
  std::array<double, 3> H{};
  std::array<double, 3> D{};
  std::array<double, 3> B{};
};

/// E = Re{alpha e^{i omega t}}, H = Im{beta e^{i omega t}} and the flux
/// densities of the medium. Build once, evaluate at many points.
class TimeHarmonicSolution {
 public:
  TimeHarmonicSolution(KForm alpha, KForm beta, Media media, double omega);

  FieldValues at(const Point& p, double t) const;

  const TimeHarmonicField& electric() const { return e_; }
  const TimeHarmonicField& magnetic() const { return h_; }
  /// *_eps alpha; D = Re{(*_eps alpha) e^{i omega t}}.
  const KForm& displacement_amplitude() const { return d_; }
  /// *_mu beta; B = Im{(*_mu beta) e^{i omega t}}.
  const KForm& induction_amplitude() const { return b_; }
  const Media& media() const { return media_; }

 private:
  Media media_;
  TimeHarmonicField e_, h_;
  KForm d_, b_;
};

FieldValues fields_at(const KForm& alpha, const KForm& beta, const Media& media, double omega, const Point& p,
                      double t);

/// max and mean of a samplewise relative residual.
struct ResidualStat {
  double max = 0.0;
  double mean = 0.0;
  Point argmax;
  double scale = 0.0;  ///< normaliser the raw norms were divided by
};

struct ResidualReport {
  ResidualStat r1;           ///< d alpha + omega *_mu beta         (dE = -dB/dt)
  ResidualStat r2;           ///< d beta + omega *_eps alpha        (dH = dD/dt)
  ResidualStat r3;           ///< d *_eps alpha                     (dD = 0)
  ResidualStat r4;           ///< d *_mu beta                       (dB = 0)
  ResidualStat c1;           ///< D - *_eps E, recomputed numerically
  ResidualStat c2;           ///< B - *_mu H, recomputed numerically
  ResidualStat double_curl;  ///< *_eps d *_mu d alpha - omega^2 alpha
  std::optional<ResidualStat> beta_closed_form;  ///< beta + sign(omega) alpha
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double omega = 0.0;

  /// Named entries in report order.
  std::vector<std::pair<std::string, ResidualStat>> entries() const;
  double max_residual() const;
  bool passes(double tol) const { return max_residual() <= tol; }
};

/// Residuals of the source-free Maxwell system for the time-harmonic fields
/// built from (alpha, beta). Every residual is relative: the samplewise norm
/// divided by the largest magnitude of the terms it balances over the
/// sample set (floored at 1e-30).
ResidualReport maxwell_residuals(const KForm& alpha, const KForm& beta, const Media& media, double omega,
                                 const SampleSet& samples);

struct Theorem1Result {
  ResidualReport report;
  AdaptedReport precheck;
  MetricField media_metric;  ///< g_eps = g_mu
  KForm beta;
};

/// Contact form + adapted metric + frequency to a certified Maxwell solution:
/// rescale the metric so d(alpha) = |omega| *alpha, use it for both media,
/// build beta, and measure every residual (including beta = -sign(omega) alpha).
/// Throws PreconditionError if g_adapted fails check_adapted or omega is 0.
Theorem1Result verify_theorem1(const KForm& alpha, const MetricField& g_adapted, double omega,
                               const SampleSet& samples, double tol = kDefaultTolerance);

}  // namespace contactmax
