#pragma once

#include <optional>
#include <vector>

#include "contactmax/forms.hpp"
#include "contactmax/metric.hpp"
#include "contactmax/sampling.hpp"

namespace contactmax {

/// Default tolerance of the sampled checks.
inline constexpr double kDefaultTolerance = 1e-9;

enum class Sign { Positive, Negative, Mixed };

const char* to_string(Sign s);

/// Sampled verdict on whether alpha ^ d(alpha) vanishes anywhere.
struct ContactReport {
  double min_abs = 0.0;   ///< min over samples of |coefficient of alpha ^ d alpha|
  double max_abs = 0.0;
  Sign sign = Sign::Positive;
  Point witness;          ///< where min_abs is attained
  double threshold = 0.0; ///< min_abs must exceed this for is_contact
  bool is_contact = false;
};

/// Samplewise recovery of f in d(alpha) = f *alpha.
struct BeltramiEstimate {
  std::vector<double> factor_values;
  std::vector<double> residual;  ///< |d alpha - f *alpha| / max(|d alpha|, |*alpha|)
  double max_residual = 0.0;
  Point residual_witness;
  double min_abs_factor = 0.0;
  Point min_factor_witness;
  /// Set when *alpha vanishes at a sample where d alpha does not.
  std::optional<Point> degenerate_witness;
  bool is_beltrami = false;
  bool is_rotational = false;
  bool is_constant = false;
  double constant_value = 0.0;  ///< mean of factor_values; meaningful when is_constant
};

struct AdaptedReport {
  double residual_star = 0.0;  ///< max relative |d alpha - 2 *alpha|
  double residual_norm = 0.0;  ///< max |g(alpha#, alpha#) - 1|
  Point witness_star;
  Point witness_norm;
  bool adapted = false;
};

/// Coefficient v of alpha ^ d(alpha) = v dx^dy^dz.
Expression contact_density(const KForm& alpha);

/// is_contact iff the sign never changes and
/// min |v| > tol * (1 + max |alpha| |d alpha|) over the samples.
ContactReport contact_defect(const KForm& alpha, const SampleSet& samples, double tol = kDefaultTolerance);

/// Least-squares fit of d(alpha) against *alpha over the three coefficient
/// slots at every sample.
BeltramiEstimate beltrami_factor(const MetricField& g, const KForm& alpha, const SampleSet& samples,
                                 double tol = kDefaultTolerance);

/// Residuals of d(alpha) = 2 *alpha and g(alpha#, alpha#) = 1.
AdaptedReport check_adapted(const MetricField& g, const KForm& alpha, const SampleSet& samples,
                            double tol = kDefaultTolerance);

/// Conformally rescale g so that alpha becomes Beltrami with factor f_target.
///
/// With d(alpha) = f0 *alpha for g, returns (f0 / f_target)^2 g. Throws
/// PreconditionError if alpha is not Beltrami for g, if f_target vanishes at
/// a sample, or if f_target and f0 differ in sign somewhere (a positive
/// conformal factor cannot change the sign of the Beltrami factor). The result
/// is re-checked with beltrami_factor before it is returned.
MetricField rescale_to_factor(const MetricField& g, const KForm& alpha, const Expression& f_target,
                              const SampleSet& samples, double tol = kDefaultTolerance);

}  // namespace contactmax
