#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "contactmax/forms.hpp"
#include "contactmax/sampling.hpp"

namespace contactmax {

/// Result of auditing a metric on a sample set.
struct MetricAudit {
  double min_eigenvalue = 0.0;
  double max_condition = 0.0;
  Point worst_condition_point;
  std::vector<std::string> warnings;
};

/// Riemannian metric g_ij dx^i dx^j on the chart, oriented by dx^dy^dz.
///
/// The inverse, determinant and sqrt(det) are built once, symbolically, from
/// the 3x3 adjugate; numeric evaluation happens only at sample points.
class MetricField {
 public:
  /// Condition number above which an audit warns.
  static constexpr double kConditionWarning = 1e12;

  /// Upper triangle g11, g12, g13, g22, g23, g33.
  explicit MetricField(const std::array<Expression, 6>& upper);
  /// Full matrix; must be structurally symmetric.
  explicit MetricField(const std::array<std::array<Expression, 3>, 3>& g);

  static MetricField euclidean();
  static MetricField diagonal(Expression g11, Expression g22, Expression g33);

  const Expression& operator()(int i, int j) const { return g_[i][j]; }
  const Expression& inverse(int i, int j) const { return inv_[i][j]; }
  const Expression& determinant() const { return det_; }
  const Expression& sqrt_determinant() const { return sqrt_det_; }

  Eigen::Matrix3d evaluate(const Point& p) const;

  /// Checks symmetric positive definiteness at every sample. Throws
  /// MetricError naming the point where a leading principal minor is not
  /// positive; records a warning when the condition number exceeds
  /// kConditionWarning.
  MetricAudit audit(const SampleSet& samples) const;

 private:
  std::array<std::array<Expression, 3>, 3> g_;
  std::array<std::array<Expression, 3>, 3> inv_;
  Expression det_;
  Expression sqrt_det_;
};

/// Vector field X^i d/dx^i in the coordinate frame.
struct VectorField {
  std::array<Expression, 3> components;

  std::array<double, 3> evaluate(const Point& p) const;
};

/// Hodge star of g, computed from the index formula
///   *(dx^I) = sqrt|g| / (3-p)! g^{i1 l1} ... g^{ip lp} eps_{l1 l2 l3} dx^{l_{p+1}} ^ ... ^ dx^{l3}.
KForm hodge(const MetricField& g, const KForm& w);

/// Raise the index of a 1-form: X^i = g^{ij} a_j.
VectorField sharp(const MetricField& g, const KForm& a);
/// Lower the index of a vector field: a_i = g_ij X^j.
KForm flat(const MetricField& g, const VectorField& x);
/// g(a#, b#) = g^{ij} a_i b_j.
Expression inner_product(const MetricField& g, const KForm& a, const KForm& b);
/// sqrt(det g) dx^dy^dz.
KForm volume_form(const MetricField& g);

/// mu * g. Throws PreconditionError if mu is not strictly positive at every
/// sample. For 1-forms the new star is sqrt(mu) times the old one.
MetricField conformal_rescale(const MetricField& g, const Expression& mu, const SampleSet& samples);

/// Numeric Hodge star at one point, from the evaluated metric matrix.
std::vector<double> hodge_at(const Eigen::Matrix3d& g, int degree, std::span<const double> coefficients);

std::string to_string(const Point& p);

}  // namespace contactmax
