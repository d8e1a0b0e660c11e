#include "contactmax/metric.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "contactmax/error.hpp"

namespace contactmax {

namespace {

// Coordinate indices of the canonical basis element in a given slot.
std::vector<int> basis_indices(int degree, int slot) {
  switch (degree) {
    case 0:
      return {};
    case 1:
      return {slot};
    case 2:
      return {(slot + 1) % 3, (slot + 2) % 3};
    default:
      return {0, 1, 2};
  }
}

int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  // Even permutations of (0,1,2) are the cyclic shifts.
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

// Slot and sign of dx^{t0} ^ ... in the canonical basis of the given degree.
std::pair<int, int> canonical_slot(std::span<const int> tail) {
  switch (tail.size()) {
    case 0:
      return {0, 1};
    case 1:
      return {tail[0], 1};
    case 2: {
      int slot = 3 - tail[0] - tail[1];
      return {slot, tail[0] == (slot + 1) % 3 ? 1 : -1};
    }
    default:
      return {0, levi_civita(tail[0], tail[1], tail[2])};
  }
}

std::array<std::array<Expression, 3>, 3> from_upper(const std::array<Expression, 6>& u) {
  return {{{u[0], u[1], u[2]}, {u[1], u[3], u[4]}, {u[2], u[4], u[5]}}};
}

}  // namespace

std::string to_string(const Point& p) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.17g, %.17g, %.17g)", p.x, p.y, p.z);
  return buf;
}

MetricField::MetricField(const std::array<Expression, 6>& upper) : MetricField(from_upper(upper)) {}

MetricField::MetricField(const std::array<std::array<Expression, 3>, 3>& g) : g_(g) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (!g_[i][j].same_as(g_[j][i])) {
        throw MetricError("metric is not symmetric: g" + std::to_string(i + 1) + std::to_string(j + 1) + " = " +
                          g_[i][j].to_string() + " but g" + std::to_string(j + 1) + std::to_string(i + 1) + " = " +
                          g_[j][i].to_string());
      }
    }
  }
  // Cofactor C_ij; the matrix is symmetric, so the adjugate equals C.
  std::array<std::array<Expression, 3>, 3> cof;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      cof[i][j] = g_[r0][c0] * g_[r1][c1] - g_[r0][c1] * g_[r1][c0];
    }
  }
  det_ = g_[0][0] * cof[0][0] + g_[0][1] * cof[0][1] + g_[0][2] * cof[0][2];
  sqrt_det_ = sqrt(det_);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) inv_[i][j] = cof[j][i] / det_;
  }
}

MetricField MetricField::euclidean() { return diagonal(1.0, 1.0, 1.0); }

MetricField MetricField::diagonal(Expression g11, Expression g22, Expression g33) {
  return MetricField(std::array<Expression, 6>{std::move(g11), 0.0, 0.0, std::move(g22), 0.0, std::move(g33)});
}

Eigen::Matrix3d MetricField::evaluate(const Point& p) const {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      m(i, j) = g_[i][j].evaluate(p);
      m(j, i) = m(i, j);
    }
  }
  return m;
}

MetricAudit MetricField::audit(const SampleSet& samples) const {
  MetricAudit out;
  out.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const Point& p : samples) {
    const Eigen::Matrix3d m = evaluate(p);
    const double minors[3] = {m(0, 0), m.topLeftCorner<2, 2>().determinant(), m.determinant()};
    for (int k = 0; k < 3; ++k) {
      if (!(minors[k] > 0.0)) {
        throw MetricError("metric is not positive definite at " + to_string(p) + ": leading minor " +
                          std::to_string(k + 1) + " is " + std::to_string(minors[k]));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(m, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues()(0);
    const double hi = eig.eigenvalues()(2);
    if (!(lo > 0.0)) throw MetricError("metric is singular at " + to_string(p));
    out.min_eigenvalue = std::min(out.min_eigenvalue, lo);
    const double cond = hi / lo;
    if (cond > out.max_condition) {
      out.max_condition = cond;
      out.worst_condition_point = p;
    }
  }
  if (out.max_condition > kConditionWarning) {
    out.warnings.push_back("metric condition number " + std::to_string(out.max_condition) + " at " +
                           to_string(out.worst_condition_point) + " exceeds 1e12");
  }
  return out;
}

std::array<double, 3> VectorField::evaluate(const Point& p) const {
  return {components[0].evaluate(p), components[1].evaluate(p), components[2].evaluate(p)};
}

KForm hodge(const MetricField& g, const KForm& w) {
  const int p = w.degree();
  const int q = 3 - p;
  std::vector<Expression> acc(slot_count(q));
  for (std::size_t s = 0; s < w.size(); ++s) {
    if (w[s].is_constant(0.0)) continue;
    const std::vector<int> idx = basis_indices(p, static_cast<int>(s));
    for (int l0 = 0; l0 < 3; ++l0) {
      for (int l1 = 0; l1 < 3; ++l1) {
        for (int l2 = 0; l2 < 3; ++l2) {
          const int eps = levi_civita(l0, l1, l2);
          if (eps == 0) continue;
          const int l[3] = {l0, l1, l2};
          Expression term = w[s];
          for (int k = 0; k < p; ++k) term = term * g.inverse(idx[k], l[k]);
          if (term.is_constant(0.0)) continue;
          auto [slot, sign] = canonical_slot(std::span<const int>(l + p, q));
          acc[slot] = acc[slot] + Expression(static_cast<double>(eps * sign)) * term;
        }
      }
    }
  }
  const double factorial = (q == 3) ? 6.0 : (q == 2 ? 2.0 : 1.0);
  const Expression prefactor = g.sqrt_determinant() / Expression(factorial);
  for (auto& c : acc) c = prefactor * c;
  return KForm(q, std::move(acc));
}

VectorField sharp(const MetricField& g, const KForm& a) {
  if (a.degree() != 1) throw DegreeError("sharp expects a 1-form");
  VectorField x;
  for (int i = 0; i < 3; ++i) {
    Expression s;
    for (int j = 0; j < 3; ++j) s = s + g.inverse(i, j) * a[j];
    x.components[i] = s;
  }
  return x;
}

KForm flat(const MetricField& g, const VectorField& x) {
  std::vector<Expression> c(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) c[i] = c[i] + g(i, j) * x.components[j];
  }
  return KForm(1, std::move(c));
}

Expression inner_product(const MetricField& g, const KForm& a, const KForm& b) {
  if (a.degree() != 1 || b.degree() != 1) throw DegreeError("inner_product expects two 1-forms");
  Expression s;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) s = s + g.inverse(i, j) * a[i] * b[j];
  }
  return s;
}

KForm volume_form(const MetricField& g) { return KForm::three_form(g.sqrt_determinant()); }

MetricField conformal_rescale(const MetricField& g, const Expression& mu, const SampleSet& samples) {
  for (const Point& p : samples) {
    const double m = mu.evaluate(p);
    if (!(m > 0.0)) {
      throw PreconditionError("conformal factor " + mu.to_string() + " is not positive at " + to_string(p) +
                              " (value " + std::to_string(m) + ")");
    }
  }
  std::array<Expression, 6> upper{mu * g(0, 0), mu * g(0, 1), mu * g(0, 2),
                                  mu * g(1, 1), mu * g(1, 2), mu * g(2, 2)};
  return MetricField(upper);
}

std::vector<double> hodge_at(const Eigen::Matrix3d& g, int degree, std::span<const double> c) {
  if (c.size() != slot_count(degree)) throw DegreeError("coefficient count does not match degree");
  const double vol = std::sqrt(g.determinant());
  switch (degree) {
    case 0:
      return {vol * c[0]};
    case 1: {
      Eigen::Vector3d a(c[0], c[1], c[2]);
      Eigen::Vector3d r = vol * g.ldlt().solve(a);
      return {r(0), r(1), r(2)};
    }
    case 2: {
      Eigen::Vector3d b(c[0], c[1], c[2]);
      Eigen::Vector3d r = g * b / vol;
      return {r(0), r(1), r(2)};
    }
    default:
      return {c[0] / vol};
  }
}

}  // namespace contactmax
