#include <cmath>

#include "doctest.h"

#include "contactmax/error.hpp"
#include "contactmax/metric.hpp"
#include "oracles.hpp"

using namespace contactmax;

namespace {

const Box kUnit{};

std::array<Expression, 6> heisenberg_upper() {
  return {parse("1/2 + y^2"), Expression(0.0), parse("-y"), Expression(0.5), Expression(0.0), Expression(1.0)};
}

}  // namespace

TEST_CASE("Euclidean star examples") {
  const MetricField g = MetricField::euclidean();
  const KForm sdx = hodge(g, KForm::one_form(1.0, 0.0, 0.0));
  CHECK(sdx.degree() == 2);
  CHECK(sdx.evaluate({}) == std::vector<double>{1.0, 0.0, 0.0});
  const KForm sdxdy = hodge(g, KForm::two_form(0.0, 0.0, 1.0));
  CHECK(sdxdy.evaluate({}) == std::vector<double>{0.0, 0.0, 1.0});
  CHECK(hodge(g, KForm::function(1.0)).evaluate({}) == std::vector<double>{1.0});
  CHECK(hodge(g, KForm::three_form(1.0)).evaluate({}) == std::vector<double>{1.0});
  CHECK(volume_form(g)[0].is_constant(1.0));
}

TEST_CASE("diagonal metric examples") {
  const MetricField g = MetricField::diagonal(4.0, 1.0, 1.0);
  // sqrt|g| = 2, g^{11} = 1/4: *dx = 2 * (1/4) dy^dz.
  CHECK(hodge(g, KForm::one_form(1.0, 0.0, 0.0)).evaluate({})[0] == doctest::Approx(0.5));
  const VectorField s = sharp(g, KForm::one_form(1.0, 0.0, 0.0));
  CHECK(s.evaluate({})[0] == doctest::Approx(0.25));
  const KForm f = flat(g, VectorField{{Expression(1.0), Expression(0.0), Expression(0.0)}});
  CHECK(f.evaluate({})[0] == doctest::Approx(4.0));
  CHECK(volume_form(g).evaluate({})[0] == doctest::Approx(2.0));
}

TEST_CASE("Heisenberg metric") {
  const MetricField g(heisenberg_upper());
  oracle::ExpressionGenerator gen(3);
  for (int k = 0; k < 20; ++k) {
    const Point p = gen.point();
    CHECK(g.determinant().evaluate(p) == doctest::Approx(0.25));
    CHECK(volume_form(g).evaluate(p)[0] == doctest::Approx(0.5));
    const Eigen::Matrix3d m = g.evaluate(p);
    Eigen::Matrix3d inv;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) inv(i, j) = g.inverse(i, j).evaluate(p);
    CHECK((m * inv - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-13);
  }
  CHECK_NOTHROW(g.audit(SampleSet::generate(kUnit, 200, 1)));
}

TEST_CASE("metric construction errors") {
  std::array<std::array<Expression, 3>, 3> asym{{{1.0, var_x(), 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
  CHECK_THROWS_AS(MetricField{asym}, MetricError);
  const MetricField bad = MetricField::diagonal(1.0, -1.0, 1.0);
  CHECK_THROWS_AS(bad.audit(SampleSet::generate(kUnit, 10, 1)), MetricError);
  const MetricField sometimes = MetricField::diagonal(var_x(), 1.0, 1.0);
  CHECK_THROWS_AS(sometimes.audit(SampleSet::generate(kUnit, 50, 1)), MetricError);
}

TEST_CASE("ill-conditioned metric warns") {
  const MetricField g = MetricField::diagonal(1.0, 1.0, 1e-13);
  const MetricAudit a = g.audit(SampleSet::generate(kUnit, 5, 1));
  CHECK(a.max_condition > MetricField::kConditionWarning);
  CHECK_FALSE(a.warnings.empty());
  CHECK(MetricField::euclidean().audit(SampleSet::generate(kUnit, 5, 1)).warnings.empty());
}

TEST_CASE("conformal rescale rejects non-positive factors") {
  const SampleSet s = SampleSet::generate(kUnit, 100, 4);
  CHECK_THROWS_AS(conformal_rescale(MetricField::euclidean(), var_x(), s), PreconditionError);
  CHECK_THROWS_AS(conformal_rescale(MetricField::euclidean(), Expression(0.0), s), PreconditionError);
  CHECK_NOTHROW(conformal_rescale(MetricField::euclidean(), parse("1 + x^2"), s));
}

TEST_CASE("property: star agrees with the orthonormal-coframe oracle") {
  oracle::ExpressionGenerator gen(0x0A1);
  for (int m = 0; m < 10; ++m) {
    const Eigen::Matrix3d a = oracle::random_spd(gen.rng());
    const MetricField g = m % 2 ? oracle::varying_metric(a, gen.rng()) : oracle::constant_metric(a);
    for (int degree = 0; degree <= 3; ++degree) {
      const KForm w = gen.form(degree);
      const KForm sw = hodge(g, w);
      for (int j = 0; j < 20; ++j) {
        const Point p = gen.point();
        const auto expect = oracle::hodge_orthonormal(g.evaluate(p), degree, w.evaluate(p));
        const auto got = sw.evaluate(p);
        REQUIRE(oracle::max_abs_diff(got, expect) <= 1e-9 * (1.0 + oracle::max_abs(expect)));
        const auto numeric = hodge_at(g.evaluate(p), degree, w.evaluate(p));
        REQUIRE(oracle::max_abs_diff(numeric, expect) <= 1e-9 * (1.0 + oracle::max_abs(expect)));
      }
    }
  }
}

TEST_CASE("property: star is an involution") {
  oracle::ExpressionGenerator gen(0x5757);
  for (int m = 0; m < 6; ++m) {
    const Eigen::Matrix3d a = oracle::random_spd(gen.rng());
    const MetricField g = m % 2 ? oracle::varying_metric(a, gen.rng()) : oracle::constant_metric(a);
    for (int degree = 0; degree <= 3; ++degree) {
      const KForm w = gen.form(degree);
      const KForm ssw = hodge(g, hodge(g, w));
      for (int j = 0; j < 20; ++j) {
        const Point p = gen.point();
        const auto v = w.evaluate(p);
        REQUIRE(oracle::max_abs_diff(ssw.evaluate(p), v) <= 1e-10 * (1.0 + oracle::max_abs(v)));
      }
    }
  }
}

TEST_CASE("property: alpha ^ *alpha = g(alpha#, alpha#) dV") {
  oracle::ExpressionGenerator gen(0xA5A);
  for (int m = 0; m < 6; ++m) {
    const Eigen::Matrix3d a = oracle::random_spd(gen.rng());
    const MetricField g = oracle::varying_metric(a, gen.rng());
    const KForm alpha = gen.form(1);
    const KForm lhs = wedge(alpha, hodge(g, alpha));
    const Expression rhs = inner_product(g, alpha, alpha) * volume_form(g)[0];
    for (int j = 0; j < 20; ++j) {
      const Point p = gen.point();
      const double r = rhs.evaluate(p);
      REQUIRE(std::fabs(lhs.evaluate(p)[0] - r) <= 1e-10 * (1.0 + std::fabs(r)));
    }
  }
}

TEST_CASE("property: conformal scaling of the star on 1-forms") {
  oracle::ExpressionGenerator gen(0xC0F);
  const SampleSet s = SampleSet::generate(kUnit, 50, 9);
  for (const char* mu_text : {"3", "0.25", "2 + sin(x*y)", "exp(z) + x^2"}) {
    const Expression mu = parse(mu_text);
    const MetricField g = oracle::varying_metric(oracle::random_spd(gen.rng()), gen.rng());
    const MetricField gt = conformal_rescale(g, mu, s);
    const KForm alpha = gen.form(1);
    const KForm lhs = hodge(gt, alpha);
    const KForm rhs = scale(sqrt(mu), hodge(g, alpha));
    for (const Point& p : s) {
      const auto r = rhs.evaluate(p);
      REQUIRE(oracle::max_abs_diff(lhs.evaluate(p), r) <= 1e-10 * (1.0 + oracle::max_abs(r)));
    }
  }
}

TEST_CASE("property: sharp and flat are inverse") {
  oracle::ExpressionGenerator gen(0x5F);
  const MetricField g = oracle::varying_metric(oracle::random_spd(gen.rng()), gen.rng());
  const KForm a = gen.form(1);
  const KForm back = flat(g, sharp(g, a));
  for (int j = 0; j < 50; ++j) {
    const Point p = gen.point();
    const auto v = a.evaluate(p);
    REQUIRE(oracle::max_abs_diff(back.evaluate(p), v) <= 1e-10 * (1.0 + oracle::max_abs(v)));
  }
}
