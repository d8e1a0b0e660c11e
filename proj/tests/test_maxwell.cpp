#include <cmath>
#include <numbers>

#include "doctest.h"

#include "contactmax/error.hpp"
#include "contactmax/maxwell.hpp"
#include "oracles.hpp"

using namespace contactmax;

namespace {

const SampleSet& samples() {
  static const SampleSet s = SampleSet::generate(Box{}, 500, 1);
  return s;
}

KForm plane_wave() { return KForm::parse(1, std::vector<std::string>{"cos(2*z)", "-sin(2*z)", "0"}); }
KForm heisenberg() { return KForm::parse(1, std::vector<std::string>{"-y", "0", "1"}); }
MetricField heisenberg_metric() {
  return MetricField(std::array<Expression, 6>{parse("1/2 + y^2"), Expression(0.0), parse("-y"), Expression(0.5), Expression(0.0),
                      Expression(1.0)});
}

std::array<double, 3> eval3(const VectorField& v, const Point& p) { return v.evaluate(p); }

}  // namespace

TEST_CASE("curl examples") {
  const MetricField e = MetricField::euclidean();
  const Point p{0.3, -0.2, 0.7};
  SUBCASE("rotation") {
    const VectorField c = curl(e, VectorField{{-var_y(), var_x(), Expression(0.0)}});
    CHECK(eval3(c, p) == std::array<double, 3>{0.0, 0.0, 2.0});
  }
  SUBCASE("gradient field") {
    const VectorField c = curl(e, VectorField{{parse("2*x*y"), parse("x^2 + z"), var_y()}});
    for (double v : eval3(c, p)) CHECK(v == doctest::Approx(0.0));
  }
  SUBCASE("Beltrami field with factor -1") {
    const VectorField x{{parse("cos(z)"), parse("sin(z)"), Expression(0.0)}};
    const auto c = eval3(curl(e, x), p);
    const auto v = x.evaluate(p);
    for (int i = 0; i < 3; ++i) CHECK(c[i] == doctest::Approx(-v[i]));
  }
}

TEST_CASE("build_beta") {
  const MetricField e = MetricField::euclidean();
  const Point p{0.1, 0.2, 0.3};
  for (double omega : {2.0, -2.0}) {
    const auto b = build_beta(e, plane_wave(), omega).evaluate(p);
    const auto a = plane_wave().evaluate(p);
    // beta = -(2/omega) alpha for this alpha.
    for (int i = 0; i < 3; ++i) CHECK(b[i] == doctest::Approx(-2.0 / omega * a[i]));
  }
  CHECK_THROWS_AS(build_beta(e, plane_wave(), 0.0), PreconditionError);
}

TEST_CASE("fields_at phase factors") {
  const KForm a = plane_wave();
  const MetricField e = MetricField::euclidean();
  const double omega = 2.0;
  const KForm b = build_beta(e, a, omega);
  const Media m{e, e};
  const Point p{0.1, 0.2, 0.3};
  const auto av = a.evaluate(p);
  const auto bv = b.evaluate(p);

  const FieldValues f0 = fields_at(a, b, m, omega, p, 0.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(f0.E[i] == doctest::Approx(av[i]));
    CHECK(f0.H[i] == 0.0);
    CHECK(f0.B[i] == 0.0);
  }
  const FieldValues fq = fields_at(a, b, m, omega, p, std::numbers::pi / (2.0 * omega));
  for (int i = 0; i < 3; ++i) {
    CHECK(std::fabs(fq.E[i]) <= 1e-15);
    CHECK(fq.H[i] == doctest::Approx(bv[i]));
  }
  const FieldValues f8 = fields_at(a, b, m, omega, p, std::numbers::pi / 4.0 / omega);
  const double r = std::sqrt(0.5);
  for (int i = 0; i < 3; ++i) {
    CHECK(f8.E[i] == doctest::Approx(r * av[i]));
    CHECK(f8.H[i] == doctest::Approx(r * bv[i]));
  }
}

TEST_CASE("maxwell_residuals controls") {
  const MetricField e = MetricField::euclidean();
  const Media m{e, e};
  SUBCASE("non-Beltrami alpha fails the second equation") {
    const KForm a = KForm::one_form(0.0, var_x(), 1.0);
    const ResidualReport r = maxwell_residuals(a, build_beta(e, a, 1.0), m, 1.0, samples());
    CHECK(r.r2.max > 0.1);
    CHECK(r.r1.max <= 1e-12);
    CHECK_FALSE(r.passes(1e-9));
  }
  SUBCASE("zero fields give zero residuals") {
    const KForm z = KForm::zero(1);
    const ResidualReport r = maxwell_residuals(z, z, m, 1.0, samples());
    CHECK(r.max_residual() == 0.0);
  }
  SUBCASE("wrong beta sign") {
    const KForm a = plane_wave();
    const ResidualReport r = maxwell_residuals(a, scale(Expression(-1.0), build_beta(e, a, 2.0)), m, 2.0, samples());
    CHECK(r.r1.max > 0.5);
  }
  CHECK_THROWS_AS(maxwell_residuals(plane_wave(), plane_wave(), m, 0.0, samples()), PreconditionError);
}

TEST_CASE("verify_theorem1 on the adapted examples") {
  const std::pair<KForm, MetricField> cases[] = {{plane_wave(), MetricField::euclidean()},
                                                 {heisenberg(), heisenberg_metric()}};
  for (const auto& [alpha, g] : cases) {
    for (double omega : {2.0, 5.0, -3.0}) {
      const Theorem1Result res = verify_theorem1(alpha, g, omega, samples());
      INFO("omega = ", omega);
      CHECK(res.precheck.adapted);
      for (const auto& [name, stat] : res.report.entries()) {
        INFO(name);
        CHECK(stat.max <= 1e-9);
      }
      CHECK(res.report.beta_closed_form.has_value());
    }
  }
}

TEST_CASE("media metric scales with |omega| only") {
  const SampleSet& s = samples();
  const Theorem1Result r5 = verify_theorem1(plane_wave(), MetricField::euclidean(), 5.0, s);
  const Theorem1Result rm5 = verify_theorem1(plane_wave(), MetricField::euclidean(), -5.0, s);
  for (int k = 0; k < 10; ++k) {
    const Point& p = s.points()[k];
    const Eigen::Matrix3d m = r5.media_metric.evaluate(p);
    CHECK((m - 4.0 / 25.0 * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((m - rm5.media_metric.evaluate(p)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("verify_theorem1 rejects a non-adapted metric") {
  CHECK_THROWS_AS(verify_theorem1(plane_wave(), MetricField::diagonal(2.0, 2.0, 2.0), 2.0, samples()),
                  PreconditionError);
  CHECK_THROWS_AS(verify_theorem1(plane_wave(), MetricField::euclidean(), 0.0, samples()), PreconditionError);
}

TEST_CASE("property: time derivatives match the Maxwell system") {
  // dE = -dB/dt and dH = dD/dt with the time derivative taken numerically
  // from the assembled fields.
  for (double omega : {2.0, -3.0}) {
    const Theorem1Result res = verify_theorem1(heisenberg(), heisenberg_metric(), omega, samples());
    const Media m{res.media_metric, res.media_metric};
    const TimeHarmonicSolution sol(heisenberg(), res.beta, m, omega);
    const KForm da = exterior_derivative(heisenberg());
    const KForm db = exterior_derivative(res.beta);
    const double h = 1e-5;
    for (double t : {0.1, 0.7, 2.0}) {
      for (std::size_t k = 0; k < 50; ++k) {
        const Point& p = samples().points()[k];
        const FieldValues plus = sol.at(p, t + h);
        const FieldValues minus = sol.at(p, t - h);
        const auto dav = da.evaluate(p);
        const auto dbv = db.evaluate(p);
        for (int i = 0; i < 3; ++i) {
          const double dbdt = (plus.B[i] - minus.B[i]) / (2.0 * h);
          const double dddt = (plus.D[i] - minus.D[i]) / (2.0 * h);
          REQUIRE(dav[i] * std::cos(omega * t) == doctest::Approx(-dbdt).epsilon(1e-7).scale(1.0));
          REQUIRE(dbv[i] * std::sin(omega * t) == doctest::Approx(dddt).epsilon(1e-7).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("property: constitutive relations hold pointwise") {
  oracle::ExpressionGenerator gen(0xC0);
  const MetricField eps = oracle::varying_metric(oracle::random_spd(gen.rng()), gen.rng());
  const MetricField mu = oracle::varying_metric(oracle::random_spd(gen.rng()), gen.rng());
  const KForm a = gen.form(1);
  const KForm b = gen.form(1);
  const TimeHarmonicSolution sol(a, b, Media{eps, mu}, 1.5);
  for (int k = 0; k < 50; ++k) {
    const Point p = gen.point();
    const double t = gen.uniform(0.0, 4.0);
    const FieldValues f = sol.at(p, t);
    const auto d = oracle::hodge_orthonormal(eps.evaluate(p), 1, {f.E.begin(), f.E.end()});
    const auto bb = oracle::hodge_orthonormal(mu.evaluate(p), 1, {f.H.begin(), f.H.end()});
    REQUIRE(oracle::max_abs_diff({f.D.begin(), f.D.end()}, d) <= 1e-10 * (1.0 + oracle::max_abs(d)));
    REQUIRE(oracle::max_abs_diff({f.B.begin(), f.B.end()}, bb) <= 1e-10 * (1.0 + oracle::max_abs(bb)));
  }
}
