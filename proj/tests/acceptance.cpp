// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "contactmax/contact.hpp"
#include "contactmax/maxwell.hpp"
#include "contactmax/scenario.hpp"
#include "oracles.hpp"

using namespace contactmax;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

double rel_err(const std::vector<double>& got, const std::vector<double>& expect) {
  return oracle::max_abs_diff(got, expect) / (1.0 + oracle::max_abs(expect));
}

const KForm& plane_wave() {
  static const KForm a = KForm::parse(1, std::vector<std::string>{"cos(2*z)", "-sin(2*z)", "0"});
  return a;
}
const KForm& heisenberg() {
  static const KForm a = KForm::parse(1, std::vector<std::string>{"-y", "0", "1"});
  return a;
}
const MetricField& heisenberg_metric() {
  static const MetricField g(std::array<Expression, 6>{parse("1/2 + y^2"), Expression(0.0), parse("-y"), Expression(0.5), Expression(0.0),
                              Expression(1.0)});
  return g;
}

const SampleSet& samples2000() {
  static const SampleSet s = SampleSet::generate(Box{}, 2000, 1);
  return s;
}

template <class F>
double elapsed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Captured {
  std::string out;
  int status = -1;
};

Captured run_command(const std::string& cmd) {
  Captured c;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) c.out.append(buf, n);
  const int st = pclose(pipe);
  c.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return c;
}

std::string strip_timestamp(const std::string& text) {
  OrderedJson j = OrderedJson::parse(text);
  j.erase("timestamp");
  return j.dump(2);
}

}  // namespace

int main() {
  criterion(1, "hodge involution", [] {
    oracle::ExpressionGenerator gen(101);
    double worst = 0.0;
    const double secs = elapsed([&] {
      for (int m = 0; m < 20; ++m) {
        const MetricField g = oracle::constant_metric(oracle::random_spd(gen.rng(), 0.1, 10.0));
        for (int degree = 0; degree <= 3; ++degree) {
          const KForm w = gen.form(degree);
          const KForm ssw = hodge(g, hodge(g, w));
          for (int k = 0; k < 1000; ++k) {
            const Point p = gen.point();
            worst = std::max(worst, rel_err(ssw.evaluate(p), w.evaluate(p)));
          }
        }
      }
    });
    return Outcome{worst <= 1e-10 && secs < 10.0,
                   "max residual " + sci(worst) + " (tol 1e-10), runtime " + sci(secs) + " s (limit 10 s)"};
  });

  criterion(2, "d o d = 0 and graded Leibniz", [] {
    oracle::ExpressionGenerator gen(202);
    double dd = 0.0, leib = 0.0;
    const int pairs[][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 2}, {2, 0}};
    for (int k = 0; k < 1000; ++k) {
      const Point p = gen.point();
      {
        const KForm f = gen.form(k % 2);
        dd = std::max(dd, oracle::max_abs(exterior_derivative(exterior_derivative(f)).evaluate(p)));
        const auto& pq = pairs[k % 6];
        const KForm a = gen.form(pq[0]);
        const KForm b = gen.form(pq[1]);
        const double sign = pq[0] % 2 ? -1.0 : 1.0;
        const auto lhs = exterior_derivative(wedge(a, b)).evaluate(p);
        const auto rhs =
            linear_combine(1.0, wedge(exterior_derivative(a), b), sign, wedge(a, exterior_derivative(b))).evaluate(p);
        leib = std::max(leib, rel_err(lhs, rhs));
      }
    }
    return Outcome{dd <= 1e-10 && leib <= 1e-10, "d o d " + sci(dd) + ", Leibniz " + sci(leib) + " (tol 1e-10)"};
  });

  criterion(3, "alpha ^ *alpha = g(alpha#, alpha#) dV", [] {
    oracle::ExpressionGenerator gen(303);
    double worst = 0.0;
    for (int m = 0; m < 10; ++m) {
      const MetricField g = oracle::varying_metric(oracle::random_spd(gen.rng(), 0.1, 10.0), gen.rng());
      const KForm a = gen.form(1);
      const KForm lhs = wedge(a, hodge(g, a));
      const Expression rhs = inner_product(g, a, a) * volume_form(g)[0];
      for (int k = 0; k < 100; ++k) {
        const Point p = gen.point();
        worst = std::max(worst, rel_err(lhs.evaluate(p), {rhs.evaluate(p)}));
      }
    }
    return Outcome{worst <= 1e-10, "max residual " + sci(worst) + " (tol 1e-10)"};
  });

  criterion(4, "conformal Hodge scaling", [] {
    oracle::ExpressionGenerator gen(404);
    const SampleSet s = SampleSet::generate(Box{}, 250, 4);
    double worst = 0.0;
    for (const char* text : {"4", "0.3", "2 + sin(x*y)", "exp(z) + x^2"}) {
      const Expression mu = parse(text);
      const MetricField g = oracle::varying_metric(oracle::random_spd(gen.rng(), 0.1, 10.0), gen.rng());
      const MetricField gt = conformal_rescale(g, mu, s);
      const KForm a = gen.form(1);
      const KForm lhs = hodge(gt, a);
      const KForm rhs = scale(sqrt(mu), hodge(g, a));
      for (const Point& p : s) worst = std::max(worst, rel_err(lhs.evaluate(p), rhs.evaluate(p)));
    }
    return Outcome{worst <= 1e-10, "max residual " + sci(worst) + " over constant and varying mu (tol 1e-10)"};
  });

  criterion(5, "adapted examples", [] {
    const AdaptedReport a = check_adapted(MetricField::euclidean(), plane_wave(), samples2000());
    const AdaptedReport b = check_adapted(heisenberg_metric(), heisenberg(), samples2000());
    const double worst = std::max({a.residual_star, a.residual_norm, b.residual_star, b.residual_norm});
    return Outcome{a.adapted && b.adapted && worst <= 1e-12,
                   "plane wave " + sci(std::max(a.residual_star, a.residual_norm)) + ", Heisenberg " +
                       sci(std::max(b.residual_star, b.residual_norm)) + " (tol 1e-12, 2000 samples)"};
  });

  criterion(6, "Maxwell solution end to end", [] {
    double worst = 0.0;
    std::string worst_name;
    const double secs = elapsed([&] {
      for (int ex = 0; ex < 2; ++ex) {
        for (double omega : {2.0, 5.0, -3.0}) {
          const Theorem1Result r =
              ex == 0 ? verify_theorem1(plane_wave(), MetricField::euclidean(), omega, samples2000())
                      : verify_theorem1(heisenberg(), heisenberg_metric(), omega, samples2000());
          for (const auto& [name, stat] : r.report.entries()) {
            if (stat.max >= worst) {
              worst = stat.max;
              worst_name = name;
            }
          }
        }
      }
    });
    return Outcome{worst <= 1e-9 && secs < 30.0, "max residual " + sci(worst) + " (" + worst_name +
                                                      ", tol 1e-9), runtime " + sci(secs) + " s (limit 30 s)"};
  });

  criterion(7, "overtwisted plane wave", [] {
    const KForm a = KForm::parse(1, std::vector<std::string>{"cos(z)", "sin(z)", "0"});
    const BeltramiEstimate b = beltrami_factor(MetricField::euclidean(), a, samples2000());
    const ContactReport c = contact_defect(a, samples2000());
    const bool ok = b.is_constant && std::fabs(b.constant_value + 1.0) <= 1e-12 && b.max_residual <= 1e-12 &&
                    c.is_contact && c.sign == Sign::Negative && std::fabs(c.min_abs - 1.0) <= 1e-12;
    return Outcome{ok, "factor " + sci(b.constant_value) + ", residual " + sci(b.max_residual) + ", sign " +
                           to_string(c.sign) + ", |min_abs - 1| " + sci(std::fabs(c.min_abs - 1.0))};
  });

  criterion(8, "negative controls", [] {
    const ContactReport c = contact_defect(KForm::one_form(0.0, 0.0, 1.0), samples2000());
    const MetricField e = MetricField::euclidean();
    const KForm a = KForm::one_form(0.0, var_x(), 1.0);
    const ResidualReport r = maxwell_residuals(a, build_beta(e, a, 1.0), Media{e, e}, 1.0, samples2000());
    return Outcome{!c.is_contact && r.r2.max > 0.1,
                   std::string("dz contact ") + (c.is_contact ? "accepted" : "rejected") + ", R2 for dz + x dy " +
                       sci(r.r2.max) + " (must exceed 0.1)"};
  });

  criterion(9, "rescale_to_factor round trip", [] {
    double worst = 0.0;
    for (const char* text : {"1", "5", "0.25", "2 + x^2"}) {
      const Expression target = parse(text);
      for (int ex = 0; ex < 2; ++ex) {
        const KForm& a = ex == 0 ? plane_wave() : heisenberg();
        const MetricField& g = ex == 0 ? MetricField::euclidean() : heisenberg_metric();
        const MetricField gt = rescale_to_factor(g, a, target, samples2000());
        const BeltramiEstimate b = beltrami_factor(gt, a, samples2000());
        for (std::size_t k = 0; k < samples2000().size(); ++k) {
          worst = std::max(worst, std::fabs(b.factor_values[k] - target.evaluate(samples2000().points()[k])));
        }
      }
    }
    return Outcome{worst <= 1e-10, "max |f - f_target| " + sci(worst) + " (tol 1e-10)"};
  });

  criterion(10, "CLI determinism and exit codes", [] {
    bool ok = true;
    std::string detail;
    for (const Scenario& s : builtin_scenarios()) {
      const std::string cmd = std::string("\"") + CONTACTMAX_CLI + "\" verify " + s.name + " --seed 11";
      const Captured a = run_command(cmd);
      const Captured b = run_command(cmd);
      const int want = s.expect_pass ? 0 : 1;
      bool same = false;
      try {
        same = strip_timestamp(a.out) == strip_timestamp(b.out);
      } catch (const std::exception&) {
        same = false;
      }
      const bool good = same && a.status == want && b.status == want;
      ok = ok && good;
      if (!detail.empty()) detail += "; ";
      detail += s.name + (same ? " identical" : " DIFFERS") + ", exit " + std::to_string(a.status) + "/" +
                std::to_string(want);
    }
    return Outcome{ok, detail};
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
