#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "contactmax/contact.hpp"
#include "contactmax/error.hpp"
#include "contactmax/expr.hpp"
#include "contactmax/forms.hpp"
#include "contactmax/maxwell.hpp"
#include "contactmax/metric.hpp"
#include "contactmax/sampling.hpp"
#include "contactmax/scenario.hpp"

namespace py = pybind11;
using namespace contactmax;

namespace {

Var var_from(const std::string& name) {
  if (name == "x") return Var::X;
  if (name == "y") return Var::Y;
  if (name == "z") return Var::Z;
  throw py::value_error("variable must be 'x', 'y' or 'z'");
}

Point point_from(const std::array<double, 3>& p) { return Point{p[0], p[1], p[2]}; }

std::array<double, 3> point_to(const Point& p) { return {p.x, p.y, p.z}; }

KForm form_from(int degree, const std::vector<std::string>& coefficients) {
  return KForm::parse(degree, coefficients);
}

std::vector<std::string> form_strings(const KForm& w) {
  std::vector<std::string> out;
  for (const auto& c : w.coefficients()) out.push_back(c.to_string());
  return out;
}

MetricField metric_from(const py::object& spec) {
  if (py::isinstance<py::str>(spec)) {
    if (spec.cast<std::string>() == "euclidean") return MetricField::euclidean();
    throw py::value_error("metric must be 'euclidean' or 6 upper-triangle expression strings");
  }
  auto upper = spec.cast<std::vector<std::string>>();
  if (upper.size() != 6) throw py::value_error("metric needs 6 upper-triangle entries g11 g12 g13 g22 g23 g33");
  std::array<Expression, 6> e;
  for (int i = 0; i < 6; ++i) e[i] = parse(upper[i]);
  return MetricField(e);
}

py::dict stat_dict(const ResidualStat& s) {
  py::dict d;
  d["max"] = s.max;
  d["mean"] = s.mean;
  d["argmax"] = point_to(s.argmax);
  d["scale"] = s.scale;
  return d;
}

py::dict report_dict(const ResidualReport& r) {
  py::dict d;
  for (const auto& [name, stat] : r.entries()) d[py::str(name)] = stat_dict(stat);
  return d;
}

py::object json_to_python(const OrderedJson& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Contact forms, Hodge stars and time-harmonic Maxwell verification.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<UnknownIdentifierError>(m, "UnknownIdentifierError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<DegreeError>(m, "DegreeError", base.ptr());
  py::register_exception<MetricError>(m, "MetricError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());

  py::class_<Expression>(m, "Expression")
      .def(py::init<double>())
      .def("evaluate", [](const Expression& e, const std::array<double, 3>& p) { return e.evaluate(point_from(p)); })
      .def("differentiate", [](const Expression& e, const std::string& v) { return differentiate(e, var_from(v)); })
      .def("simplify", [](const Expression& e) { return simplify(e); })
      .def("same_as", &Expression::same_as)
      .def("__str__", &Expression::to_string)
      .def("__repr__", [](const Expression& e) { return "Expression('" + e.to_string() + "')"; });

  m.def("parse", [](const std::string& text) { return parse(text); }, py::arg("text"));

  py::class_<KForm>(m, "KForm")
      .def(py::init(&form_from), py::arg("degree"), py::arg("coefficients"))
      .def_property_readonly("degree", &KForm::degree)
      .def_property_readonly("coefficients", &form_strings)
      .def("evaluate", [](const KForm& w, const std::array<double, 3>& p) { return w.evaluate(point_from(p)); })
      .def("__repr__", [](const KForm& w) {
        std::string s = "KForm(" + std::to_string(w.degree()) + ", [";
        for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ", '" : "'") + w[i].to_string() + "'";
        return s + "])";
      });

  m.def("wedge", &wedge);
  m.def("exterior_derivative", &exterior_derivative);
  m.def("linear_combine", &linear_combine);

  py::class_<MetricField>(m, "MetricField")
      .def(py::init(&metric_from), py::arg("spec"))
      .def_static("euclidean", &MetricField::euclidean)
      .def("entry", [](const MetricField& g, int i, int j) { return g(i, j).to_string(); })
      .def("evaluate", [](const MetricField& g, const std::array<double, 3>& p) {
        const auto mat = g.evaluate(point_from(p));
        std::vector<std::vector<double>> rows(3, std::vector<double>(3));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) rows[i][j] = mat(i, j);
        return rows;
      });

  m.def("hodge", &hodge);
  m.def("volume_form", &volume_form);
  m.def("sharp", [](const MetricField& g, const KForm& a) {
    const VectorField x = sharp(g, a);
    return std::vector<std::string>{x.components[0].to_string(), x.components[1].to_string(), x.components[2].to_string()};
  });
  m.def("flat", [](const MetricField& g, const std::vector<std::string>& x) {
    if (x.size() != 3) throw py::value_error("vector field needs 3 components");
    return flat(g, VectorField{{parse(x[0]), parse(x[1]), parse(x[2])}});
  });
  m.def("curl", [](const MetricField& g, const std::vector<std::string>& x) {
    if (x.size() != 3) throw py::value_error("vector field needs 3 components");
    const VectorField c = curl(g, VectorField{{parse(x[0]), parse(x[1]), parse(x[2])}});
    return std::vector<std::string>{c.components[0].to_string(), c.components[1].to_string(), c.components[2].to_string()};
  });

  py::class_<SampleSet>(m, "SampleSet")
      .def_static(
          "generate",
          [](std::size_t count, std::uint64_t seed, const std::array<double, 3>& lo, const std::array<double, 3>& hi) {
            return SampleSet::generate(Box{lo, hi}, count, seed);
          },
          py::arg("count"), py::arg("seed"), py::arg("lo") = std::array<double, 3>{-1, -1, -1},
          py::arg("hi") = std::array<double, 3>{1, 1, 1})
      .def_property_readonly("seed", &SampleSet::seed)
      .def("__len__", &SampleSet::size)
      .def_property_readonly("points", [](const SampleSet& s) {
        std::vector<std::array<double, 3>> out;
        for (const auto& p : s) out.push_back(point_to(p));
        return out;
      });

  m.def(
      "contact_defect",
      [](const KForm& alpha, const SampleSet& s, double tol) {
        const ContactReport r = contact_defect(alpha, s, tol);
        py::dict d;
        d["min_abs"] = r.min_abs;
        d["max_abs"] = r.max_abs;
        d["sign"] = std::string(to_string(r.sign));
        d["witness"] = point_to(r.witness);
        d["is_contact"] = r.is_contact;
        return d;
      },
      py::arg("alpha"), py::arg("samples"), py::arg("tol") = kDefaultTolerance);

  m.def(
      "beltrami_factor",
      [](const MetricField& g, const KForm& alpha, const SampleSet& s, double tol) {
        const BeltramiEstimate b = beltrami_factor(g, alpha, s, tol);
        py::dict d;
        d["factor_values"] = b.factor_values;
        d["max_residual"] = b.max_residual;
        d["is_beltrami"] = b.is_beltrami;
        d["is_rotational"] = b.is_rotational;
        d["is_constant"] = b.is_constant;
        d["constant_value"] = b.constant_value;
        return d;
      },
      py::arg("g"), py::arg("alpha"), py::arg("samples"), py::arg("tol") = kDefaultTolerance);

  m.def(
      "check_adapted",
      [](const MetricField& g, const KForm& alpha, const SampleSet& s, double tol) {
        const AdaptedReport r = check_adapted(g, alpha, s, tol);
        return py::make_tuple(r.residual_star, r.residual_norm);
      },
      py::arg("g"), py::arg("alpha"), py::arg("samples"), py::arg("tol") = kDefaultTolerance);

  m.def(
      "rescale_to_factor",
      [](const MetricField& g, const KForm& alpha, const std::string& f_target, const SampleSet& s, double tol) {
        return rescale_to_factor(g, alpha, parse(f_target), s, tol);
      },
      py::arg("g"), py::arg("alpha"), py::arg("f_target"), py::arg("samples"), py::arg("tol") = kDefaultTolerance);

  m.def("build_beta", &build_beta, py::arg("g"), py::arg("alpha"), py::arg("omega"));

  m.def(
      "maxwell_residuals",
      [](const KForm& alpha, const KForm& beta, const MetricField& eps, const MetricField& mu, double omega,
         const SampleSet& s) { return report_dict(maxwell_residuals(alpha, beta, Media{eps, mu}, omega, s)); },
      py::arg("alpha"), py::arg("beta"), py::arg("g_eps"), py::arg("g_mu"), py::arg("omega"), py::arg("samples"));

  m.def(
      "verify_theorem1",
      [](const KForm& alpha, const MetricField& g, double omega, const SampleSet& s, double tol) {
        const Theorem1Result t = verify_theorem1(alpha, g, omega, s, tol);
        py::dict d;
        d["residuals"] = report_dict(t.report);
        d["max_residual"] = t.report.max_residual();
        d["beta"] = t.beta;
        d["media_metric"] = t.media_metric;
        return d;
      },
      py::arg("alpha"), py::arg("g_adapted"), py::arg("omega"), py::arg("samples"),
      py::arg("tol") = kDefaultTolerance);

  m.def("builtin_scenarios", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : builtin_scenarios()) out.emplace_back(s.name, s.description);
    return out;
  });

  m.def(
      "run_scenario",
      [](const std::string& name_or_json, std::optional<std::size_t> samples, std::optional<std::uint64_t> seed,
         std::optional<double> tol) {
        Scenario s;
        if (const Scenario* b = find_builtin(name_or_json)) {
          s = *b;
        } else {
          nlohmann::json doc;
          try {
            doc = nlohmann::json::parse(name_or_json);
          } catch (const nlohmann::json::parse_error&) {
            throw SchemaError("", "not a built-in scenario name or a JSON scenario document");
          }
          s = parse_scenario(doc);
        }
        const RunResult r = run_scenario(s, RunOverrides{samples, seed, tol});
        return py::make_tuple(r.passed, json_to_python(r.report));
      },
      py::arg("scenario"), py::arg("samples") = py::none(), py::arg("seed") = py::none(), py::arg("tol") = py::none());
}
