#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "burgers/entropy.hpp"
#include "burgers/estimates.hpp"
#include "burgers/hj.hpp"
#include "burgers/scenario.hpp"
#include "burgers/weak.hpp"

namespace py = pybind11;
using namespace burgers;

namespace {

py::array_t<double> field_to_array(const ScalarField& f) {
  py::array_t<double> arr({f.spec.nt, f.spec.nx});
  auto buf = arr.mutable_unchecked<2>();
  for (std::size_t i = 0; i < f.spec.nt; ++i)
    for (std::size_t j = 0; j < f.spec.nx; ++j)
      buf(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = f.at(i, j);
  return arr;
}

ScalarField field_from_array(const GridSpec& spec, py::array_t<double> arr) {
  auto buf = arr.unchecked<2>();
  if (static_cast<std::size_t>(buf.shape(0)) != spec.nt ||
      static_cast<std::size_t>(buf.shape(1)) != spec.nx)
    throw PreconditionError("ScalarField", "array shape does not match the grid");
  ScalarField f(spec);
  for (std::size_t i = 0; i < spec.nt; ++i)
    for (std::size_t j = 0; j < spec.nx; ++j)
      f.at(i, j) = buf(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
  return f;
}

AdmissibilityPolicy policy_from(const std::string& name) {
  if (name == "entropic") return AdmissibilityPolicy::entropic;
  if (name == "keep_jump") return AdmissibilityPolicy::keep_jump;
  if (name == "anti_entropic") return AdmissibilityPolicy::anti_entropic;
  throw PreconditionError("policy", "unknown policy: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "weak solutions of Burgers' equation with controlled entropy "
            "production, and the estimates they satisfy";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<double, double, double, double, std::size_t, std::size_t>(),
           py::arg("t_min"), py::arg("t_max"), py::arg("x_min"), py::arg("x_max"),
           py::arg("nt"), py::arg("nx"))
      .def_readonly("t_min", &GridSpec::t_min)
      .def_readonly("t_max", &GridSpec::t_max)
      .def_readonly("x_min", &GridSpec::x_min)
      .def_readonly("x_max", &GridSpec::x_max)
      .def_readonly("nt", &GridSpec::nt)
      .def_readonly("nx", &GridSpec::nx)
      .def("mesh", &GridSpec::mesh)
      .def("t", &GridSpec::t)
      .def("x", &GridSpec::x);

  py::class_<ScalarField>(m, "ScalarField")
      .def(py::init(&field_from_array), py::arg("spec"), py::arg("values"))
      .def_readonly("spec", &ScalarField::spec)
      .def("values", &field_to_array)
      .def("max_abs", &ScalarField::max_abs)
      .def("to_csv", [](const ScalarField& f) {
        std::ostringstream os;
        f.write_csv(os);
        return os.str();
      });

  py::class_<Point>(m, "Point")
      .def(py::init([](double t, double x) { return Point{t, x}; }), py::arg("t"),
           py::arg("x"))
      .def_readwrite("t", &Point::t)
      .def_readwrite("x", &Point::x);

  py::class_<Rect>(m, "Rect")
      .def(py::init([](double t0, double t1, double x0, double x1) {
             return Rect{t0, t1, x0, x1};
           }),
           py::arg("t_min"), py::arg("t_max"), py::arg("x_min"), py::arg("x_max"));

  py::class_<Square>(m, "Square")
      .def(py::init<Point, double>(), py::arg("center"), py::arg("radius"));

  py::class_<DiscreteMeasure>(m, "DiscreteMeasure")
      .def("total_variation", [](const DiscreteMeasure& mm) { return total_variation(mm); })
      .def("to_json", &DiscreteMeasure::to_json)
      .def_static("from_json", &DiscreteMeasure::from_json)
      .def("__len__",
           [](const DiscreteMeasure& mm) { return mm.atoms.size() + mm.segments.size(); });

  m.def("square_mass", &square_mass, py::arg("measure"), py::arg("square"));
  m.def("positive_part", &positive_part, py::arg("measure"));
  m.def("total_variation", &total_variation, py::arg("measure"));

  py::class_<Front>(m, "Front")
      .def(py::init<double, double, double, double, double, bool>(), py::arg("t_start"),
           py::arg("t_end"), py::arg("x_start"), py::arg("left_state"),
           py::arg("right_state"), py::arg("open_end") = false)
      .def_readonly("speed", &Front::speed)
      .def_readonly("left_state", &Front::left_state)
      .def_readonly("right_state", &Front::right_state)
      .def("x_at", &Front::x_at);

  py::class_<PiecewiseSolution>(m, "PiecewiseSolution")
      .def("__call__", &PiecewiseSolution::eval, py::arg("t"), py::arg("x"))
      .def("bound", &PiecewiseSolution::bound)
      .def("affine", &PiecewiseSolution::affine, py::arg("scale"), py::arg("t_shift"),
           py::arg("x_shift"))
      .def_readonly("fronts", &PiecewiseSolution::fronts)
      .def_readonly("interactions", &PiecewiseSolution::interactions);

  m.def("shock_speed", &shock_speed, py::arg("u_l"), py::arg("u_r"));
  m.def(
      "riemann_solution",
      [](double ul, double ur, const std::string& policy, Point center, Rect domain) {
        return riemann_solution(ul, ur, policy_from(policy), center, domain);
      },
      py::arg("u_l"), py::arg("u_r"), py::arg("policy"), py::arg("center"),
      py::arg("domain"));
  m.def(
      "front_tracking",
      [](const std::vector<double>& states, const std::vector<double>& breaks,
         const std::string& policy, Rect domain, double fan_step) {
        FrontTrackingOptions opts;
        opts.fan_step = fan_step;
        return front_tracking(states, breaks, policy_from(policy), domain, opts);
      },
      py::arg("states"), py::arg("breaks"), py::arg("policy"), py::arg("domain"),
      py::arg("fan_step") = 0.05);
  m.def("sample_field", &sample_field, py::arg("solution"), py::arg("spec"));
  m.def("weak_residual", &weak_residual, py::arg("field"));

  py::class_<EntropyPair>(m, "EntropyPair")
      .def_readonly("name", &EntropyPair::name)
      .def("eta", [](const EntropyPair& p, double u) { return p.eta(u); })
      .def("q", [](const EntropyPair& p, double u) { return p.q(u); });
  m.def("builtin_entropy", &builtin_entropy, py::arg("name"));
  m.def("production_exact", &production_exact, py::arg("solution"), py::arg("pair"));
  m.def("production_field", &production_field, py::arg("field"), py::arg("pair"));
  m.def("nu_exact", &nu_exact, py::arg("solution"));
  m.def("quadratic_front_density", &quadratic_front_density, py::arg("u_l"),
        py::arg("u_r"));

  py::class_<KineticProfile>(m, "KineticProfile")
      .def("m_at", &KineticProfile::m_at)
      .def("integral", &KineticProfile::integral)
      .def("abs_integral", &KineticProfile::abs_integral)
      .def("integrate_against", &KineticProfile::integrate_against, py::arg("pair"),
           py::arg("tol") = 1e-10)
      .def_readonly("v_grid", &KineticProfile::v_grid)
      .def_readonly("m_values", &KineticProfile::m_values);
  m.def("kinetic_measure", &kinetic_measure, py::arg("front"),
        py::arg("v_samples") = 129);

  py::class_<DensityFitReport>(m, "DensityFitReport")
      .def_readonly("alpha_hat", &DensityFitReport::alpha_hat)
      .def_readonly("K_hat", &DensityFitReport::K_hat)
      .def_readonly("all_zero", &DensityFitReport::all_zero)
      .def_readonly("radii", &DensityFitReport::radii)
      .def_readonly("masses", &DensityFitReport::masses)
      .def("is_member", &DensityFitReport::is_member, py::arg("alpha"), py::arg("K"));
  m.def("density_fit", &density_fit, py::arg("measure"), py::arg("z"), py::arg("radii"));

  py::class_<Potential>(m, "Potential")
      .def_readonly("h", &Potential::h)
      .def_readonly("lipschitz_x", &Potential::lipschitz_x)
      .def_readonly("loop_defect", &Potential::loop_defect)
      .def_readonly("residual", &Potential::residual);
  m.def(
      "reconstruct_potential",
      [](const ScalarField& u) { return reconstruct_potential(u); }, py::arg("u"));

  py::class_<ViscositySolution>(m, "ViscositySolution")
      .def_readonly("h_bar", &ViscositySolution::h_bar)
      .def("to_csv", [](const ViscositySolution& v) {
        std::ostringstream os;
        v.write_csv(os);
        return os.str();
      });
  m.def("hopf_lax",
        [](const ScalarField& h) { return hopf_lax(boundary_from(h)); },
        py::arg("h"), "Hopf-Lax viscosity solution from the parabolic boundary of h");
  m.def("entropy_solution_from", &entropy_solution_from, py::arg("viscosity_solution"));
  m.def("sup_convolution", &sup_convolution, py::arg("field"), py::arg("rho"));
  m.def("semiconvexity_defect", &semiconvexity_defect, py::arg("field"), py::arg("r"));
  m.def(
      "subsolution_defect",
      [](const ScalarField& zeta, double delta) {
        SubsolutionReport rep = subsolution_defect(zeta, delta);
        return py::make_tuple(rep.defect, rep.clean_fraction);
      },
      py::arg("zeta"), py::arg("delta"));

  py::class_<EstimateReport>(m, "EstimateReport")
      .def_readonly("name", &EstimateReport::name)
      .def_readonly("lhs", &EstimateReport::lhs)
      .def_readonly("rhs_raw", &EstimateReport::rhs_raw)
      .def_readonly("empirical_constant", &EstimateReport::empirical_constant)
      .def_readonly("pass_flag", &EstimateReport::pass)
      .def_readonly("inconsistent", &EstimateReport::inconsistent)
      .def("to_json", &EstimateReport::to_json);

  py::class_<DecayReport>(m, "DecayReport")
      .def_readonly("samples", &DecayReport::samples)
      .def_readonly("fitted_slope", &DecayReport::fitted_slope)
      .def_readonly("slope_floor", &DecayReport::slope_floor)
      .def_readonly("alpha_hat", &DecayReport::alpha_hat)
      .def_readonly("pass_flag", &DecayReport::pass)
      .def("to_json", &DecayReport::to_json);

  m.def("verify_errorvisc",
        py::overload_cast<const ScalarField&, double, const DiscreteMeasure&>(
            &verify_errorvisc),
        py::arg("u"), py::arg("t1"), py::arg("mu"));
  m.def("verify_errorvisc",
        py::overload_cast<const ScalarField&, double>(&verify_errorvisc), py::arg("u"),
        py::arg("t1"));
  m.def("verify_errorentropy", &verify_errorentropy, py::arg("u"), py::arg("mu"));
  m.def("quartic_compactness", &quartic_compactness, py::arg("u"), py::arg("r"),
        py::arg("mu"));
  m.def("oleinik_defect", &oleinik_defect, py::arg("zeta"), py::arg("t_origin"));
  m.def("campanato_decay", &campanato_decay, py::arg("u"), py::arg("mu"), py::arg("z"),
        py::arg("radii"),
        py::arg("front_dist") = std::numeric_limits<double>::infinity());
  m.def("time_transfer_check", &time_transfer_check, py::arg("u"), py::arg("r"));

  m.def("catalog", &catalog_listing);
  m.def(
      "run_scenario",
      [](const std::string& id) {
        const ScenarioConfig* cfg = find_builtin(id);
        if (cfg == nullptr)
          throw PreconditionError("run_scenario", "unknown built-in id: " + id);
        ScenarioResult res = run_scenario(*cfg);
        py::dict out;
        out["id"] = res.id;
        out["all_pass"] = res.all_pass;
        py::list reports;
        for (const auto& r : res.estimates) reports.append(r.to_json());
        for (const auto& r : res.decays) reports.append(r.to_json());
        out["reports"] = reports;
        return out;
      },
      py::arg("id"));
  m.def("set_jobs", &set_jobs, py::arg("n"));
}
