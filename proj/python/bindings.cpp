#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "nodalvec/ansatz.hpp"
#include "nodalvec/coupled.hpp"
#include "nodalvec/energy.hpp"
#include "nodalvec/errors.hpp"
#include "nodalvec/experiment.hpp"
#include "nodalvec/ground_state.hpp"
#include "nodalvec/reduction.hpp"

namespace py = pybind11;
using namespace nodalvec;

namespace {

// Scalars map to floats, anything array-like to a float64 array of the same shape.
template <class F>
py::object apply(const py::object& r, F f) {
  if (py::isinstance<py::float_>(r) || py::isinstance<py::int_>(r))
    return py::float_(f(r.cast<double>()));
  auto in = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(r);
  if (!in) throw py::type_error("expected a number or an array of numbers");
  py::array_t<double> out(std::vector<py::ssize_t>(in.shape(), in.shape() + in.ndim()));
  const double* a = in.data();
  double* b = out.mutable_data();
  for (py::ssize_t i = 0; i < in.size(); ++i) b[i] = f(a[i]);
  return std::move(out);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nodal multi-peak solutions of a coupled Schroedinger system";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<RadialProfile>(m, "RadialProfile")
      .def_property_readonly("mu", &RadialProfile::mu)
      .def_property_readonly("c0", &RadialProfile::c0)
      .def_property_readonly("r_max", &RadialProfile::r_max)
      .def_property_readonly("center_value", &RadialProfile::center_value)
      .def("radii", [](const RadialProfile& p) { return py::array_t<double>(py::cast(p.radii())); })
      .def("values", [](const RadialProfile& p) {
        return py::array_t<double>(static_cast<py::ssize_t>(p.size()), p.values().data());
      })
      .def("evaluate", [](const RadialProfile& p, const py::object& r) {
             return apply(r, [&](double x) { return p.evaluate(x); });
           }, py::arg("r"))
      .def("derivative", [](const RadialProfile& p, const py::object& r) {
             return apply(r, [&](double x) { return p.derivative(x); });
           }, py::arg("r"))
      .def("dumps", [](const RadialProfile& p) {
        std::ostringstream os;
        p.save(os);
        return os.str();
      });

  m.def("solve_ground_state", [](double mu, double r_max, int nodes) {
        return solve_ground_state(mu, r_max, nodes);
      },
        py::arg("mu") = 1.0, py::arg("r_max") = 25.0, py::arg("nodes") = 8000);
  m.def("ode_residual_max", &ode_residual_max);
  m.def("decay_constant", [](const RadialProfile& p) { return decay_constant(p).c0; });

  py::class_<CoupledParams>(m, "CoupledParams")
      .def_readonly("mu1", &CoupledParams::mu1)
      .def_readonly("mu2", &CoupledParams::mu2)
      .def_readonly("beta", &CoupledParams::beta)
      .def_readonly("alpha", &CoupledParams::alpha)
      .def_readonly("gamma", &CoupledParams::gamma)
      .def_property_readonly("regime", [](const CoupledParams& p) { return std::string(to_string(p.regime)); })
      .def("has_amplitudes", &CoupledParams::has_amplitudes);
  m.def("classify", &classify, py::arg("mu1"), py::arg("mu2"), py::arg("beta"));
  m.def("synchronized_residual", [](const CoupledParams& p, const RadialProfile& w,
                                    const std::vector<double>& radii) {
    return synchronized_residual(p, w, radii);
  });

  m.def("predicted_radius", &predicted_radius, py::arg("eps"), py::arg("k"), py::arg("m"));
  m.def("admissible_interval", &admissible_interval, py::arg("eps"), py::arg("k"), py::arg("m"),
        py::arg("n"), py::arg("delta"));

  py::class_<ReducedModel>(m, "ReducedModel")
      .def(py::init([](double aB, double bC0, double C, double mm, double n, int k, double eps) {
             ReducedModel f;
             f.aB = aB;
             f.bC0 = bC0;
             f.C_int = C;
             f.m = mm;
             f.n = n;
             f.k = k;
             f.eps = eps;
             return f;
           }),
           py::arg("aB") = 1.0, py::arg("bC0") = 0.0, py::arg("C") = 1.0, py::arg("m") = 2.0,
           py::arg("n") = 2.0, py::arg("k") = 1, py::arg("eps") = 0.01)
      .def("value", &ReducedModel::value)
      .def("derivative", &ReducedModel::derivative);
  m.def("minimize_model", [](const ReducedModel& f, std::pair<double, double> S) {
    const ModelMinimum mm = minimize_model(f, S);
    return py::dict(py::arg("r_star") = mm.r_star, py::arg("f_star") = mm.f_star,
                    py::arg("interior") = mm.interior);
  });

  m.def("pair_interaction", [](const RadialProfile& w, double d, double eps) {
    const PairInteraction p = pair_interaction(w, d, eps);
    return py::dict(py::arg("value") = p.value, py::arg("c_hat") = p.c_hat,
                    py::arg("c_hat_algebraic") = p.c_hat_algebraic);
  });

  m.def("validate_config", [](const std::string& text) {
    py::list out;
    for (const Diagnostic& d : validate(ExperimentConfig::parse(text)))
      out.append(py::make_tuple(d.severity == Diagnostic::Severity::Error ? "error" : "warning",
                                d.condition, d.message));
    return out;
  });
  m.def(
      "run_experiment",
      [](const std::string& text, std::filesystem::path out, int workers, bool resume) {
        RunOptions o;
        o.output_dir = std::move(out);
        o.workers = workers;
        o.resume = resume;
        const ExperimentConfig cfg = ExperimentConfig::parse(text);
        py::gil_scoped_release release;
        return run_experiment(cfg, o);
      },
      py::arg("config_text"), py::arg("output_dir"), py::arg("workers") = 1,
      py::arg("resume") = false);
  m.def("write_plot_data", &write_plot_data, py::arg("output_dir"));
}
