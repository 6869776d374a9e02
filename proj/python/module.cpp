#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entropic/apparatus.hpp"
#include "entropic/bounds.hpp"
#include "entropic/distributions.hpp"
#include "entropic/entropy.hpp"
#include "entropic/errors.hpp"
#include "entropic/minimizer.hpp"
#include "entropic/states.hpp"
#include "entropic/verify.hpp"

namespace py = pybind11;
using namespace entropic;

namespace {

// (x, f) arrays for a sampled density.
py::tuple as_arrays(const ProbabilityDensity& d) {
  const Grid& g = d.grid();
  py::array_t<double> x(g.count()), f(g.count());
  auto xs = x.mutable_unchecked<1>();
  auto fs = f.mutable_unchecked<1>();
  for (std::size_t i = 0; i < g.count(); ++i) {
    xs(i) = g.at(i);
    fs(i) = d[i];
  }
  return py::make_tuple(x, f);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entropic uncertainty of pointer-based joint position-momentum measurements";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_RuntimeError);
  py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);
  py::register_exception<NumericalConsistencyError>(m, "NumericalConsistencyError", PyExc_RuntimeError);
  py::register_exception<BoundViolation>(m, "BoundViolation", PyExc_RuntimeError);

  py::class_<MeasurementSetup>(m, "MeasurementSetup")
      .def(py::init([](double k1, double k2, double T, double s1, double s2) {
             MeasurementSetup s{k1, k2, T, s1, s2};
             s.validate();
             return s;
           }),
           py::arg("kappa1"), py::arg("kappa2"), py::arg("T"), py::arg("sigma1_sq"), py::arg("sigma2_sq"))
      .def_readonly("kappa1", &MeasurementSetup::kappa1)
      .def_readonly("kappa2", &MeasurementSetup::kappa2)
      .def_readonly("T", &MeasurementSetup::T)
      .def_readonly("sigma1_sq", &MeasurementSetup::sigma1_sq)
      .def_readonly("sigma2_sq", &MeasurementSetup::sigma2_sq);

  py::class_<NoiseTerms>(m, "NoiseTerms")
      .def(py::init<double, double>(), py::arg("delta_x"), py::arg("delta_p"))
      .def_property_readonly("delta_x", &NoiseTerms::delta_x)
      .def_property_readonly("delta_p", &NoiseTerms::delta_p)
      .def_property_readonly("product", [](const NoiseTerms& n) { return noise_product(n); })
      .def_property_readonly("below_floor", &NoiseTerms::below_floor)
      .def("__repr__", [](const NoiseTerms& n) {
        return "NoiseTerms(delta_x=" + std::to_string(n.delta_x()) + ", delta_p=" + std::to_string(n.delta_p()) + ")";
      });

  m.def("noise_terms", &noise_terms, py::arg("setup"));
  m.def("noise_product", &noise_product, py::arg("noise"));

  py::class_<SystemState>(m, "SystemState")
      .def("position_amplitude", &SystemState::position_amplitude, py::arg("x"))
      .def("momentum_amplitude", &SystemState::momentum_amplitude, py::arg("p"));
  m.def("make_squeezed", &make_squeezed, py::arg("sigma2"));
  m.def("make_fock", &make_fock, py::arg("coeffs"));

  m.def(
      "position_density", [](const SystemState& s) { return as_arrays(position_density(s)); }, py::arg("state"));
  m.def(
      "momentum_density", [](const SystemState& s) { return as_arrays(momentum_density(s)); }, py::arg("state"));
  m.def(
      "inferred_position_density",
      [](const SystemState& s, const NoiseTerms& n) { return as_arrays(inferred_position_density(s, n)); },
      py::arg("state"), py::arg("noise"));
  m.def(
      "inferred_momentum_density",
      [](const SystemState& s, const NoiseTerms& n) { return as_arrays(inferred_momentum_density(s, n)); },
      py::arg("state"), py::arg("noise"));

  py::class_<EntropyResult>(m, "EntropyResult")
      .def_readonly("s_x", &EntropyResult::s_x)
      .def_readonly("s_p", &EntropyResult::s_p)
      .def_readonly("collective", &EntropyResult::collective);
  py::class_<SystemEntropies>(m, "SystemEntropies")
      .def_readonly("s_x", &SystemEntropies::s_x)
      .def_readonly("s_p", &SystemEntropies::s_p);

  m.def(
      "marginal_entropies",
      [](const SystemState& s, const NoiseTerms& n, std::size_t count) { return marginal_entropies(s, n, count); },
      py::arg("state"), py::arg("noise"), py::arg("count") = kDefaultGridPoints);
  m.def(
      "system_entropies", [](const SystemState& s, std::size_t count) { return system_entropies(s, count); },
      py::arg("state"), py::arg("count") = kDefaultGridPoints);
  m.def("squeezed_collective_entropy_closed_form", &squeezed_collective_entropy_closed_form, py::arg("sigma2"),
        py::arg("noise"));

  py::class_<BoundParams>(m, "BoundParams")
      .def(py::init<double, double>(), py::arg("lambda_x"), py::arg("lambda_p"))
      .def_readonly("lambda_x", &BoundParams::lambda_x)
      .def_readonly("lambda_p", &BoundParams::lambda_p);

  py::class_<OptimalBound>(m, "OptimalBound")
      .def_readonly("bound", &OptimalBound::bound)
      .def_readonly("lambda_", &OptimalBound::lambda);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("params", &BoundReport::params)
      .def_readonly("single_lambda", &BoundReport::single_lambda)
      .def_readonly("delta_x", &BoundReport::delta_x)
      .def_readonly("delta_p", &BoundReport::delta_p)
      .def_readonly("s_x_system", &BoundReport::s_x_system)
      .def_readonly("s_p_system", &BoundReport::s_p_system)
      .def_readonly("s_x", &BoundReport::s_x)
      .def_readonly("s_p", &BoundReport::s_p)
      .def_readonly("collective", &BoundReport::collective)
      .def_readonly("omega", &BoundReport::omega)
      .def_readonly("lambda_family", &BoundReport::lambda_family)
      .def_readonly("system_bound", &BoundReport::system_bound)
      .def_readonly("noise_bound", &BoundReport::noise_bound)
      .def_readonly("balanced_bound", &BoundReport::balanced_bound)
      .def_readonly("balanced_simplified", &BoundReport::balanced_simplified)
      .def_readonly("single_param", &BoundReport::single_param)
      .def_readonly("optimal", &BoundReport::optimal)
      .def_readonly("optimal_lambda", &BoundReport::optimal_lambda);

  m.def("theta", &theta, py::arg("lambda_"));
  m.def("gaussian_weight", &gaussian_weight, py::arg("spread_f"), py::arg("spread_g"));
  m.def("lieb_lower_bound", &lieb_lower_bound, py::arg("s_x_system"), py::arg("s_p_system"), py::arg("noise"),
        py::arg("params"));
  m.def("single_param_bound", &single_param_bound, py::arg("noise"), py::arg("lambda_"));
  m.def("optimal_bound", &optimal_bound, py::arg("noise"));
  m.def("maximize_single_param_bound", &maximize_single_param_bound, py::arg("noise"));
  m.def("wehrl_constant", &wehrl_constant);
  m.def("hirschman_constant", &hirschman_constant);
  m.def("hirschman_deficit", &hirschman_deficit, py::arg("state"));
  m.def("balanced_simplified_bound", &balanced_simplified_bound, py::arg("noise"));
  m.def("minimal_variance", &minimal_variance, py::arg("noise"));
  m.def(
      "report", [](const SystemState& s, const NoiseTerms& n, const BoundParams& p) { return report(s, n, p); },
      py::arg("state"), py::arg("noise"), py::arg("params") = BoundParams(0.5, 0.5));

  py::class_<RestartOutcome>(m, "RestartOutcome")
      .def_readonly("coeffs", &RestartOutcome::coeffs)
      .def_readonly("entropy", &RestartOutcome::entropy)
      .def_readonly("iterations", &RestartOutcome::iterations)
      .def_readonly("converged", &RestartOutcome::converged);

  py::class_<OptimizationResult>(m, "OptimizationResult")
      .def_readonly("coeffs", &OptimizationResult::coeffs)
      .def_readonly("entropy", &OptimizationResult::entropy)
      .def_readonly("iterations", &OptimizationResult::iterations)
      .def_readonly("converged", &OptimizationResult::converged)
      .def_readonly("best_restart", &OptimizationResult::best_restart)
      .def_readonly("restarts", &OptimizationResult::restarts);

  // Returns the best attempt even when no restart converged; check `converged`.
  m.def(
      "find_minimal_entropy_state",
      [](const NoiseTerms& noise, std::size_t n_max, std::size_t max_iters, std::size_t restarts,
         std::uint64_t seed) {
        OptimizerConfig c;
        c.n_max = n_max;
        c.max_iters = max_iters;
        c.restarts = restarts;
        c.seed = seed;
        py::gil_scoped_release release;
        try {
          return find_minimal_entropy_state(noise, c);
        } catch (const NonConvergenceError& e) {
          return e.best();
        }
      },
      py::arg("noise"), py::arg("n_max") = 12, py::arg("max_iters") = 20000, py::arg("restarts") = 8,
      py::arg("seed") = 0);
  m.def(
      "fidelity_with_squeezed",
      [](const std::vector<Complex>& c, double s2) { return fidelity_with_squeezed(c, s2); }, py::arg("coeffs"),
      py::arg("sigma2"));
  m.def(
      "aligned_fidelity_with_squeezed",
      [](const std::vector<Complex>& c, double s2) { return aligned_fidelity_with_squeezed(c, s2); },
      py::arg("coeffs"), py::arg("sigma2"));

  py::class_<SuiteResult>(m, "SuiteResult")
      .def_readonly("name", &SuiteResult::name)
      .def_readonly("checks", &SuiteResult::checks)
      .def_readonly("failures", &SuiteResult::failures)
      .def_readonly("margin", &SuiteResult::margin)
      .def_readonly("notes", &SuiteResult::notes)
      .def_property_readonly("passed", &SuiteResult::passed);
  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed) {
        VerifyOptions o;
        o.seed = seed;
        return run_suite(name, o);
      },
      py::arg("name"), py::arg("seed") = 2024);
}
