#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "disperse/experiments.hpp"
#include "disperse/exponents.hpp"
#include "disperse/io.hpp"
#include "disperse/tensors.hpp"

namespace py = pybind11;
using namespace disperse;

namespace {

py::dict exponents_dict(const DispersionExponents& e) {
  py::dict d;
  d["p"] = e.p;
  d["q"] = e.q;
  d["n"] = e.n;
  d["d"] = e.d;
  d["h_p"] = e.h_p;
  d["h_q"] = e.h_q;
  d["delta_p"] = e.delta_p;
  d["delta_q"] = e.delta_q;
  d["alpha"] = e.alpha;
  d["beta"] = e.beta;
  d["p_star"] = e.p_star;
  return d;
}

py::dict tensor_dict(const TensorEval& t) {
  std::vector<std::vector<double>> rows(t.dim, std::vector<double>(t.dim));
  for (std::size_t i = 0; i < t.dim; ++i)
    for (std::size_t j = 0; j < t.dim; ++j) rows[i][j] = t.entries(i, j);
  py::dict d;
  d["entries"] = rows;
  d["det"] = t.det;
  d["spd"] = t.spd;
  d["scale_constant"] = t.scale_constant;
  d["det_exponent"] = t.det_exponent;
  return d;
}

py::dict report_dict(const RunReport& r) {
  py::dict d;
  d["times"] = r.times;
  d["norms"] = r.norms;
  d["tv"] = r.tv;
  d["entropy_mass"] = r.entropy_mass;
  d["mass"] = r.mass;
  d["support_widths"] = r.support_widths;
  d["steps"] = r.steps;
  std::vector<std::vector<double>> snaps;
  for (const auto& s : r.snapshots) snaps.push_back(s.values);
  d["snapshots"] = snaps;
  return d;
}

// Runs the solver on a JSON config (same keys as the command-line tool).
py::dict solve_config(const std::string& config, bool snapshots) {
  const Json cfg = Json::parse(config);
  const SolverConfig c = parse_solver_config(cfg);
  ReportOptions o;
  o.keep_snapshots = snapshots;
  if (cfg.contains("entropy_indices")) o.entropy_indices = cfg.at("entropy_indices").get<std::vector<double>>();
  return report_dict(solve(build_initial_field(cfg), c, o));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decay exponents, entropy tensors and a finite-volume solver for monomial conservation laws";
  m.attr("inf") = kInfinity;

  m.def("burgers_exponents",
        [](double p, double q, int n) { return exponents_dict(burgers_exponents(p, q, n)); },
        py::arg("p"), py::arg("q"), py::arg("n"));
  m.def("kappa_nu", [](int d) {
    const auto k = kappa_nu(d);
    return py::make_tuple(k.kappa, k.nu);
  });
  m.def("monomial_exponents", [](double p, double q, std::vector<int> k) {
    const auto e = monomial_exponents(p, q, k);
    py::dict d;
    d["K"] = e.K;
    d["N"] = e.N;
    d["Q"] = e.Q;
    d["theta"] = e.theta;
    d["alpha"] = e.alpha;
    d["beta"] = e.beta;
    d["admissible"] = e.admissible;
    return d;
  });
  m.def("degiorgi_params", [](double p, int n) {
    const auto g = degiorgi_params(p, n);
    py::dict d;
    d["p_star"] = g.p_star;
    d["r"] = g.r;
    d["delta"] = g.delta;
    d["gamma"] = g.gamma;
    return d;
  });
  m.def("hilbert_like_det", &hilbert_like_det, py::arg("d"), py::arg("p"));
  m.def("burgers_tensor", [](double a, double p, int n) { return tensor_dict(burgers_tensor(a, p, n)); });
  m.def("monomial_tensor", [](double a, double p, std::vector<int> k) {
    return tensor_dict(monomial_tensor(a, p, k));
  });
  m.def("eo_flux", &eo_flux, py::arg("a"), py::arg("b"), py::arg("k"));
  m.def("fundamental_solution_1d", &fundamental_solution_1d, py::arg("m"), py::arg("t"), py::arg("y"));
  m.def("fit_decay", [](std::vector<double> t, std::vector<double> v, double t0, double t1) {
    const auto f = fit_decay(t, v, t0, t1);
    return py::make_tuple(f.slope, f.prefactor, f.residual);
  });
  m.def("geometric_times", &geometric_times, py::arg("t_min"), py::arg("t_max"), py::arg("count"),
        py::arg("with_zero") = true);
  m.def("solve", &solve_config, py::arg("config_json"), py::arg("snapshots") = false,
        "Run the solver on a JSON config string and return the report as a dict.");
  m.def("fundamental_study", [](std::vector<int> cells, double m) {
    FundamentalExperiment e;
    e.cells = cells;
    e.m = m;
    const auto r = run_fundamental_experiment(e);
    py::dict d;
    d["finest_error"] = r.finest_error;
    d["convergence_factors"] = r.convergence_factors;
    d["sup_relative_error"] = r.sup_relative_error;
    d["pass"] = r.pass;
    return d;
  }, py::arg("cells"), py::arg("m") = 1.0);

  py::register_exception<SolverBreakdown>(m, "SolverBreakdown");
  py::register_exception<CflViolation>(m, "CflViolation");
}
