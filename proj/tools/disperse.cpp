// Command-line front end: one subcommand per experiment, JSON verdicts and
// CSV series in the output directory. Exit status 0 when every audit passes,
// 2 when an audit fails, 1 on errors.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "disperse/experiments.hpp"
#include "disperse/exponents.hpp"
#include "disperse/io.hpp"
#include "disperse/tensors.hpp"

using namespace disperse;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string out = "out";
  int refine = 0;
  int jobs = 1;
  unsigned long long seed = 1;
  bool snapshots = false;
};

// Exponents in configs may be numbers or the string "inf".
double exponent(const Json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfinity;
    return std::stod(s);
  }
  return v.get<double>();
}

Json exponent_json(double x) { return std::isinf(x) ? Json("inf") : Json(x); }

std::vector<double> exponent_list(const Json& cfg, const char* key, std::vector<double> fallback) {
  if (!cfg.contains(key)) return fallback;
  std::vector<double> out;
  for (const auto& v : cfg.at(key)) out.push_back(exponent(v));
  return out;
}

void refine_grid(Json& cfg, int k) {
  if (k <= 0) return;
  const int factor = 1 << k;
  if (cfg.contains("cells")) {
    for (auto& c : cfg["cells"]) c = c.get<int>() * factor;
  }
  if (cfg.contains("spacing")) {
    for (auto& h : cfg["spacing"]) h = h.get<double>() / factor;
  }
}

Json theory_block(const FluxSpec& flux, double p, double q) {
  const int n = flux.dim();
  const auto [alpha, beta] = decay_exponents(flux, p, q);
  const auto kn = kappa_nu(n + 1);
  const auto mono = monomial_exponents(p, q, flux.k);
  return {{"p", exponent_json(p)},
          {"q", exponent_json(q)},
          {"n", n},
          {"flux_k", flux.k},
          {"alpha", alpha},
          {"beta", beta},
          {"kappa", kn.kappa},
          {"nu", kn.nu},
          {"p_star", burgers_p_star(p, n)},
          {"Q", mono.Q},
          {"theta", mono.theta},
          {"admissible", mono.admissible}};
}

class Verdict {
 public:
  explicit Verdict(std::string name) { json_["experiment"] = std::move(name); }

  void audit(const std::string& name, bool pass, Json details = Json::object()) {
    details["name"] = name;
    details["pass"] = pass;
    json_["audits"].push_back(details);
    pass_ = pass_ && pass;
  }
  Json& operator[](const char* key) { return json_[key]; }
  bool pass() const { return pass_; }

  int finish(const fs::path& out) {
    json_["pass"] = pass_;
    if (!json_.contains("audits")) json_["audits"] = Json::array();
    const auto path = out / (json_["experiment"].get<std::string>() + "_verdict.json");
    write_json(path, json_);
    for (const auto& a : json_["audits"]) {
      std::cout << (a["pass"].get<bool>() ? "PASS " : "FAIL ") << a["name"].get<std::string>()
                << '\n';
    }
    std::cout << "verdict: " << path.string() << '\n';
    return pass_ ? 0 : 2;
  }

 private:
  Json json_;
  bool pass_ = true;
};

SolverConfig solver_config(const Json& cfg, const Options& o) {
  SolverConfig c = parse_solver_config(cfg);
  if (!cfg.contains("threads")) c.threads = o.jobs;
  return c;
}

// ---------------------------------------------------------------------------

int cmd_exponents(const Json& cfg, const Options& o) {
  const auto ps = exponent_list(cfg, "p", {1, 2, 3});
  const auto qs = exponent_list(cfg, "q", {2, 4, kInfinity});
  const auto ns = cfg.value("n", std::vector<int>{1, 2, 3});
  Verdict v("exponents");
  std::vector<std::vector<double>> rows;
  for (int n : ns) {
    const auto kn = kappa_nu(n + 1);
    for (double p : ps) {
      for (double q : qs) {
        if (q < p) continue;
        const auto e = burgers_exponents(p, q, n);
        rows.push_back({p, q, double(n), e.alpha, e.beta, e.p_star, kn.kappa, kn.nu});
      }
    }
  }
  write_table_csv(fs::path(o.out) / "exponents.csv",
                  {"p", "q", "n", "alpha", "beta", "p_star", "kappa", "nu"}, rows);

  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int samples = cfg.value("samples", 1000);
  double worst = 0.0;
  for (int n : ns) {
    for (int i = 0; i < samples; ++i) {
      const double p = 1 + 9 * unit(rng);
      const double q = p + 1e-3 + 10 * unit(rng);
      const double r = i % 4 == 0 ? kInfinity : q + 1e-3 + 10 * unit(rng);
      const double theta = std::isinf(r) ? 1 - p / q : (1 / p - 1 / q) / (1 / p - 1 / r);
      const auto pq = burgers_exponents(p, q, n), pr = burgers_exponents(p, r, n),
                 qr = burgers_exponents(q, r, n);
      auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
      worst = std::max({worst, rel(pq.alpha, 1 - theta + theta * pr.alpha),
                        rel(pq.beta, theta * pr.beta), rel(pr.alpha, pq.alpha * qr.alpha),
                        rel(pr.beta, qr.beta + pq.beta * qr.alpha)});
    }
  }
  v.audit("interpolation_and_composition", worst <= 1e-12,
          {{"worst_relative_error", worst}, {"samples_per_n", samples}});
  double linkage = 0.0;
  for (int n : ns) {
    const auto e = burgers_exponents(1, kInfinity, n);
    const auto kn = kappa_nu(n + 1);
    linkage = std::max({linkage, std::abs(kn.kappa - e.beta), std::abs(1 - kn.nu - e.alpha)});
  }
  v.audit("kappa_nu_linkage", linkage <= 1e-15, {{"worst_error", linkage}});
  v["theory"] = theory_block(FluxSpec::burgers(ns.front()), ps.front(), qs.back());
  return v.finish(o.out);
}

int cmd_tensor(const Json& cfg, const Options& o) {
  const auto as = cfg.value("a", std::vector<double>{0.5, 1, 2, 4});
  const auto ps = cfg.value("p", std::vector<double>{1, 2, 3});
  Verdict v("tensor");
  std::vector<std::vector<double>> entries, dets;
  double worst = 0.0;
  bool spd = true;
  const bool monomial = cfg.contains("flux_k");
  const auto k = monomial ? cfg.at("flux_k").get<std::vector<int>>() : std::vector<int>{};
  const auto ds = cfg.value("d", std::vector<int>{2, 3, 4});
  for (double p : ps) {
    const std::vector<int> dims = monomial ? std::vector<int>{int(k.size()) + 1} : ds;
    for (int d : dims) {
      for (double a : as) {
        const TensorEval t = monomial ? monomial_tensor(a, p, k) : burgers_tensor(a, p, d - 1);
        for (std::size_t i = 0; i < t.dim; ++i)
          for (std::size_t j = 0; j < t.dim; ++j)
            entries.push_back({a, p, double(d), double(i), double(j), t.entries(i, j)});
        const double law = t.scale_constant * std::pow(a, t.det_exponent);
        const double err = std::abs(t.det - law) / std::max(std::abs(law), 1e-300);
        worst = std::max(worst, err);
        spd = spd && (a > 0 ? t.spd : !t.spd);
        dets.push_back({a, p, double(d), t.det, t.scale_constant, t.det_exponent, err});
      }
    }
  }
  write_table_csv(fs::path(o.out) / "tensor_entries.csv", {"a", "p", "d", "i", "j", "entry"},
                  entries);
  write_table_csv(fs::path(o.out) / "tensor_det.csv",
                  {"a", "p", "d", "det", monomial ? "Delta" : "H", "det_exponent", "rel_error"},
                  dets);
  v.audit("determinant_scaling_law", worst <= 1e-8, {{"worst_relative_error", worst}});
  v.audit("positive_definite_iff_a_positive", spd);
  const FluxSpec flux = monomial ? FluxSpec{k} : FluxSpec::burgers(ds.front() - 1);
  v["theory"] = theory_block(flux, ps.front(), kInfinity);
  return v.finish(o.out);
}

int cmd_solve(const Json& cfg, const Options& o) {
  const SolverConfig c = solver_config(cfg, o);
  const Field u0 = build_initial_field(cfg);
  ReportOptions ro;
  ro.norms = exponent_list(cfg, "norms", {1, 2, kInfinity});
  ro.entropy_indices = cfg.value("entropy_indices", std::vector<double>{});
  ro.keep_snapshots = o.snapshots;
  const RunReport r = solve(u0, c, ro);
  write_report_csv(fs::path(o.out) / "report.csv", r);
  if (o.snapshots) {
    for (std::size_t i = 0; i < r.snapshots.size(); ++i) {
      write_snapshot_csv(fs::path(o.out) / ("snapshot_" + std::to_string(i) + ".csv"),
                         r.snapshots[i], r.times[i]);
    }
  }
  Verdict v("solve");
  bool monotone = true;
  for (const auto& [p, series] : r.norms) {
    for (std::size_t i = 1; i < series.size(); ++i) {
      monotone = monotone && series[i] <= series[i - 1] * (1 + 1e-10);
    }
  }
  v.audit("norms_nonincreasing", monotone);
  bool dissipative = true;
  for (const auto& [idx, series] : r.entropy_mass) {
    for (double m : series) dissipative = dissipative && m >= -1e-10;
  }
  v.audit("entropy_production_nonnegative", dissipative);
  v["steps"] = r.steps;
  v["theory"] = theory_block(c.flux, 1.0, kInfinity);
  return v.finish(o.out);
}

int cmd_decay(const Json& cfg, const Options& o) {
  DecayExperiment e;
  e.config = solver_config(cfg, o);
  e.u0 = build_initial_field(cfg);
  const Json d = cfg.value("decay", Json::object());
  if (d.contains("pairs")) {
    e.pairs.clear();
    for (const auto& pr : d.at("pairs")) e.pairs.emplace_back(exponent(pr.at(0)), exponent(pr.at(1)));
  }
  e.t0 = d.value("t0", e.t0);
  e.t1 = d.value("t1", e.t1);
  e.slope_tolerance = d.value("slope_tolerance", e.config.flux.dim() == 1 ? 0.05 : 0.1);
  e.fit_slopes = d.value("fit_slopes", e.config.flux.dim() == 1);
  e.heat_slack = d.value("heat_slack", e.heat_slack);
  const auto r = run_decay_experiment(e);
  write_report_csv(fs::path(o.out) / "report.csv", r.report);

  Verdict v("decay");
  v["degenerate"] = r.degenerate;
  std::vector<std::vector<double>> rows;
  for (const auto& f : r.fits) {
    v.audit("slope_p" + format_number(f.p) + "_q" + format_number(f.q), f.pass,
            {{"slope", f.slope}, {"theory_beta", f.theory_beta}, {"prefactor", f.prefactor},
             {"residual", f.residual}, {"samples", f.samples}});
    rows.push_back({f.p, f.q, f.slope, f.theory_beta, f.prefactor, f.residual});
  }
  write_table_csv(fs::path(o.out) / "fits.csv",
                  {"p", "q", "slope", "theory_beta", "prefactor", "residual"}, rows);
  for (const auto& a : r.audits) {
    v.audit("bound_p" + format_number(a.p) + "_q" + format_number(a.q), a.bounded,
            {{"alpha", a.alpha}, {"beta", a.beta}, {"empirical_constant", a.empirical_constant}});
  }
  if (r.heat_ratio) {
    v.audit("one_dimensional_sup_bound", *r.heat_ratio <= 1 + e.heat_slack,
            {{"worst_ratio", *r.heat_ratio}});
  }
  v["theory"] = theory_block(e.config.flux, e.pairs.front().first, e.pairs.front().second);
  return v.finish(o.out);
}

int cmd_contraction(const Json& cfg, const Options& o) {
  const SolverConfig c = solver_config(cfg, o);
  Field u0, v0;
  if (cfg.contains("random")) {
    const Json& rnd = cfg.at("random");
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    u0 = Field::zeros(parse_grid(cfg));
    v0 = u0;
    const double lo = rnd.value("low", 0.0), hi = rnd.value("high", 1.0);
    const double gap = rnd.value("gap", 0.5);
    for (std::size_t i = 0; i < u0.size(); ++i) {
      u0.values[i] = lo + (hi - lo) * unit(rng);
      v0.values[i] = u0.values[i] + gap * unit(rng);
    }
  } else {
    u0 = build_initial_field(cfg);
    if (cfg.contains("initial_v")) {
      Json other = cfg;
      other["initial"] = cfg.at("initial_v");
      v0 = build_initial_field(other);
    } else {
      v0 = u0;
      const double offset = cfg.value("offset", 0.0);
      for (double& x : v0.values) x += offset;
    }
  }
  const auto r = run_contraction_experiment(u0, v0, c);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.times.size(); ++i) rows.push_back({r.times[i], r.distances[i]});
  write_table_csv(fs::path(o.out) / "distances.csv", {"t", "l1_distance"}, rows);
  Verdict v("contraction");
  v["initial_distance"] = r.initial_distance;
  v.audit("distance_nonincreasing", r.nonincreasing && r.bounded_by_initial);
  if (r.ordered_data) v.audit("comparison", r.comparison_holds);
  const double sup = std::max({1.0, u0.max_abs(), v0.max_abs()});
  v.audit("maximum_principle", r.max_principle_excess <= 1e-13 * sup,
          {{"excess", r.max_principle_excess}});
  if (c.boundary == Boundary::periodic) {
    v.audit("mass_conservation", r.mass_drift <= 1e-12, {{"relative_drift", r.mass_drift}});
  }
  v["theory"] = theory_block(c.flux, 1.0, kInfinity);
  return v.finish(o.out);
}

int cmd_scaling(const Json& cfg, const Options& o) {
  const SolverConfig c = solver_config(cfg, o);
  const Field u0 = build_initial_field(cfg);
  const double lambda = cfg.value("lambda", 2.0), mu = cfg.value("mu", 1.0);
  const auto r = run_scaling_experiment(u0, lambda, mu, c, cfg.value("tolerance", 0.05));
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.times.size(); ++i) rows.push_back({r.times[i], r.mismatch[i]});
  write_table_csv(fs::path(o.out) / "mismatch.csv", {"t_scaled", "relative_l1_mismatch"}, rows);
  Verdict v("scaling");
  v.audit("equivariance", r.equivariant, {{"mismatch", r.mismatch}});
  v.audit("data_identity", r.identity_exact, {{"q", r.identity_q}, {"error", r.identity_error}});
  v["lambda"] = lambda;
  v["mu"] = mu;
  v["theory"] = theory_block(c.flux, 1.0, kInfinity);
  return v.finish(o.out);
}

int cmd_strichartz(const Json& cfg, const Options& o) {
  const SolverConfig c = solver_config(cfg, o);
  const double p = cfg.value("p", 1.0);
  const auto lambdas = cfg.value("lambdas", std::vector<double>{0.5, 1.0, 2.0});
  const auto r = run_strichartz_experiment(parse_initial(cfg), parse_grid(cfg), c, p, lambdas,
                                           cfg.value("spread_tolerance", 0.10), o.jobs);
  std::vector<std::vector<double>> rows;
  for (const auto& run : r.runs) rows.push_back({run.lambda, run.lhs_power, run.rhs, run.ratio});
  write_table_csv(fs::path(o.out) / "ratios.csv", {"lambda", "lhs_power", "rhs", "ratio"}, rows);
  Verdict v("strichartz");
  v["degenerate"] = r.degenerate;
  v.audit("ratio_spread", r.pass, {{"spread", r.spread}});
  v["theory"] = theory_block(c.flux, p, kInfinity);
  return v.finish(o.out);
}

int cmd_degiorgi(const Json& cfg, const Options& o) {
  SolverConfig c = solver_config(cfg, o);
  const double p = cfg.value("p", 1.0);
  Field u0 = build_initial_field(cfg);
  if (cfg.value("normalize", true)) u0 = companion_field(u0, normalizing_lambda(u0, p), 1.0);
  std::vector<double> B;
  if (cfg.contains("B_grid") && cfg.at("B_grid").is_array()) {
    B = cfg.at("B_grid").get<std::vector<double>>();
  } else {
    const Json g = cfg.value("B_grid", Json::object());
    const double lo = g.value("min", 0.01), hi = g.value("max", 100.0);
    const double ratio = g.value("ratio", 1.001);
    for (double b = lo; b <= hi; b *= ratio) B.push_back(b);
  }
  const int k_max = cfg.value("k_max", 10);
  const auto r = run_degiorgi_experiment(u0, p, B, c, k_max, cfg.value("threshold", 1e-3));
  std::vector<std::vector<double>> rows;
  for (const auto& t : r.traces) {
    for (std::size_t k = 0; k < t.a.size(); ++k) rows.push_back({t.B, double(k), t.t[k], t.level[k], t.a[k], t.b[k]});
  }
  write_table_csv(fs::path(o.out) / "traces.csv", {"B", "k", "t_k", "level", "a_k", "b_k"}, rows);
  Verdict v("degiorgi");
  v.audit("minimal_B_exists", r.minimal_B.has_value(),
          {{"minimal_B", r.minimal_B ? Json(*r.minimal_B) : Json(nullptr)}});
  v.audit("sup_at_one_below_B", r.pass, {{"sup_at_one", r.sup_at_one}});
  v["recurrence_C"] = r.recurrence_C;
  const auto dg = degiorgi_params(p, c.flux.dim());
  v["parameters"] = {{"p_star", dg.p_star}, {"r", dg.r}, {"delta", dg.delta}, {"gamma", dg.gamma}};
  v["theory"] = theory_block(c.flux, p, kInfinity);
  return v.finish(o.out);
}

int cmd_fundamental(const Json& cfg, const Options& o) {
  FundamentalExperiment e;
  e.m = cfg.value("m", e.m);
  e.cells = cfg.value("cells", e.cells);
  e.lower = cfg.value("lower", e.lower);
  e.upper = cfg.value("upper", e.upper);
  e.seed_cells = cfg.value("seed_cells", e.seed_cells);
  e.times = cfg.value("times", e.times);
  e.reference_time = cfg.value("reference_time", e.reference_time);
  e.cfl = cfg.value("cfl", e.cfl);
  e.jobs = o.jobs;
  const auto r = run_fundamental_experiment(e);
  std::vector<std::vector<double>> rows;
  for (const auto& l : r.levels) {
    for (std::size_t i = 0; i < l.times.size(); ++i) {
      rows.push_back({double(l.cells), l.dy, l.times[i], l.l1_error[i], l.sup[i], l.mass[i]});
    }
  }
  write_table_csv(fs::path(o.out) / "convergence.csv",
                  {"cells", "dy", "t", "l1_error", "sup", "mass"}, rows);
  Verdict v("fundamental");
  v.audit("l1_error", r.finest_error <= 0.02, {{"finest_error", r.finest_error}});
  bool factors = true;
  for (double f : r.convergence_factors) factors = factors && f >= 1.5;
  v.audit("convergence_factor", factors, {{"factors", r.convergence_factors}});
  v.audit("sup_norm", r.sup_relative_error <= 0.05, {{"relative_error", r.sup_relative_error}});
  v["mass_error"] = r.mass_error;
  v["theory"] = theory_block(FluxSpec::burgers(1), 1.0, kInfinity);
  return v.finish(o.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume experiments on dispersive decay for multi-dimensional Burgers-type systems"};
  app.require_subcommand(1);
  Options o;
  using Handler = int (*)(const Json&, const Options&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands{
      {"exponents", "tabulate decay exponents and check their identities", cmd_exponents},
      {"tensor", "entropy-tensor entries and determinant law", cmd_tensor},
      {"solve", "run the solver and write the report", cmd_solve},
      {"decay", "fit decay slopes and audit the decay bounds", cmd_decay},
      {"contraction", "L1 contraction, comparison and maximum principle", cmd_contraction},
      {"scaling", "equivariance under the scaling group", cmd_scaling},
      {"strichartz", "space-time integral audit over a scaled family", cmd_strichartz},
      {"degiorgi", "level-set iteration monitor", cmd_degiorgi},
      {"fundamental", "convergence to the 1-D fundamental solution", cmd_fundamental},
  };
  std::vector<std::pair<CLI::App*, Handler>> subs;
  for (const auto& [name, help, handler] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "JSON config file");
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--refine", o.refine, "halve grid spacings k times")->check(CLI::NonNegativeNumber);
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "seed for random data");
    sub->add_flag("--snapshots", o.snapshots, "write field snapshots");
    subs.emplace_back(sub, handler);
  }
  CLI11_PARSE(app, argc, argv);

  try {
    Json cfg = o.config.empty() ? Json::object() : load_json(o.config);
    refine_grid(cfg, o.refine);
    fs::create_directories(o.out);
    for (const auto& [sub, handler] : subs) {
      if (sub->parsed()) return handler(cfg, o);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
