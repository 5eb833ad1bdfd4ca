// Acceptance gate: one PASS/FAIL line per criterion, with its runtime budget.
// Usage: acceptance [AC1 AC2 ...]   (no arguments runs all of them)

#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "disperse/experiments.hpp"
#include "disperse/exponents.hpp"
#include "disperse/tensors.hpp"

using namespace disperse;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double rel(double a, double b) {
  return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

Outcome exponent_identities() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int triples = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 1000; ++i) {
      const double p = 1.0 + 9.0 * unit(rng);
      const double q = p + 1e-3 + 10.0 * unit(rng);
      const double r = i % 4 == 0 ? kInfinity : q + 1e-3 + 10.0 * unit(rng);
      const double theta = std::isinf(r) ? 1.0 - p / q : (1 / p - 1 / q) / (1 / p - 1 / r);
      const auto pq = burgers_exponents(p, q, n);
      const auto pr = burgers_exponents(p, r, n);
      const auto qr = burgers_exponents(q, r, n);
      worst = std::max({worst, rel(pq.alpha, 1 - theta + theta * pr.alpha),
                        rel(pq.beta, theta * pr.beta), rel(pr.alpha, pq.alpha * qr.alpha),
                        rel(pr.beta, qr.beta + pq.beta * qr.alpha)});
      ++triples;
    }
  }
  double reduction = 0.0;
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> k(n);
    for (int j = 0; j < n; ++j) k[j] = j + 1;
    for (int i = 0; i < 250; ++i) {
      const double p = 1.0 + 20.0 * unit(rng);
      const double q = i % 5 == 0 ? kInfinity : p + 20.0 * unit(rng);
      const auto m = monomial_exponents(p, q, k);
      const auto b = burgers_exponents(p, q, n);
      reduction = std::max({reduction, rel(m.alpha, b.alpha), rel(m.beta, b.beta)});
    }
  }
  return {worst <= 1e-12 && reduction <= 1e-12,
          fmt("%d triples, worst identity error %.2e, reduction error %.2e", triples, worst,
              reduction)};
}

Outcome determinant_law() {
  using boost::multiprecision::cpp_rational;
  const cpp_rational h21 = cpp_rational(1) * cpp_rational(1, 3) - cpp_rational(1, 2) * cpp_rational(1, 2);
  double worst = 0.0;
  for (int d = 2; d <= 4; ++d) {
    for (int p = 1; p <= 3; ++p) {
      const double h = hilbert_like_det(d, p);
      const double expo = (d - 1) * burgers_p_star(p, d - 1);
      for (double a : {0.5, 1.0, 2.0, 4.0}) {
        worst = std::max(worst, rel(burgers_tensor(a, p, d - 1).det, h * std::pow(a, expo)));
      }
    }
  }
  const bool exact = h21 == cpp_rational(1, 12);
  return {worst <= 1e-8 && exact && rel(hilbert_like_det(2, 1), 1.0 / 12) < 1e-15,
          fmt("worst relative error %.2e, H_{2,1} = 1/12 exactly: %s", worst,
              exact ? "yes" : "no")};
}

Outcome fundamental_solution() {
  FundamentalExperiment e;
  const auto r = run_fundamental_experiment(e);
  return {r.pass, fmt("L1 error %.4f at 4096 cells, factors %.2f %.2f, sup %.4f (rel %.2e)",
                      r.finest_error, r.convergence_factors.at(0), r.convergence_factors.at(1),
                      r.levels.back().sup[1], r.sup_relative_error)};
}

Outcome decay_slope() {
  InitialSpec s;
  s.center = {0.0};
  s.radius = {0.5};
  DecayExperiment e;
  e.u0 = initial_data(s, make_grid({2048}, {0.01}, {-3.0}));
  e.config.flux = FluxSpec::burgers(1);
  e.config.t_end = 100;
  e.config.record_times = geometric_times(1, 100, 24, true);
  const auto r = run_decay_experiment(e);
  return {r.pass, fmt("slope %.4f vs -0.5, worst sup / heat bound %.3f", r.fits.at(0).slope,
                      r.heat_ratio.value_or(-1.0))};
}

Outcome discrete_structure() {
  const std::vector<std::pair<FluxSpec, std::vector<int>>> cases{
      {FluxSpec{{1}}, {256}},        {FluxSpec{{2}}, {256}},       {FluxSpec{{3}}, {200}},
      {FluxSpec{{1, 2}}, {48, 40}},  {FluxSpec{{1, 3}}, {40, 40}}, {FluxSpec{{2, 3}}, {32, 48}},
      {FluxSpec{{1, 2, 3}}, {12, 12, 12}}, {FluxSpec{{1, 4}}, {40, 32}},
      {FluxSpec{{2, 5}}, {24, 24}},  {FluxSpec{{1, 2}}, {64, 64}}};
  int passed = 0;
  double excess = 0.0, drift = 0.0;
  bool contraction = true, comparison = true;
  for (std::size_t seed = 0; seed < cases.size(); ++seed) {
    const auto& [flux, cells] = cases[seed];
    std::mt19937_64 rng(1000 + seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    const Grid g = make_grid(cells, std::vector<double>(cells.size(), 1.0 / cells[0]),
                             std::vector<double>(cells.size(), 0.0));
    Field u0 = Field::zeros(g), v0 = Field::zeros(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      u0.values[i] = dist(rng);
      v0.values[i] = u0.values[i] + 0.5 * dist(rng);
    }
    SolverConfig c;
    c.flux = flux;
    c.boundary = Boundary::periodic;
    c.t_end = 0.5;
    c.record_times = geometric_times(0.01, 0.5, 12, true);
    const auto r = run_contraction_experiment(u0, v0, c);
    passed += r.pass;
    excess = std::max(excess, r.max_principle_excess);
    drift = std::max(drift, r.mass_drift);
    contraction = contraction && r.nonincreasing && r.bounded_by_initial;
    comparison = comparison && r.comparison_holds;
  }
  return {passed == static_cast<int>(cases.size()),
          fmt("%d/10 cases; max-principle excess %.1e, mass drift %.1e, contraction %s, "
              "comparison %s",
              passed, excess, drift, contraction ? "ok" : "broken", comparison ? "ok" : "broken")};
}

Outcome oleinik_and_variation() {
  InitialSpec s;
  s.center = {0.0};
  s.radius = {0.5};
  const Field u0 = initial_data(s, make_grid({8192}, {0.005}, {-4.0}));
  const double mass = lp_norm(u0, 1.0);
  SolverConfig c;
  c.flux = FluxSpec::burgers(1);
  c.t_end = 50;
  c.record_times = geometric_times(0.5, 50, 40, false);
  double slope = 0.0, variation = 0.0;
  solve(u0, c, {}, [&](double t, const Field& u) {
    slope = std::max(slope, tv_and_oleinik(u).max_slope * t);
    variation = std::max(variation, tv_half_square(u) * t / (2.0 * mass));
  });
  return {slope <= 1.1 && variation <= 1.1,
          fmt("max t * slope %.4f, max TV(u^2/2) t / (2|u0|_1) %.4f", slope, variation)};
}

Outcome scaling_equivariance() {
  InitialSpec s;
  s.center = {0.0, 0.0};
  s.radius = {0.8, 0.8};
  const Field u0 = initial_data(s, make_box_grid({256, 256}, {-2.0, -2.0}, {2.0, 2.0}));
  SolverConfig c;
  c.flux = FluxSpec::burgers(2);
  c.t_end = 1;
  c.record_times = {0.5, 1.0};
  const auto r = run_scaling_experiment(u0, 2.0, 1.0, c);
  double identity = 0.0;
  for (double e : r.identity_error) identity = std::max(identity, e);
  return {r.pass, fmt("mismatch %.2e at t=0.5, %.2e at t=1; data identity error %.2e",
                      r.mismatch.at(0), r.mismatch.at(1), identity)};
}

Outcome strichartz_audit() {
  InitialSpec s;
  s.center = {0.0};
  s.radius = {1.0};
  SolverConfig c;
  c.flux = FluxSpec::burgers(1);
  c.t_end = 0.5;
  c.record_times = geometric_times(0.01, 0.5, 40, true);
  const auto r = run_strichartz_experiment(s, make_grid({1024}, {0.02}, {-4.0}), c, 1.0,
                                           {0.5, 1.0, 2.0});
  return {r.pass, fmt("ratios %.4f %.4f %.4f, spread %.2f%%", r.runs.at(0).ratio,
                      r.runs.at(1).ratio, r.runs.at(2).ratio, 100 * r.spread)};
}

Outcome level_set_monitor() {
  InitialSpec s;
  s.center = {0.0};
  s.radius = {0.5};
  Field u0 = initial_data(s, make_grid({2048}, {0.004}, {-4.0}));
  const double mass = u0.integral();
  for (double& v : u0.values) v /= mass;
  // dense geometric grid: the minimum is resolved to 0.1%
  std::vector<double> B;
  for (double b = 0.01; b <= 100.0; b *= 1.001) B.push_back(b);
  SolverConfig c;
  c.flux = FluxSpec::burgers(1);
  const auto r = run_degiorgi_experiment(u0, 1.0, B, c);
  const bool exists = r.minimal_B.has_value() && *r.minimal_B <= 100.0;
  return {exists && r.pass,
          fmt("minimal B %.4f, |u(1)|_inf %.4f, fitted C %.3g", r.minimal_B.value_or(-1.0),
              r.sup_at_one, r.recurrence_C)};
}

Outcome entropy_production() {
  InitialSpec s;
  s.kind = InitialKind::riemann;
  s.center = {0.0};
  const Field u0 = initial_data(s, make_box_grid({4096}, {-2.0}, {2.0}));
  SolverConfig c;
  c.flux = FluxSpec::burgers(1);
  c.t_end = 1;
  c.record_times = {0.0, 1.0};
  ReportOptions o;
  o.entropy_indices = {2.0};
  const auto r = solve(u0, c, o);
  const double m = r.entropy_mass.at(2.0).back();
  return {std::abs(m - 2.0 / 3.0) <= 0.05 * 2.0 / 3.0, fmt("mass %.5f vs 2/3", m)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"AC1", "exponent identities", 1, exponent_identities},
      {"AC2", "tensor determinant law", 1, determinant_law},
      {"AC3", "1-D fundamental solution", 30, fundamental_solution},
      {"AC4", "1-D decay slope", 60, decay_slope},
      {"AC5", "discrete structure", 60, discrete_structure},
      {"AC6", "one-sided slope and variation", 30, oleinik_and_variation},
      {"AC7", "scaling equivariance", 300, scaling_equivariance},
      {"AC8", "space-time audit", 60, strichartz_audit},
      {"AC9", "level-set monitor", 120, level_set_monitor},
      {"AC10", "entropy production", 30, entropy_production},
  };
  std::set<std::string> wanted(argv + 1, argv + argc);
  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool ok = out.pass && in_time;
    failures += !ok;
    std::printf("%s %-4s %s: %s [%.2fs / %.0fs%s]\n", ok ? "PASS" : "FAIL", c.id.c_str(),
                c.title.c_str(), out.detail.c_str(), seconds, c.budget_seconds,
                in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
