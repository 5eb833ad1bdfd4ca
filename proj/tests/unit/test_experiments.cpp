#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "disperse/experiments.hpp"

using namespace disperse;

namespace {

Field bump_1d(int cells, double lower, double upper, double radius = 0.5) {
  InitialSpec s;
  s.center = {0.0};
  s.radius = {radius};
  return initial_data(s, make_box_grid({cells}, {lower}, {upper}));
}

SolverConfig burgers_config(int n, double t_end, std::vector<double> records) {
  SolverConfig c;
  c.flux = FluxSpec::burgers(n);
  c.t_end = t_end;
  c.record_times = std::move(records);
  return c;
}

}  // namespace

TEST_CASE("fit_decay on exact power laws") {
  const auto t = geometric_times(1.0, 100.0, 12, false);
  std::vector<double> a, b;
  for (double x : t) {
    a.push_back(std::pow(x, -0.5));
    b.push_back(3.0 / x);
  }
  const auto fa = fit_decay(t, a, 1.0, 100.0);
  CHECK(std::abs(fa.slope + 0.5) < 1e-12);
  CHECK(fa.residual < 1e-12);
  CHECK(fa.samples == 12);
  const auto fb = fit_decay(t, b, 1.0, 100.0);
  CHECK(fb.slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(fb.prefactor == doctest::Approx(3.0).epsilon(1e-12));

  CHECK_THROWS_AS(fit_decay(t, a, 50.0, 100.0), std::invalid_argument);
  b[4] = 0.0;
  CHECK_THROWS_AS(fit_decay(t, b, 1.0, 100.0), std::invalid_argument);
}

TEST_CASE("geometric record times") {
  const auto t = geometric_times(1.0, 100.0, 3, true);
  REQUIRE(t.size() == 4);
  CHECK(t[0] == 0.0);
  CHECK(t[1] == 1.0);
  CHECK(t[2] == doctest::Approx(10.0));
  CHECK(t[3] == 100.0);
  CHECK_THROWS_AS(geometric_times(0.0, 1.0, 3, false), std::invalid_argument);
  CHECK_THROWS_AS(geometric_times(1.0, 2.0, 1, false), std::invalid_argument);
}

TEST_CASE("decay exponents follow the flux") {
  const auto [ab, bb] = decay_exponents(FluxSpec::burgers(1), 1.0, kInfinity);
  CHECK(ab == doctest::Approx(0.5));
  CHECK(bb == doctest::Approx(0.5));
  const auto [am, bm] = decay_exponents(FluxSpec{{2}}, 1.0, kInfinity);
  const auto m = monomial_exponents(1.0, kInfinity, std::vector<int>{2});
  CHECK(am == m.alpha);
  CHECK(bm == m.beta);
}

TEST_CASE("decay experiment: zero data is degenerate") {
  DecayExperiment e;
  e.u0 = Field::zeros(make_box_grid({50}, {-1}, {1}));
  e.config = burgers_config(1, 100, geometric_times(1, 100, 8, true));
  const auto r = run_decay_experiment(e);
  CHECK(r.degenerate);
  CHECK(r.fits.empty());
  CHECK(r.pass);
}

TEST_CASE("decay experiment: the (1,4) constant is stable under refinement") {
  double constants[2];
  for (int level = 0; level < 2; ++level) {
    DecayExperiment e;
    e.u0 = bump_1d(600 << level, -2.0, 10.0);
    e.config = burgers_config(1, 20, geometric_times(1, 20, 10, true));
    e.pairs = {{1.0, 4.0}};
    e.t1 = 20;
    e.fit_slopes = false;
    const auto r = run_decay_experiment(e);
    REQUIRE(r.audits.size() == 1);
    CHECK(r.audits[0].bounded);
    CHECK(r.audits[0].beta == doctest::Approx(3.0 / 8));
    constants[level] = r.audits[0].empirical_constant;
    CHECK(std::isfinite(constants[level]));
  }
  CHECK(constants[1] == doctest::Approx(constants[0]).epsilon(0.2));
}

TEST_CASE("decay experiment: two-dimensional sup bound") {
  InitialSpec s;
  s.center = {0.0, 0.0};
  s.radius = {0.5, 0.5};
  DecayExperiment e;
  e.u0 = initial_data(s, make_box_grid({128, 128}, {-2.0, -2.0}, {14.0, 14.0}));
  e.config = burgers_config(2, 64, geometric_times(1, 64, 10, true));
  e.t0 = 1;
  e.t1 = 64;
  e.fit_slopes = false;
  const auto r = run_decay_experiment(e);
  CHECK(r.pass);
  CHECK(r.audits[0].beta == doctest::Approx(kappa_nu(3).kappa));
  CHECK_FALSE(r.heat_ratio.has_value());
}

TEST_CASE("contraction experiment") {
  const Grid g = make_box_grid({80}, {-2}, {2});
  InitialSpec s;
  s.center = {0.0};
  s.radius = {0.8};
  const Field u0 = initial_data(s, g);
  SolverConfig c = burgers_config(1, 2, {0.0, 0.5, 1.0, 2.0});
  c.boundary = Boundary::periodic;

  const auto same = run_contraction_experiment(u0, u0, c);
  CHECK(same.pass);
  for (double d : same.distances) CHECK(d == 0.0);

  Field shifted = u0;
  for (double& v : shifted.values) v += 0.3;
  const auto up = run_contraction_experiment(u0, shifted, c);
  CHECK(up.pass);
  CHECK(up.ordered_data);
  CHECK(up.comparison_holds);
  CHECK(up.initial_distance == doctest::Approx(0.3 * 4.0));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Field a = Field::zeros(g), b = Field::zeros(g);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a.values[i] = dist(rng);
    b.values[i] = a.values[i] + dist(rng);
  }
  const auto rnd = run_contraction_experiment(a, b, c);
  CHECK(rnd.pass);
  CHECK(rnd.distances.back() <= rnd.initial_distance);

  CHECK_THROWS_AS(run_contraction_experiment(u0, Field::zeros(make_box_grid({81}, {-2}, {2})), c),
                  GridMismatch);
}

TEST_CASE("scaling experiment: identity transform is exact") {
  const Field u0 = bump_1d(64, -2, 2, 0.8);
  const auto c = burgers_config(1, 1, {0.0, 0.5, 1.0});
  const auto r = run_scaling_experiment(u0, 1.0, 1.0, c);
  CHECK(r.pass);
  for (double m : r.mismatch) CHECK(m == 0.0);
}

TEST_CASE("scaling experiment: 1-D mass ratio 2^-2") {
  const Field u0 = bump_1d(64, -2, 2, 0.8);
  const auto c = burgers_config(1, 1, {0.0, 0.5, 1.0});
  const auto r = run_scaling_experiment(u0, 2.0, 1.0, c);
  CHECK(r.pass);
  CHECK(r.identity_error[0] < 1e-12);
  const Field v0 = companion_field(u0, 2.0, 1.0);
  CHECK(v0.integral() / u0.integral() == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("scaling experiment: 2-D with mu != 1") {
  InitialSpec s;
  s.center = {0.0, 0.0};
  s.radius = {0.7, 0.7};
  const Field u0 = initial_data(s, make_box_grid({32, 32}, {-1.5, -1.5}, {1.5, 1.5}));
  const auto c = burgers_config(2, 0.6, {0.3, 0.6});
  const auto r = run_scaling_experiment(u0, 2.0, 3.0, c);
  CHECK(r.pass);
  const Field v0 = companion_field(u0, 2.0, 1.0);
  CHECK(v0.integral() / u0.integral() == doctest::Approx(1.0 / 16).epsilon(1e-13));
  CHECK_THROWS_AS(run_scaling_experiment(u0, 1e-200, 1.0, c), std::invalid_argument);
}

TEST_CASE("strichartz experiment") {
  InitialSpec s;
  s.center = {0.0};
  s.radius = {1.0};
  const Grid g = make_box_grid({400}, {-4}, {4});
  const auto c = burgers_config(1, 0.5, geometric_times(0.01, 0.5, 16, true));
  const auto r = run_strichartz_experiment(s, g, c, 1.0, {0.5, 1.0, 2.0});
  CHECK(r.pass);
  CHECK(r.p_star == 4.0);
  for (const auto& run : r.runs) {
    CHECK(run.ratio > 0.0);
    CHECK(std::isfinite(run.ratio));
  }
  // refinement stability of the ratio
  const auto fine = run_strichartz_experiment(s, make_box_grid({800}, {-4}, {4}), c, 1.0, {1.0});
  CHECK(fine.runs[0].ratio == doctest::Approx(r.runs[1].ratio).epsilon(0.2));

  InitialSpec zero = s;
  zero.height = 0.0;
  const auto z = run_strichartz_experiment(zero, g, c, 1.0, {1.0});
  CHECK(z.degenerate);
  CHECK(z.pass);

  auto no_zero = c;
  no_zero.record_times.erase(no_zero.record_times.begin());
  CHECK_THROWS_AS(run_strichartz_experiment(s, g, no_zero, 1.0, {1.0}), std::invalid_argument);
  InitialSpec wave = s;
  wave.kind = InitialKind::n_wave;
  CHECK_THROWS_AS(run_strichartz_experiment(wave, g, c, 1.0, {1.0}), std::invalid_argument);
}

TEST_CASE("level-set experiment") {
  Field u0 = bump_1d(600, -2, 4);
  CHECK_THROWS_AS(run_degiorgi_experiment(u0, 1.0, {1.0}, SolverConfig{FluxSpec::burgers(1)}),
                  std::invalid_argument);
  const double m = u0.integral();
  for (double& v : u0.values) v /= m;
  SolverConfig c;
  c.flux = FluxSpec::burgers(1);
  const auto r = run_degiorgi_experiment(u0, 1.0, {100.0, 0.1, 2.0 * u0.max()}, c, 6);
  REQUIRE(r.traces.size() == 3);
  CHECK(r.traces[0].B == 0.1);
  REQUIRE(r.minimal_B.has_value());
  CHECK(*r.minimal_B == 2.0 * u0.max());
  CHECK(r.pass);
  for (std::size_t k = 1; k < r.traces[2].a.size(); ++k) CHECK(r.traces[2].a[k] == 0.0);
  CHECK(r.recurrence_C >= 1.0);
}

TEST_CASE("recurrence constant fit") {
  DeGiorgiTrace t;
  t.delta = 0.5;
  t.b = {1.0, 0.5, 0.2};
  const double c = fit_recurrence_constant(t);
  CHECK(c >= 1.0);
  for (std::size_t k = 0; k + 1 < t.b.size(); ++k) {
    CHECK(t.b[k + 1] <= c * std::pow(2.0, c * k) * std::pow(t.b[k], 1.5) * (1 + 1e-9));
  }
  t.b = {0.1, 0.5};
  const double big = fit_recurrence_constant(t);
  CHECK(big == doctest::Approx(0.5 / std::pow(0.1, 1.5)).epsilon(1e-9));
}

TEST_CASE("fundamental solution study, small") {
  FundamentalExperiment e;
  e.cells = {256, 512};
  e.times = {0.5, 1.0};
  const auto r = run_fundamental_experiment(e);
  REQUIRE(r.levels.size() == 2);
  CHECK(r.convergence_factors[0] >= 1.5);
  CHECK(r.mass_error < 1e-12);
  e.reference_time = 0.7;
  CHECK_THROWS_AS(run_fundamental_experiment(e), std::invalid_argument);
  e.reference_time = 1.0;
  e.upper = 1.0;
  CHECK_THROWS_AS(run_fundamental_experiment(e), std::invalid_argument);
}

TEST_CASE("support of a 1-D bump grows like sqrt(t)") {
  const Field u0 = bump_1d(2048, -3.0, 17.48);
  SolverConfig c = burgers_config(1, 100, geometric_times(1, 100, 16, false));
  const RunReport r = solve(u0, c);
  const auto fit = fit_decay(r.times, r.support_widths[0], 1.0, 100.0);
  CHECK(fit.slope == doctest::Approx(0.5).epsilon(0.2));
  CHECK(std::abs(fit.slope - 0.5) <= 0.1);
}
