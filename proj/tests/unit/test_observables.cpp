#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "disperse/experiments.hpp"
#include "disperse/observables.hpp"
#include "disperse/solver.hpp"

using namespace disperse;

namespace {

Field line_field(std::vector<double> values, double dy = 1.0, double origin = 0.0) {
  const int n = static_cast<int>(values.size());
  Field f = Field::zeros(make_grid({n}, {dy}, {origin}));
  f.values = std::move(values);
  return f;
}

}  // namespace

TEST_CASE("L^p norms") {
  Field one = Field::zeros(make_box_grid({10, 10}, {0, 0}, {1, 1}));
  for (double& v : one.values) v = 1.0;
  CHECK(lp_norm(one, 2.0) == doctest::Approx(1.0));
  CHECK(lp_norm(one, kInfinity) == 1.0);

  Field half = Field::zeros(make_box_grid({10}, {0}, {1}));
  for (int i = 0; i < 5; ++i) half.values[i] = 1.0;
  CHECK(lp_norm(half, 1.0) == doctest::Approx(0.5));
  CHECK(lp_norm(half, 3.0) == doctest::Approx(std::cbrt(0.5)));
  CHECK_THROWS_AS(lp_norm(half, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(lp_integral(half, kInfinity), std::invalid_argument);
}

TEST_CASE("total variation and one-sided slope") {
  const Field step = line_field({0, 0, 1, 1, 0, 0});
  const auto s = tv_and_oleinik(step);
  CHECK(s.tv == 2.0);
  CHECK(s.max_slope == 1.0);

  const Field ramp = line_field({0, 0.3, 0.6, 0.9}, 0.1);
  CHECK(tv_and_oleinik(ramp).max_slope == doctest::Approx(3.0));
  CHECK(tv_half_square(ramp) == doctest::Approx(0.405));

  const Field two = Field::zeros(make_box_grid({4, 4}, {0, 0}, {1, 1}));
  CHECK_THROWS_AS(tv_and_oleinik(two), std::invalid_argument);
  CHECK_THROWS_AS(tv_half_square(two), std::invalid_argument);
}

TEST_CASE("support width") {
  Field box = Field::zeros(make_box_grid({100}, {-1}, {2}));
  for (std::size_t i = 0; i < box.size(); ++i) {
    const double c = box.grid.cell_center(0, static_cast<int>(i));
    if (c > 0.0 && c < 1.0) box.values[i] = 1.0;
  }
  CHECK(std::abs(support_width(box, 0, 0.5) - 1.0) <= 2 * box.grid.spacing[0]);
  CHECK(support_width(Field::zeros(box.grid), 0, 1e-12) == 0.0);
  CHECK_THROWS_AS(support_width(box, 1, 0.5), std::invalid_argument);

  Field plane = Field::zeros(make_box_grid({10, 20}, {0, 0}, {1, 1}));
  plane.values[3 * 20 + 4] = 1.0;
  plane.values[3 * 20 + 9] = 1.0;
  CHECK(support_width(plane, 1, 0.5) == doctest::Approx(6 * 0.05));
  CHECK(support_width(plane, 0, 0.5) == doctest::Approx(0.1));
}

TEST_CASE("fundamental solution") {
  CHECK(fundamental_solution_1d(1, 2, 1) == 0.5);
  CHECK(fundamental_solution_1d(1, 1, 2) == 0.0);
  CHECK(fundamental_solution_1d(1, 1, -0.1) == 0.0);
  CHECK_THROWS_AS(fundamental_solution_1d(1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(fundamental_solution_1d(0, 1, 1), std::invalid_argument);

  // exact cell averages add up to the mass, the sampled field to m + O(dy)
  for (double t : {0.5, 1.0, 3.0}) {
    double mass = 0.0;
    Field f = Field::zeros(make_box_grid({400}, {-1.0}, {4.0}));
    for (int i = 0; i < 400; ++i) {
      const double lo = f.grid.cell_lower(0, i);
      mass += fundamental_cell_average_1d(1.5, t, lo, lo + f.grid.spacing[0]) * f.grid.spacing[0];
      f.values[i] = fundamental_solution_1d(1.5, t, f.grid.cell_center(0, i));
    }
    CHECK(mass == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(std::abs(lp_norm(f, 1.0) - 1.5) < 2 * f.grid.spacing[0] * std::sqrt(3.0 / t));
  }
}

TEST_CASE("space-time integral") {
  RunReport zero;
  zero.dim = 1;
  for (int i = 0; i < 8; ++i) zero.times.push_back(i * 0.25);
  zero.norms[4.0].assign(8, 0.0);
  CHECK(strichartz_integral(zero, 4.0, 0.0, 2.0).integral == 0.0);

  // a frozen profile integrates exactly
  const Field f = line_field({0.0, 1.0, 2.0, 0.0}, 0.5);
  RunReport frozen;
  frozen.dim = 1;
  for (int i = 0; i < 10; ++i) {
    frozen.times.push_back(1.0 + 0.3 * i);
    frozen.snapshots.push_back(f);
  }
  const auto s = strichartz_integral(frozen, 4.0, 1.0, 3.7);
  CHECK(s.integral == doctest::Approx(2.7 * lp_integral(f, 4.0)));
  CHECK(s.lhs_power == doctest::Approx(std::sqrt(s.integral)));
  CHECK(s.tail_integrals.back() == 0.0);
  CHECK(s.tail_integrals.front() == doctest::Approx(s.integral));

  RunReport few = frozen;
  few.times.resize(7);
  few.snapshots.resize(7);
  CHECK_THROWS_AS(strichartz_integral(few, 4.0, 0.0, 10.0), std::invalid_argument);
}

TEST_CASE("space-time integral of the fundamental solution") {
  // int_1^2 (2 m t)^{5/2} / (5 t^4) dt with m = 1, i.e. 2^{5/2} / 5 * int t^{-3/2}
  const double exact = std::pow(2.0, 2.5) / 5.0 * 2.0 * (1.0 - std::pow(2.0, -0.5));
  RunReport r;
  r.dim = 1;
  const int records = 401;
  for (int i = 0; i < records; ++i) {
    const double t = 1.0 + i / 400.0;
    r.times.push_back(t);
    const double front = std::sqrt(2.0 * t);
    r.norms[4.0].push_back(std::pow(std::pow(front, 5) / (5.0 * std::pow(t, 4)), 0.25));
  }
  CHECK(strichartz_integral(r, 4.0, 1.0, 2.0).integral == doctest::Approx(exact).epsilon(1e-5));
}

TEST_CASE("entropy production mass") {
  const Field u = line_field({0, 1, 2, 0}, 0.5);
  CHECK(entropy_production_mass(u, u, 2.0) == 0.0);
  const Field v = line_field({0, 1, 1, 0}, 0.5);
  CHECK(entropy_production_mass(u, v, 2.0) == doctest::Approx((5.0 - 2.0) / 2 * 0.5));
  CHECK(entropy_production_mass(u, v, 2.0, 0.25) == doctest::Approx(0.5));
  CHECK_THROWS_AS(entropy_production_mass(u, line_field({0, 1, 1}), 2.0), GridMismatch);
  CHECK_THROWS_AS(entropy_integral(u, 0.5), std::invalid_argument);
}

TEST_CASE("entropy production is nonnegative and small in a rarefaction") {
  double prev = 0.0;
  for (int cells : {400, 800, 1600}) {
    const Grid g = make_box_grid({cells}, {-2.0}, {2.0});
    InitialSpec fan;
    fan.kind = InitialKind::riemann;
    fan.center = {0.0};
    fan.left = 0.0;
    fan.right = 1.0;
    SolverConfig c;
    c.flux = FluxSpec::burgers(1);
    c.t_end = 0.5;
    c.record_times = {0.0, 0.25, 0.5};
    ReportOptions o;
    o.entropy_indices = {1.0, 2.0, 3.0};
    const RunReport r = solve(initial_data(fan, g), c, o);
    for (const auto& [idx, series] : r.entropy_mass) {
      for (double m : series) CHECK(m >= -1e-10);
    }
    const double m2 = r.entropy_mass.at(2.0).back();
    CHECK(m2 < 4.0 / cells);  // O(dy)
    if (prev > 0.0) CHECK(m2 < prev);
    prev = m2;
  }
}

TEST_CASE("stationary shock dissipates 2/3 of r = 2 entropy per unit time") {
  const Grid g = make_box_grid({400}, {-1.0}, {1.0});
  InitialSpec shock;
  shock.kind = InitialKind::riemann;
  shock.center = {0.0};
  SolverConfig c;
  c.flux = FluxSpec::burgers(1);
  c.t_end = 1.0;
  c.record_times = {0.0, 0.5, 1.0};
  ReportOptions o;
  o.entropy_indices = {2.0};
  const RunReport r = solve(initial_data(shock, g), c, o);
  CHECK(r.entropy_mass.at(2.0)[1] == doctest::Approx(1.0 / 3).epsilon(0.05));
  CHECK(r.entropy_mass.at(2.0)[2] == doctest::Approx(2.0 / 3).epsilon(0.05));
}

TEST_CASE("level-set traces") {
  const Grid g = make_box_grid({400}, {-2.0}, {4.0});
  InitialSpec bump;
  bump.center = {0.0};
  bump.radius = {0.5};
  Field u0 = initial_data(bump, g);
  const double m = u0.integral();
  for (double& v : u0.values) v /= m;

  SolverConfig c;
  c.flux = FluxSpec::burgers(1);
  c.t_end = 1.0;
  c.record_times = degiorgi_times(6);
  c.record_times.push_back(1.0);
  ReportOptions o;
  o.keep_snapshots = true;
  const RunReport r = solve(u0, c, o);

  const auto high = degiorgi_trace(r, 2.5 * u0.max(), 1.0, 6);
  CHECK(high.a.front() == doctest::Approx(1.0));
  for (std::size_t k = 1; k < high.a.size(); ++k) CHECK(high.a[k] == 0.0);
  CHECK(high.level[3] == doctest::Approx(2.5 * u0.max() * 0.875));

  const auto zero = degiorgi_trace(r, 0.0, 1.0, 6);
  for (std::size_t k = 1; k < zero.a.size(); ++k) CHECK(zero.a[k] <= zero.a[k - 1] * (1 + 1e-12));
  CHECK(zero.b == zero.a);

  CHECK(degiorgi_times(3) == std::vector<double>{0.0, 0.5, 0.75, 0.875});
  CHECK_THROWS_AS(degiorgi_trace(r, 1.0, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(degiorgi_trace(r, -1.0, 1.0, 6), std::invalid_argument);
}
