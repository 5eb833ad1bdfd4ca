#include "disperse/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>

namespace disperse {

std::vector<double> geometric_times(double t_min, double t_max, int count, bool with_zero) {
  if (!(t_min > 0.0) || !(t_max > t_min) || count < 2) {
    throw std::invalid_argument("geometric_times needs 0 < t_min < t_max and count >= 2");
  }
  std::vector<double> t;
  if (with_zero) t.push_back(0.0);
  const double ratio = std::log(t_max / t_min);
  for (int i = 0; i < count; ++i) {
    if (i == 0) {
      t.push_back(t_min);
    } else if (i == count - 1) {
      t.push_back(t_max);
    } else {
      t.push_back(t_min * std::exp(ratio * i / (count - 1)));
    }
  }
  return t;
}

DecayFit fit_decay(std::span<const double> times, std::span<const double> norms, double t0,
                   double t1) {
  if (times.size() != norms.size()) throw std::invalid_argument("fit_decay: length mismatch");
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t0 || times[i] > t1) continue;
    if (!(norms[i] > 0.0) || !(times[i] > 0.0)) {
      throw std::invalid_argument("fit_decay: non-positive sample in the fit window");
    }
    x.push_back(std::log(times[i]));
    y.push_back(std::log(norms[i]));
  }
  if (x.size() < 6) {
    throw std::invalid_argument("fit_decay needs >= 6 samples in the window, got " +
                                std::to_string(x.size()));
  }
  const double count = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  DecayFit fit;
  fit.slope = sxy / sxx;
  const double intercept = my - fit.slope * mx;
  fit.prefactor = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / count);
  fit.samples = x.size();
  return fit;
}

std::pair<double, double> decay_exponents(const FluxSpec& flux, double p, double q) {
  if (flux.is_burgers()) {
    const auto e = burgers_exponents(p, q, flux.dim());
    return {e.alpha, e.beta};
  }
  const auto e = monomial_exponents(p, q, flux.k);
  return {e.alpha, e.beta};
}

DecayResult run_decay_experiment(const DecayExperiment& spec) {
  spec.config.validate();
  if (!(spec.t1 > spec.t0) || !(spec.t0 > 0.0)) {
    throw std::invalid_argument("decay window must satisfy 0 < t0 < t1");
  }
  ReportOptions options;
  options.norms = {1.0, kInfinity};
  for (const auto& [p, q] : spec.pairs) {
    if (std::find(options.norms.begin(), options.norms.end(), q) == options.norms.end()) {
      options.norms.push_back(q);
    }
  }
  DecayResult result;
  result.report = solve(spec.u0, spec.config, options);
  const RunReport& report = result.report;
  result.degenerate = spec.u0.max_abs() == 0.0;

  bool pass = true;
  for (const auto& [p, q] : spec.pairs) {
    const auto [alpha, beta] = decay_exponents(spec.config.flux, p, q);
    const auto& series = report.norms.at(q);

    BoundAudit audit;
    audit.p = p;
    audit.q = q;
    audit.alpha = alpha;
    audit.beta = beta;
    if (result.degenerate) {
      audit.bounded = true;
      result.audits.push_back(audit);
      continue;
    }
    const double data_norm = std::pow(lp_norm(spec.u0, p), alpha);
    const double split = std::sqrt(spec.t0 * spec.t1);
    double early = 0.0;
    double late = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < report.times.size(); ++i) {
      const double t = report.times[i];
      if (t < spec.t0 || t > spec.t1) continue;
      const double c = series[i] * std::pow(t, beta) / data_norm;
      finite = finite && std::isfinite(c);
      audit.empirical_constant = std::max(audit.empirical_constant, c);
      (t <= split ? early : late) = std::max(t <= split ? early : late, c);
    }
    audit.bounded = finite && late <= 1.1 * early;
    pass = pass && audit.bounded;
    result.audits.push_back(audit);

    if (spec.fit_slopes) {
      DecayFit fit = fit_decay(report.times, series, spec.t0, spec.t1);
      fit.p = p;
      fit.q = q;
      fit.theory_beta = beta;
      fit.pass = std::abs(fit.slope + beta) <= spec.slope_tolerance;
      pass = pass && fit.pass;
      result.fits.push_back(fit);
    }
  }

  if (spec.u0.grid.dim() == 1 && !result.degenerate) {
    const double mass = lp_norm(spec.u0, 1.0);
    const auto& sup = report.norms.at(kInfinity);
    double worst = 0.0;
    for (std::size_t i = 0; i < report.times.size(); ++i) {
      const double t = report.times[i];
      if (t <= 0.0 || t < spec.u0.grid.spacing[0]) continue;
      worst = std::max(worst, sup[i] / (2.0 * std::sqrt(2.0 * mass / t)));
    }
    result.heat_ratio = worst;
    pass = pass && worst <= 1.0 + spec.heat_slack;
  }
  result.pass = pass;
  return result;
}

ContractionResult run_contraction_experiment(const Field& u0, const Field& v0,
                                             const SolverConfig& config) {
  require_same_grid(u0, v0);
  ContractionResult result;
  const double volume = u0.grid.cell_volume();
  auto distance = [volume](const Field& a, const Field& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += std::abs(a.values[i] - b.values[i]);
    return s * volume;
  };
  result.initial_distance = distance(u0, v0);
  result.ordered_data = true;
  for (std::size_t i = 0; i < u0.values.size(); ++i) {
    if (u0.values[i] > v0.values[i]) result.ordered_data = false;
  }
  const double lo[2] = {u0.min(), v0.min()};
  const double hi[2] = {u0.max(), v0.max()};
  const double mass0[2] = {u0.integral(), v0.integral()};
  const double scale0[2] = {std::max(std::abs(mass0[0]), lp_norm(u0, 1.0)),
                            std::max(std::abs(mass0[1]), lp_norm(v0, 1.0))};

  auto observe = [&](double t, std::span<const Field> members) {
    result.times.push_back(t);
    result.distances.push_back(distance(members[0], members[1]));
    for (std::size_t m = 0; m < 2; ++m) {
      const Field& f = members[m];
      result.max_principle_excess =
          std::max({result.max_principle_excess, f.max() - hi[m], lo[m] - f.min()});
      if (config.boundary == Boundary::periodic && scale0[m] > 0.0) {
        result.mass_drift =
            std::max(result.mass_drift, std::abs(f.integral() - mass0[m]) / scale0[m]);
      }
    }
    if (result.ordered_data) {
      for (std::size_t i = 0; i < members[0].values.size(); ++i) {
        if (members[0].values[i] > members[1].values[i]) result.comparison_holds = false;
      }
    }
  };
  ReportOptions options;
  options.norms = {1.0};
  options.track_support = false;
  solve_ensemble({u0, v0}, config, options, observe);

  const double floor = 1e-12 * result.initial_distance;
  result.nonincreasing = true;
  double previous = result.initial_distance;
  result.bounded_by_initial = true;
  for (double d : result.distances) {
    if (d > previous * (1.0 + 1e-12) + floor) result.nonincreasing = false;
    if (d > result.initial_distance * (1.0 + 1e-12) + floor) result.bounded_by_initial = false;
    previous = d;
  }
  const double sup = std::max({1.0, u0.max_abs(), v0.max_abs()});
  result.pass = result.nonincreasing && result.bounded_by_initial && result.comparison_holds &&
                result.max_principle_excess <= 1e-13 * sup && result.mass_drift <= 1e-12;
  return result;
}

ScalingResult run_scaling_experiment(const Field& u0, double lambda, double mu,
                                     const SolverConfig& config, double tolerance) {
  const Field v0 = companion_field(u0, lambda, mu);
  for (double h : v0.grid.spacing) {
    if (!(h > std::numeric_limits<double>::min()) || !std::isfinite(h)) {
      throw std::invalid_argument("companion grid resolution infeasible");
    }
  }
  SolverConfig scaled = config;
  scaled.t_end = config.t_end / mu;
  for (double& t : scaled.record_times) t /= mu;

  ReportOptions options;
  options.keep_snapshots = true;
  options.track_support = false;
  const RunReport ru = solve(u0, config, options);
  const RunReport rv = solve(v0, scaled, options);

  ScalingResult result;
  result.lambda = lambda;
  result.mu = mu;
  result.times = rv.times;
  result.equivariant = true;
  for (std::size_t i = 0; i < rv.snapshots.size(); ++i) {
    const auto& v = rv.snapshots[i].values;
    const auto& u = ru.snapshots[i].values;
    double diff = 0.0;
    double norm = 0.0;
    for (std::size_t c = 0; c < v.size(); ++c) {
      diff += std::abs(v[c] - u[c] / lambda);
      norm += std::abs(v[c]);
    }
    const double rel = norm > 0.0 ? diff / norm : diff;
    result.mismatch.push_back(rel);
    if (!(rel <= tolerance)) result.equivariant = false;
  }

  const int n = u0.grid.dim();
  result.identity_exact = true;
  for (double q : {1.0, 2.0, 3.0}) {
    const double lhs = lp_integral(v0, q);
    const double rhs = std::pow(lambda, -q - n * (n + 1) / 2.0) * std::pow(mu, -n) *
                       lp_integral(u0, q);
    const double err = rhs != 0.0 ? std::abs(lhs - rhs) / std::abs(rhs) : std::abs(lhs);
    result.identity_q.push_back(q);
    result.identity_error.push_back(err);
    if (!(err <= 1e-10)) result.identity_exact = false;
  }
  result.pass = result.equivariant && result.identity_exact;
  return result;
}

StrichartzResult run_strichartz_experiment(const InitialSpec& profile, const Grid& grid,
                                           const SolverConfig& config, double p,
                                           const std::vector<double>& lambdas,
                                           double spread_tolerance, int jobs) {
  config.validate();
  if (!config.flux.is_burgers()) {
    throw std::invalid_argument("strichartz experiment is defined for the Burgers flux");
  }
  if (config.record_times.empty() || config.record_times.front() != 0.0) {
    throw std::invalid_argument("strichartz experiment needs t = 0 among the record times");
  }
  if (lambdas.empty()) throw std::invalid_argument("strichartz experiment needs lambdas");
  const int n = grid.dim();
  StrichartzResult result;
  result.p = p;
  result.p_star = burgers_p_star(p, n);

  auto run_one = [&](double lambda) {
    InitialSpec spec = profile;
    spec.lambda = profile.lambda * lambda;
    const Field v0 = initial_data(spec, grid);
    if (v0.min() < 0.0) throw std::invalid_argument("strichartz experiment needs nonnegative data");
    ReportOptions options;
    options.norms = {result.p_star};
    options.track_support = false;
    const RunReport report = solve(v0, config, options);
    StrichartzRun run;
    run.lambda = lambda;
    run.lhs_power = strichartz_integral(report, result.p_star, 0.0, config.t_end).lhs_power;
    run.rhs = std::sqrt(lp_integral(v0, p + n)) * std::sqrt(lp_integral(v0, p));
    run.ratio = run.rhs > 0.0 ? run.lhs_power / run.rhs : 0.0;
    return run;
  };

  if (jobs > 1) {
    std::vector<std::future<StrichartzRun>> futures;
    for (double lambda : lambdas) futures.push_back(std::async(std::launch::async, run_one, lambda));
    for (auto& f : futures) result.runs.push_back(f.get());
  } else {
    for (double lambda : lambdas) result.runs.push_back(run_one(lambda));
  }

  result.degenerate = std::all_of(result.runs.begin(), result.runs.end(),
                                  [](const StrichartzRun& r) { return r.rhs == 0.0; });
  if (result.degenerate) {
    result.pass = std::all_of(result.runs.begin(), result.runs.end(),
                              [](const StrichartzRun& r) { return r.lhs_power == 0.0; });
    return result;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  bool positive = true;
  for (const auto& r : result.runs) {
    positive = positive && std::isfinite(r.ratio) && r.ratio > 0.0;
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  result.spread = positive ? hi / lo - 1.0 : std::numeric_limits<double>::infinity();
  result.pass = positive && result.spread <= spread_tolerance;
  return result;
}

double fit_recurrence_constant(const DeGiorgiTrace& trace) {
  double worst = 1.0;
  for (std::size_t k = 0; k + 1 < trace.b.size(); ++k) {
    const double bk = trace.b[k];
    const double next = trace.b[k + 1];
    if (!(bk > 0.0) || !(next > 0.0)) continue;
    const double target = std::log2(next) - (1.0 + trace.delta) * std::log2(bk);
    // log2(C) + C k is increasing in C
    auto lhs = [k](double c) { return std::log2(c) + c * static_cast<double>(k); };
    if (lhs(worst) >= target) continue;
    double lo = worst;
    double hi = 2.0 * worst;
    while (lhs(hi) < target) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (lhs(mid) < target ? lo : hi) = mid;
    }
    worst = hi;
  }
  return worst;
}

DeGiorgiResult run_degiorgi_experiment(const Field& u0, double p, std::vector<double> B_grid,
                                       const SolverConfig& config, int k_max, double threshold) {
  const double norm = lp_norm(u0, p);
  if (std::abs(norm - 1.0) > 1e-6) {
    throw std::invalid_argument("degiorgi experiment needs ||u0||_p = 1, got " +
                                std::to_string(norm));
  }
  if (B_grid.empty()) throw std::invalid_argument("degiorgi experiment needs a B grid");
  std::sort(B_grid.begin(), B_grid.end());

  SolverConfig cfg = config;
  cfg.t_end = 1.0;
  cfg.record_times = degiorgi_times(k_max);
  cfg.record_times.push_back(1.0);
  ReportOptions options;
  options.norms = {p, kInfinity};
  options.keep_snapshots = true;
  options.track_support = false;
  const RunReport report = solve(u0, cfg, options);

  DeGiorgiResult result;
  result.p = p;
  result.sup_at_one = report.norms.at(kInfinity).back();
  for (double B : B_grid) {
    result.traces.push_back(degiorgi_trace(report, B, p, k_max));
    if (!result.minimal_B && result.traces.back().a.back() < threshold) result.minimal_B = B;
  }
  const DeGiorgiTrace* audited = &result.traces.front();
  for (const auto& tr : result.traces) {
    if (result.minimal_B && tr.B == *result.minimal_B) audited = &tr;
  }
  result.recurrence_C = fit_recurrence_constant(*audited);
  result.pass = result.minimal_B.has_value() && result.sup_at_one <= *result.minimal_B;
  return result;
}

FundamentalResult run_fundamental_experiment(const FundamentalExperiment& spec) {
  if (!(spec.m > 0.0)) throw std::invalid_argument("fundamental experiment needs m > 0");
  if (spec.times.empty()) throw std::invalid_argument("fundamental experiment needs times");
  std::vector<double> times = spec.times;
  std::sort(times.begin(), times.end());
  if (std::find(times.begin(), times.end(), spec.reference_time) == times.end()) {
    throw std::invalid_argument("reference_time must be one of the times");
  }

  auto run_level = [&](int cells) {
    const double dy = (spec.upper - spec.lower) / cells;
    const double shift = std::ceil(-spec.lower / dy);
    Grid grid = make_grid({cells}, {dy}, {-shift * dy});
    if (grid.upper(0) - 2.0 * dy < std::sqrt(2.0 * spec.m * times.back())) {
      throw std::invalid_argument("fundamental experiment domain too short for the final support");
    }
    InitialSpec seed;
    seed.kind = InitialKind::fundamental_seed;
    seed.mass = spec.m;
    seed.eps = spec.seed_cells * dy;
    const Field u0 = initial_data(seed, grid);

    SolverConfig config;
    config.flux = FluxSpec::burgers(1);
    config.cfl = spec.cfl;
    config.t_end = times.back();
    config.record_times = times;

    FundamentalLevel level;
    level.cells = cells;
    level.dy = dy;
    auto observe = [&](double t, const Field& u) {
      double err = 0.0;
      for (int i = 0; i < cells; ++i) {
        const double lo = grid.cell_lower(0, i);
        err += std::abs(u.values[i] - fundamental_cell_average_1d(spec.m, t, lo, lo + dy));
      }
      level.times.push_back(t);
      level.l1_error.push_back(err * dy);
      level.sup.push_back(u.max_abs());
      level.mass.push_back(u.integral());
    };
    ReportOptions options;
    options.norms = {};
    options.track_support = false;
    solve(u0, config, options, observe);
    return level;
  };

  FundamentalResult result;
  result.m = spec.m;
  if (spec.jobs > 1) {
    std::vector<std::future<FundamentalLevel>> futures;
    for (int c : spec.cells) futures.push_back(std::async(std::launch::async, run_level, c));
    for (auto& f : futures) result.levels.push_back(f.get());
  } else {
    for (int c : spec.cells) result.levels.push_back(run_level(c));
  }

  const std::size_t ref = static_cast<std::size_t>(
      std::find(times.begin(), times.end(), spec.reference_time) - times.begin());
  for (std::size_t l = 1; l < result.levels.size(); ++l) {
    result.convergence_factors.push_back(result.levels[l - 1].l1_error[ref] /
                                         result.levels[l].l1_error[ref]);
  }
  for (const auto& level : result.levels) {
    for (double mass : level.mass) {
      result.mass_error = std::max(result.mass_error, std::abs(mass - spec.m));
    }
  }
  const auto& finest = result.levels.back();
  result.finest_error = finest.l1_error[ref];
  result.sup_relative_error =
      std::abs(finest.sup[ref] / std::sqrt(2.0 * spec.m / spec.reference_time) - 1.0);
  result.pass = result.finest_error <= 0.02 && result.sup_relative_error <= 0.05 &&
                std::all_of(result.convergence_factors.begin(), result.convergence_factors.end(),
                            [](double f) { return f >= 1.5; });
  return result;
}

}  // namespace disperse
