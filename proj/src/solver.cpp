#include "disperse/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

namespace disperse {

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

struct LineGeometry {
  std::size_t stride = 1;
  std::size_t count = 0;
  std::size_t lines = 0;

  std::size_t base(std::size_t line) const {
    const std::size_t outer = line / stride;
    const std::size_t inner = line % stride;
    return outer * stride * count + inner;
  }
};

// Updates `line` in place; `flux` is scratch of size count + 1.
void update_line(std::vector<double>& line, std::vector<double>& flux, double ratio, int k,
                 Boundary boundary) {
  const std::size_t count = line.size();
  const double left_ghost = boundary == Boundary::periodic ? line.back() : line.front();
  const double right_ghost = boundary == Boundary::periodic ? line.front() : line.back();
  flux[0] = eo_flux(left_ghost, line[0], k);
  for (std::size_t i = 1; i < count; ++i) flux[i] = eo_flux(line[i - 1], line[i], k);
  flux[count] = eo_flux(line[count - 1], right_ghost, k);
  for (std::size_t i = 0; i < count; ++i) line[i] -= ratio * (flux[i + 1] - flux[i]);
}

void check_line_cfl(std::span<const double> line, double ratio, int k) {
  double m = 0.0;
  for (double v : line) m = std::max(m, std::abs(v));
  const double courant = ratio * ipow(m, k);
  if (courant > 1.0 + 1e-12) {
    throw CflViolation("sweep Courant number " + std::to_string(courant) + " exceeds 1");
  }
}

template <typename Fn>
void for_each_line(std::size_t lines, int threads, Fn&& fn) {
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, lines);
  if (workers <= 1) {
    fn(std::size_t{0}, lines);
    return;
  }
  std::vector<std::jthread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (lines + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(lines, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double next_stop(const SolverConfig& config, double t) {
  for (double r : config.record_times) {
    if (r > t) return std::min(r, config.t_end);
  }
  return config.t_end;
}

}  // namespace

FluxSpec FluxSpec::burgers(int n) {
  FluxSpec f;
  for (int j = 1; j <= n; ++j) f.k.push_back(j);
  return f;
}

bool FluxSpec::is_burgers() const {
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (k[j] != static_cast<int>(j) + 1) return false;
  }
  return !k.empty();
}

void FluxSpec::validate() const {
  if (k.empty()) throw std::invalid_argument("flux spec needs at least one exponent");
  int prev = 0;
  for (int v : k) {
    if (v <= prev) {
      throw std::invalid_argument("flux exponents must be strictly increasing and >= 1");
    }
    prev = v;
  }
}

void SolverConfig::validate() const {
  flux.validate();
  if (!(cfl > 0.0 && cfl < 1.0)) throw std::invalid_argument("cfl must lie in (0, 1)");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be >= 0");
  double prev = -1.0;
  for (double r : record_times) {
    if (!(r > prev)) throw std::invalid_argument("record_times must be strictly increasing");
    if (r < 0.0 || r > t_end) throw std::invalid_argument("record_times must lie in [0, t_end]");
    prev = r;
  }
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

double monomial_flux(double u, int k) { return ipow(u, k + 1) / (k + 1); }

double eo_flux(double a, double b, int k) {
  if (k % 2 == 0) return monomial_flux(a, k);
  return (ipow(std::max(a, 0.0), k + 1) + ipow(std::min(b, 0.0), k + 1)) / (k + 1);
}

double entropy_flux(double s, double r, int k) {
  const double magnitude = std::pow(std::abs(s), r + k) / (r + k);
  if (s >= 0.0) return magnitude;
  return (k % 2 == 0) ? magnitude : -magnitude;
}

std::vector<double> sweep_1d(std::span<const double> line, double dt, double dx, int k,
                             Boundary boundary) {
  if (line.empty()) return {};
  if (!(dx > 0.0) || !(dt >= 0.0)) throw std::invalid_argument("sweep_1d needs dx > 0, dt >= 0");
  const double ratio = dt / dx;
  check_line_cfl(line, ratio, k);
  std::vector<double> out(line.begin(), line.end());
  std::vector<double> flux(line.size() + 1);
  update_line(out, flux, ratio, k, boundary);
  return out;
}

BoundaryLedger::BoundaryLedger(std::vector<double> indices)
    : entropy_indices(std::move(indices)), entropy_outflow(entropy_indices.size(), 0.0) {}

void advance(Field& field, double dt, const SolverConfig& config, BoundaryLedger* ledger) {
  const Grid& grid = field.grid;
  if (grid.dim() != config.flux.dim()) {
    throw std::invalid_argument("flux dimension does not match grid dimension");
  }
  const bool book = ledger != nullptr && config.boundary == Boundary::outflow;
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const int k = config.flux.k[axis];
    const double ratio = dt / grid.spacing[axis];
    LineGeometry geo;
    geo.stride = grid.stride(axis);
    geo.count = static_cast<std::size_t>(grid.cells[axis]);
    geo.lines = grid.size() / geo.count;

    std::vector<double> ends;
    if (book) ends.assign(2 * geo.lines, 0.0);

    for_each_line(geo.lines, config.threads, [&](std::size_t begin, std::size_t end) {
      std::vector<double> line(geo.count);
      std::vector<double> flux(geo.count + 1);
      for (std::size_t l = begin; l < end; ++l) {
        const std::size_t base = geo.base(l);
        for (std::size_t i = 0; i < geo.count; ++i) line[i] = field.values[base + i * geo.stride];
        check_line_cfl(line, ratio, k);
        if (book) {
          ends[2 * l] = line.front();
          ends[2 * l + 1] = line.back();
        }
        update_line(line, flux, ratio, k, config.boundary);
        for (std::size_t i = 0; i < geo.count; ++i) field.values[base + i * geo.stride] = line[i];
      }
    });

    if (book) {
      const double area_dt = dt * grid.cell_volume() / grid.spacing[axis];
      for (std::size_t l = 0; l < geo.lines; ++l) {
        const double left = ends[2 * l];
        const double right = ends[2 * l + 1];
        ledger->mass_outflow += area_dt * (monomial_flux(right, k) - monomial_flux(left, k));
        for (std::size_t e = 0; e < ledger->entropy_indices.size(); ++e) {
          const double r = ledger->entropy_indices[e];
          ledger->entropy_outflow[e] +=
              area_dt * (entropy_flux(right, r, k) - entropy_flux(left, r, k));
        }
      }
    }
  }
}

Field step(const Field& field, double dt, const SolverConfig& config) {
  Field out = field;
  advance(out, dt, config, nullptr);
  return out;
}

double cfl_dt(const Field& field, const SolverConfig& config, double t) {
  const double gap = next_stop(config, t) - t;
  const double m = field.max_abs();
  if (m == 0.0) return gap;
  double dt = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < field.grid.dim(); ++axis) {
    dt = std::min(dt, field.grid.spacing[axis] / ipow(m, config.flux.k[axis]));
  }
  return std::min(config.cfl * dt, gap);
}

namespace {

class Recorder {
 public:
  Recorder(const Field& u0, const ReportOptions& options, RunReport& report)
      : u0_(u0), options_(options), report_(report) {
    report_.dim = u0.grid.dim();
    report_.support_threshold =
        options.support_threshold >= 0.0 ? options.support_threshold : 1e-6 * u0.max_abs();
    for (double p : options.norms) report_.norms[p];
    for (double r : options.entropy_indices) report_.entropy_mass[r];
    if (options.track_support) report_.support_widths.assign(u0.grid.dim(), {});
    for (double r : options.entropy_indices) initial_entropy_.push_back(entropy_integral(u0, r));
  }

  void record(double t, const Field& u, const BoundaryLedger& ledger) {
    report_.times.push_back(t);
    for (double p : options_.norms) report_.norms[p].push_back(lp_norm(u, p));
    if (u.grid.dim() == 1) report_.tv.push_back(tv_and_oleinik(u).tv);
    for (std::size_t e = 0; e < options_.entropy_indices.size(); ++e) {
      const double r = options_.entropy_indices[e];
      report_.entropy_mass[r].push_back(initial_entropy_[e] - entropy_integral(u, r) -
                                        ledger.entropy_outflow[e]);
    }
    if (options_.track_support) {
      for (int axis = 0; axis < u.grid.dim(); ++axis) {
        report_.support_widths[axis].push_back(
            support_width(u, axis, report_.support_threshold));
      }
    }
    report_.mass.push_back(u.integral());
    report_.mass_outflow = ledger.mass_outflow;
    if (options_.keep_snapshots) report_.snapshots.push_back(u);
  }

 private:
  const Field& u0_;
  const ReportOptions& options_;
  RunReport& report_;
  std::vector<double> initial_entropy_;
};

std::vector<RunReport> run(const std::vector<Field>& initial, const SolverConfig& config,
                           const ReportOptions& options, const EnsembleObserver& observer) {
  config.validate();
  if (initial.empty()) return {};
  for (const Field& u : initial) {
    u.grid.validate();
    require_same_grid(u, initial.front());
    if (u.grid.dim() != config.flux.dim()) {
      throw std::invalid_argument("flux dimension does not match grid dimension");
    }
    if (!u.all_finite()) throw SolverBreakdown("initial data is not finite");
  }

  const std::size_t members = initial.size();
  std::vector<Field> fields = initial;
  std::vector<RunReport> reports(members);
  std::vector<BoundaryLedger> ledgers(members, BoundaryLedger(options.entropy_indices));
  std::vector<Recorder> recorders;
  recorders.reserve(members);
  for (std::size_t m = 0; m < members; ++m) recorders.emplace_back(initial[m], options, reports[m]);

  auto record_all = [&](double t) {
    for (std::size_t m = 0; m < members; ++m) recorders[m].record(t, fields[m], ledgers[m]);
    if (observer) observer(t, fields);
  };

  double t = 0.0;
  std::size_t steps = 0;
  if (!config.record_times.empty() && config.record_times.front() == 0.0) record_all(0.0);

  while (t < config.t_end) {
    const double target = next_stop(config, t);
    double dt = target - t;
    for (const Field& u : fields) dt = std::min(dt, cfl_dt(u, config, t));
    if (!(dt > 0.0)) {
      throw SolverBreakdown("time step collapsed to " + std::to_string(dt) + " at t = " +
                            std::to_string(t));
    }
    double t_new = t + dt;
    if (t_new >= target || target - t_new <= 1e-14 * std::max(1.0, target)) {
      dt = target - t;
      t_new = target;
    }
    for (std::size_t m = 0; m < members; ++m) {
      advance(fields[m], dt, config, &ledgers[m]);
      if (!fields[m].all_finite()) {
        throw SolverBreakdown("non-finite value after step at t = " + std::to_string(t_new));
      }
    }
    t = t_new;
    ++steps;
    if (std::find(config.record_times.begin(), config.record_times.end(), t) !=
        config.record_times.end()) {
      record_all(t);
    }
  }
  for (auto& r : reports) r.steps = steps;
  return reports;
}

}  // namespace

RunReport solve(const Field& u0, const SolverConfig& config, const ReportOptions& options,
                const Observer& observer) {
  EnsembleObserver single;
  if (observer) single = [&observer](double t, std::span<const Field> u) { observer(t, u[0]); };
  return run({u0}, config, options, single).front();
}

std::vector<RunReport> solve_ensemble(const std::vector<Field>& initial, const SolverConfig& config,
                                      const ReportOptions& options,
                                      const EnsembleObserver& observer) {
  return run(initial, config, options, observer);
}

// ---------------------------------------------------------------------------
// Initial data

namespace {

double scale_factor(const InitialSpec& spec, int axis) {
  return spec.mu * std::pow(spec.lambda, axis + 1);
}

double param(const std::vector<double>& v, int axis, double fallback) {
  return axis < static_cast<int>(v.size()) ? v[axis] : fallback;
}

// Value of the unscaled profile at z.
double base_value(const InitialSpec& spec, std::span<const double> z) {
  const int n = static_cast<int>(z.size());
  switch (spec.kind) {
    case InitialKind::bump: {
      double r2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double s = (z[j] - param(spec.center, j, 0.0)) / param(spec.radius, j, 1.0);
        r2 += s * s;
      }
      return r2 < 1.0 ? spec.height * std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
    }
    case InitialKind::box: {
      for (int j = 0; j < n; ++j) {
        if (std::abs(z[j] - param(spec.center, j, 0.0)) >= param(spec.radius, j, 1.0)) return 0.0;
      }
      return spec.height;
    }
    case InitialKind::n_wave: {
      const double s = (z[0] - param(spec.center, 0, 0.0)) / param(spec.radius, 0, 1.0);
      return std::abs(s) < 1.0 ? spec.height * s : 0.0;
    }
    case InitialKind::fundamental_seed: {
      for (int j = 0; j < n; ++j) {
        if (z[j] < 0.0 || z[j] > spec.eps) return 0.0;
      }
      return spec.mass / std::pow(spec.eps, n);
    }
    case InitialKind::riemann:
      return z[0] < param(spec.center, 0, 0.0) ? spec.left : spec.right;
  }
  return 0.0;
}

double overlap(double lo, double hi, double a, double b) {
  return std::max(0.0, std::min(hi, b) - std::max(lo, a));
}

// Exact cell average of the unscaled piecewise-constant profiles over the box [lo, hi].
double base_cell_average(const InitialSpec& spec, std::span<const double> lo,
                         std::span<const double> hi) {
  const int n = static_cast<int>(lo.size());
  double fraction = 1.0;
  switch (spec.kind) {
    case InitialKind::box:
      for (int j = 0; j < n; ++j) {
        const double c = param(spec.center, j, 0.0);
        const double r = param(spec.radius, j, 1.0);
        fraction *= overlap(lo[j], hi[j], c - r, c + r) / (hi[j] - lo[j]);
      }
      return spec.height * fraction;
    case InitialKind::fundamental_seed:
      for (int j = 0; j < n; ++j) fraction *= overlap(lo[j], hi[j], 0.0, spec.eps) / (hi[j] - lo[j]);
      return spec.mass / std::pow(spec.eps, n) * fraction;
    case InitialKind::riemann: {
      const double c = param(spec.center, 0, 0.0);
      const double left = overlap(lo[0], hi[0], -std::numeric_limits<double>::infinity(), c) /
                          (hi[0] - lo[0]);
      return spec.left * left + spec.right * (1.0 - left);
    }
    default:
      break;
  }
  return 0.0;
}

}  // namespace

double initial_value(const InitialSpec& spec, std::span<const double> y) {
  if (!(spec.lambda > 0.0) || !(spec.mu > 0.0)) {
    throw std::invalid_argument("scaled family needs lambda, mu > 0");
  }
  std::vector<double> z(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) z[j] = scale_factor(spec, static_cast<int>(j)) * y[j];
  return base_value(spec, z) / spec.lambda;
}

Field initial_data(const InitialSpec& spec, const Grid& grid) {
  grid.validate();
  const int n = grid.dim();
  if ((spec.kind == InitialKind::n_wave || spec.kind == InitialKind::riemann) && n != 1) {
    throw std::invalid_argument("n_wave and riemann data are 1-D only");
  }
  if (spec.kind == InitialKind::fundamental_seed && (!(spec.eps > 0.0) || !(spec.mass > 0.0))) {
    throw std::invalid_argument("fundamental seed needs eps > 0 and mass > 0");
  }
  if (!(spec.lambda > 0.0) || !(spec.mu > 0.0)) {
    throw std::invalid_argument("scaled family needs lambda, mu > 0");
  }
  const bool exact_average = spec.kind == InitialKind::box ||
                             spec.kind == InitialKind::fundamental_seed ||
                             spec.kind == InitialKind::riemann;
  Field field = Field::zeros(grid);
  std::vector<double> lo(n), hi(n), mid(n);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto idx = grid.unflatten(flat);
    for (int j = 0; j < n; ++j) {
      const double s = scale_factor(spec, j);
      lo[j] = s * grid.cell_lower(j, idx[j]);
      hi[j] = s * grid.cell_lower(j, idx[j] + 1);
      mid[j] = grid.cell_center(j, idx[j]);
    }
    field.values[flat] = exact_average ? base_cell_average(spec, lo, hi) / spec.lambda
                                       : initial_value(spec, mid);
  }

  if (spec.kind != InitialKind::riemann) {
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
      if (field.values[flat] == 0.0) continue;
      const auto idx = grid.unflatten(flat);
      for (int j = 0; j < n; ++j) {
        if (idx[j] == 0 || idx[j] == grid.cells[j] - 1) {
          throw std::invalid_argument("initial data support touches the boundary layer");
        }
      }
    }
  }
  return field;
}

Field companion_field(const Field& u0, double lambda, double mu) {
  if (!(lambda > 0.0) || !(mu > 0.0)) throw std::invalid_argument("lambda, mu must be > 0");
  Field v = u0;
  for (int j = 0; j < v.grid.dim(); ++j) {
    const double s = mu * std::pow(lambda, j + 1);
    v.grid.spacing[j] /= s;
    v.grid.origin[j] /= s;
  }
  for (double& x : v.values) x /= lambda;
  return v;
}

double normalizing_lambda(const Field& u0, double p, double mu) {
  const int n = u0.grid.dim();
  const double integral = lp_integral(u0, p);
  if (!(integral > 0.0)) throw std::invalid_argument("cannot normalize zero data");
  const double exponent = p + n * (n + 1) / 2.0;
  return std::pow(integral / std::pow(mu, n), 1.0 / exponent);
}

Grid autosize_grid(const std::vector<double>& lower, const std::vector<double>& upper,
                   const FluxSpec& flux, double max_abs, double t_end,
                   const std::vector<double>& spacing) {
  flux.validate();
  const std::size_t n = lower.size();
  if (upper.size() != n || spacing.size() != n || static_cast<std::size_t>(flux.dim()) != n) {
    throw std::invalid_argument("autosize_grid: dimension mismatch");
  }
  Grid g;
  for (std::size_t j = 0; j < n; ++j) {
    // one extra cell keeps the support off the outflow boundary layer
    const double margin = ipow(max_abs, flux.k[j]) * t_end + spacing[j];
    const double lo = lower[j] - margin;
    const double hi = upper[j] + margin;
    g.cells.push_back(std::max(3, static_cast<int>(std::ceil((hi - lo) / spacing[j]))));
    g.spacing.push_back(spacing[j]);
    g.origin.push_back(lo);
  }
  g.validate();
  return g;
}

}  // namespace disperse
