#include "disperse/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace disperse {

std::size_t RunReport::record_index(double t) const {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] == t) return i;
  }
  return npos;
}

double lp_integral(const Field& field, double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("lp_integral needs finite p >= 1");
  double s = 0.0;
  if (p == 1.0) {
    for (double v : field.values) s += std::abs(v);
  } else if (p == 2.0) {
    for (double v : field.values) s += v * v;
  } else {
    for (double v : field.values) s += std::pow(std::abs(v), p);
  }
  return s * field.grid.cell_volume();
}

double lp_norm(const Field& field, double p) {
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("lp_norm needs p >= 1");
  if (std::isinf(p)) return field.max_abs();
  const double integral = lp_integral(field, p);
  return p == 1.0 ? integral : std::pow(integral, 1.0 / p);
}

StrichartzIntegral strichartz_integral(const RunReport& report, double p_star, double t0,
                                       double t1) {
  if (!(t1 > t0)) throw std::invalid_argument("strichartz_integral needs t1 > t0");
  std::vector<double> times;
  std::vector<double> x;
  const auto norm_series = report.norms.find(p_star);
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    const double t = report.times[i];
    if (t < t0 || t > t1) continue;
    double value = 0.0;
    if (norm_series != report.norms.end()) {
      value = std::pow(norm_series->second[i], p_star);
    } else if (i < report.snapshots.size()) {
      value = lp_integral(report.snapshots[i], p_star);
    } else {
      throw std::invalid_argument("strichartz_integral: report has neither the p* norm nor snapshots");
    }
    times.push_back(t);
    x.push_back(value);
  }
  if (times.size() < 8) {
    throw std::invalid_argument("strichartz_integral needs >= 8 records in [t0, t1], got " +
                                std::to_string(times.size()));
  }

  StrichartzIntegral out;
  out.tail_times = times;
  out.tail_integrals.assign(times.size(), 0.0);
  for (std::size_t i = times.size() - 1; i-- > 0;) {
    out.tail_integrals[i] =
        out.tail_integrals[i + 1] + 0.5 * (times[i + 1] - times[i]) * (x[i] + x[i + 1]);
  }
  out.integral = out.tail_integrals.front();
  const double d = report.dim + 1;
  out.lhs_power = std::pow(out.integral, (d - 1.0) / d);
  return out;
}

namespace {

void require_1d(const Field& field, const char* what) {
  if (field.grid.dim() != 1) throw std::invalid_argument(std::string(what) + " needs a 1-D field");
}

}  // namespace

TvOleinik tv_and_oleinik(const Field& field) {
  require_1d(field, "tv_and_oleinik");
  TvOleinik out;
  out.max_slope = -std::numeric_limits<double>::infinity();
  const double dy = field.grid.spacing[0];
  for (std::size_t i = 0; i + 1 < field.values.size(); ++i) {
    const double jump = field.values[i + 1] - field.values[i];
    out.tv += std::abs(jump);
    out.max_slope = std::max(out.max_slope, jump / dy);
  }
  return out;
}

double tv_half_square(const Field& field) {
  require_1d(field, "tv_half_square");
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < field.values.size(); ++i) {
    const double a = field.values[i];
    const double b = field.values[i + 1];
    tv += std::abs(0.5 * (b * b - a * a));
  }
  return tv;
}

double entropy_integral(const Field& field, double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("entropy index r must be >= 1");
  return lp_integral(field, r) / r;
}

double entropy_production_mass(const Field& u0, const Field& ut, double r,
                               double boundary_outflow) {
  require_same_grid(u0, ut);
  return entropy_integral(u0, r) - entropy_integral(ut, r) - boundary_outflow;
}

double support_width(const Field& field, int axis, double threshold) {
  const Grid& g = field.grid;
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("support_width: bad axis");
  const std::size_t stride = g.stride(axis);
  const std::size_t count = static_cast<std::size_t>(g.cells[axis]);
  const std::size_t block = stride * count;
  std::size_t widest = 0;
  for (std::size_t outer = 0; outer < g.size(); outer += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t base = outer + inner;
      std::size_t first = count;
      std::size_t last = 0;
      for (std::size_t i = 0; i < count; ++i) {
        if (std::abs(field.values[base + i * stride]) > threshold) {
          first = std::min(first, i);
          last = i;
        }
      }
      if (first < count) widest = std::max(widest, last - first + 1);
    }
  }
  return static_cast<double>(widest) * g.spacing[axis];
}

double fundamental_solution_1d(double m, double t, double y) {
  if (!(t > 0.0)) throw std::invalid_argument("fundamental solution needs t > 0");
  if (!(m > 0.0)) throw std::invalid_argument("fundamental solution needs m > 0");
  return (y > 0.0 && y < std::sqrt(2.0 * m * t)) ? y / t : 0.0;
}

double fundamental_cell_average_1d(double m, double t, double lo, double hi) {
  if (!(t > 0.0) || !(m > 0.0)) throw std::invalid_argument("fundamental solution needs t, m > 0");
  if (!(hi > lo)) throw std::invalid_argument("empty cell");
  const double front = std::sqrt(2.0 * m * t);
  const double a = std::clamp(lo, 0.0, front);
  const double b = std::clamp(hi, 0.0, front);
  return (b * b - a * a) / (2.0 * t) / (hi - lo);
}

std::vector<double> degiorgi_times(int k_max) {
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  std::vector<double> t(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) t[k] = 1.0 - std::ldexp(1.0, -k);
  return t;
}

DeGiorgiTrace degiorgi_trace(const RunReport& report, double B, double p, int k_max) {
  if (!(B >= 0.0)) throw std::invalid_argument("degiorgi_trace needs B >= 0");
  const auto params = degiorgi_params(p, report.dim);
  DeGiorgiTrace trace;
  trace.B = B;
  trace.p = p;
  trace.delta = params.delta;
  trace.gamma = params.gamma;
  trace.t = degiorgi_times(k_max);
  const double rescale = B > 0.0 ? std::pow(B, -params.gamma / params.delta) : 1.0;
  for (double tk : trace.t) {
    const std::size_t idx = report.record_index(tk);
    if (idx == RunReport::npos || idx >= report.snapshots.size()) {
      throw std::invalid_argument("degiorgi_trace: no snapshot stored at t = " + std::to_string(tk));
    }
    const Field& u = report.snapshots[idx];
    const double level = B * tk;
    Field excess = Field::zeros(u.grid);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      excess.values[i] = std::max(u.values[i] - level, 0.0);
    }
    const double ak = lp_norm(excess, p);
    trace.level.push_back(level);
    trace.a.push_back(ak);
    trace.b.push_back(rescale * ak);
  }
  return trace;
}

}  // namespace disperse
