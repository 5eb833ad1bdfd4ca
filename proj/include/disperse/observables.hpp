#pragma once

// Quantities constrained by the decay estimates: L^p norms, space-time
// integrals, total variation and one-sided slopes, entropy dissipation,
// support widths, the 1-D fundamental solution and level-set traces.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "disperse/exponents.hpp"
#include "disperse/field.hpp"

namespace disperse {

struct ReportOptions {
  std::vector<double> norms{1.0, 2.0, kInfinity};
  /// r values of eta_r(s) = |s|^r / r whose dissipated mass is tracked.
  std::vector<double> entropy_indices;
  bool keep_snapshots = false;
  bool track_support = true;
  /// Absolute support threshold; negative selects 1e-6 * ||u0||_inf.
  double support_threshold = -1.0;
};

struct RunReport {
  int dim = 1;
  std::vector<double> times;
  std::map<double, std::vector<double>> norms;
  std::vector<double> tv;  // 1-D only
  std::map<double, std::vector<double>> entropy_mass;
  std::vector<std::vector<double>> support_widths;  // [axis][record]
  std::vector<Field> snapshots;
  std::vector<double> mass;  // int u dy
  double mass_outflow = 0.0;
  double support_threshold = 0.0;
  std::size_t steps = 0;

  /// Index of the record taken at time t (exact match), or npos.
  std::size_t record_index(double t) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// int |u|^p dy (p finite) with cell-midpoint quadrature, index-ordered sum.
double lp_integral(const Field& field, double p);

/// (int |u|^p)^{1/p}; p = inf gives max|u|. Rejects p < 1.
double lp_norm(const Field& field, double p);

struct StrichartzIntegral {
  double integral = 0.0;     // int_{t0}^{t1} int u^{p*} dy dt, trapezoid in time
  double lhs_power = 0.0;    // integral^{(d-1)/d}
  std::vector<double> tail_times;      // record times tau in [t0, t1]
  std::vector<double> tail_integrals;  // int_tau^{t1} X(t) dt
};

/// Uses the recorded p*-norm series when present, stored snapshots otherwise.
/// Throws std::invalid_argument with fewer than 8 records in [t0, t1].
StrichartzIntegral strichartz_integral(const RunReport& report, double p_star, double t0,
                                       double t1);

struct TvOleinik {
  double tv = 0.0;
  double max_slope = 0.0;
};

/// 1-D only: TV = sum |u_{i+1} - u_i|, max forward slope (u_{i+1} - u_i) / dy.
TvOleinik tv_and_oleinik(const Field& field);

/// 1-D only: TV(u^2 / 2).
double tv_half_square(const Field& field);

/// int eta_r(u) dy with eta_r(s) = |s|^r / r.
double entropy_integral(const Field& field, double r);

/// int eta_r(u0) - int eta_r(ut) - (entropy that left through the boundary).
double entropy_production_mass(const Field& u0, const Field& ut, double r,
                               double boundary_outflow = 0.0);

/// Longest run from first to last cell with |u| > threshold along `axis`,
/// maximised over transverse lines, in length units.
double support_width(const Field& field, int axis, double threshold);

/// U_m(t, y) = y / t on (0, sqrt(2 m t)), zero elsewhere.
double fundamental_solution_1d(double m, double t, double y);

/// Exact average of U_m(t, .) over [lo, hi].
double fundamental_cell_average_1d(double m, double t, double lo, double hi);

/// t_k = 1 - 2^{-k}, k = 0..k_max.
std::vector<double> degiorgi_times(int k_max);

struct DeGiorgiTrace {
  double B = 0.0;
  double p = 1.0;
  std::vector<double> t;      // t_k
  std::vector<double> level;  // l_k = B t_k
  std::vector<double> a;      // ||(u - l_k)_+ (t_k)||_p
  std::vector<double> b;      // B^{-gamma/delta} a_k
  double delta = 0.0;
  double gamma = 0.0;
};

/// Reads the snapshots stored at t_k in `report` (see degiorgi_times).
DeGiorgiTrace degiorgi_trace(const RunReport& report, double B, double p, int k_max);

}  // namespace disperse
