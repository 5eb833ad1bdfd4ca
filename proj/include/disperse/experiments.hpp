#pragma once

// Verification experiments: decay-rate fits, contraction and comparison,
// scaling equivariance, the space-time (Strichartz-type) audit, the
// level-set iteration monitor and the 1-D fundamental-solution study.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "disperse/exponents.hpp"
#include "disperse/field.hpp"
#include "disperse/observables.hpp"
#include "disperse/solver.hpp"

namespace disperse {

/// Least-squares line through (log t, log norm).
struct DecayFit {
  double p = 1.0;
  double q = kInfinity;
  double slope = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  // RMS in log space
  double theory_beta = 0.0;
  std::size_t samples = 0;
  bool pass = false;  // |slope + theory_beta| <= tolerance
};

/// Throws std::invalid_argument with fewer than 6 samples in [t0, t1] or a
/// non-positive norm among them.
DecayFit fit_decay(std::span<const double> times, std::span<const double> norms, double t0,
                   double t1);

/// Exponents for the flux in use: Burgers formulas when k_j = j, monomial
/// formulas otherwise.
std::pair<double, double> decay_exponents(const FluxSpec& flux, double p, double q);

struct BoundAudit {
  double p = 1.0;
  double q = kInfinity;
  double alpha = 1.0;
  double beta = 0.0;
  /// max over the window of ||u(t)||_q t^beta / ||u0||_p^alpha
  double empirical_constant = 0.0;
  /// the scaled norm on the late half of the window stays within 10% of its
  /// early-half maximum
  bool bounded = false;
};

struct DecayExperiment {
  Field u0;
  SolverConfig config;
  std::vector<std::pair<double, double>> pairs{{1.0, kInfinity}};
  double t0 = 1.0;
  double t1 = 100.0;
  double slope_tolerance = 0.05;
  /// Slope equality is asserted only when set; otherwise the one-sided bound.
  bool fit_slopes = true;
  double heat_slack = 0.05;
};

struct DecayResult {
  RunReport report;
  std::vector<DecayFit> fits;
  std::vector<BoundAudit> audits;
  bool degenerate = false;  // zero data
  /// 1-D: max over records t >= dy of ||u(t)||_inf / (2 sqrt(2 ||u0||_1 / t))
  std::optional<double> heat_ratio;
  bool pass = false;
};

DecayResult run_decay_experiment(const DecayExperiment& spec);

struct ContractionResult {
  std::vector<double> times;
  std::vector<double> distances;  // ||u(t) - v(t)||_1
  double initial_distance = 0.0;
  bool nonincreasing = false;     // within 1e-12 relative
  bool bounded_by_initial = false;
  bool ordered_data = false;      // u0 <= v0 componentwise
  bool comparison_holds = true;   // u(t) <= v(t) at all records (when ordered)
  double max_principle_excess = 0.0;  // worst excursion outside [min u0, max u0]
  double mass_drift = 0.0;            // relative, periodic boundary only
  bool pass = false;
};

/// Runs u0 and v0 on a shared time-step sequence.
ContractionResult run_contraction_experiment(const Field& u0, const Field& v0,
                                             const SolverConfig& config);

struct ScalingResult {
  double lambda = 1.0;
  double mu = 1.0;
  std::vector<double> times;     // times of the scaled run
  std::vector<double> mismatch;  // ||v(t) - u(mu t)/lambda||_1 / ||v(t)||_1
  std::vector<double> identity_q;
  std::vector<double> identity_error;  // relative, per q
  bool equivariant = false;
  bool identity_exact = false;
  bool pass = false;
};

/// u from u0 on its grid and v from companion_field(u0, lambda, mu) with all
/// times divided by mu.
ScalingResult run_scaling_experiment(const Field& u0, double lambda, double mu,
                                     const SolverConfig& config, double tolerance = 0.05);

struct StrichartzRun {
  double lambda = 1.0;
  double lhs_power = 0.0;  // (int_0^T int u^{p*})^{(d-1)/d}
  double rhs = 0.0;        // (int u0^{p+n})^{1/2} (int u0^p)^{1/2}
  double ratio = 0.0;
};

struct StrichartzResult {
  double p = 1.0;
  double p_star = 0.0;
  std::vector<StrichartzRun> runs;
  double spread = 0.0;  // max ratio / min ratio - 1
  bool degenerate = false;
  bool pass = false;
};

/// Samples the lambda-scaled profile on the same grid for each lambda and
/// integrates over [0, config.t_end] using the records (which must include
/// t = 0 and at least 8 times).
StrichartzResult run_strichartz_experiment(const InitialSpec& profile, const Grid& grid,
                                           const SolverConfig& config, double p,
                                           const std::vector<double>& lambdas,
                                           double spread_tolerance = 0.10, int jobs = 1);

struct DeGiorgiResult {
  double p = 1.0;
  std::vector<DeGiorgiTrace> traces;  // one per B in the grid
  std::optional<double> minimal_B;    // smallest grid B with a_K < threshold
  double sup_at_one = 0.0;            // ||u(1)||_inf
  double recurrence_C = 0.0;          // least C >= 1 with b_{k+1} <= C 2^{Ck} b_k^{1+delta}
  bool pass = false;                  // minimal_B exists and ||u(1)||_inf <= minimal_B
};

/// One solve to t = 1 with snapshots at t_k = 1 - 2^{-k}; every B of the grid
/// reuses it. u0 must satisfy ||u0||_p = 1 (see normalizing_lambda).
DeGiorgiResult run_degiorgi_experiment(const Field& u0, double p, std::vector<double> B_grid,
                                       const SolverConfig& config, int k_max = 10,
                                       double threshold = 1e-3);

/// Least C >= 1 with b_{k+1} <= C 2^{Ck} b_k^{1+delta} along the trace.
double fit_recurrence_constant(const DeGiorgiTrace& trace);

struct FundamentalExperiment {
  double m = 1.0;
  std::vector<int> cells{1024, 2048, 4096};
  double lower = -0.5;
  double upper = 2.5;
  int seed_cells = 2;  // seed width in cells of each level
  std::vector<double> times{0.5, 1.0, 2.0};
  double reference_time = 1.0;
  double cfl = 0.8;
  int jobs = 1;
};

struct FundamentalLevel {
  int cells = 0;
  double dy = 0.0;
  std::vector<double> times;
  std::vector<double> l1_error;
  std::vector<double> sup;
  std::vector<double> mass;
};

struct FundamentalResult {
  double m = 1.0;
  std::vector<FundamentalLevel> levels;
  std::vector<double> convergence_factors;  // coarse error / fine error at reference_time
  double finest_error = 0.0;
  double sup_relative_error = 0.0;          // | ||u||_inf / sqrt(2m/t) - 1 | at reference_time
  double mass_error = 0.0;                  // max |mass - m| over levels and times
  bool pass = false;                        // error <= 0.02, factors >= 1.5, sup within 5%
};

FundamentalResult run_fundamental_experiment(const FundamentalExperiment& spec);

/// n_geometric points spread geometrically over [t_min, t_max], optionally
/// preceded by t = 0.
std::vector<double> geometric_times(double t_min, double t_max, int count, bool with_zero);

}  // namespace disperse
