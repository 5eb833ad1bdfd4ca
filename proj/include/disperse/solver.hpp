#pragma once

// First-order Engquist-Osher finite-volume scheme for
//   d_t u + sum_j d_j u^{k_j+1} / (k_j+1) = 0
// with Godunov (sequential) dimensional splitting over the axes.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "disperse/field.hpp"
#include "disperse/observables.hpp"

namespace disperse {

class CflViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a run produces non-finite values.
class SolverBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Monomial flux exponents k_1 < ... < k_n; flux along axis j is
/// u^{k_j+1} / (k_j+1).
struct FluxSpec {
  std::vector<int> k;

  static FluxSpec burgers(int n);

  int dim() const { return static_cast<int>(k.size()); }
  bool is_burgers() const;
  void validate() const;

  bool operator==(const FluxSpec&) const = default;
};

enum class Boundary { outflow, periodic };

struct SolverConfig {
  FluxSpec flux;
  double cfl = 0.8;
  double t_end = 1.0;
  std::vector<double> record_times;
  Boundary boundary = Boundary::outflow;
  /// Lines of one sweep are split across this many threads. Results do not
  /// depend on the value.
  int threads = 1;

  void validate() const;
};

/// f(u) = u^{k+1} / (k+1).
double monomial_flux(double u, int k);

/// Engquist-Osher numerical flux for f(u) = u^{k+1} / (k+1), closed form.
double eo_flux(double a, double b, int k);

/// One conservative update u_i - dt/dx (F_{i+1/2} - F_{i-1/2}) of a line.
/// Outflow copies the end cells into the ghosts. Throws CflViolation when
/// dt max|u|^k / dx > 1.
std::vector<double> sweep_1d(std::span<const double> line, double dt, double dx, int k,
                             Boundary boundary);

/// Running totals of what left the domain through outflow faces,
/// integrated in time with the same explicit fluxes the scheme uses.
struct BoundaryLedger {
  std::vector<double> entropy_indices;
  std::vector<double> entropy_outflow;  // per index: int dt int_{dOmega} q_r(u) . n
  double mass_outflow = 0.0;

  explicit BoundaryLedger(std::vector<double> indices = {});
};

/// Sweeps along axes 0..n-1 in order with flux exponent k_j.
Field step(const Field& field, double dt, const SolverConfig& config);

/// In-place step that also books boundary fluxes into `ledger` (may be null).
void advance(Field& field, double dt, const SolverConfig& config, BoundaryLedger* ledger);

/// cfl * min_j dy_j / max|u|^{k_j}, capped at the next record time (or
/// t_end) after `t`. A zero field gets the full gap to that time.
double cfl_dt(const Field& field, const SolverConfig& config, double t = 0.0);

/// Entropy flux of eta_r(s) = |s|^r / r for the monomial flux of exponent k.
double entropy_flux(double s, double r, int k);

using Observer = std::function<void(double t, const Field& u)>;

/// Advances u0 to config.t_end with adaptive dt, recording the report at
/// each record time (t = 0 included when listed) and invoking `observer`
/// there.
RunReport solve(const Field& u0, const SolverConfig& config, const ReportOptions& options = {},
                const Observer& observer = {});

/// Advances several fields on a common time-step sequence (dt is the minimum
/// of the members' CFL steps), so that paired runs see the same scheme.
using EnsembleObserver = std::function<void(double t, std::span<const Field> members)>;

std::vector<RunReport> solve_ensemble(const std::vector<Field>& initial, const SolverConfig& config,
                                      const ReportOptions& options = {},
                                      const EnsembleObserver& observer = {});

// ---------------------------------------------------------------------------
// Initial data

enum class InitialKind { bump, box, n_wave, fundamental_seed, riemann };

struct InitialSpec {
  InitialKind kind = InitialKind::bump;
  std::vector<double> center;  // bump, box, n_wave
  std::vector<double> radius;  // per-axis half width
  double height = 1.0;
  double mass = 1.0;           // fundamental_seed
  double eps = 0.05;           // fundamental_seed width, seed covers [0, eps]^n
  double left = 1.0;           // riemann (1-D), jump at center[0]
  double right = -1.0;
  /// Scaled family v_0(y) = lambda^{-1} u_0(mu lambda y_1, ..., mu lambda^n y_n).
  double lambda = 1.0;
  double mu = 1.0;
};

/// Point value of the (scaled) profile.
double initial_value(const InitialSpec& spec, std::span<const double> y);

/// Cell values on `grid`: exact cell averages for box, seed and riemann
/// data, midpoint values for the smooth profiles. Rejects compact data
/// that is nonzero in a boundary cell.
Field initial_data(const InitialSpec& spec, const Grid& grid);

/// The same discrete data seen through the scaling group: spacing and origin
/// divided by mu lambda^j along axis j, values divided by lambda.
Field companion_field(const Field& u0, double lambda, double mu);

/// lambda solving lambda^{p + n(n+1)/2} mu^n = int u0^p, which normalizes
/// the companion field to unit L^p norm.
double normalizing_lambda(const Field& u0, double p, double mu = 1.0);

/// Box grid around [lower, upper] padded on each side by
/// max|f_j'(u0)| t_end = max_abs^{k_j} t_end along axis j.
Grid autosize_grid(const std::vector<double>& lower, const std::vector<double>& upper,
                   const FluxSpec& flux, double max_abs, double t_end,
                   const std::vector<double>& spacing);

}  // namespace disperse
