#pragma once

// Exponents and parameters of the L^p -> L^q decay estimates for the
// multi-dimensional Burgers equation and its monomial-flux relatives.
//
// Lebesgue exponents are doubles; q = +infinity is represented by
// `kInfinity` and handled by the continuous limits h(inf) = 2 (Burgers),
// h(inf) = 1 (monomial) and delta(inf) = 0.

#include <limits>
#include <span>
#include <vector>

namespace disperse {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Exponents of ||u(t)||_q <= c t^{-beta} ||u_0||_p^{alpha} for Burgers in n
/// space dimensions (d = n + 1).
struct DispersionExponents {
  double p = 1.0;
  double q = 1.0;
  int n = 1;
  int d = 2;
  double h_p = 0.0;
  double h_q = 0.0;
  double delta_p = 0.0;
  double delta_q = 0.0;
  double alpha = 1.0;
  double beta = 0.0;
  double p_star = 0.0;
};

struct KappaNu {
  double kappa = 0.0;
  double nu = 0.0;
};

/// Parameters of the Gronwall argument turning the space-time bound into
/// decay of X(t) = ||u(t)||_{p*}^{p*}.
struct GronwallParams {
  double a = 0.0;
  double b = 0.0;
  double rho = 0.0;
  double mu = 0.0;
};

struct MonomialExponents {
  std::vector<int> k;  // k_1 < ... < k_n, k_0 = 0 implicit
  int n = 1;
  int d = 2;
  long K = 0;          // k_0 + ... + k_n
  double p = 1.0;
  double q = 1.0;
  double N = 0.0;      // d p + 2 K
  double Q = 0.0;      // N / n
  double theta = 0.0;  // K / (d k_n)
  double h_p = 0.0;
  double h_q = 0.0;
  double alpha = 1.0;
  double beta = 0.0;
  bool admissible = false;  // p >= n k_n - 2K
};

/// Level-set iteration parameters for the L^p -> L^inf step.
struct DeGiorgiParams {
  double p = 1.0;
  double p_star = 0.0;
  double r = 0.0;      // 1/p = 1/p* + 1/r
  double delta = 0.0;  // alpha(p, p*) - p/p*
  double gamma = 0.0;  // p / r
};

/// h(p) = 2 + d n / p, with h(inf) = 2.
double burgers_h(double p, int n);
/// delta(p) = n / (2p + d n), with delta(inf) = 0.
double burgers_delta(double p, int n);
/// p* = d (1 + p / n).
double burgers_p_star(double p, int n);

DispersionExponents burgers_exponents(double p, double q, int n);

/// kappa = 2(d-1)/(d^2-d+2), nu = d(d-1)/(d^2-d+2).
KappaNu kappa_nu(int d);

GronwallParams gronwall_params(double p, int n);

/// Throws std::invalid_argument unless k is strictly increasing with k_1 >= 1.
MonomialExponents monomial_exponents(double p, double q, std::span<const int> k);

DeGiorgiParams degiorgi_params(double p, int n);

}  // namespace disperse
