#include "disperse/exponents.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace disperse {

namespace {

void require_exponent(double p, const char* name) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument(std::string(name) + " must lie in [1, inf], got " +
                                std::to_string(p));
  }
}

void require_dimension(int n) {
  if (n < 1) {
    throw std::invalid_argument("space dimension must be >= 1, got " + std::to_string(n));
  }
}

double reciprocal(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

}  // namespace

double burgers_h(double p, int n) {
  const double d = n + 1;
  return 2.0 + d * n * reciprocal(p);
}

double burgers_delta(double p, int n) {
  if (std::isinf(p)) return 0.0;
  const double d = n + 1;
  return n / (2.0 * p + d * n);
}

double burgers_p_star(double p, int n) {
  const double d = n + 1;
  return d * (1.0 + p / n);
}

DispersionExponents burgers_exponents(double p, double q, int n) {
  require_exponent(p, "p");
  require_exponent(q, "q");
  require_dimension(n);
  if (p > q) throw std::invalid_argument("burgers_exponents requires p <= q");

  DispersionExponents e;
  e.p = p;
  e.q = q;
  e.n = n;
  e.d = n + 1;
  e.h_p = burgers_h(p, n);
  e.h_q = burgers_h(q, n);
  e.delta_p = burgers_delta(p, n);
  e.delta_q = burgers_delta(q, n);
  e.alpha = e.h_q / e.h_p;
  e.beta = p == q ? 0.0 : e.h_q * (e.delta_p - e.delta_q);
  e.p_star = std::isinf(p) ? kInfinity : burgers_p_star(p, n);
  return e;
}

KappaNu kappa_nu(int d) {
  if (d < 2) throw std::invalid_argument("kappa_nu requires d >= 2");
  const double dd = d;
  const double denom = dd * dd - dd + 2.0;
  return {2.0 * (dd - 1.0) / denom, dd * (dd - 1.0) / denom};
}

GronwallParams gronwall_params(double p, int n) {
  require_exponent(p, "p");
  require_dimension(n);
  if (std::isinf(p)) throw std::invalid_argument("gronwall_params requires finite p");
  const double d = n + 1;
  const double nn = n;
  GronwallParams g;
  g.a = (p + nn) / (p + d * nn);
  g.b = nn * nn / (p + d * nn);
  g.rho = 2.0 * nn / (d * g.b);
  g.mu = p * (1.0 + g.a) / g.b;
  return g;
}

MonomialExponents monomial_exponents(double p, double q, std::span<const int> k) {
  require_exponent(p, "p");
  require_exponent(q, "q");
  if (p > q) throw std::invalid_argument("monomial_exponents requires p <= q");
  if (k.empty()) throw std::invalid_argument("flux exponent vector is empty");
  int prev = 0;
  for (int kj : k) {
    if (kj <= prev) {
      throw std::invalid_argument("flux exponents must be strictly increasing positive integers");
    }
    prev = kj;
  }

  MonomialExponents m;
  m.k.assign(k.begin(), k.end());
  m.n = static_cast<int>(k.size());
  m.d = m.n + 1;
  m.p = p;
  m.q = q;
  for (int kj : k) m.K += kj;
  const double K = static_cast<double>(m.K);
  const double kn = k.back();
  m.N = m.d * p + 2.0 * K;
  m.Q = m.N / m.n;
  m.theta = K / (m.d * kn);
  m.h_p = 1.0 + K * reciprocal(p);
  m.h_q = 1.0 + K * reciprocal(q);
  m.alpha = m.h_q / m.h_p;
  m.beta = p == q ? 0.0 : m.n * (m.alpha / p - reciprocal(q));
  m.admissible = p >= m.n * kn - 2.0 * K;
  return m;
}

DeGiorgiParams degiorgi_params(double p, int n) {
  require_exponent(p, "p");
  require_dimension(n);
  if (std::isinf(p)) throw std::invalid_argument("degiorgi_params requires finite p");
  DeGiorgiParams g;
  g.p = p;
  g.p_star = burgers_p_star(p, n);
  g.r = 1.0 / (1.0 / p - 1.0 / g.p_star);
  g.delta = burgers_exponents(p, g.p_star, n).alpha - p / g.p_star;
  g.gamma = p / g.r;
  return g;
}

}  // namespace disperse
