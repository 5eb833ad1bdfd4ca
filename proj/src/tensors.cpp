#include "disperse/tensors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace disperse {

double Matrix::max_norm() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::is_symmetric(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    }
  }
  return true;
}

double determinant(const Matrix& m) {
  const std::size_t n = m.dim();
  std::vector<double> lu(m.data().begin(), m.data().end());
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(lu[row * n + col]) > std::abs(lu[pivot * n + col])) pivot = row;
    }
    if (lu[pivot * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[pivot * n + j], lu[col * n + j]);
      det = -det;
    }
    const double diag = lu[col * n + col];
    det *= diag;
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = lu[row * n + col] / diag;
      for (std::size_t j = col; j < n; ++j) lu[row * n + j] -= factor * lu[col * n + j];
    }
  }
  return det;
}

bool cholesky_certifies_spd(const Matrix& m) {
  const std::size_t n = m.dim();
  const double tol = 1e-13 * m.max_norm();
  if (n == 0 || m.max_norm() == 0.0) return false;
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = m(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l[j * n + k] * l[j * n + k];
    if (!(pivot > tol)) return false;
    const double root = std::sqrt(pivot);
    l[j * n + j] = root;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / root;
    }
  }
  return true;
}

namespace {

void require_state(double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("tensor state must be finite and >= 0, got " + std::to_string(a));
  }
}

void require_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("tensor exponent p must be finite and >= 1");
  }
}

// Exponents e_i with entries a^{e_i+e_j+p} / (e_i+e_j+p).
TensorEval moment_tensor(double a, double p, const std::vector<int>& e) {
  const std::size_t dim = e.size();
  TensorEval t;
  t.a = a;
  t.p = p;
  t.dim = dim;
  t.entries = Matrix(dim);
  Matrix unit(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double r = p + e[i] + e[j];
      unit(i, j) = 1.0 / r;
      t.entries(i, j) = a == 0.0 ? 0.0 : std::pow(a, r) / r;
    }
  }
  t.det = determinant(t.entries);
  t.spd = a > 0.0 && cholesky_certifies_spd(t.entries);
  t.scale_constant = determinant(unit);
  double exponent = dim * p;
  for (int v : e) exponent += 2.0 * v;
  t.det_exponent = exponent;
  return t;
}

std::vector<int> burgers_rows(int n) {
  std::vector<int> e(static_cast<std::size_t>(n) + 1);
  std::iota(e.begin(), e.end(), 0);
  return e;
}

std::vector<int> monomial_rows(std::span<const int> k) {
  if (k.empty()) throw std::invalid_argument("flux exponent vector is empty");
  std::vector<int> e{0};
  for (int v : k) {
    if (v <= e.back()) {
      throw std::invalid_argument("flux exponents must be strictly increasing positive integers");
    }
    e.push_back(v);
  }
  return e;
}

std::vector<double> simpson_weights(std::size_t intervals, double h) {
  std::vector<double> w(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    w[i] = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[i] *= h / 3.0;
  }
  return w;
}

Matrix simpson_tensor(double a, std::size_t intervals, const FluxDerivatives& z_prime,
                      const ScalarFunction& g, std::size_t dim) {
  Matrix m(dim);
  const double h = a / static_cast<double>(intervals);
  const auto w = simpson_weights(intervals, h);
  for (std::size_t node = 0; node <= intervals; ++node) {
    const double s = h * static_cast<double>(node);
    const auto z = z_prime(s);
    if (z.size() != dim) throw std::invalid_argument("flux derivative arity changed");
    const double weight = w[node] * g(s);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) m(i, j) += weight * z[i] * z[j];
    }
  }
  return m;
}

// Fourth-order finite-difference derivative; one-sided near s = 0 so that
// callables defined only on [0, inf) are never evaluated at negative states.
double derivative(const ScalarFunction& f, double s, double h) {
  if (s >= 2.0 * h) {
    return (f(s - 2 * h) - 8 * f(s - h) + 8 * f(s + h) - f(s + 2 * h)) / (12 * h);
  }
  return (-25 * f(s) + 48 * f(s + h) - 36 * f(s + 2 * h) + 16 * f(s + 3 * h) -
          3 * f(s + 4 * h)) /
         (12 * h);
}

double euclidean_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

double hilbert_like_det(int d, double p) {
  if (d < 2) throw std::invalid_argument("hilbert_like_det requires d >= 2");
  require_p(p);
  return moment_tensor(1.0, p, burgers_rows(d - 1)).det;
}

TensorEval burgers_tensor(double a, double p, int n) {
  require_state(a);
  require_p(p);
  if (n < 1) throw std::invalid_argument("burgers_tensor requires n >= 1");
  return moment_tensor(a, p, burgers_rows(n));
}

double monomial_det_constant(double p, std::span<const int> k) {
  require_p(p);
  return moment_tensor(1.0, p, monomial_rows(k)).det;
}

TensorEval monomial_tensor(double a, double p, std::span<const int> k) {
  require_state(a);
  require_p(p);
  return moment_tensor(a, p, monomial_rows(k));
}

GeneralFluxTensor general_flux_tensor(double a, const FluxDerivatives& z_prime,
                                      const ScalarFunction& g, int quad_points) {
  require_state(a);
  if (quad_points < 16) throw std::invalid_argument("general_flux_tensor needs quad_points >= 16");
  const std::size_t intervals = static_cast<std::size_t>(quad_points + quad_points % 2);
  const std::size_t dim = z_prime(0.0).size();
  if (dim < 2) throw std::invalid_argument("flux derivative vector needs at least (1, f_1')");

  GeneralFluxTensor out;
  out.a = a;
  out.entries = Matrix(dim);
  if (a == 0.0) {
    out.state_grid = {0.0};
    out.z_prime = {z_prime(0.0)};
    out.g = {g(0.0)};
    out.phi_g = {0.0};
    out.phi_convex = true;
    out.phi_dominates = true;
    return out;
  }

  const double h = a / static_cast<double>(intervals);
  for (std::size_t node = 0; node <= intervals; ++node) {
    const double s = h * static_cast<double>(node);
    const double gs = g(s);
    if (!std::isfinite(gs) || gs < 0.0 || (s > 0.0 && gs <= 0.0)) {
      throw std::invalid_argument("weight g must be positive on (0, a]");
    }
    out.state_grid.push_back(s);
    out.z_prime.push_back(z_prime(s));
    out.g.push_back(gs);
  }

  const Matrix coarse = simpson_tensor(a, intervals, z_prime, g, dim);
  const Matrix fine = simpson_tensor(a, 2 * intervals, z_prime, g, dim);
  double change = 0.0;
  for (std::size_t i = 0; i < dim * dim; ++i) {
    change = std::max(change, std::abs(fine.data()[i] - coarse.data()[i]));
  }
  out.quadrature_change = change;
  if (change > 1e-8 * std::max(1.0, fine.max_norm())) {
    throw QuadratureError("general_flux_tensor: quadrature did not converge (entry change " +
                          std::to_string(change) + ")");
  }
  out.entries = fine;
  out.det = determinant(fine);
  out.delta_g = std::pow(std::max(out.det, 0.0), 1.0 / static_cast<double>(dim - 1));
  out.spd = cholesky_certifies_spd(fine);

  // Row entropies F_i(s) = int_0^s g Z_i' and their second derivatives.
  const double fd_step = 1e-3 * a;
  std::vector<ScalarFunction> rows;
  for (std::size_t i = 0; i < dim; ++i) {
    rows.emplace_back([&z_prime, &g, i](double s) { return g(s) * z_prime(s)[i]; });
  }
  auto second = [&](double s) {
    std::vector<double> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = derivative(rows[i], s, fd_step);
    return v;
  };
  const auto entropy = convexified_entropy(second, out.state_grid);
  out.phi_g = entropy.phi;
  out.phi_convex = entropy.convex;

  const double phi_scale = *std::max_element(out.phi_g.begin(), out.phi_g.end());
  bool dominated = true;
  for (std::size_t i = 0; i < dim; ++i) {
    const double slope0 = rows[i](0.0);
    double value = 0.0;
    for (std::size_t node = 1; node < out.state_grid.size() && dominated; ++node) {
      const double s0 = out.state_grid[node - 1];
      const double s1 = out.state_grid[node];
      value += (s1 - s0) / 6.0 * (rows[i](s0) + 4.0 * rows[i](0.5 * (s0 + s1)) + rows[i](s1));
      const double tangent_free = value - slope0 * s1;
      if (std::abs(tangent_free) > out.phi_g[node] + 1e-8 * std::max(phi_scale, 1e-300)) {
        dominated = false;
      }
    }
  }
  out.phi_dominates = dominated;
  return out;
}

ConvexifiedEntropy convexified_entropy(const FluxDerivatives& second_derivative,
                                       std::span<const double> state_grid,
                                       const FluxDerivatives& flux_derivatives) {
  if (state_grid.empty() || state_grid.front() != 0.0) {
    throw std::invalid_argument("convexified_entropy: state grid must start at 0");
  }
  for (std::size_t i = 1; i < state_grid.size(); ++i) {
    if (!(state_grid[i] > state_grid[i - 1])) {
      throw std::invalid_argument("convexified_entropy: state grid must be strictly increasing");
    }
  }
  auto curvature = [&](double s) { return euclidean_norm(second_derivative(s)); };

  ConvexifiedEntropy out;
  out.state_grid.assign(state_grid.begin(), state_grid.end());
  const std::size_t size = state_grid.size();
  out.phi.assign(size, 0.0);
  out.phi_prime.assign(size, 0.0);
  std::size_t flux_dim = 0;
  if (flux_derivatives) {
    flux_dim = flux_derivatives(0.0).size();
    out.flux.assign(flux_dim, std::vector<double>(size, 0.0));
  }

  for (std::size_t i = 0; i + 1 < size; ++i) {
    const double s0 = state_grid[i];
    const double s1 = state_grid[i + 1];
    const double mid = 0.5 * (s0 + s1);
    const double half = 0.5 * (s1 - s0);
    const double c0 = curvature(s0);
    const double cq1 = curvature(s0 + 0.5 * half);
    const double cm = curvature(mid);
    const double cq3 = curvature(mid + 0.5 * half);
    const double c1 = curvature(s1);
    const double dphi0 = out.phi_prime[i];
    const double dphi_mid = dphi0 + half / 6.0 * (c0 + 4.0 * cq1 + cm);
    const double dphi1 = dphi_mid + half / 6.0 * (cm + 4.0 * cq3 + c1);
    out.phi_prime[i + 1] = dphi1;
    out.phi[i + 1] = out.phi[i] + (s1 - s0) / 6.0 * (dphi0 + 4.0 * dphi_mid + dphi1);
    if (flux_dim > 0) {
      const auto f0 = flux_derivatives(s0);
      const auto fm = flux_derivatives(mid);
      const auto f1 = flux_derivatives(s1);
      for (std::size_t j = 0; j < flux_dim; ++j) {
        out.flux[j][i + 1] = out.flux[j][i] + (s1 - s0) / 6.0 *
                                                  (dphi0 * f0[j] + 4.0 * dphi_mid * fm[j] +
                                                   dphi1 * f1[j]);
      }
    }
  }

  // Second divided differences, with a rounding allowance.
  double scale = 0.0;
  for (double v : out.phi) scale = std::max(scale, std::abs(v));
  bool convex = true;
  for (std::size_t i = 1; i + 1 < size; ++i) {
    const double h0 = state_grid[i] - state_grid[i - 1];
    const double h1 = state_grid[i + 1] - state_grid[i];
    const double dd = ((out.phi[i + 1] - out.phi[i]) / h1 - (out.phi[i] - out.phi[i - 1]) / h0) /
                      (0.5 * (h0 + h1));
    const double allowance = 64.0 * std::numeric_limits<double>::epsilon() * scale / (h0 * h1);
    if (dd < -allowance) convex = false;
  }
  out.convex = convex;
  return out;
}

}  // namespace disperse
