#pragma once

// Symmetric tensors whose rows are entropy / entropy-flux pairs:
//   Burgers   M(a)_{ij}   = a^{i+j+p} / (i+j+p)
//   monomial  M(a)_{ij}   = a^{p+k_i+k_j} / (p+k_i+k_j),  k_0 = 0
//   general   M_g(a)      = int_0^a g(s) Z'(s) (x) Z'(s) ds,  Z = (s, f_1, ..., f_n)
// together with their determinants and positive-definiteness certificates.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace disperse {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  std::size_t dim() const { return dim_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  std::span<const double> data() const { return data_; }

  double max_norm() const;
  bool is_symmetric(double tol = 0.0) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Determinant by LU with partial pivoting.
double determinant(const Matrix& m);

/// Cholesky succeeds with every pivot above 1e-13 * max|m_ij|.
bool cholesky_certifies_spd(const Matrix& m);

struct TensorEval {
  double a = 0.0;
  double p = 1.0;
  std::size_t dim = 0;
  Matrix entries;
  double det = 0.0;
  bool spd = false;
  double scale_constant = 0.0;  // H_{d,p} or Delta(p, k): det at a = 1
  double det_exponent = 0.0;    // n p* (Burgers) or N = d p + 2K (monomial)
};

/// H_{d,p} = det(1 / (i + j + p))_{0 <= i,j <= d-1}.
double hilbert_like_det(int d, double p);

TensorEval burgers_tensor(double a, double p, int n);

/// Delta(p, k) = det(1 / (p + k_i + k_j)), k_0 = 0.
double monomial_det_constant(double p, std::span<const int> k);

TensorEval monomial_tensor(double a, double p, std::span<const int> k);

/// s -> (f_0'(s) = 1, f_1'(s), ..., f_n'(s))
using FluxDerivatives = std::function<std::vector<double>(double)>;
using ScalarFunction = std::function<double(double)>;

struct GeneralFluxTensor {
  double a = 0.0;
  std::vector<double> state_grid;            // quadrature nodes on [0, a]
  std::vector<std::vector<double>> z_prime;  // Z'(s) at each node
  std::vector<double> g;                     // weight at each node
  Matrix entries;
  double det = 0.0;
  double delta_g = 0.0;  // det^{1/n}
  bool spd = false;
  double quadrature_change = 0.0;  // max entry change under one refinement
  std::vector<double> phi_g;       // convexified entropy on state_grid
  bool phi_convex = false;
  bool phi_dominates = false;      // |F_i - F_i'(0) s| <= phi_g on state_grid
};

/// Composite Simpson on [0, a] with `quad_points` (rounded up to even)
/// intervals, compared against a refinement with twice as many.
/// Throws QuadratureError when the refinement changes an entry by more than
/// 1e-8 * max(1, |M|_max), and std::invalid_argument on a < 0,
/// quad_points < 16 or a weight that is not positive on (0, a].
GeneralFluxTensor general_flux_tensor(double a, const FluxDerivatives& z_prime,
                                      const ScalarFunction& g, int quad_points = 256);

struct ConvexifiedEntropy {
  std::vector<double> state_grid;
  std::vector<double> phi;       // phi(0) = phi'(0) = 0, phi'' = |F''|
  std::vector<double> phi_prime;
  std::vector<std::vector<double>> flux;  // Phi_j(s) = int_0^s phi'(r) f_j'(r) dr
  bool convex = false;
};

/// `second_derivative` returns the vector F''(s); its Euclidean norm drives
/// phi''. When `flux_derivatives` is given (s -> (f_1'(s), ..., f_n'(s))) the
/// associated entropy flux Phi is integrated as well.
ConvexifiedEntropy convexified_entropy(const FluxDerivatives& second_derivative,
                                       std::span<const double> state_grid,
                                       const FluxDerivatives& flux_derivatives = {});

}  // namespace disperse
