#pragma once

// Independent ground truth: kernels assembled from Gram matrices of
// monomials, and quadrature checks of the reproducing property.

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "bergman/domain.hpp"
#include "bergman/kernel_expr.hpp"
#include "bergman/polynomial.hpp"
#include "bergman/weight.hpp"

namespace bergman {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

/// Radial Gauss-Legendre (on [0,1] or [r,1]) times a uniform angular grid.
struct QuadratureSpec {
  int radial_nodes = 64;
  int angular_nodes = 128;

  /// Throws InvalidArgument unless both counts are positive and the angular
  /// count is even.
  void validate() const;
  /// Largest d such that every z^a conj(z)^b with a + b <= d is integrated
  /// exactly against dV.
  int exact_degree() const;
};

struct QuadratureRule {
  std::vector<Complex> points;
  std::vector<double> weights;  // area element included
};
QuadratureRule quadrature_rule(const DomainSpec& d, const QuadratureSpec& q);

/// Weighted inner products <z^j, z^k>_w over the monomial exponents of a
/// domain: 0..degree on the disk, -degree..degree on the annulus.
struct GramSpec {
  DomainSpec domain = DomainSpec::unit_disk();
  WeightSpec weight;
  int degree = 0;
  std::vector<int> exponents;
  Eigen::MatrixXcd moments;
  /// True when the weight had no closed form and quadrature was used.
  bool quadrature_fallback = false;
  /// Max entry change between the fallback rule and one of double size.
  double quadrature_error = 0.0;
};

/// Closed-form moments when the weight has no pole factors (base times
/// |p|^2 for a polynomial p); quadrature otherwise. Throws DivergentMoment
/// when a pole center lies in the closed domain.
GramSpec monomial_moments(const DomainSpec& d, const WeightSpec& w, int degree,
                          const QuadratureSpec& fallback = {160, 320});

/// K_N(z, w) = v(w)^H G^{-1} v(z) via a diagonally scaled Cholesky factor.
class GramKernel {
 public:
  /// Throws IllConditioned when the scaled condition number exceeds
  /// max_condition.
  explicit GramKernel(const GramSpec& g, double max_condition = 1e12);

  /// Throws DomainViolation unless z and w are inside the domain.
  Complex operator()(Complex z, Complex w) const;

  double condition() const { return condition_; }
  /// Smallest eigenvalue of the unscaled Gram matrix divided by its trace.
  double min_eigenvalue_relative() const { return min_eig_rel_; }

 private:
  Eigen::VectorXcd reduced(Complex z) const;

  DomainSpec domain_;
  std::vector<int> exponents_;
  Eigen::VectorXd scale_;
  Eigen::MatrixXcd factor_;
  double condition_ = 0.0;
  double min_eig_rel_ = 0.0;
};

Complex gram_kernel_eval(const GramSpec& g, Complex z, Complex w);

/// Truncated orthonormal-monomial series of the unweighted disk kernel,
/// sum_{n <= n_max} (n + 1) (z conj(w))^n / pi.
Complex disk_series_kernel(Complex z, Complex w, int n_max);

/// n seeded pairs (z, w) drawn uniformly by area from the part of the
/// domain with |z| <= radius (and |z| >= inner radius + 0.02 on the
/// annulus). Portable: depends only on the seed.
std::vector<std::pair<Complex, Complex>> sample_pairs(const DomainSpec& d, double radius, int n,
                                                      std::uint64_t seed);

/// |integral of f(x) K(z, x) w(x) dV_x - f(z)| with the quadrature rule.
double verify_reproducing(const KernelExpr& k, const WeightSpec& w, const Polynomial& f,
                          const QuadratureSpec& q, Complex z);

/// Same check for several test functions sharing one set of kernel values.
std::vector<double> verify_reproducing(const KernelExpr& k, const WeightSpec& w,
                                       const std::vector<Polynomial>& fs,
                                       const QuadratureSpec& q, Complex z);

}  // namespace bergman
