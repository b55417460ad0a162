#pragma once

// Closed-form and series base kernels for the unit disk and the annulus.

#include "bergman/domain.hpp"
#include "bergman/kernel_expr.hpp"
#include "bergman/weight.hpp"

namespace bergman {

/// Truncation control for the annulus bilateral series. After evaluation
/// tail_bound holds the bound on the omitted terms.
struct SeriesTruncation {
  int n_max = 400;
  double tail_bound = 0.0;
};

struct AnnulusOptions {
  int n_max = 400;
  /// Largest admissible tail bound, relative to the summed term magnitudes.
  double tolerance = 1e-14;
};

struct SeriesValue {
  Complex value;
  double tail_bound = 0.0;
  /// Sum of the magnitudes of the contributions (the scale tail_bound is
  /// compared against).
  double magnitude = 0.0;
  int terms = 0;
};

// --- closed forms --------------------------------------------------------

/// 1 / (pi (1 - z conj(w))^2)
Complex disk_kernel(Complex z, Complex w);

/// (1 + a/2 - (a/2) z conj(w)) K(z, w), weight |z|^a with a > -2.
Complex disk_radial_kernel(double alpha, Complex z, Complex w);

/// Weight |z - c|^{2p}:
/// ((p+1) - p mu(z) conj(mu(w))) K(z, w) / ((1 - conj(c) z)^p (1 - c conj(w))^p)
/// with mu(z) = (z - c) / (1 - conj(c) z).
Complex disk_mobius_power_kernel(Complex c, int p, Complex z, Complex w);

/// Annulus r < |z| < 1 with weight |z|^alpha (alpha = 0 by default). The
/// geometric parts of the bilateral series that diverge at the boundary are
/// summed in closed form and the remaining bilateral remainder is truncated
/// at |n| <= n_max with an analytic tail bound. Throws TruncationTooSmall
/// when the bound exceeds options.tolerance.
SeriesValue annulus_kernel(double r, Complex z, Complex w,
                           SeriesTruncation& trunc, double alpha = 0.0);

/// The plain truncated bilateral sum over |n| <= n_max of
/// (z conj(w))^n / ||z^n||^2, with its geometric tail bound. No error is
/// raised; the caller inspects tail_bound.
SeriesValue annulus_series_plain(double r, Complex z, Complex w, int n_max,
                                 double alpha = 0.0);

/// Taylor coefficients (orders 0..order) in t of the annulus kernel viewed
/// as a function of t = z conj(w), about t0.
struct AnnulusTaylor {
  std::vector<Complex> coeffs;
  double tail_bound = 0.0;
  double magnitude = 0.0;
  int terms = 0;
};
AnnulusTaylor annulus_taylor(double r, double alpha, Complex t0, int order,
                             int n_max);

// --- expression nodes ----------------------------------------------------

/// Base kernel for a domain with a base weight scale * |z|^alpha.
KernelExpr base_kernel_expr(const DomainSpec& domain, const BaseWeight& base,
                            const AnnulusOptions& options = {});

KernelExpr disk_kernel_expr();
KernelExpr disk_radial_kernel_expr(double alpha);
KernelExpr disk_mobius_power_kernel_expr(Complex c, int p);
KernelExpr annulus_kernel_expr(double r, const AnnulusOptions& options = {});

/// z -> e^{i theta} (z - a) / (1 - conj(a) z), |a| < 1.
class DiskAutomorphism {
 public:
  DiskAutomorphism(Complex a, double theta);
  static DiskAutomorphism identity() { return {0.0, 0.0}; }

  Complex a() const { return a_; }
  double theta() const { return theta_; }

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;
  DiskAutomorphism inverse() const;

  /// Taylor coefficients of f(z0 + h) - f(z0) (constant term zero).
  Series offset_series(Complex z0, int order) const;
  Series derivative_series(Complex z0, int order) const;
  /// The holomorphic map u -> conj(f(conj(u))).
  DiskAutomorphism conjugate_map() const;

 private:
  Complex a_;
  double theta_;
  Complex rot_;
};

/// K1(z, w) = f'(z) K(f(z), f(w)) conj(f'(w)). Requires a disk kernel.
KernelExpr biholomorphic_transport(const KernelExpr& k, const DiskAutomorphism& map);

}  // namespace bergman
