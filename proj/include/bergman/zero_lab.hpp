#pragma once

// Zero location and certification for kernel slices z -> K(z, w0), plus the
// numerical checks of how zeros move under augmentation.

#include <optional>
#include <string>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/kernel_expr.hpp"

namespace bergman {

/// Axis-aligned rectangle [lo.re, hi.re] x [lo.im, hi.im] split into
/// resolution x resolution cells.
struct GridSpec {
  Complex lo{-1.0, -1.0};
  Complex hi{1.0, 1.0};
  int resolution = 64;

  void validate() const;
  double cell_width() const { return (hi.real() - lo.real()) / resolution; }
  double cell_height() const { return (hi.imag() - lo.imag()) / resolution; }
  Complex cell_center(int i, int j) const;
};

struct ZeroWitness {
  Complex z;
  Complex w;
  double residual = 0.0;  // |K(z, w)|
  int winding = 1;
  int order = 1;
  /// Local kernel scale the residual was certified against.
  double scale = 0.0;
};

struct ScanOptions {
  /// Minimum samples per cell edge; edges are refined adaptively where the
  /// argument jumps.
  int edge_samples = 64;
  /// Cells closer than this to the boundary are skipped.
  double boundary_margin = 1e-3;
  int max_subdivision = 3;
  /// Certification threshold, relative to the median |K| on the cell edges.
  double residual_tol = 1e-10;
};

struct SkippedCell {
  Complex center;
  ErrorKind reason;
  std::string detail;
};

struct ScanResult {
  std::vector<ZeroWitness> witnesses;  // sorted by |z|, then arg z
  std::vector<SkippedCell> skipped;
  int cells_scanned = 0;
};

/// Argument-principle scan of z -> K(z, w0) over the grid cells inside the
/// domain, with Newton refinement of every cell of positive winding.
ScanResult scan_slice_zeros(const KernelExpr& k, Complex w0, const GridSpec& grid,
                            const ScanOptions& options = {});

struct RefineOptions {
  int max_iterations = 50;
  double residual_tol = 1e-10;
  /// Scale for residual_tol; 0 selects sqrt(K(z, z) K(w0, w0)) at the guess.
  double scale = 0.0;
  /// Known multiplicity; Newton steps are scaled by it.
  int multiplicity = 1;
};

/// Newton iteration on z -> K(z, w0) with exact derivatives.
/// Throws NoConvergence and MultipleZeroSuspected.
ZeroWitness refine_zero(const KernelExpr& k, Complex guess, Complex w0,
                        const RefineOptions& options = {});

enum class SliceVariable { InZ, InW };

/// Order of the zero at (z0, c) of z -> K(z, c) (InZ) or w -> K(z0, w) (InW)
/// by winding on a circle of radius 1e-3, cross-checked against vanishing
/// Taylor coefficients. Throws NotAZero when the winding is 0 and
/// InconsistentOrder when the two counts disagree.
int zero_order(const KernelExpr& k, Complex z0, Complex c, SliceVariable variable);

/// Normalized magnitude |K(z, w)| / sqrt(K(z, z) K(w, w)).
double normalized_magnitude(const KernelExpr& k, Complex z, Complex w);

struct TransferReport {
  Complex c, z0, w0;
  Complex k_zw, k_zc, k_cw, k_aug_zw;
  bool aug_vanishes = false;
  bool phi_vanishes = false;
  bool cross_vanishes = false;  // K(z0, c) = 0 or K(c, w0) = 0
  /// Meaningful when aug_vanishes: phi_vanishes == cross_vanishes.
  bool biconditional_holds = true;
  /// Meaningful when cross_vanishes: K_aug(z0, w0) against
  /// K(z0, w0) / ((z0 - c)(conj(w0) - conj(c))).
  double ratio_identity_error = 0.0;
  bool ratio_identity_holds = true;
};

/// Vanishing tests use normalized magnitudes at or below zero_tol. Where
/// K_aug(z0, w0) = 0 the normalized K(z0, w0) equals the product of the two
/// normalized cross terms, so a loose zero_tol misreads small but nonzero
/// values as zeros; keep it near evaluation accuracy. Throws HypothesisUnmet
/// when c, z0, w0 are not distinct or c sits on a weight center.
TransferReport zero_transfer_report(const KernelExpr& k_phi, Complex c, Complex z0,
                                    Complex w0, double zero_tol = 1e-12,
                                    double identity_tol = 1e-8);

struct RatioTrace {
  std::vector<Complex> centers;
  std::vector<double> values;  // |K(z, c_j)| / sqrt(K(c_j, c_j))
  std::vector<double> boundary_distance;

  double final_value() const { return values.back(); }
  /// Last value below the first and the final `tail` steps nonincreasing.
  bool decays(std::size_t tail = 3) const;
};

RatioTrace boundary_ratio(const KernelExpr& k, Complex z, const std::vector<Complex>& centers);

/// c_j = (1 - 2^{-j}) * direction for j in [j_first, j_last].
std::vector<Complex> radial_centers(Complex direction, int j_first, int j_last);

struct TrackStep {
  int index = 0;  // position in the center sequence
  Complex c;
  Complex z1;
  double distance = 0.0;  // |z1 - z0|
  double radius = 0.0;    // ball radius used
  double alpha = 0.0;     // |K(c, w0) / K(c, c)|
  double min_g = 0.0;     // min over the ball boundary of |K(z, w0) / K(z, c)|
};

struct TrackResult {
  std::vector<TrackStep> steps;
  /// Centers not yet close enough for the ball conditions, with the reason.
  std::vector<std::pair<int, std::string>> deferred;
};

struct TrackOptions {
  /// Initial ball radius; 0 selects half the distance from z0 to the boundary.
  double initial_radius = 0.0;
  int circle_samples = 256;
  /// Lower bound for min |K(z, c)| / sqrt(K(z, z) K(c, c)) on the ball boundary.
  double separation_tol = 1e-6;
};

/// Follows the zero z1(c_j) of z -> K_{|z-c_j|^2 phi}(z, w0) near z0 as c_j
/// approaches the boundary. Throws TrackingFailed when the ratio trace does
/// not decay, when no center is accepted, or when Newton leaves the ball.
TrackResult track_zero_near_boundary(const KernelExpr& k_phi, const ZeroWitness& witness,
                                     const std::vector<Complex>& centers,
                                     const TrackOptions& options = {});

struct LuQikengStatus {
  bool zero_found = false;
  std::optional<ZeroWitness> witness;
  int resolution = 0;
  int slices_scanned = 0;
};

/// Scans w-slices at the cell centers of w_grid (row-major from lo) and
/// stops at the first certified witness. Absence is resolution-relative.
LuQikengStatus lu_qikeng_status(const KernelExpr& k, const GridSpec& z_grid,
                                const GridSpec& w_grid, const ScanOptions& options = {});

}  // namespace bergman
