#pragma once

// Hartogs domains Omega = {(z, w) : z in D, |w| < phi(z)} over a planar base.
// On the slice w = 0 the kernel of Omega equals the planar kernel with
// weight pi * phi^2, so everything here reduces to planar computations.

#include <optional>
#include <string>

#include "bergman/domain.hpp"
#include "bergman/kernel_expr.hpp"
#include "bergman/weight.hpp"
#include "bergman/zero_lab.hpp"

namespace bergman {

/// The profile phi is read as base(z) * |g(z)| with g built from the factor
/// lists, so a profile factor of multiplicity m contributes |z - a|^m.
struct HartogsSpec {
  DomainSpec base = DomainSpec::unit_disk();
  WeightSpec profile;
  /// pi * phi^2: scale -> pi scale^2, alpha -> 2 alpha, same factors.
  WeightSpec slice_weight;
  /// False when phi is unbounded above on the base.
  bool bounded = true;
};

/// Throws AlphaOutOfRange when 2 alpha <= -2.
HartogsSpec lift(const DomainSpec& base, const WeightSpec& profile);

/// K_{pi phi^2}(z, w), the kernel of Omega at ((z, 0), (w, 0)).
KernelExpr slice_kernel(const HartogsSpec& h);

struct HartogsCertificate {
  bool certified = false;
  std::optional<ZeroWitness> witness;
  int resolution = 0;
  int slices_scanned = 0;

  std::string to_json(const HartogsSpec& h) const;
};

/// A certified zero of the slice kernel is a zero of the kernel of Omega,
/// so Omega is not Lu Qi-keng. Absence is inconclusive at the resolution.
HartogsCertificate certify_non_lu_qikeng(const HartogsSpec& h, const GridSpec& z_grid = {},
                                         const GridSpec& w_grid = {{-1.0, -1.0}, {1.0, 1.0}, 4},
                                         const ScanOptions& options = {});

}  // namespace bergman
