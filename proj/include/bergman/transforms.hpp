#pragma once

// Kernel transforms: division by a rational factor, rank-one deflation at a
// center (one zero of the weight), and the multi-center direct-sum form.

#include <vector>

#include "bergman/kernel_expr.hpp"
#include "bergman/polynomial.hpp"
#include "bergman/weight.hpp"

namespace bergman {

/// K_{phi |g|^2}(z, w) = K_phi(z, w) / (g(z) conj(g(w))).
///
/// Zeros of g must lie outside the closed domain, unless they cancel a pole
/// already divided into K (a weight with an interior pole).
/// Throws HolomorphyViolation otherwise.
KernelExpr pole_divide(const KernelExpr& k, const RationalFactors& g);
KernelExpr pole_divide(const KernelExpr& k, const std::vector<Factor>& g_zeros);

/// K_{|z-c|^2 phi} from K_phi by rank-one deflation at c.
/// Throws DomainViolation when c is not inside the domain and
/// DegenerateCenter when |K_phi(c, c)| <= kDegeneracyTol.
KernelExpr zero_augment(const KernelExpr& k, Complex c);

enum class AugmentMode { Iterated, DirectSum };

struct DecompositionPlan {
  std::vector<Factor> centers;
  AugmentMode mode = AugmentMode::Iterated;

  /// Throws InvalidArgument on repeated centers or multiplicity < 1.
  void validate() const;
};

/// K_{|p|^2 phi} with p = prod (z - c_j)^{m_j}.
KernelExpr multi_zero_augment(const KernelExpr& k, const DecompositionPlan& plan);

/// Kernel of A^2_w(d): base kernel, then division by the out-of-domain zero
/// factors and all pole factors, then augmentation at interior zeros.
KernelExpr weighted_kernel(const DomainSpec& d, const WeightSpec& w,
                           AugmentMode mode = AugmentMode::Iterated);

}  // namespace bergman
