#pragma once

#include <vector>

#include "bergman/domain.hpp"
#include "bergman/polynomial.hpp"

namespace bergman {

/// Base factor of a weight: scale * |z|^alpha. Constant(v) is {v, 0} and
/// RadialPower(alpha) is {1, alpha}.
struct BaseWeight {
  double scale = 1.0;
  double alpha = 0.0;

  static BaseWeight constant(double value) { return {value, 0.0}; }
  static BaseWeight radial(double alpha) { return {1.0, alpha}; }

  bool is_constant() const { return alpha == 0.0; }
  double operator()(Complex z) const;
};

/// phi(z) = base(z) * prod |z - a_j|^{2 m_j} / prod |z - b_k|^{2 n_k},
/// i.e. |g|^2 * base with g = prod (z - a_j)^{m_j} / prod (z - b_k)^{n_k}.
class WeightSpec {
 public:
  WeightSpec() = default;
  WeightSpec(BaseWeight base, std::vector<Factor> zeros,
             std::vector<Factor> poles);

  static WeightSpec unit() { return {}; }

  const BaseWeight& base() const { return base_; }
  const std::vector<Factor>& zeros() const { return zeros_; }
  const std::vector<Factor>& poles() const { return poles_; }

  bool has_poles() const { return !poles_.empty(); }

  /// Throws PoleAtPoint at a pole center.
  double value(Complex p) const;

  /// g as a rational function (unit scale).
  RationalFactors g() const { return {1.0, zeros_, poles_}; }

 private:
  BaseWeight base_;
  std::vector<Factor> zeros_;
  std::vector<Factor> poles_;
};

double weight_value(const WeightSpec& w, Complex p);

}  // namespace bergman
