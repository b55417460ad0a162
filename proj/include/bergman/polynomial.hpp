#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bergman/domain.hpp"

namespace bergman {

inline constexpr int kMaxPolynomialDegree = 64;

/// A linear factor (z - center)^multiplicity.
struct Factor {
  Complex center;
  int multiplicity = 1;
};

/// Polynomial over C in the monomial basis, c[0] + c[1] z + ... .
class Polynomial {
 public:
  Polynomial() : coeffs_{Complex(1.0)} {}
  explicit Polynomial(std::vector<Complex> coeffs);

  static Polynomial constant(Complex c);
  static Polynomial monomial(int degree);
  /// scale * prod (z - a)^m
  static Polynomial from_factors(const std::vector<Factor>& factors,
                                 Complex scale = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  Complex operator()(Complex z) const;
  /// Coefficients of p(z0 + h) in powers of h, truncated after h^order.
  std::vector<Complex> taylor(Complex z0, int order) const;
  /// Polynomial whose coefficients are the conjugates of this one, so that
  /// conjugated()(conj(w)) == conj((*this)(w)).
  Polynomial conjugated() const;

  Polynomial operator*(const Polynomial& other) const;

 private:
  std::vector<Complex> coeffs_;
};

/// scale * prod (z - a_j)^{m_j} / prod (z - b_k)^{n_k}
struct RationalFactors {
  Complex scale = 1.0;
  std::vector<Factor> zeros;
  std::vector<Factor> poles;

  bool is_identity() const {
    return zeros.empty() && poles.empty() && scale == Complex(1.0);
  }
  Complex operator()(Complex z) const;
  /// Product with cancellation of coincident zero/pole centers.
  RationalFactors operator*(const RationalFactors& other) const;
};

/// Merge factors with the same center (exact comparison) into one entry.
std::vector<Factor> merge_factors(std::vector<Factor> factors);

int total_multiplicity(const std::vector<Factor>& factors);

}  // namespace bergman
