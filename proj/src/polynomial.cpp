#include "bergman/polynomial.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "bergman/errors.hpp"

namespace bergman {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  while (coeffs_.size() > 1 && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
  if (degree() > kMaxPolynomialDegree)
    fail(ErrorKind::DegreeTooHigh,
         fmt::format("polynomial degree {} exceeds cap {}", degree(),
                     kMaxPolynomialDegree));
  for (const auto& c : coeffs_) require_finite(c, "polynomial coefficient");
}

Polynomial Polynomial::constant(Complex c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int degree) {
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::from_factors(const std::vector<Factor>& factors,
                                    Complex scale) {
  if (total_multiplicity(factors) > kMaxPolynomialDegree)
    fail(ErrorKind::DegreeTooHigh, "factored polynomial exceeds degree cap");
  std::vector<Complex> c{scale};
  for (const auto& f : factors) {
    for (int k = 0; k < f.multiplicity; ++k) {
      std::vector<Complex> next(c.size() + 1, 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] -= f.center * c[i];
      }
      c = std::move(next);
    }
  }
  return Polynomial(std::move(c));
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<Complex> Polynomial::taylor(Complex z0, int order) const {
  // Repeated synthetic division by (z - z0) yields the shifted coefficients.
  std::vector<Complex> work = coeffs_;
  std::vector<Complex> out(static_cast<std::size_t>(order) + 1, 0.0);
  const int n = degree();
  for (int k = 0; k <= std::min(order, n); ++k) {
    Complex acc = 0.0;
    for (int i = n; i >= k; --i) {
      acc = acc * z0 + work[i];
      work[i] = acc;
    }
    out[k] = work[k];
  }
  return out;
}

Polynomial Polynomial::conjugated() const {
  std::vector<Complex> c(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), c.begin(),
                 [](Complex x) { return std::conj(x); });
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<Complex> c(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
      c[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(c));
}

Complex RationalFactors::operator()(Complex z) const {
  Complex v = scale;
  for (const auto& f : zeros) v *= std::pow(z - f.center, f.multiplicity);
  for (const auto& f : poles) v /= std::pow(z - f.center, f.multiplicity);
  return v;
}

std::vector<Factor> merge_factors(std::vector<Factor> factors) {
  std::vector<Factor> out;
  for (const auto& f : factors) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Factor& g) { return g.center == f.center; });
    if (it == out.end())
      out.push_back(f);
    else
      it->multiplicity += f.multiplicity;
  }
  return out;
}

RationalFactors RationalFactors::operator*(const RationalFactors& other) const {
  RationalFactors r;
  r.scale = scale * other.scale;
  auto z = zeros;
  z.insert(z.end(), other.zeros.begin(), other.zeros.end());
  auto p = poles;
  p.insert(p.end(), other.poles.begin(), other.poles.end());
  z = merge_factors(std::move(z));
  p = merge_factors(std::move(p));
  for (auto& zf : z) {
    for (auto& pf : p) {
      if (zf.center != pf.center) continue;
      const int common = std::min(zf.multiplicity, pf.multiplicity);
      zf.multiplicity -= common;
      pf.multiplicity -= common;
    }
  }
  auto nonzero = [](const Factor& f) { return f.multiplicity > 0; };
  std::copy_if(z.begin(), z.end(), std::back_inserter(r.zeros), nonzero);
  std::copy_if(p.begin(), p.end(), std::back_inserter(r.poles), nonzero);
  return r;
}

int total_multiplicity(const std::vector<Factor>& factors) {
  int n = 0;
  for (const auto& f : factors) n += f.multiplicity;
  return n;
}

}  // namespace bergman
