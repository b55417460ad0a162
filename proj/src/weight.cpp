#include "bergman/weight.hpp"

#include <cmath>

#include <fmt/format.h>

#include "bergman/errors.hpp"

namespace bergman {

double BaseWeight::operator()(Complex z) const {
  if (alpha == 0.0) return scale;
  return scale * std::pow(std::abs(z), alpha);
}

namespace {

void check_factors(const std::vector<Factor>& factors, const char* what) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    require_finite(factors[i].center, what);
    if (factors[i].multiplicity < 1)
      fail(ErrorKind::InvalidWeight,
           fmt::format("{} multiplicity must be positive", what));
    for (std::size_t j = 0; j < i; ++j)
      if (factors[j].center == factors[i].center)
        fail(ErrorKind::InvalidWeight,
             fmt::format("{} centers must be pairwise distinct", what));
  }
  if (total_multiplicity(factors) > kMaxPolynomialDegree)
    fail(ErrorKind::DegreeTooHigh,
         fmt::format("{} total multiplicity exceeds {}", what,
                     kMaxPolynomialDegree));
}

}  // namespace

WeightSpec::WeightSpec(BaseWeight base, std::vector<Factor> zeros,
                       std::vector<Factor> poles)
    : base_(base), zeros_(std::move(zeros)), poles_(std::move(poles)) {
  if (!(base_.scale > 0.0) || !std::isfinite(base_.scale))
    fail(ErrorKind::InvalidWeight, "base weight scale must be positive");
  if (!(base_.alpha > -2.0) || !std::isfinite(base_.alpha))
    fail(ErrorKind::AlphaOutOfRange,
         fmt::format("radial exponent {} must exceed -2", base_.alpha));
  check_factors(zeros_, "zero factor");
  check_factors(poles_, "pole factor");
  for (const auto& z : zeros_)
    for (const auto& p : poles_)
      if (z.center == p.center)
        fail(ErrorKind::InvalidWeight,
             "a center cannot be both a zero and a pole factor");
}

double WeightSpec::value(Complex p) const {
  for (const auto& f : poles_)
    if (p == f.center)
      fail(ErrorKind::PoleAtPoint,
           fmt::format("weight has a pole at ({}, {})", p.real(), p.imag()));
  double v = base_(p);
  for (const auto& f : zeros_) v *= std::pow(std::norm(p - f.center), f.multiplicity);
  for (const auto& f : poles_) v /= std::pow(std::norm(p - f.center), f.multiplicity);
  return v;
}

double weight_value(const WeightSpec& w, Complex p) { return w.value(p); }

}  // namespace bergman
