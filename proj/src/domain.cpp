#include "bergman/domain.hpp"

#include <cmath>

#include <fmt/format.h>

#include "bergman/errors.hpp"

namespace bergman {

void require_finite(Complex p, const char* what) {
  if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
    fail(ErrorKind::InvalidArgument, fmt::format("{} is not finite", what));
}

DomainSpec::DomainSpec(Kind kind, double r, std::vector<Complex> punctures)
    : kind_(kind), inner_radius_(r), punctures_(std::move(punctures)) {
  for (const auto& p : punctures_) {
    require_finite(p, "puncture");
    if (!interior(p))
      fail(ErrorKind::InvalidDomain,
           fmt::format("puncture ({}, {}) is not inside the domain", p.real(),
                       p.imag()));
  }
}

DomainSpec DomainSpec::unit_disk(std::vector<Complex> punctures) {
  return DomainSpec(Kind::UnitDisk, 0.0, std::move(punctures));
}

DomainSpec DomainSpec::annulus(double inner_radius,
                               std::vector<Complex> punctures) {
  if (!(inner_radius > 0.0 && inner_radius < 1.0))
    fail(ErrorKind::InvalidDomain,
         fmt::format("annulus inner radius {} not in (0, 1)", inner_radius));
  return DomainSpec(Kind::Annulus, inner_radius, std::move(punctures));
}

bool DomainSpec::interior(Complex p) const {
  const double m = std::abs(p);
  if (!(m < 1.0)) return false;
  return kind_ == Kind::UnitDisk || m > inner_radius_;
}

bool DomainSpec::closure_contains(Complex p) const {
  const double m = std::abs(p);
  if (m > 1.0) return false;
  return kind_ == Kind::UnitDisk || m >= inner_radius_;
}

bool DomainSpec::contains(Complex p) const {
  if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) return false;
  if (!interior(p)) return false;
  for (const auto& q : punctures_)
    if (p == q) return false;
  return true;
}

double DomainSpec::depth(Complex p) const {
  const double m = std::abs(p);
  double d = 1.0 - m;
  if (kind_ == Kind::Annulus) d = std::min(d, m - inner_radius_);
  return d;
}

DomainSpec DomainSpec::without_punctures() const {
  return DomainSpec(kind_, inner_radius_, {});
}

std::string DomainSpec::describe() const {
  std::string s = kind_ == Kind::UnitDisk
                      ? std::string("unit disk")
                      : fmt::format("annulus {} < |z| < 1", inner_radius_);
  if (!punctures_.empty())
    s += fmt::format(" minus {} puncture(s)", punctures_.size());
  return s;
}

bool contains(const DomainSpec& d, Complex p) { return d.contains(p); }

}  // namespace bergman
