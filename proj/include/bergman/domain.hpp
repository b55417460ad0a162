#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace bergman {

using Complex = std::complex<double>;

/// Throws InvalidArgument unless both components are finite.
void require_finite(Complex p, const char* what);

/// Open unit disk or annulus r < |z| < 1, optionally punctured at finitely
/// many interior points.
class DomainSpec {
 public:
  enum class Kind { UnitDisk, Annulus };

  static DomainSpec unit_disk(std::vector<Complex> punctures = {});
  static DomainSpec annulus(double inner_radius,
                            std::vector<Complex> punctures = {});

  Kind kind() const { return kind_; }
  bool is_disk() const { return kind_ == Kind::UnitDisk; }
  bool is_annulus() const { return kind_ == Kind::Annulus; }
  /// 0 for the disk.
  double inner_radius() const { return inner_radius_; }
  const std::vector<Complex>& punctures() const { return punctures_; }

  /// Open domain minus punctures.
  bool contains(Complex p) const;
  /// Open domain, punctures ignored. Used for routing weight centers.
  bool interior(Complex p) const;
  /// Closed domain (boundary included), punctures ignored.
  bool closure_contains(Complex p) const;
  /// Euclidean distance from p to the boundary circles; negative outside.
  double depth(Complex p) const;

  /// Same domain without punctures.
  DomainSpec without_punctures() const;

  std::string describe() const;

 private:
  DomainSpec(Kind kind, double r, std::vector<Complex> punctures);

  Kind kind_;
  double inner_radius_;
  std::vector<Complex> punctures_;
};

bool contains(const DomainSpec& d, Complex p);

}  // namespace bergman
