#include <doctest.h>

#include <numbers>

#include "bergman/base_kernels.hpp"
#include "bergman/oracle.hpp"
#include "bergman/transforms.hpp"
#include "support.hpp"

using namespace bergman;
using bergman::test::kind_of;
using bergman::test::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

const auto kDisk = DomainSpec::unit_disk();

double worst_over(const std::vector<std::pair<Complex, Complex>>& pairs, const KernelExpr& a,
                  const KernelExpr& b) {
  double worst = 0.0;
  for (const auto& [z, w] : pairs) worst = std::max(worst, rel_err(a(z, w), b(z, w)));
  return worst;
}

struct NamedWeight {
  const char* name;
  DomainSpec domain;
  WeightSpec weight;
};

std::vector<NamedWeight> weight_matrix() {
  return {
      {"1", kDisk, WeightSpec()},
      {"|z|^2", kDisk, WeightSpec(BaseWeight::radial(2.0), {}, {})},
      {"|z|^4", kDisk, WeightSpec(BaseWeight::radial(4.0), {}, {})},
      {"|z-0.5|^2", kDisk, WeightSpec({}, {{0.5, 1}}, {})},
      {"|z-0.4|^2|z+0.3|^2", kDisk, WeightSpec({}, {{0.4, 1}, {-0.3, 1}}, {})},
      {"|z-2|^2", kDisk, WeightSpec({}, {{2.0, 1}}, {})},
      {"|z-0.3-0.2i|^4 |z|", kDisk, WeightSpec(BaseWeight::radial(1.0), {{{0.3, 0.2}, 2}}, {})},
      {"pole 0.5", kDisk, WeightSpec({}, {}, {{0.5, 1}})},
      {"annulus 1", DomainSpec::annulus(0.5), WeightSpec()},
      {"annulus |z-0.7i|^2", DomainSpec::annulus(0.5), WeightSpec({}, {{{0.0, 0.7}, 1}}, {})},
  };
}

std::vector<std::pair<Complex, Complex>> pairs_for(const DomainSpec& d, int n, std::uint64_t seed) {
  return sample_pairs(d, 0.9, n, seed);
}

}  // namespace

TEST_CASE("zero augmentation at the origin") {
  const auto k = zero_augment(disk_kernel_expr(), 0.0);
  CHECK(k(0.0, 0.0).real() == doctest::Approx(2.0 / kPi).epsilon(1e-14));
  // exactly on the removable singularity z = c
  CHECK(std::abs(k(0.0, 0.3) - 2.0 / kPi) < 1e-14);
  CHECK(std::abs(k(0.3, 0.0) - 2.0 / kPi) < 1e-14);
  CHECK(worst_over(pairs_for(kDisk, 100, 1), k, disk_radial_kernel_expr(2.0)) < 1e-12);
}

TEST_CASE("limit evaluation is continuous across the singular set") {
  const Complex c(0.5, 0.0), w(0.1, 0.4);
  const auto k = zero_augment(disk_kernel_expr(), c);
  const Complex exact = k(c, w);
  CHECK(rel_err(exact, disk_mobius_power_kernel(c, 1, c, w)) < 1e-12);
  double previous = 1.0;
  for (int e = 4; e <= 12; ++e) {
    const double err = rel_err(k(c + std::pow(10.0, -e), w), exact);
    CHECK(err <= previous + 1e-12);
    CHECK(err < 1e-3);
    previous = err;
  }
  // generic points go through the plain formula
  const Complex z(-0.3, 0.2);
  CHECK(rel_err(k(z, w), k.naive(z, w)) < 1e-14);
}

TEST_CASE("single-center plans and repeated centers") {
  const auto base = disk_kernel_expr();
  const auto pairs = pairs_for(kDisk, 100, 2);
  const Complex c(0.3, 0.2);
  for (auto mode : {AugmentMode::Iterated, AugmentMode::DirectSum}) {
    CHECK(worst_over(pairs, multi_zero_augment(base, {{{c, 1}}, mode}), zero_augment(base, c)) <
          1e-12);
    const auto k = multi_zero_augment(base, {{{0.0, 2}}, mode});
    CHECK(k(0.0, 0.0).real() == doctest::Approx(3.0 / kPi).epsilon(1e-12));
    CHECK(worst_over(pairs, k, disk_radial_kernel_expr(4.0)) < 1e-10);
  }
  CHECK(rel_err(zero_augment(zero_augment(base, c), c)(0.0, 0.0),
                disk_mobius_power_kernel(c, 2, 0.0, 0.0)) < 1e-12);
  CHECK(kind_of([&] { multi_zero_augment(base, {{{c, 1}, {c, 1}}}); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { multi_zero_augment(base, {{{c, 0}}}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("multi-center augmentation agrees across orders and modes") {
  const auto base = disk_kernel_expr();
  const auto pairs = pairs_for(kDisk, 100, 3);
  const auto a = multi_zero_augment(base, {{{0.4, 1}, {-0.3, 1}}, AugmentMode::Iterated});
  const auto b = multi_zero_augment(base, {{{-0.3, 1}, {0.4, 1}}, AugmentMode::Iterated});
  const auto c = multi_zero_augment(base, {{{0.4, 1}, {-0.3, 1}}, AugmentMode::DirectSum});
  CHECK(worst_over(pairs, a, b) < 1e-9);
  CHECK(worst_over(pairs, a, c) < 1e-9);
  const GramKernel oracle(monomial_moments(kDisk, WeightSpec({}, {{0.4, 1}, {-0.3, 1}}, {}), 60));
  double worst = 0.0;
  for (const auto& [z, w] : sample_pairs(kDisk, 0.7, 50, 4))
    worst = std::max(worst, rel_err(a(z, w), oracle(z, w)));
  CHECK(worst < 1e-6);
}

TEST_CASE("permutations and modes agree on mixed multiplicities") {
  const auto base = annulus_kernel_expr(0.5);
  const std::vector<Factor> centers{{{0.0, 0.7}, 2}, {{-0.6, 0.1}, 1}, {{0.55, -0.4}, 1}};
  const auto reference = multi_zero_augment(base, {centers, AugmentMode::Iterated});
  const auto pairs = sample_pairs(DomainSpec::annulus(0.5), 0.9, 20, 5);
  std::vector<Factor> perm = centers;
  std::sort(perm.begin(), perm.end(),
            [](const Factor& x, const Factor& y) { return x.center.real() < y.center.real(); });
  do {
    for (auto mode : {AugmentMode::Iterated, AugmentMode::DirectSum}) {
      double worst = 0.0;
      for (const auto& [z, w] : pairs) {
        const Complex v = multi_zero_augment(base, {perm, mode})(z, w);
        const Complex r = reference(z, w);
        worst = std::max(worst, std::abs(v - r) /
                                    std::sqrt(std::abs(reference(z, z) * reference(w, w))));
      }
      CHECK(worst < 1e-9);
    }
  } while (std::next_permutation(perm.begin(), perm.end(), [](const Factor& x, const Factor& y) {
    return x.center.real() < y.center.real();
  }));
}

TEST_CASE("pole division") {
  const auto k = pole_divide(disk_kernel_expr(), RationalFactors{1.0, {{2.0, 1}}, {}});
  CHECK(k(0.0, 0.0).real() == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
  const auto same = pole_divide(disk_kernel_expr(), RationalFactors{});
  CHECK(worst_over(pairs_for(kDisk, 20, 6), same, disk_kernel_expr()) == 0.0);
  CHECK(kind_of([] { pole_divide(disk_kernel_expr(), std::vector<Factor>{{0.5, 1}}); }) ==
        ErrorKind::HolomorphyViolation);
}

TEST_CASE("weighted kernel pipeline") {
  const auto pairs = pairs_for(kDisk, 100, 8);
  CHECK(worst_over(pairs, weighted_kernel(kDisk, WeightSpec()), disk_kernel_expr()) < 1e-15);
  CHECK(worst_over(pairs, weighted_kernel(kDisk, WeightSpec({}, {{0.5, 1}}, {})),
                   disk_mobius_power_kernel_expr(0.5, 1)) < 1e-10);

  // interior pole: (z - c) K(z, w) (conj(w) - conj(c)), zero on z = c
  const Complex c(0.4, 0.0);
  const auto kp = weighted_kernel(kDisk, WeightSpec({}, {}, {{c, 1}}));
  double worst = 0.0;
  for (const auto& [z, w] : pairs)
    worst = std::max(worst,
                     rel_err(kp(z, w), (z - c) * disk_kernel(z, w) * (std::conj(w) - std::conj(c))));
  CHECK(worst < 1e-12);
  CHECK(std::abs(kp(c, Complex(0.1, 0.3))) == 0.0);

  // an exterior zero goes through division
  const auto ke = weighted_kernel(kDisk, WeightSpec({}, {{2.0, 1}}, {}));
  const Complex z(0.3, 0.1), w(0.2, -0.5);
  CHECK(rel_err(ke(z, w) * (z - 2.0) * (std::conj(w) - 2.0), disk_kernel(z, w)) < 1e-13);
}

TEST_CASE("Mobius-power kernel from transport and pole division of the radial kernel") {
  for (Complex c : {Complex(0.5, 0.0), Complex(0.3, 0.2)})
    for (int p : {1, 2}) {
      const auto moved = biholomorphic_transport(disk_radial_kernel_expr(2.0 * p),
                                                 DiskAutomorphism(c, 0.0));
      // mu_c(z) = (z - c)/(1 - conj(c) z) = -(z - c) / (conj(c) (z - 1/conj(c)))
      const auto k = pole_divide(
          moved, RationalFactors{std::pow(-std::conj(c), p), {{1.0 / std::conj(c), p}}, {}});
      CHECK(worst_over(pairs_for(kDisk, 50, 9), k, disk_mobius_power_kernel_expr(c, p)) < 1e-10);
    }
}

TEST_CASE("augmentation errors") {
  CHECK(kind_of([] { zero_augment(disk_kernel_expr(), 1.0); }) == ErrorKind::DomainViolation);
  CHECK(kind_of([] { zero_augment(annulus_kernel_expr(0.5), 0.1); }) ==
        ErrorKind::DomainViolation);
}

TEST_CASE("Hermitian symmetry on the weight matrix") {
  for (const auto& nw : weight_matrix()) {
    CAPTURE(nw.name);
    const auto k = weighted_kernel(nw.domain, nw.weight);
    double worst = 0.0;
    for (const auto& [z, w] : pairs_for(nw.domain, 50, 10))
      worst = std::max(worst, std::abs(k(z, w) - std::conj(k(w, z))) / std::abs(k(z, w)));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("analytic derivatives match finite differences on the weight matrix") {
  const double h = 1e-5;
  for (const auto& nw : weight_matrix()) {
    CAPTURE(nw.name);
    const auto k = weighted_kernel(nw.domain, nw.weight);
    for (const auto& [z, w] : pairs_for(nw.domain, 10, 11)) {
      const double s = std::sqrt(std::abs(k(z, z) * k(w, w)));
      const Complex fz = (k(z + h, w) - k(z - h, w)) / (2.0 * h);
      const Complex fw = (k(z, w + h) - k(z, w - h)) / (2.0 * h);
      CHECK(std::abs(k.d_dz(z, w) - fz) < 1e-6 * s);
      CHECK(std::abs(k.d_dwbar(z, w) - fw) < 1e-6 * s);
    }
  }
}

TEST_CASE("diagonal values are positive and real") {
  for (const auto& nw : weight_matrix()) {
    CAPTURE(nw.name);
    const auto k = weighted_kernel(nw.domain, nw.weight);
    for (const auto& [z, w] : pairs_for(nw.domain, 20, 12)) {
      const Complex v = k(z, z);
      CHECK(v.real() > 0.0);
      CHECK(std::abs(v.imag()) < 1e-12 * v.real());
    }
  }
}

TEST_CASE("punctures do not change the kernel") {
  const DomainSpec punctured = DomainSpec::unit_disk({Complex(0.2, 0.2)});
  const WeightSpec w({}, {{0.5, 1}}, {});
  const auto a = weighted_kernel(punctured, w);
  const auto b = weighted_kernel(kDisk, w);
  CHECK(rel_err(a(0.1, Complex(0.0, 0.4)), b(0.1, Complex(0.0, 0.4))) < 1e-15);
  CHECK(kind_of([&] { a(Complex(0.2, 0.2), 0.0); }) == ErrorKind::DomainViolation);
}

TEST_CASE("formulas") {
  CHECK(to_formula(disk_kernel_expr(), FormulaFormat::Plain) == "1/(pi*(1-z*conj(w))^2)");
  const auto divided = to_formula(pole_divide(disk_kernel_expr(), std::vector<Factor>{{2.0, 1}}),
                                  FormulaFormat::Plain);
  CHECK(divided.find("(z-2)") != std::string::npos);
  CHECK(divided.find("(conj(w)-2)") != std::string::npos);
  const auto aug = to_formula(zero_augment(disk_kernel_expr(), 0.5), FormulaFormat::Plain);
  CHECK(aug.find("(z-0.5)") != std::string::npos);
  CHECK(aug.find(" - ") != std::string::npos);
  const auto latex = to_formula(zero_augment(disk_kernel_expr(), 0.5), FormulaFormat::LaTeX);
  CHECK(latex.find("\\frac") != std::string::npos);
  CHECK(latex.find("\\overline") != std::string::npos);
}
