#include <doctest.h>

#include <numbers>

#include "bergman/base_kernels.hpp"
#include "bergman/oracle.hpp"
#include "support.hpp"

using namespace bergman;
using bergman::test::kind_of;
using bergman::test::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

Complex annulus_value(double r, Complex z, Complex w, double alpha = 0.0, int n_max = 400) {
  SeriesTruncation t{n_max};
  return annulus_kernel(r, z, w, t, alpha).value;
}

}  // namespace

TEST_CASE("disk kernel values") {
  CHECK(disk_kernel(0.0, 0.0).real() == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(disk_kernel(0.5, 0.5).real() == doctest::Approx(0.5658842421).epsilon(1e-10));
  // truncated orthonormal series as the independent check
  CHECK(rel_err(disk_kernel(0.5, 0.5), disk_series_kernel(0.5, 0.5, 200)) < 1e-14);
  const Complex z(0.3, -0.3), w(-0.3, 0.3);
  CHECK(std::abs(disk_kernel(z, w) - std::conj(disk_kernel(w, z))) < 1e-15);
  CHECK(kind_of([] { disk_kernel_expr()(1.0, 0.0); }) == ErrorKind::DomainViolation);
}

TEST_CASE("radial disk kernel") {
  for (Complex z : {Complex(0.1, 0.2), Complex(-0.6, 0.3)})
    for (Complex w : {Complex(0.5, 0.0), Complex(0.2, -0.7)})
      CHECK(std::abs(disk_radial_kernel(0.0, z, w) - disk_kernel(z, w)) < 1e-15);
  CHECK(disk_radial_kernel(2.0, 0.0, 0.0).real() == doctest::Approx(2.0 / kPi).epsilon(1e-15));
  CHECK(disk_radial_kernel(4.0, 0.0, 0.0).real() == doctest::Approx(3.0 / kPi).epsilon(1e-15));
  CHECK(kind_of([] { disk_radial_kernel_expr(-2.0); }) == ErrorKind::AlphaOutOfRange);
  // negative exponent still in range
  CHECK(disk_radial_kernel(-1.0, 0.0, 0.0).real() == doctest::Approx(0.5 / kPi));
}

TEST_CASE("Mobius power kernel at c = 0 reduces to the radial kernel") {
  for (int p : {1, 2, 3}) {
    const Complex z(0.4, 0.1), w(-0.2, 0.5);
    CHECK(rel_err(disk_mobius_power_kernel(0.0, p, z, w), disk_radial_kernel(2.0 * p, z, w)) <
          1e-14);
  }
  CHECK(kind_of([] { disk_mobius_power_kernel_expr(1.2, 1); }) == ErrorKind::DomainViolation);
}

TEST_CASE("annulus kernel against frozen high-precision values") {
  // bilateral series summed to 30 digits
  CHECK(annulus_value(0.5, 0.7, 0.7).real() ==
        doctest::Approx(3.3431319160242877972).epsilon(1e-13));
  CHECK(rel_err(annulus_value(0.5, Complex(0.6, 0.2), Complex(-0.3, 0.6)),
                Complex(-0.0050737291068745658344, 0.0041452988101993484971)) < 1e-10);
  CHECK(rel_err(annulus_value(0.5, Complex(0.0, 0.8), 0.55),
                Complex(-0.006566589933619466705, -0.010055606411381315186)) < 1e-10);
  CHECK(rel_err(annulus_value(0.5, 0.7, Complex(0.6, 0.1), 2.0),
                Complex(7.29001438210755675401, 5.00068250004858215135)) < 1e-12);
  CHECK(rel_err(annulus_value(0.3, Complex(0.5, 0.5), Complex(-0.4, 0.6)),
                Complex(0.11663096195282190820, 0.00509226164699557255)) < 1e-12);
  CHECK(annulus_value(0.5, 0.6, 0.6, -1.0).real() ==
        doctest::Approx(5.03695756166459079749).epsilon(1e-13));
}

TEST_CASE("annulus kernel is Hermitian and positive on the diagonal") {
  const Complex z(0.55, 0.4), w(-0.7, 0.1);
  CHECK(std::abs(annulus_value(0.5, z, w) - std::conj(annulus_value(0.5, w, z))) < 1e-14);
  for (Complex p : {Complex(0.51, 0.0), Complex(0.0, 0.75), Complex(-0.6, -0.78)}) {
    const Complex v = annulus_value(0.5, p, p);
    CHECK(v.real() > 0.0);
    CHECK(std::abs(v.imag()) < 1e-12 * v.real());
  }
}

TEST_CASE("annulus acceleration agrees with the plain series and with doubled truncation") {
  const Complex z(0.6, 0.3), w(0.2, -0.65);
  const auto plain = annulus_series_plain(0.5, z, w, 200);
  CHECK(plain.tail_bound < 1e-12);
  CHECK(rel_err(annulus_value(0.5, z, w), plain.value) < 1e-12);
  // near the outer circle the plain sum is useless but the accelerated one is stable
  const Complex zb(0.0, 0.995), wb(0.1, 0.99);
  CHECK(rel_err(annulus_value(0.5, zb, wb, 0.0, 400), annulus_value(0.5, zb, wb, 0.0, 800)) <
        1e-12);
}

TEST_CASE("annulus Taylor coefficients match finite differences in t") {
  const double r = 0.5;
  const Complex t0(-0.2, 0.35);
  const auto tay = annulus_taylor(r, 0.0, t0, 2, 400);
  // K depends on z and w only through t = z conj(w); hold w fixed and move z.
  const Complex w(0.8, 0.0);
  auto K = [&](Complex t) { return annulus_value(r, t / std::conj(w), w); };
  const double h = 1e-4;
  CHECK(rel_err(tay.coeffs[0], K(t0)) < 1e-13);
  const Complex d1 = (K(t0 + h) - K(t0 - h)) / (2.0 * h);
  CHECK(rel_err(tay.coeffs[1], d1) < 1e-6);
  const Complex d2 = (K(t0 + h) - 2.0 * K(t0) + K(t0 - h)) / (h * h) / 2.0;
  CHECK(rel_err(tay.coeffs[2], d2) < 1e-4);
}

TEST_CASE("annulus errors") {
  SeriesTruncation tiny{3};
  CHECK(kind_of([&] { annulus_kernel(0.5, 0.9, 0.9, tiny); }) == ErrorKind::TruncationTooSmall);
  SeriesTruncation t;
  CHECK(kind_of([&] { annulus_kernel(0.5, 0.3, 0.7, t); }) == ErrorKind::DomainViolation);
  CHECK(kind_of([&] { annulus_kernel(1.5, 0.7, 0.7, t); }) == ErrorKind::InvalidDomain);
  CHECK(kind_of([] { annulus_kernel_expr(0.5)(0.2, 0.7); }) == ErrorKind::DomainViolation);
}

TEST_CASE("base kernel expressions scale with the constant weight") {
  const auto k = base_kernel_expr(DomainSpec::unit_disk(), BaseWeight{2.0, 2.0});
  const Complex z(0.3, 0.1), w(-0.2, 0.4);
  CHECK(rel_err(k(z, w), disk_radial_kernel(2.0, z, w) / 2.0) < 1e-15);
  const auto a = base_kernel_expr(DomainSpec::annulus(0.5), BaseWeight{4.0, 0.0});
  CHECK(rel_err(a(0.7, 0.6), annulus_value(0.5, 0.7, 0.6) / 4.0) < 1e-14);
}

TEST_CASE("disk automorphisms") {
  const DiskAutomorphism f(Complex(0.3, -0.2), 0.7);
  const auto g = f.inverse();
  for (Complex z : {Complex(0.1, 0.5), Complex(-0.8, 0.1)}) {
    CHECK(std::abs(g(f(z)) - z) < 1e-14);
    CHECK(std::abs(f(z)) < 1.0);
    const double h = 1e-6;
    CHECK(rel_err(f.derivative(z), (f(z + h) - f(z - h)) / (2.0 * h)) < 1e-8);
  }
  CHECK(kind_of([] { DiskAutomorphism(1.0, 0.0); }) == ErrorKind::InvalidAutomorphism);
}

TEST_CASE("disk kernel is invariant under transport by automorphisms") {
  const auto k = disk_kernel_expr();
  const auto pairs = sample_pairs(DomainSpec::unit_disk(), 0.9, 100, 7);
  for (const DiskAutomorphism& f :
       {DiskAutomorphism::identity(), DiskAutomorphism(Complex(0.5, 0.3), 1.1)}) {
    const auto t = biholomorphic_transport(k, f);
    double worst = 0.0;
    for (const auto& [z, w] : pairs) worst = std::max(worst, rel_err(t(z, w), k(z, w)));
    CHECK(worst < 1e-12);
  }
}
