#include <doctest.h>

#include <numbers>

#include "bergman/base_kernels.hpp"
#include "bergman/transforms.hpp"
#include "bergman/zero_lab.hpp"
#include "support.hpp"

using namespace bergman;
using bergman::test::kind_of;

namespace {

// Zero of the r = 0.5 annulus kernel on the slice w0 = -0.25 - 0.75i, from a
// 30-digit solve of the bilateral series in t = z conj(w0).
const Complex kW0(-0.25, -0.75);
const Complex kZStar(0.282842794209161435, 0.848528382627484306);

const GridSpec kNearStar{{0.2, 0.75}, {0.4, 0.95}, 4};

}  // namespace

TEST_CASE("grid validation and geometry") {
  GridSpec g{{-1.0, -1.0}, {1.0, 1.0}, 4};
  CHECK(g.cell_width() == 0.5);
  CHECK(g.cell_center(0, 0) == Complex(-0.75, -0.75));
  CHECK(kind_of([] { GridSpec{{0.0, 0.0}, {1.0, 1.0}, 0}.validate(); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { GridSpec{{1.0, 0.0}, {0.0, 1.0}, 4}.validate(); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("refinement reaches the frozen annulus zero") {
  const auto k = annulus_kernel_expr(0.5);
  const auto w = refine_zero(k, Complex(0.3, 0.83), kW0);
  CHECK(std::abs(w.z - kZStar) < 1e-12);
  CHECK(w.residual <= 1e-10 * w.scale);
  CHECK(w.order == 1);
  // starting on the zero returns it unchanged
  const auto again = refine_zero(k, w.z, kW0);
  CHECK(std::abs(again.z - w.z) < 1e-14);
}

TEST_CASE("refinement fails where there is no zero") {
  const auto k = disk_kernel_expr();
  const auto e = kind_of([&] { refine_zero(k, 0.3, Complex(0.2, 0.1)); });
  CHECK(e == ErrorKind::NoConvergence);
}

TEST_CASE("zero orders") {
  const auto k = annulus_kernel_expr(0.5);
  CHECK(zero_order(k, kZStar, kW0, SliceVariable::InZ) == 1);
  CHECK(zero_order(k, kZStar, kW0, SliceVariable::InW) == 1);
  CHECK(kind_of([&] { zero_order(k, 0.7, kW0, SliceVariable::InZ); }) == ErrorKind::NotAZero);

  const Complex c(0.3, 0.1);
  const auto double_pole = weighted_kernel(DomainSpec::unit_disk(), WeightSpec({}, {}, {{c, 2}}));
  CHECK(zero_order(double_pole, c, Complex(0.0, -0.4), SliceVariable::InZ) == 2);
  RefineOptions two;
  two.multiplicity = 2;
  const auto w = refine_zero(double_pole, c + 0.01, Complex(0.0, -0.4), two);
  CHECK(std::abs(w.z - c) < 1e-5);
  CHECK(kind_of([&] { refine_zero(double_pole, c + 0.01, Complex(0.0, -0.4)); }) ==
        ErrorKind::MultipleZeroSuspected);
}

TEST_CASE("slice scans") {
  const auto ann = annulus_kernel_expr(0.5);
  const auto found = scan_slice_zeros(ann, kW0, kNearStar);
  REQUIRE(found.witnesses.size() == 1);
  CHECK(std::abs(found.witnesses[0].z - kZStar) < 1e-12);
  CHECK(found.witnesses[0].winding == 1);

  const GridSpec coarse{{-1.0, -1.0}, {1.0, 1.0}, 8};
  CHECK(scan_slice_zeros(disk_kernel_expr(), Complex(0.3, 0.2), coarse).witnesses.empty());
  CHECK(scan_slice_zeros(disk_radial_kernel_expr(2.0), Complex(-0.5, 0.4), coarse).witnesses.empty());
  // the cells straddling the circle are reported, not scanned
  const auto skipped = scan_slice_zeros(disk_kernel_expr(), 0.0, coarse).skipped;
  CHECK_FALSE(skipped.empty());
  for (const auto& s : skipped) CHECK(s.reason == ErrorKind::BoundaryTooClose);
}

TEST_CASE("scans are deterministic") {
  const auto ann = annulus_kernel_expr(0.5);
  const auto a = scan_slice_zeros(ann, kW0, kNearStar);
  const auto b = scan_slice_zeros(ann, kW0, kNearStar);
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  CHECK(a.witnesses[0].z == b.witnesses[0].z);
  CHECK(a.cells_scanned == b.cells_scanned);
}

TEST_CASE("a zero on a grid line is still found") {
  const Complex c(0.4, 0.0);
  const auto k = weighted_kernel(DomainSpec::unit_disk(), WeightSpec({}, {}, {{c, 1}}));
  const auto r = scan_slice_zeros(k, Complex(0.0, 0.5), GridSpec{{-1.0, -1.0}, {1.0, 1.0}, 10});
  REQUIRE(r.witnesses.size() == 1);
  CHECK(std::abs(r.witnesses[0].z - c) < 1e-12);
}

TEST_CASE("Lu Qi-keng status") {
  const GridSpec tiny_w{{-1.0, -1.0}, {1.0, 1.0}, 2};
  const auto disk = lu_qikeng_status(disk_kernel_expr(), GridSpec{{-1.0, -1.0}, {1.0, 1.0}, 8}, tiny_w);
  CHECK_FALSE(disk.zero_found);
  CHECK(disk.slices_scanned == 4);
  const auto ex = lu_qikeng_status(
      weighted_kernel(DomainSpec::unit_disk(), WeightSpec({}, {}, {{0.4, 1}})),
      GridSpec{{-1.0, -1.0}, {1.0, 1.0}, 10}, tiny_w);
  REQUIRE(ex.zero_found);
  CHECK(std::abs(ex.witness->z - 0.4) < 1e-12);
  CHECK(ex.slices_scanned == 1);
}

TEST_CASE("transfer report at the annulus zero") {
  const auto k = annulus_kernel_expr(0.5);
  const Complex x(0.1, 0.6);
  // c = w*, z0 = z*: K(z0, c) = 0, so the ratio identity applies
  const auto a = zero_transfer_report(k, kW0, kZStar, x);
  CHECK(a.cross_vanishes);
  CHECK(a.ratio_identity_holds);
  CHECK(a.ratio_identity_error < 1e-8);
  // c = z*, w0 = w*: K(c, w0) = 0
  const auto b = zero_transfer_report(k, kZStar, x, kW0);
  CHECK(b.cross_vanishes);
  CHECK(b.ratio_identity_holds);
  // generic configuration: no vanishing anywhere
  const auto g = zero_transfer_report(k, Complex(0.0, 0.7), Complex(0.6, 0.1), Complex(-0.6, 0.3));
  CHECK_FALSE(g.aug_vanishes);
  CHECK_FALSE(g.cross_vanishes);
  CHECK(g.biconditional_holds);

  CHECK(kind_of([&] { zero_transfer_report(k, kZStar, kZStar, kW0); }) ==
        ErrorKind::HypothesisUnmet);
}

TEST_CASE("order drops at a simple zero after augmentation") {
  const auto k = annulus_kernel_expr(0.5);
  const auto aug = zero_augment(k, kW0);
  const double scale = std::sqrt(std::abs(aug(kZStar, kZStar) * aug(kW0, kW0)));
  CHECK(std::abs(aug(kZStar, kW0)) > 1e-6 * scale);
}

TEST_CASE("boundary ratio on the disk follows the closed form") {
  const auto centers = radial_centers(1.0, 3, 12);
  REQUIRE(centers.size() == 10);
  CHECK(centers.front() == Complex(0.875, 0.0));
  const auto t = boundary_ratio(disk_kernel_expr(), 0.0, centers);
  for (std::size_t j = 0; j < centers.size(); ++j) {
    const double c = centers[j].real();
    CHECK(t.values[j] == doctest::Approx((1.0 - c * c) / std::sqrt(std::numbers::pi)).epsilon(1e-10));
    CHECK(t.boundary_distance[j] == doctest::Approx(1.0 - c));
  }
  CHECK(t.decays());

  RatioTrace flat;
  flat.values = {0.5, 0.5, 0.5, 0.5};
  CHECK_FALSE(flat.decays());
  const auto ann = annulus_kernel_expr(0.5);
  CHECK(kind_of([&] { boundary_ratio(ann, 0.7, {0.2}); }) == ErrorKind::DomainViolation);
}

TEST_CASE("tracking refuses centers that do not approach the boundary") {
  const auto k = annulus_kernel_expr(0.5);
  ZeroWitness w;
  w.z = kZStar;
  w.w = kW0;
  const std::vector<Complex> fixed(4, Complex(0.0, -0.7));
  CHECK(kind_of([&] { track_zero_near_boundary(k, w, fixed); }) == ErrorKind::TrackingFailed);
}

TEST_CASE("normalized magnitude") {
  const auto k = disk_kernel_expr();
  CHECK(normalized_magnitude(k, 0.3, 0.3) == doctest::Approx(1.0));
  CHECK(normalized_magnitude(k, 0.5, -0.5) < 1.0);
}
