#include <doctest.h>

#include <json.hpp>
#include <numbers>

#include "bergman/base_kernels.hpp"
#include "bergman/hartogs.hpp"
#include "bergman/oracle.hpp"
#include "support.hpp"

using namespace bergman;
using bergman::test::kind_of;
using bergman::test::rel_err;

namespace {

const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);
const auto kDisk = DomainSpec::unit_disk();

double worst_against(const KernelExpr& k, auto&& expected) {
  double worst = 0.0;
  for (const auto& [z, w] : sample_pairs(kDisk, 0.9, 50, 31))
    worst = std::max(worst, rel_err(k(z, w), expected(z, w)));
  return worst;
}

}  // namespace

TEST_CASE("lift of the unit profile is the disk kernel") {
  const auto h = lift(kDisk, WeightSpec(BaseWeight::constant(kInvSqrtPi), {}, {}));
  CHECK(h.slice_weight.base().scale == 1.0);
  CHECK(h.bounded);
  CHECK(worst_against(slice_kernel(h), disk_kernel) < 1e-15);
}

TEST_CASE("lift of the radial profile |z|") {
  const auto h = lift(kDisk, WeightSpec(BaseWeight::radial(1.0), {}, {}));
  CHECK(h.slice_weight.base().alpha == 2.0);
  CHECK(h.slice_weight.base().scale == doctest::Approx(std::numbers::pi));
  CHECK(worst_against(slice_kernel(h), [](Complex z, Complex w) {
          return disk_radial_kernel(2.0, z, w) / std::numbers::pi;
        }) < 1e-14);
}

TEST_CASE("lift of a profile pole squares it in the slice weight") {
  const Complex c(0.4, 0.0);
  const auto h = lift(kDisk, WeightSpec(BaseWeight::constant(kInvSqrtPi), {}, {{c, 1}}));
  REQUIRE(h.slice_weight.poles().size() == 1);
  CHECK(h.slice_weight.poles()[0].multiplicity == 1);  // |z - c|^{-2}
  CHECK_FALSE(h.bounded);
  CHECK(h.slice_weight.value(0.0) == doctest::Approx(1.0 / 0.16));
  CHECK(worst_against(slice_kernel(h), [c](Complex z, Complex w) {
          return (z - c) * disk_kernel(z, w) * (std::conj(w) - std::conj(c));
        }) < 1e-12);
  const auto k = slice_kernel(h);
  for (const auto& [z, w] : sample_pairs(kDisk, 0.9, 20, 32)) CHECK(std::abs(k(c, w)) == 0.0);
}

TEST_CASE("boundedness flags") {
  CHECK(lift(kDisk, WeightSpec({}, {}, {{2.0, 1}})).bounded);
  CHECK_FALSE(lift(kDisk, WeightSpec({}, {}, {{1.0, 1}})).bounded);
  CHECK_FALSE(lift(kDisk, WeightSpec(BaseWeight::radial(-0.5), {}, {})).bounded);
  CHECK(lift(DomainSpec::annulus(0.5), WeightSpec(BaseWeight::radial(-0.5), {}, {})).bounded);
  CHECK(kind_of([] { lift(kDisk, WeightSpec(BaseWeight::radial(-1.0), {}, {})); }) ==
        ErrorKind::AlphaOutOfRange);
}

TEST_CASE("certification") {
  const GridSpec grid{{-1.0, -1.0}, {1.0, 1.0}, 10};
  const GridSpec one_slice{{-0.5, -0.5}, {0.5, 0.5}, 1};

  const auto ex = lift(kDisk, WeightSpec(BaseWeight::constant(kInvSqrtPi), {}, {{0.4, 1}}));
  const auto cert = certify_non_lu_qikeng(ex, grid, one_slice);
  REQUIRE(cert.certified);
  CHECK(std::abs(cert.witness->z - 0.4) < 1e-12);

  const auto unit = lift(kDisk, WeightSpec(BaseWeight::constant(kInvSqrtPi), {}, {}));
  CHECK_FALSE(certify_non_lu_qikeng(unit, grid, one_slice).certified);

  const auto ann = lift(DomainSpec::annulus(0.5), WeightSpec(BaseWeight::constant(kInvSqrtPi), {}, {}));
  const GridSpec w_at_w0{{-0.3, -0.8}, {-0.2, -0.7}, 1};
  CHECK(certify_non_lu_qikeng(ann, GridSpec{{0.2, 0.75}, {0.4, 0.95}, 4}, w_at_w0).certified);
}

TEST_CASE("certificate json") {
  const auto ex = lift(kDisk, WeightSpec(BaseWeight::constant(kInvSqrtPi), {}, {{0.4, 1}}));
  const auto cert = certify_non_lu_qikeng(ex, GridSpec{{-1.0, -1.0}, {1.0, 1.0}, 10},
                                          GridSpec{{-0.5, -0.5}, {0.5, 0.5}, 1});
  const auto j = nlohmann::json::parse(cert.to_json(ex));
  CHECK(j["status"] == "certified");
  CHECK(j["domain"]["bounded"] == false);
  CHECK(j["witness"]["z"]["re"].get<double>() == doctest::Approx(0.4));
  CHECK(j["resolution"] == 10);
  CHECK(j["slices_scanned"] == 1);
  CHECK(j.contains("method"));
}
