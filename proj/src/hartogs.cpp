#include "bergman/hartogs.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bergman/json_io.hpp"
#include "bergman/transforms.hpp"

namespace bergman {

HartogsSpec lift(const DomainSpec& base, const WeightSpec& profile) {
  HartogsSpec h;
  h.base = base;
  h.profile = profile;
  const BaseWeight& b = profile.base();
  double scale = std::numbers::pi * b.scale * b.scale;
  // phi = 1/sqrt(pi) should give the unweighted kernel exactly, not 1 - ulp.
  if (std::abs(scale - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) scale = 1.0;
  const BaseWeight squared{scale, 2.0 * b.alpha};
  h.slice_weight = WeightSpec(squared, profile.zeros(), profile.poles());

  bool bounded = !(base.is_disk() && b.alpha < 0.0);
  for (const auto& p : profile.poles()) bounded &= !base.closure_contains(p.center);
  h.bounded = bounded;
  return h;
}

KernelExpr slice_kernel(const HartogsSpec& h) { return weighted_kernel(h.base, h.slice_weight); }

std::string HartogsCertificate::to_json(const HartogsSpec& h) const {
  Json j;
  j["domain"] = {{"base", domain_to_json(h.base)},
                 {"profile", weight_to_json(h.profile)},
                 {"slice_weight", weight_to_json(h.slice_weight)},
                 {"bounded", h.bounded}};
  j["status"] = certified ? "certified" : "inconclusive";
  j["witness"] = witness ? witness_to_json(*witness) : Json(nullptr);
  j["resolution"] = resolution;
  j["slices_scanned"] = slices_scanned;
  j["method"] = "Forelli-Rudin slice: zero of K_{pi phi^2}(z, w) = K_Omega((z, 0), (w, 0))";
  return j.dump(2);
}

HartogsCertificate certify_non_lu_qikeng(const HartogsSpec& h, const GridSpec& z_grid,
                                         const GridSpec& w_grid, const ScanOptions& options) {
  const auto status = lu_qikeng_status(slice_kernel(h), z_grid, w_grid, options);
  HartogsCertificate c;
  c.certified = status.zero_found;
  c.witness = status.witness;
  c.resolution = status.resolution;
  c.slices_scanned = status.slices_scanned;
  return c;
}

}  // namespace bergman
