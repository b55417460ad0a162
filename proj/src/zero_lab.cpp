#include "bergman/zero_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <fmt/format.h>

#include "bergman/errors.hpp"
#include "bergman/parallel.hpp"
#include "bergman/transforms.hpp"

namespace bergman {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxArgStep = std::numbers::pi / 3.0;
constexpr int kMaxArgRefine = 16;
constexpr double kIntegralTol = 1e-3;
constexpr double kOrderRadius = 1e-3;

using Path = std::function<Complex(double)>;
using Slice = std::function<Complex(Complex)>;

bool usable(Complex v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag()) && v != Complex(0.0);
}

// Argument increment of f(s) for s from s0 to s1 given sampled endpoints,
// bisecting wherever consecutive samples differ by more than kMaxArgStep.
double refine_increment(const Path& f, double s0, Complex v0, double s1, Complex v1, int depth,
                        std::vector<double>* mags) {
  const double step = std::arg(v1 * std::conj(v0));
  if (std::abs(step) <= kMaxArgStep) return step;
  if (depth >= kMaxArgRefine) return std::numeric_limits<double>::quiet_NaN();
  const double sm = 0.5 * (s0 + s1);
  const Complex vm = f(sm);
  if (!usable(vm)) return std::numeric_limits<double>::quiet_NaN();
  if (mags) mags->push_back(std::abs(vm));
  return refine_increment(f, s0, v0, sm, vm, depth + 1, mags) +
         refine_increment(f, sm, vm, s1, v1, depth + 1, mags);
}

double arg_increment(const Path& f, double s0, double s1, int n, std::vector<double>* mags) {
  Complex prev = f(s0);
  if (!usable(prev)) return std::numeric_limits<double>::quiet_NaN();
  if (mags) mags->push_back(std::abs(prev));
  double total = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double a = s0 + (s1 - s0) * (i - 1) / n, b = s0 + (s1 - s0) * i / n;
    const Complex v = f(b);
    if (!usable(v)) return std::numeric_limits<double>::quiet_NaN();
    if (mags) mags->push_back(std::abs(v));
    total += refine_increment(f, a, prev, b, v, 0, mags);
    prev = v;
  }
  return total;
}

double segment_increment(const Slice& f, Complex a, Complex b, int n, std::vector<double>* mags) {
  return arg_increment([&](double s) { return f(a + (b - a) * s); }, 0.0, 1.0, n, mags);
}

double circle_increment(const Slice& f, Complex center, double radius, int n,
                        std::vector<double>* mags) {
  return arg_increment([&](double t) { return f(center + std::polar(radius, t)); }, 0.0, kTwoPi,
                       n, mags);
}

// Winding number from an accumulated increment, or nullopt if the
// increment is not within kIntegralTol of a multiple of 2 pi.
std::optional<int> winding_of(double increment) {
  if (!std::isfinite(increment)) return std::nullopt;
  const double w = increment / kTwoPi;
  const double r = std::round(w);
  if (std::abs(w - r) > kIntegralTol) return std::nullopt;
  return static_cast<int>(r);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

struct Rect {
  Complex lo, hi;
  Complex center() const { return 0.5 * (lo + hi); }
  Complex corner(int k) const {  // counterclockwise from lo
    switch (k) {
      case 0: return lo;
      case 1: return {hi.real(), lo.imag()};
      case 2: return hi;
      default: return {lo.real(), hi.imag()};
    }
  }
  bool contains(Complex p, double pad) const {
    const double px = pad * (hi.real() - lo.real()), py = pad * (hi.imag() - lo.imag());
    return p.real() >= lo.real() - px && p.real() <= hi.real() + px &&
           p.imag() >= lo.imag() - py && p.imag() <= hi.imag() + py;
  }
  double max_modulus() const {
    double m = 0.0;
    for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(corner(k)));
    return m;
  }
  double min_modulus() const {
    const double x = std::clamp(0.0, lo.real(), hi.real());
    const double y = std::clamp(0.0, lo.imag(), hi.imag());
    return std::abs(Complex(x, y));
  }
};

enum class CellPlacement { Inside, Outside, NearBoundary };

CellPlacement place(const DomainSpec& d, const Rect& r, double margin) {
  const double rmax = r.max_modulus(), rmin = r.min_modulus();
  if (rmin >= 1.0) return CellPlacement::Outside;
  if (d.is_annulus() && rmax <= d.inner_radius()) return CellPlacement::Outside;
  if (rmax > 1.0 - margin) return CellPlacement::NearBoundary;
  if (d.is_annulus() && rmin < d.inner_radius() + margin) return CellPlacement::NearBoundary;
  return CellPlacement::Inside;
}

bool same_point(Complex a, Complex b) { return std::abs(a - b) <= kSingularEps; }

double cs_scale(const KernelExpr& k, Complex z, Complex w) {
  return std::sqrt(std::abs(k(z, z)) * std::abs(k(w, w)));
}

// Centroid of the zeros inside a rectangle, (1/2 pi i) \oint z f'/f dz, by
// the trapezoid rule along the edges.
std::optional<Complex> zero_centroid(const KernelExpr& k, Complex w0, const Rect& r, int n) {
  Complex acc = 0.0;
  for (int e = 0; e < 4; ++e) {
    const Complex a = r.corner(e), b = r.corner((e + 1) % 4);
    const Complex dz = (b - a) / static_cast<double>(n);
    for (int i = 0; i <= n; ++i) {
      const Complex z = a + (b - a) * (static_cast<double>(i) / n);
      const Jet j = k.jet(z, w0, 1, 0);
      if (!usable(j(0, 0))) return std::nullopt;
      const double wt = (i == 0 || i == n) ? 0.5 : 1.0;
      acc += wt * z * j(1, 0) / j(0, 0) * dz;
    }
  }
  const Complex c = acc / Complex(0.0, kTwoPi);
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return std::nullopt;
  return c;
}

class SliceScanner {
 public:
  SliceScanner(const KernelExpr& k, Complex w0, const ScanOptions& opt, ScanResult& out)
      : k_(k), w0_(w0), opt_(opt), out_(out), f_([this](Complex z) { return k_(z, w0_); }) {}

  // Handles a cell whose winding (possibly unresolved) is known.
  void handle(const Rect& r, std::optional<int> winding, double scale, int level,
              bool shifted = false) {
    if (!winding || *winding < 0) {
      // Usually a zero on the cell edge; subcells would share that edge, so
      // first retry on a slightly enlarged, asymmetric copy of the cell.
      if (!shifted) {
        const Rect e = enlarged(r);
        if (place(k_.domain(), e, opt_.boundary_margin) == CellPlacement::Inside) {
          scan_rect(e, level, true);
          return;
        }
      }
      subdivide(r, level, "winding number is not an integer");
      return;
    }
    if (*winding == 0) return;
    if (*winding >= 2 && level < opt_.max_subdivision) {
      subdivide(r, level, "");
      return;
    }
    certify(r, *winding, scale);
  }

  // Winding of a rectangle computed from its own edges.
  void scan_rect(const Rect& r, int level, bool shifted = false) {
    std::vector<double> mags;
    double inc = 0.0;
    for (int e = 0; e < 4; ++e)
      inc += segment_increment(f_, r.corner(e), r.corner((e + 1) % 4), opt_.edge_samples, &mags);
    handle(r, winding_of(inc), median(std::move(mags)), level, shifted);
  }

 private:
  static Rect enlarged(const Rect& r) {
    const double w = r.hi.real() - r.lo.real(), h = r.hi.imag() - r.lo.imag();
    return {r.lo - Complex(0.0713 * w, 0.0419 * h), r.hi + Complex(0.0531 * w, 0.0877 * h)};
  }

  void subdivide(const Rect& r, int level, const std::string& why) {
    if (level >= opt_.max_subdivision) {
      out_.skipped.push_back({r.center(), ErrorKind::NoConvergence,
                              why.empty() ? "unresolved winding" : why});
      return;
    }
    const Complex m = r.center();
    scan_rect({r.lo, m}, level + 1);
    scan_rect({{m.real(), r.lo.imag()}, {r.hi.real(), m.imag()}}, level + 1);
    scan_rect({{r.lo.real(), m.imag()}, {m.real(), r.hi.imag()}}, level + 1);
    scan_rect({m, r.hi}, level + 1);
  }

  void certify(const Rect& r, int winding, double scale) {
    RefineOptions ro;
    ro.scale = scale;
    ro.residual_tol = opt_.residual_tol;
    ro.multiplicity = winding;
    std::optional<ZeroWitness> found;
    std::string failure;
    auto attempt = [&](Complex guess) {
      try {
        auto zw = refine_zero(k_, guess, w0_, ro);
        if (r.contains(zw.z, 0.05)) found = zw;
        else failure = "Newton left the cell";
      } catch (const Error& e) {
        failure = e.what();
      }
    };
    attempt(r.center());
    if (!found && winding == 1)
      if (auto c = zero_centroid(k_, w0_, r, 4 * opt_.edge_samples)) attempt(*c);
    if (!found) {
      out_.skipped.push_back({r.center(), ErrorKind::NoConvergence, failure});
      return;
    }
    found->winding = winding;
    try {
      found->order = zero_order(k_, found->z, w0_, SliceVariable::InZ);
    } catch (const Error&) {
      found->order = winding;
    }
    for (const auto& w : out_.witnesses)
      if (std::abs(w.z - found->z) < 1e-9) return;
    out_.witnesses.push_back(*found);
  }

  const KernelExpr& k_;
  Complex w0_;
  const ScanOptions& opt_;
  ScanResult& out_;
  Slice f_;
};

}  // namespace

// ---------------------------------------------------------------------------

void GridSpec::validate() const {
  require_finite(lo, "grid corner");
  require_finite(hi, "grid corner");
  if (resolution < 1) fail(ErrorKind::InvalidArgument, "grid resolution must be positive");
  if (!(hi.real() > lo.real() && hi.imag() > lo.imag()))
    fail(ErrorKind::InvalidArgument, "grid rectangle is empty");
}

Complex GridSpec::cell_center(int i, int j) const {
  return {lo.real() + (i + 0.5) * cell_width(), lo.imag() + (j + 0.5) * cell_height()};
}

ScanResult scan_slice_zeros(const KernelExpr& k, Complex w0, const GridSpec& grid,
                            const ScanOptions& options) {
  grid.validate();
  k.check_point(w0, "w0");
  const int n = grid.resolution;
  const double dx = grid.cell_width(), dy = grid.cell_height();
  auto node = [&](int i, int j) {
    return Complex(grid.lo.real() + i * dx, grid.lo.imag() + j * dy);
  };
  auto cell = [&](int i, int j) { return Rect{node(i, j), node(i + 1, j + 1)}; };

  ScanResult out;
  std::vector<CellPlacement> placement(static_cast<std::size_t>(n) * n);
  bool any_inside = false;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const auto p = place(k.domain(), cell(i, j), options.boundary_margin);
      placement[static_cast<std::size_t>(j) * n + i] = p;
      any_inside |= p == CellPlacement::Inside;
      if (p == CellPlacement::NearBoundary)
        out.skipped.push_back({cell(i, j).center(), ErrorKind::BoundaryTooClose,
                               "cell within the boundary margin"});
    }
  if (!any_inside && out.skipped.empty())
    fail(ErrorKind::InvalidArgument, "grid does not meet the domain");
  auto inside = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < n && j < n &&
           placement[static_cast<std::size_t>(j) * n + i] == CellPlacement::Inside;
  };

  // Edge increments, shared between neighbouring cells. Horizontal edge
  // (i, j) runs node(i, j) -> node(i+1, j); vertical edge (i, j) runs
  // node(i, j) -> node(i, j+1).
  const Slice f = [&](Complex z) { return k(z, w0); };
  struct Edge {
    double increment = 0.0;
    std::vector<double> mags;
  };
  const std::size_t nh = static_cast<std::size_t>(n) * (n + 1);
  std::vector<Edge> horiz(nh), vert(nh);
  auto h_index = [&](int i, int j) { return static_cast<std::size_t>(j) * n + i; };
  auto v_index = [&](int i, int j) { return static_cast<std::size_t>(i) * n + j; };
  parallel_for(2 * nh, [&](std::size_t e) {
    const bool is_h = e < nh;
    const std::size_t idx = is_h ? e : e - nh;
    int i, j;
    if (is_h) {
      j = static_cast<int>(idx / n);
      i = static_cast<int>(idx % n);
      if (!inside(i, j) && !inside(i, j - 1)) return;
      horiz[idx].increment =
          segment_increment(f, node(i, j), node(i + 1, j), options.edge_samples, &horiz[idx].mags);
    } else {
      i = static_cast<int>(idx / n);
      j = static_cast<int>(idx % n);
      if (!inside(i, j) && !inside(i - 1, j)) return;
      vert[idx].increment =
          segment_increment(f, node(i, j), node(i, j + 1), options.edge_samples, &vert[idx].mags);
    }
  });

  struct CellWinding {
    int i, j;
    std::optional<int> winding;
    double scale;
  };
  std::vector<CellWinding> active;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (!inside(i, j)) continue;
      ++out.cells_scanned;
      const auto& b = horiz[h_index(i, j)];
      const auto& t = horiz[h_index(i, j + 1)];
      const auto& l = vert[v_index(i, j)];
      const auto& rt = vert[v_index(i + 1, j)];
      const double inc = b.increment + rt.increment - t.increment - l.increment;
      const auto w = winding_of(inc);
      if (w && *w == 0) continue;
      std::vector<double> mags;
      for (const auto* e : {&b, &t, &l, &rt}) mags.insert(mags.end(), e->mags.begin(), e->mags.end());
      active.push_back({i, j, w, median(std::move(mags))});
    }

  // Few cells carry zeros; refine them in parallel into per-cell results and
  // merge in cell order.
  std::vector<ScanResult> partial(active.size());
  parallel_for(active.size(), [&](std::size_t a) {
    SliceScanner scanner(k, w0, options, partial[a]);
    scanner.handle(cell(active[a].i, active[a].j), active[a].winding, active[a].scale, 0);
  });
  for (auto& p : partial) {
    for (auto& w : p.witnesses) {
      bool dup = false;
      for (const auto& x : out.witnesses) dup |= std::abs(x.z - w.z) < 1e-9;
      if (!dup) out.witnesses.push_back(w);
    }
    out.skipped.insert(out.skipped.end(), p.skipped.begin(), p.skipped.end());
  }
  std::sort(out.witnesses.begin(), out.witnesses.end(), [](const auto& a, const auto& b) {
    const double ma = std::abs(a.z), mb = std::abs(b.z);
    if (ma != mb) return ma < mb;
    return std::arg(a.z) < std::arg(b.z);
  });
  return out;
}

ZeroWitness refine_zero(const KernelExpr& k, Complex guess, Complex w0,
                        const RefineOptions& options) {
  k.check_point(guess, "guess");
  k.check_point(w0, "w0");
  if (options.multiplicity < 1) fail(ErrorKind::InvalidArgument, "multiplicity must be positive");
  const double scale = options.scale > 0.0 ? options.scale : cs_scale(k, guess, w0);
  const double tol = options.residual_tol * scale;
  const double m = options.multiplicity;

  auto accept = [&](Complex z, Complex fz) {
    // A residual under tolerance can still sit far from the root when the
    // slice is flat; a few extra steps settle it while they keep improving.
    for (int polish = 0; polish < 3; ++polish) {
      const Jet j = k.jet(z, w0, 1, 0);
      if (!usable(j(1, 0))) break;
      const Complex next = z - m * j(0, 0) / j(1, 0);
      if (!k.domain().contains(next)) break;
      const Complex fn = k(next, w0);
      if (!(std::abs(fn) < std::abs(fz))) break;
      z = next;
      fz = fn;
    }
    return ZeroWitness{z, w0, std::abs(fz), options.multiplicity, options.multiplicity, scale};
  };

  Complex z = guess;
  double prev_step = 0.0;
  int linear_run = 0;
  for (int it = 0; it <= options.max_iterations; ++it) {
    const Jet j = k.jet(z, w0, 1, 0);
    const Complex fz = j(0, 0);
    if (std::abs(fz) <= tol) return accept(z, fz);
    if (it == options.max_iterations) break;
    const Complex df = j(1, 0);
    if (!usable(df))
      fail(ErrorKind::NoConvergence, fmt::format("vanishing derivative at ({}, {})", z.real(), z.imag()));
    Complex step = m * fz / df;
    Complex next = z - step;
    for (int damp = 0; damp < 30 && !k.domain().contains(next); ++damp) {
      step *= 0.5;
      next = z - step;
    }
    if (!k.domain().contains(next)) fail(ErrorKind::NoConvergence, "Newton iterate left the domain");
    const double s = std::abs(step);
    if (options.multiplicity == 1 && it >= 3 && prev_step > 0.0) {
      const double ratio = s / prev_step;
      linear_run = (ratio > 0.3 && ratio < 0.8) ? linear_run + 1 : 0;
      if (linear_run >= 5)
        fail(ErrorKind::MultipleZeroSuspected,
             fmt::format("Newton converges linearly near ({}, {})", z.real(), z.imag()));
    }
    prev_step = s;
    z = next;
    if (s <= 1e-16 * (1.0 + std::abs(z))) {
      const Complex fz2 = k(z, w0);
      if (std::abs(fz2) <= tol) return accept(z, fz2);
      fail(ErrorKind::NoConvergence,
           fmt::format("Newton stalled with residual {:.3g} (scale {:.3g})", std::abs(fz2), scale));
    }
  }
  fail(ErrorKind::NoConvergence,
       fmt::format("no convergence after {} Newton iterations", options.max_iterations));
}

int zero_order(const KernelExpr& k, Complex z0, Complex c, SliceVariable variable) {
  k.check_point(z0, "z0");
  k.check_point(c, "c");
  const Complex center = variable == SliceVariable::InZ ? z0 : c;
  if (k.domain().depth(center) <= 2.0 * kOrderRadius)
    fail(ErrorKind::BoundaryTooClose, "order circle leaves the domain");

  // In the w variable the slice is holomorphic in u = conj(w); the circle
  // u = conj(c) + rho e^{it} is w = c + rho e^{-it}.
  const Path f = variable == SliceVariable::InZ
                     ? Path([&](double t) { return k(z0 + std::polar(kOrderRadius, t), c); })
                     : Path([&](double t) { return k(z0, c + std::polar(kOrderRadius, -t)); });
  std::vector<double> mags;
  const auto w = winding_of(arg_increment(f, 0.0, kTwoPi, 256, &mags));
  if (!w) fail(ErrorKind::InconsistentOrder, "winding on the order circle is not an integer");
  if (*w <= 0) fail(ErrorKind::NotAZero, "the slice does not vanish at the test point");
  const int m = *w;
  const double scale = *std::max_element(mags.begin(), mags.end());

  const Jet j = variable == SliceVariable::InZ ? k.jet(z0, c, m, 0) : k.jet(z0, c, 0, m);
  int vanishing = 0;
  for (int i = 0; i <= m; ++i) {
    const Complex a = variable == SliceVariable::InZ ? j(i, 0) : j(0, i);
    if (std::abs(a) * std::pow(kOrderRadius, i) > 1e-6 * scale) break;
    ++vanishing;
  }
  if (vanishing != m)
    fail(ErrorKind::InconsistentOrder,
         fmt::format("winding gives order {} but {} leading coefficients vanish", m, vanishing));
  return m;
}

double normalized_magnitude(const KernelExpr& k, Complex z, Complex w) {
  return std::abs(k(z, w)) / cs_scale(k, z, w);
}

TransferReport zero_transfer_report(const KernelExpr& k_phi, Complex c, Complex z0, Complex w0,
                                    double zero_tol, double identity_tol) {
  if (same_point(c, z0) || same_point(c, w0) || same_point(z0, w0))
    fail(ErrorKind::HypothesisUnmet, "c, z0 and w0 must be distinct");
  for (const auto& p : k_phi.weight_centers())
    if (same_point(p, c))
      fail(ErrorKind::HypothesisUnmet,
           fmt::format("c = ({}, {}) coincides with a weight center", c.real(), c.imag()));

  TransferReport r;
  r.c = c;
  r.z0 = z0;
  r.w0 = w0;
  const KernelExpr aug = zero_augment(k_phi, c);
  r.k_zw = k_phi(z0, w0);
  r.k_zc = k_phi(z0, c);
  r.k_cw = k_phi(c, w0);
  r.k_aug_zw = aug(z0, w0);

  const double d_z = std::abs(k_phi(z0, z0)), d_w = std::abs(k_phi(w0, w0));
  const double d_c = std::abs(k_phi(c, c));
  const double aug_scale = std::sqrt(std::abs(aug(z0, z0)) * std::abs(aug(w0, w0)));
  r.phi_vanishes = std::abs(r.k_zw) <= zero_tol * std::sqrt(d_z * d_w);
  r.cross_vanishes = std::abs(r.k_zc) <= zero_tol * std::sqrt(d_z * d_c) ||
                     std::abs(r.k_cw) <= zero_tol * std::sqrt(d_c * d_w);
  r.aug_vanishes = std::abs(r.k_aug_zw) <= zero_tol * aug_scale;
  r.biconditional_holds = !r.aug_vanishes || (r.phi_vanishes == r.cross_vanishes);

  if (r.cross_vanishes) {
    const Complex expected = r.k_zw / ((z0 - c) * (std::conj(w0) - std::conj(c)));
    const double denom =
        std::max({std::abs(expected), std::abs(r.k_aug_zw), zero_tol * aug_scale});
    r.ratio_identity_error = std::abs(r.k_aug_zw - expected) / denom;
    r.ratio_identity_holds = r.ratio_identity_error <= identity_tol;
  }
  return r;
}

bool RatioTrace::decays(std::size_t tail) const {
  if (values.size() < 2) return false;
  if (!(values.back() < values.front())) return false;
  const std::size_t n = values.size();
  for (std::size_t i = n > tail ? n - tail : 1; i < n; ++i)
    if (values[i] > values[i - 1]) return false;
  return true;
}

RatioTrace boundary_ratio(const KernelExpr& k, Complex z, const std::vector<Complex>& centers) {
  k.check_point(z, "z");
  RatioTrace t;
  t.centers = centers;
  t.values.resize(centers.size());
  t.boundary_distance.resize(centers.size());
  for (std::size_t j = 0; j < centers.size(); ++j) {
    const Complex c = centers[j];
    k.check_point(c, "center");
    const double diag = k(c, c).real();
    if (!(diag > 0.0))
      fail(ErrorKind::DegenerateCenter,
           fmt::format("K(c, c) = {} is not positive at center {}", diag, j));
    t.values[j] = std::abs(k(z, c)) / std::sqrt(diag);
    t.boundary_distance[j] = k.domain().depth(c);
  }
  return t;
}

std::vector<Complex> radial_centers(Complex direction, int j_first, int j_last) {
  require_finite(direction, "direction");
  if (std::abs(direction) == 0.0) fail(ErrorKind::InvalidArgument, "direction must be nonzero");
  const Complex u = direction / std::abs(direction);
  std::vector<Complex> out;
  for (int j = j_first; j <= j_last; ++j) out.push_back((1.0 - std::ldexp(1.0, -j)) * u);
  return out;
}

TrackResult track_zero_near_boundary(const KernelExpr& k_phi, const ZeroWitness& witness,
                                     const std::vector<Complex>& centers,
                                     const TrackOptions& options) {
  const Complex z0 = witness.z, w0 = witness.w;
  k_phi.check_point(z0, "z0");
  k_phi.check_point(w0, "w0");
  if (centers.size() < 2) fail(ErrorKind::TrackingFailed, "need at least two centers");

  std::vector<double> alpha(centers.size());
  for (std::size_t j = 0; j < centers.size(); ++j) {
    k_phi.check_point(centers[j], "center");
    alpha[j] = std::abs(k_phi(centers[j], w0) / k_phi(centers[j], centers[j]));
  }
  if (!(alpha.back() < alpha.front()))
    fail(ErrorKind::TrackingFailed,
         fmt::format("|K(c_j, w0) / K(c_j, c_j)| does not decay along the centers "
                     "({:.3g} -> {:.3g})",
                     alpha.front(), alpha.back()));

  const Slice fw = [&](Complex z) { return k_phi(z, w0); };
  double radius = options.initial_radius > 0.0 ? options.initial_radius
                                               : 0.5 * k_phi.domain().depth(z0);
  // Shrink until the ball isolates z0 as the only zero of K(., w0).
  for (int i = 0;; ++i) {
    const auto w = winding_of(circle_increment(fw, z0, radius, options.circle_samples, nullptr));
    if (w && *w == 1) break;
    if (i == 20) fail(ErrorKind::TrackingFailed, "no ball about z0 isolates a simple zero");
    radius *= 0.5;
  }

  TrackResult result;
  for (std::size_t j = 0; j < centers.size(); ++j) {
    const Complex c = centers[j];
    const int idx = static_cast<int>(j);
    if (std::abs(c - z0) <= 2.0 * radius) {
      result.deferred.push_back({idx, "center meets the ball"});
      continue;
    }
    const double kcc = k_phi(c, c).real();
    double min_sep = std::numeric_limits<double>::infinity();
    double min_g = std::numeric_limits<double>::infinity();
    const int n = options.circle_samples;
    for (int s = 0; s < n; ++s) {
      const Complex z = z0 + std::polar(radius, kTwoPi * s / n);
      const Complex kz_c = k_phi(z, c);
      min_sep = std::min(min_sep, std::abs(kz_c) / std::sqrt(std::abs(k_phi(z, z)) * kcc));
      min_g = std::min(min_g, std::abs(k_phi(z, w0) / kz_c));
    }
    if (!(min_sep > options.separation_tol)) {
      result.deferred.push_back({idx, "K(z, c) not bounded away from 0 on the ball boundary"});
      continue;
    }
    const Slice fc = [&](Complex z) { return k_phi(z, c); };
    const auto wc = winding_of(circle_increment(fc, z0, radius, n, nullptr));
    if (!wc || *wc != 0) {
      result.deferred.push_back({idx, "K(z, c) vanishes inside the ball"});
      continue;
    }
    if (!(alpha[j] < min_g)) {
      result.deferred.push_back(
          {idx, fmt::format("Rouche condition unmet: {:.3g} >= {:.3g}", alpha[j], min_g)});
      continue;
    }

    const KernelExpr aug = zero_augment(k_phi, c);
    ZeroWitness z1;
    try {
      z1 = refine_zero(aug, z0, w0);
    } catch (const Error& e) {
      fail(ErrorKind::TrackingFailed, fmt::format("center {}: {}", idx, e.what()));
    }
    const double dist = std::abs(z1.z - z0);
    if (!(dist < radius))
      fail(ErrorKind::TrackingFailed,
           fmt::format("center {}: refined zero at distance {:.3g} left the ball of radius {:.3g}",
                       idx, dist, radius));
    result.steps.push_back({idx, c, z1.z, dist, radius, alpha[j], min_g});
    radius *= 0.5;
  }
  if (result.steps.empty())
    fail(ErrorKind::TrackingFailed, "no center satisfied the ball conditions");
  return result;
}

LuQikengStatus lu_qikeng_status(const KernelExpr& k, const GridSpec& z_grid,
                                const GridSpec& w_grid, const ScanOptions& options) {
  z_grid.validate();
  w_grid.validate();
  LuQikengStatus status;
  status.resolution = z_grid.resolution;
  for (int j = 0; j < w_grid.resolution; ++j)
    for (int i = 0; i < w_grid.resolution; ++i) {
      const Complex w0 = w_grid.cell_center(i, j);
      if (!k.domain().contains(w0) || k.domain().depth(w0) < options.boundary_margin) continue;
      ++status.slices_scanned;
      const auto scan = scan_slice_zeros(k, w0, z_grid, options);
      if (!scan.witnesses.empty()) {
        status.zero_found = true;
        status.witness = scan.witnesses.front();
        return status;
      }
    }
  return status;
}

}  // namespace bergman
