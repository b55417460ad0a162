#include "bergman/base_kernels.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;

using LD = long double;
using CLD = std::complex<LD>;
using LSeries = series::Coeffs<LD>;

void require_disk_point(Complex p, const char* what) {
  require_finite(p, what);
  if (!(std::abs(p) < 1.0))
    fail(ErrorKind::DomainViolation,
         fmt::format("{} ({}, {}) is not in the unit disk", what, p.real(), p.imag()));
}

// Taylor coefficients in t of (A - B t) / (pi * s * (1 - t)^2) about t0.
Series radial_taylor(double alpha, double scale, Complex t0, int order) {
  const double A = 1.0 + alpha / 2.0, B = alpha / 2.0;
  Series num{Complex(A) - B * t0, Complex(-B)};
  Series den{1.0 - t0, -1.0};
  auto f = series::mul(num, series::pow(den, -2, order), order);
  for (auto& c : f) c /= kPi * scale;
  return f;
}

// sum_{m>=M} (b + m) q^m
LD weighted_geometric_tail(LD b, LD q, int M) {
  const LD qm = std::pow(q, static_cast<LD>(M));
  return qm * ((b + M) / (1 - q) + q / ((1 - q) * (1 - q)));
}

// 1 - r^{2x} computed without cancellation.
LD one_minus_rpow(LD log_r, LD x) { return -std::expm1(2 * x * log_r); }

LD series_abs0(const LSeries& s) { return std::abs(s[0]); }

}  // namespace

// ---------------------------------------------------------------------------
// Closed forms

Complex disk_kernel(Complex z, Complex w) {
  require_disk_point(z, "z");
  require_disk_point(w, "w");
  const Complex d = 1.0 - z * std::conj(w);
  return 1.0 / (kPi * d * d);
}

Complex disk_radial_kernel(double alpha, Complex z, Complex w) {
  if (!(alpha > -2.0))
    fail(ErrorKind::AlphaOutOfRange, fmt::format("alpha {} must exceed -2", alpha));
  const Complex t = z * std::conj(w);
  return (1.0 + alpha / 2.0 - alpha / 2.0 * t) * disk_kernel(z, w);
}

Complex disk_mobius_power_kernel(Complex c, int p, Complex z, Complex w) {
  require_disk_point(c, "c");
  if (p < 1) fail(ErrorKind::InvalidArgument, "power p must be a positive integer");
  const Complex k = disk_kernel(z, w);
  const Complex mz = (z - c) / (1.0 - std::conj(c) * z);
  const Complex mw = (w - c) / (1.0 - std::conj(c) * w);
  const Complex dz = std::pow(1.0 - std::conj(c) * z, p);
  const Complex dw = std::pow(1.0 - c * std::conj(w), p);
  return (static_cast<double>(p + 1) - static_cast<double>(p) * mz * std::conj(mw)) * k /
         (dz * dw);
}

// ---------------------------------------------------------------------------
// Annulus series
//
// ||z^n||^2 = pi (1 - r^{2b}) / b with b = n + 1 + alpha/2 (2 pi log(1/r) when
// b = 0). For b > 0, 1/||z^n||^2 = b/pi + b r^{2b} / (pi (1 - r^{2b})); for
// b = -g < 0 it is g r^{2g}/pi + g r^{4g} / (pi (1 - r^{2g})). The first
// parts sum in closed form and carry the boundary singularities; the
// remainders decay like (r^2 |t|)^n and (r^4 / |t|)^n.

namespace {

// Order-0 case of annulus_taylor without series arithmetic. Powers of r are
// carried by recurrence, so the loop has no transcendental calls.
AnnulusTaylor annulus_value(LD r2, LD log_r, LD b0, LD g1, int n0, int n1, bool has_log,
                            LD nearest, CLD t, int n_max) {
  constexpr LD pi = std::numbers::pi_v<LD>;
  const CLD inv_t = CLD(1) / t;
  const CLD one_minus_t = CLD(1) - t;
  CLD total = std::pow(t, n0) * (t / (one_minus_t * one_minus_t) + b0 / one_minus_t) / pi;
  LD magnitude = std::abs(total);
  {
    const CLD s = r2 * inv_t;
    const CLD one_minus_s = CLD(1) - s;
    const CLD part = std::exp(2 * g1 * log_r) * std::pow(t, n1) *
                     (s / (one_minus_s * one_minus_s) + g1 / one_minus_s) / pi;
    total += part;
    magnitude += std::abs(part);
  }
  if (has_log) {
    const CLD part = std::pow(t, static_cast<int>(nearest)) / (2 * pi * -log_r);
    total += part;
    magnitude += std::abs(part);
  }

  const LD abs_t = std::abs(t);
  const LD q = r2 * abs_t, u = r2 * r2 / abs_t;
  CLD pos_pow = std::pow(t, n0), neg_pow = std::pow(t, n1);
  LD pos_r = std::exp(2 * b0 * log_r), neg_r = std::exp(4 * g1 * log_r);  // r^{2 b}, r^{4 g}
  LD rb = std::exp(2 * b0 * log_r), rg = std::exp(2 * g1 * log_r);          // r^{2 bm}, r^{2 gm}
  const LD pos_pref = pos_r * std::pow(abs_t, static_cast<LD>(n0)) / pi;
  const LD neg_pref = neg_r * std::pow(abs_t, static_cast<LD>(n1)) / pi;
  auto one_minus = [&](LD x, LD exponent) {
    return x < 0.5L ? 1 - x : one_minus_rpow(log_r, exponent);
  };
  LD qm = 1, um = 1, tail = 0;
  int m = 0;
  for (;; ++m) {
    const LD bm = b0 + m, gm = g1 + m;
    const LD dp = one_minus(rb, bm), dn = one_minus(rg, gm);
    tail = pos_pref * qm * ((b0 + m) / (1 - q) + q / ((1 - q) * (1 - q))) / dp +
           neg_pref * um * ((g1 + m) / (1 - u) + u / ((1 - u) * (1 - u))) / dn;
    if (m >= n_max || tail <= 1e-21L * magnitude) break;
    const CLD term = bm * pos_r / (dp * pi) * pos_pow + gm * neg_r / (dn * pi) * neg_pow;
    total += term;
    magnitude += std::abs(term);
    pos_pow *= t;
    neg_pow *= inv_t;
    pos_r *= r2;
    neg_r *= r2 * r2;
    rb *= r2;
    rg *= r2;
    qm *= q;
    um *= u;
  }
  AnnulusTaylor out;
  out.coeffs = {Complex(static_cast<double>(total.real()), static_cast<double>(total.imag()))};
  out.tail_bound = static_cast<double>(tail);
  out.magnitude = static_cast<double>(magnitude);
  out.terms = m;
  return out;
}

}  // namespace

AnnulusTaylor annulus_taylor(double r, double alpha, Complex t0_in, int order,
                             int n_max) {
  const LD a = 1.0L + static_cast<LD>(alpha) / 2.0L;
  const LD log_r = std::log(static_cast<LD>(r));
  const LD r2 = static_cast<LD>(r) * r;
  const CLD t0(t0_in.real(), t0_in.imag());
  const LD abs_t = std::abs(t0);

  // Index of a vanishing b (the logarithmic norm), if any.
  const LD minus_a = -a;
  const LD nearest = std::round(minus_a);
  const bool has_log = std::abs(nearest - minus_a) < 1e-12L;
  int n0, n1;
  if (has_log) {
    n0 = static_cast<int>(nearest) + 1;
    n1 = static_cast<int>(nearest) - 1;
  } else {
    n0 = static_cast<int>(std::floor(minus_a)) + 1;
    n1 = n0 - 1;
  }
  const LD b0 = n0 + a;     // > 0
  const LD g1 = -(n1 + a);  // > 0

  if (order == 0) return annulus_value(r2, log_r, b0, g1, n0, n1, has_log, nearest, t0, n_max);

  const LSeries T = series::linear<LD>(t0, order);
  const LSeries one_minus_T{CLD(1) - t0, CLD(-1)};
  LSeries inv1mT = series::reciprocal(one_minus_T, order);
  LSeries inv1mT2 = series::mul(inv1mT, inv1mT, order);

  LSeries total(static_cast<std::size_t>(order) + 1, CLD(0));
  LD magnitude = 0;
  auto accumulate = [&](const LSeries& s) {
    for (int k = 0; k <= order; ++k) total[k] += s[k];
    magnitude += series_abs0(s);
  };

  // sum_{n >= n0} (n + a) t^n / pi = t^{n0} [t/(1-t)^2 + b0/(1-t)] / pi
  {
    LSeries inner = series::mul(T, inv1mT2, order);
    for (int k = 0; k <= order; ++k) inner[k] += b0 * inv1mT[k];
    LSeries s = series::mul(series::pow(T, n0, order), inner, order);
    for (auto& x : s) x /= std::numbers::pi_v<LD>;
    accumulate(s);
  }
  // sum_{n <= n1} g r^{2g} t^n / pi with S = r^2/t:
  //   r^{2 g1} t^{n1} [S/(1-S)^2 + g1/(1-S)] / pi
  const LSeries invT = series::reciprocal(T, order);
  {
    LSeries S = invT;
    for (auto& x : S) x *= r2;
    LSeries one_minus_S = S;
    for (auto& x : one_minus_S) x = -x;
    one_minus_S[0] += 1;
    LSeries inv1mS = series::reciprocal(one_minus_S, order);
    LSeries inner = series::mul(S, series::mul(inv1mS, inv1mS, order), order);
    for (int k = 0; k <= order; ++k) inner[k] += g1 * inv1mS[k];
    LSeries s = series::mul(series::pow(T, n1, order), inner, order);
    const LD pref = std::exp(2 * g1 * log_r) / std::numbers::pi_v<LD>;
    for (auto& x : s) x *= pref;
    accumulate(s);
  }
  if (has_log) {
    LSeries s = series::pow(T, static_cast<int>(nearest), order);
    const LD h = 2 * std::numbers::pi_v<LD> * (-log_r);
    for (auto& x : s) x /= h;
    accumulate(s);
  }

  // Remainders, summed until their tail bound drops below long-double noise.
  LSeries pos_pow = series::pow(T, n0, order);
  LSeries neg_pow = series::pow(T, n1, order);
  const LD q = r2 * abs_t;
  const LD u = r2 * r2 / abs_t;
  const LD pos_pref = std::exp(2 * b0 * log_r) * std::pow(abs_t, static_cast<LD>(n0)) /
                      std::numbers::pi_v<LD>;
  const LD neg_pref = std::exp(4 * g1 * log_r) * std::pow(abs_t, static_cast<LD>(n1)) /
                      std::numbers::pi_v<LD>;
  LD tail = 0;
  int m = 0;
  for (;; ++m) {
    const LD bm = b0 + m, gm = g1 + m;
    tail = pos_pref * weighted_geometric_tail(b0, q, m) / one_minus_rpow(log_r, bm) +
           neg_pref * weighted_geometric_tail(g1, u, m) / one_minus_rpow(log_r, gm);
    if (m >= n_max || tail <= 1e-21L * magnitude) break;
    const LD cp = bm * std::exp(2 * bm * log_r) / (one_minus_rpow(log_r, bm) *
                                                    std::numbers::pi_v<LD>);
    const LD cn = gm * std::exp(4 * gm * log_r) / (one_minus_rpow(log_r, gm) *
                                                    std::numbers::pi_v<LD>);
    for (int k = 0; k <= order; ++k) total[k] += cp * pos_pow[k] + cn * neg_pow[k];
    magnitude += std::abs(cp * pos_pow[0]) + std::abs(cn * neg_pow[0]);
    pos_pow = series::mul(pos_pow, T, order);
    neg_pow = series::mul(neg_pow, invT, order);
  }

  AnnulusTaylor out;
  out.coeffs.resize(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k)
    out.coeffs[k] = Complex(static_cast<double>(total[k].real()),
                            static_cast<double>(total[k].imag()));
  out.tail_bound = static_cast<double>(tail);
  out.magnitude = static_cast<double>(magnitude);
  out.terms = m;
  return out;
}

namespace {

void require_annulus_point(double r, Complex p, const char* what) {
  require_finite(p, what);
  const double m = std::abs(p);
  if (!(m > r && m < 1.0))
    fail(ErrorKind::DomainViolation,
         fmt::format("{} ({}, {}) is not in the annulus {} < |z| < 1", what, p.real(),
                     p.imag(), r));
}

}  // namespace

SeriesValue annulus_kernel(double r, Complex z, Complex w, SeriesTruncation& trunc,
                           double alpha) {
  if (!(r > 0.0 && r < 1.0))
    fail(ErrorKind::InvalidDomain, "annulus inner radius must lie in (0, 1)");
  if (!(alpha > -2.0)) fail(ErrorKind::AlphaOutOfRange, "alpha must exceed -2");
  require_annulus_point(r, z, "z");
  require_annulus_point(r, w, "w");
  const auto t = annulus_taylor(r, alpha, z * std::conj(w), 0, trunc.n_max);
  trunc.tail_bound = t.tail_bound;
  if (t.tail_bound > AnnulusOptions{}.tolerance * t.magnitude)
    fail(ErrorKind::TruncationTooSmall,
         fmt::format("annulus tail bound {:.3g} exceeds tolerance at n_max = {}",
                     t.tail_bound, trunc.n_max));
  return {t.coeffs[0], t.tail_bound, t.magnitude, t.terms};
}

SeriesValue annulus_series_plain(double r, Complex z, Complex w, int n_max,
                                 double alpha) {
  const LD a = 1.0L + static_cast<LD>(alpha) / 2.0L;
  const LD log_r = std::log(static_cast<LD>(r));
  const CLD t(z.real() * static_cast<LD>(w.real()) + z.imag() * static_cast<LD>(w.imag()),
              z.imag() * static_cast<LD>(w.real()) - z.real() * static_cast<LD>(w.imag()));
  const LD pi = std::numbers::pi_v<LD>;
  auto inv_norm = [&](int n) -> LD {
    const LD b = n + a;
    if (std::abs(b) < 1e-12L) return 1 / (2 * pi * -log_r);
    return b / (pi * one_minus_rpow(log_r, b));
  };
  CLD sum = 0;
  LD magnitude = 0;
  CLD tp = 1;
  for (int n = 0; n <= n_max; ++n) {
    const CLD term = tp * inv_norm(n);
    sum += term;
    magnitude += std::abs(term);
    tp *= t;
  }
  const CLD it = CLD(1) / t;
  tp = it;
  for (int n = -1; n >= -n_max; --n) {
    const CLD term = tp * inv_norm(n);
    sum += term;
    magnitude += std::abs(term);
    tp *= it;
  }
  // Tails: n > N uses b/(pi (1 - r^{2b})) <= (n + a) / (pi (1 - r^{2 b_{N+1}}));
  // n < -N uses g r^{2g}/(pi (1 - r^{2g})) with g = -(n + a).
  const LD abs_t = std::abs(t);
  const int N = n_max;
  LD tail = std::pow(abs_t, static_cast<LD>(N + 1)) *
            weighted_geometric_tail(N + 1 + a, abs_t, 0) /
            (pi * one_minus_rpow(log_r, N + 1 + a));
  const LD g0 = N + 1 - a;
  if (g0 > 0) {
    const LD s = static_cast<LD>(r) * r / abs_t;
    tail += std::exp(2 * g0 * log_r) * std::pow(abs_t, static_cast<LD>(-N - 1)) *
            weighted_geometric_tail(g0, s, 0) / (pi * one_minus_rpow(log_r, g0));
  } else {
    tail = std::numeric_limits<LD>::infinity();
  }
  return {Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag())),
          static_cast<double>(tail), static_cast<double>(magnitude), 2 * n_max + 1};
}

// ---------------------------------------------------------------------------
// Expression nodes

namespace {

std::string conj_w(FormulaFormat f) {
  return f == FormulaFormat::LaTeX ? "\\overline{w}" : "conj(w)";
}

class DiskRadialNode final : public KernelNode {
 public:
  DiskRadialNode(double scale, double alpha) : scale_(scale), alpha_(alpha) {}

  NodeKind kind() const override { return NodeKind::Base; }

  Jet jet(Complex z0, Complex u0, int pz, int pw) const override {
    const auto f = radial_taylor(alpha_, scale_, z0 * u0, pz + pw);
    return compose(f, product_offset(z0, u0, pz, pw));
  }

  Complex naive(Complex z, Complex u) const override {
    const Complex t = z * u;
    return (1.0 + alpha_ / 2.0 - alpha_ / 2.0 * t) / (kPi * scale_ * (1.0 - t) * (1.0 - t));
  }

  std::string formula(const FormulaNames& names) const override {
    const auto f = names.format();
    const std::string pi_part =
        scale_ == 1.0 ? (f == FormulaFormat::LaTeX ? std::string("\\pi") : std::string("pi"))
                      : (f == FormulaFormat::LaTeX ? fmt::format("{:.10g}\\pi", scale_)
                                                   : fmt::format("{:.10g}*pi", scale_));
    if (f == FormulaFormat::LaTeX) {
      const std::string num =
          alpha_ == 0.0 ? std::string("1")
                        : fmt::format("{:.10g}-{:.10g}z\\overline{{w}}", 1.0 + alpha_ / 2.0,
                                      alpha_ / 2.0);
      return fmt::format("\\frac{{{}}}{{{}(1-z\\overline{{w}})^{{2}}}}", num, pi_part);
    }
    const std::string num =
        alpha_ == 0.0 ? std::string("1")
                      : fmt::format("({:.10g}-{:.10g}*z*conj(w))", 1.0 + alpha_ / 2.0,
                                    alpha_ / 2.0);
    return fmt::format("{}/({}*(1-z*conj(w))^2)", num, pi_part);
  }

 private:
  double scale_;
  double alpha_;
};

class AnnulusNode final : public KernelNode {
 public:
  AnnulusNode(double r, double scale, double alpha, AnnulusOptions options)
      : r_(r), scale_(scale), alpha_(alpha), options_(options) {}

  NodeKind kind() const override { return NodeKind::Base; }

  Jet jet(Complex z0, Complex u0, int pz, int pw) const override {
    auto f = taylor(z0 * u0, pz + pw);
    return compose(f, product_offset(z0, u0, pz, pw));
  }

  Complex naive(Complex z, Complex u) const override { return taylor(z * u, 0)[0]; }

  std::string formula(const FormulaNames& names) const override {
    const auto f = names.format();
    const std::string b = alpha_ == 0.0 ? std::string("n+1")
                                        : fmt::format("n+1+{:.10g}", alpha_ / 2.0);
    const std::string scale =
        scale_ == 1.0 ? std::string() : fmt::format("{:.10g}", scale_);
    if (f == FormulaFormat::LaTeX)
      return fmt::format(
          "\\frac{{1}}{{{}}}\\sum_{{n\\in\\mathbb{{Z}}}} \\frac{{({})(z{})^{{n}}}}"
          "{{\\pi(1-{:.10g}^{{2({})}})}}",
          scale.empty() ? "1" : scale, b, conj_w(f), r_, b);
    return fmt::format("{}sum_{{n in Z}} ({})*(z*conj(w))^n/(pi*(1-{:.10g}^(2*({}))))",
                       scale.empty() ? "" : "(1/" + scale + ")*", b, r_, b);
  }

 private:
  Series taylor(Complex t0, int order) const {
    auto t = annulus_taylor(r_, alpha_, t0, order, options_.n_max);
    if (t.tail_bound > options_.tolerance * t.magnitude)
      fail(ErrorKind::TruncationTooSmall,
           fmt::format("annulus tail bound {:.3g} above tolerance at n_max = {}",
                       t.tail_bound, options_.n_max));
    for (auto& c : t.coeffs) c /= scale_;
    return t.coeffs;
  }

  double r_;
  double scale_;
  double alpha_;
  AnnulusOptions options_;
};

class MobiusPowerNode final : public KernelNode {
 public:
  MobiusPowerNode(Complex c, int p) : c_(c), p_(p) {}

  NodeKind kind() const override { return NodeKind::Base; }

  Jet jet(Complex z0, Complex u0, int pz, int pw) const override {
    const Complex cb = std::conj(c_);
    const Series den_z{1.0 - cb * z0, -cb};
    const Series den_u{1.0 - c_ * u0, -c_};
    const Series mu_z = series::mul(Series{z0 - c_, 1.0}, series::reciprocal(den_z, pz), pz);
    const Series mu_u = series::mul(Series{u0 - cb, 1.0}, series::reciprocal(den_u, pw), pw);
    Jet factor = Jet::outer(mu_z, mu_u, pz, pw) * Complex(-p_);
    factor(0, 0) += static_cast<double>(p_ + 1);
    const Jet k = compose(radial_taylor(0.0, 1.0, z0 * u0, pz + pw),
                          product_offset(z0, u0, pz, pw));
    Jet out = factor * k;
    out = out.mul_z(series::pow(den_z, -p_, pz));
    return out.mul_w(series::pow(den_u, -p_, pw));
  }

  Complex naive(Complex z, Complex u) const override {
    const Complex cb = std::conj(c_);
    const Complex mz = (z - c_) / (1.0 - cb * z);
    const Complex mu = (u - cb) / (1.0 - c_ * u);
    const Complex t = z * u;
    return (static_cast<double>(p_ + 1) - static_cast<double>(p_) * mz * mu) /
           (kPi * (1.0 - t) * (1.0 - t) * std::pow(1.0 - cb * z, p_) *
            std::pow(1.0 - c_ * u, p_));
  }

  std::vector<Complex> own_weight_centers() const override { return {c_}; }

  std::string formula(const FormulaNames& names) const override {
    const auto f = names.format();
    const auto c = format_number(c_, f);
    const auto cb = format_number(std::conj(c_), f);
    if (f == FormulaFormat::LaTeX)
      return fmt::format(
          "\\frac{{{}-{}\\mu(z)\\overline{{\\mu(w)}}}}{{\\pi(1-z\\overline{{w}})^{{2}}"
          "(1-{}z)^{{{}}}(1-{}\\overline{{w}})^{{{}}}}},\\quad \\mu(z)=\\frac{{z-{}}}{{1-{}z}}",
          p_ + 1, p_, cb, p_, c, p_, c, cb);
    return fmt::format(
        "({}-{}*mu(z)*conj(mu(w)))/(pi*(1-z*conj(w))^2*(1-{}*z)^{}*(1-{}*conj(w))^{}), "
        "mu(z)=(z-{})/(1-{}*z)",
        p_ + 1, p_, cb, p_, c, p_, c, cb);
  }

 private:
  Complex c_;
  int p_;
};

class TransportNode final : public KernelNode {
 public:
  TransportNode(std::shared_ptr<const KernelNode> inner, DiskAutomorphism map)
      : inner_(std::move(inner)), map_(map), conj_map_(map.conjugate_map()) {}

  NodeKind kind() const override { return NodeKind::Transport; }

  Jet jet(Complex z0, Complex u0, int pz, int pw) const override {
    const Jet g = inner_->jet(map_(z0), conj_map_(u0), pz, pw);
    const Series d1 = map_.offset_series(z0, pz);
    const Series d2 = conj_map_.offset_series(u0, pw);
    std::vector<Series> p1(static_cast<std::size_t>(pz) + 1), p2(static_cast<std::size_t>(pw) + 1);
    p1[0] = Series(static_cast<std::size_t>(pz) + 1, 0.0);
    p1[0][0] = 1.0;
    for (int i = 1; i <= pz; ++i) p1[i] = series::mul(p1[i - 1], d1, pz);
    p2[0] = Series(static_cast<std::size_t>(pw) + 1, 0.0);
    p2[0][0] = 1.0;
    for (int j = 1; j <= pw; ++j) p2[j] = series::mul(p2[j - 1], d2, pw);
    Jet out(pz, pw);
    for (int i = 0; i <= pz; ++i)
      for (int j = 0; j <= pw; ++j) {
        const Complex gij = g(i, j);
        if (gij == Complex(0.0)) continue;
        for (int a = i; a <= pz; ++a)
          for (int b = j; b <= pw; ++b) out(a, b) += gij * p1[i][a] * p2[j][b];
      }
    out = out.mul_z(map_.derivative_series(z0, pz));
    return out.mul_w(conj_map_.derivative_series(u0, pw));
  }

  Complex naive(Complex z, Complex u) const override {
    return map_.derivative(z) * inner_->naive(map_(z), conj_map_(u)) *
           conj_map_.derivative(u);
  }

  std::vector<const KernelNode*> children() const override { return {inner_.get()}; }

  std::string formula(const FormulaNames& names) const override {
    const auto f = names.format();
    const auto a = format_number(map_.a(), f);
    const auto ab = format_number(std::conj(map_.a()), f);
    const std::string inner = names.call(inner_.get(), "f(z)", "f(w)");
    if (f == FormulaFormat::LaTeX)
      return fmt::format(
          "f'(z)\\,{}\\,\\overline{{f'(w)}},\\quad f(z)=e^{{{:.10g}i}}\\frac{{z-{}}}{{1-{}z}}",
          inner, map_.theta(), a, ab);
    return fmt::format("f'(z)*{}*conj(f'(w)), f(z)=exp({:.10g}i)*(z-{})/(1-{}*z)", inner,
                       map_.theta(), a, ab);
  }

 private:
  std::shared_ptr<const KernelNode> inner_;
  DiskAutomorphism map_;
  DiskAutomorphism conj_map_;
};

}  // namespace

KernelExpr base_kernel_expr(const DomainSpec& domain, const BaseWeight& base,
                            const AnnulusOptions& options) {
  if (!(base.alpha > -2.0)) fail(ErrorKind::AlphaOutOfRange, "alpha must exceed -2");
  if (!(base.scale > 0.0)) fail(ErrorKind::InvalidWeight, "scale must be positive");
  if (domain.is_disk())
    return KernelExpr(std::make_shared<DiskRadialNode>(base.scale, base.alpha), domain);
  return KernelExpr(std::make_shared<AnnulusNode>(domain.inner_radius(), base.scale,
                                                  base.alpha, options),
                    domain);
}

KernelExpr disk_kernel_expr() {
  return base_kernel_expr(DomainSpec::unit_disk(), BaseWeight{});
}

KernelExpr disk_radial_kernel_expr(double alpha) {
  return base_kernel_expr(DomainSpec::unit_disk(), BaseWeight::radial(alpha));
}

KernelExpr disk_mobius_power_kernel_expr(Complex c, int p) {
  require_disk_point(c, "c");
  if (p < 1) fail(ErrorKind::InvalidArgument, "power p must be a positive integer");
  return KernelExpr(std::make_shared<MobiusPowerNode>(c, p), DomainSpec::unit_disk());
}

KernelExpr annulus_kernel_expr(double r, const AnnulusOptions& options) {
  return base_kernel_expr(DomainSpec::annulus(r), BaseWeight{}, options);
}

// ---------------------------------------------------------------------------
// Disk automorphisms

DiskAutomorphism::DiskAutomorphism(Complex a, double theta)
    : a_(a), theta_(theta), rot_(std::polar(1.0, theta)) {
  require_finite(a, "automorphism parameter");
  if (!(std::abs(a) < 1.0) || !std::isfinite(theta))
    fail(ErrorKind::InvalidAutomorphism,
         fmt::format("automorphism parameter |a| = {} must be < 1", std::abs(a)));
}

Complex DiskAutomorphism::operator()(Complex z) const {
  return rot_ * (z - a_) / (1.0 - std::conj(a_) * z);
}

Complex DiskAutomorphism::derivative(Complex z) const {
  const Complex d = 1.0 - std::conj(a_) * z;
  return rot_ * (1.0 - std::norm(a_)) / (d * d);
}

DiskAutomorphism DiskAutomorphism::inverse() const {
  return DiskAutomorphism(-a_ * rot_, -theta_);
}

DiskAutomorphism DiskAutomorphism::conjugate_map() const {
  return DiskAutomorphism(std::conj(a_), -theta_);
}

Series DiskAutomorphism::offset_series(Complex z0, int order) const {
  const Series den{1.0 - std::conj(a_) * z0, -std::conj(a_)};
  Series s = series::mul(Series{rot_ * (z0 - a_), rot_}, series::reciprocal(den, order),
                         order);
  s[0] = 0.0;
  return s;
}

Series DiskAutomorphism::derivative_series(Complex z0, int order) const {
  const Series den{1.0 - std::conj(a_) * z0, -std::conj(a_)};
  Series s = series::pow(den, -2, order);
  for (auto& x : s) x *= rot_ * (1.0 - std::norm(a_));
  return s;
}

KernelExpr biholomorphic_transport(const KernelExpr& k, const DiskAutomorphism& map) {
  if (!k.domain().is_disk() || !k.domain().punctures().empty())
    fail(ErrorKind::InvalidArgument, "transport requires an unpunctured disk kernel");
  return KernelExpr(std::make_shared<TransportNode>(k.node_ptr(), map), k.domain());
}

}  // namespace bergman
