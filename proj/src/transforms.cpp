#include "bergman/transforms.hpp"

#include <cmath>
#include <map>

#include <fmt/format.h>

#include "bergman/base_kernels.hpp"
#include "bergman/errors.hpp"

namespace bergman {

namespace {

// prod (x0 + h - c)^{sign * m} over the factors, truncated after h^order.
Series factor_series(const std::vector<Factor>& factors, Complex x0, int order,
                     int sign, bool conjugate_centers) {
  Series s(static_cast<std::size_t>(order) + 1, 0.0);
  s[0] = 1.0;
  for (const auto& f : factors) {
    const Complex c = conjugate_centers ? std::conj(f.center) : f.center;
    s = series::mul(s, series::pow(Series{x0 - c, 1.0}, sign * f.multiplicity, order),
                    order);
  }
  return s;
}

Complex factor_value(const std::vector<Factor>& factors, Complex x, bool conjugate_centers) {
  Complex v = 1.0;
  for (const auto& f : factors) {
    const Complex c = conjugate_centers ? std::conj(f.center) : f.center;
    v *= std::pow(x - c, f.multiplicity);
  }
  return v;
}

std::string factor_text(const std::vector<Factor>& factors, const std::string& var,
                        bool conjugate_centers, FormulaFormat format) {
  std::string out;
  const char* sep = format == FormulaFormat::LaTeX ? "" : "*";
  for (const auto& f : factors) {
    const Complex c = conjugate_centers ? std::conj(f.center) : f.center;
    std::string t = linear_factor(var, c, format);
    if (f.multiplicity > 1)
      t += format == FormulaFormat::LaTeX ? fmt::format("^{{{}}}", f.multiplicity)
                                          : fmt::format("^{}", f.multiplicity);
    if (!out.empty()) out += sep;
    out += t;
  }
  return out;
}

std::string wbar(FormulaFormat f) {
  return f == FormulaFormat::LaTeX ? "\\overline{w}" : "conj(w)";
}

std::string fraction(const std::string& num, const std::string& den, FormulaFormat f) {
  if (f == FormulaFormat::LaTeX) return fmt::format("\\frac{{{}}}{{{}}}", num, den);
  return fmt::format("{}/({})", num, den);
}

std::string product(const std::vector<std::string>& parts, FormulaFormat f) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += f == FormulaFormat::LaTeX ? " " : "*";
    out += p;
  }
  return out;
}

// ---------------------------------------------------------------------------

class RationalDivideNode final : public KernelNode {
 public:
  RationalDivideNode(std::shared_ptr<const KernelNode> inner, RationalFactors g)
      : inner_(std::move(inner)), g_(std::move(g)) {}

  const std::shared_ptr<const KernelNode>& inner() const { return inner_; }
  const RationalFactors& g() const { return g_; }

  NodeKind kind() const override { return NodeKind::RationalDivide; }

  Jet jet(Complex z0, Complex u0, int pz, int pw) const override {
    Series sz = series::mul(factor_series(g_.poles, z0, pz, 1, false),
                            factor_series(g_.zeros, z0, pz, -1, false), pz);
    Series su = series::mul(factor_series(g_.poles, u0, pw, 1, true),
                            factor_series(g_.zeros, u0, pw, -1, true), pw);
    const Complex s2 = 1.0 / std::norm(g_.scale);
    for (auto& x : sz) x *= s2;
    return inner_->jet(z0, u0, pz, pw).mul_z(sz).mul_w(su);
  }

  Complex naive(Complex z, Complex u) const override {
    const Complex gz = g_(z);
    const Complex gu = std::conj(g_.scale) * factor_value(g_.zeros, u, true) /
                       factor_value(g_.poles, u, true);
    return inner_->naive(z, u) / (gz * gu);
  }

  std::vector<const KernelNode*> children() const override { return {inner_.get()}; }

  std::vector<Complex> own_weight_centers() const override {
    std::vector<Complex> out;
    for (const auto& f : g_.zeros) out.push_back(f.center);
    for (const auto& f : g_.poles) out.push_back(f.center);
    return out;
  }

  std::string formula(const FormulaNames& names) const override {
    const auto f = names.format();
    std::string num = product({names.call(inner_.get(), "z", "w"),
                               factor_text(g_.poles, "z", false, f),
                               factor_text(g_.poles, wbar(f), true, f)},
                              f);
    const std::string scale =
        g_.scale == Complex(1.0) ? std::string() : fmt::format("{:.10g}", std::norm(g_.scale));
    const std::string den = product({scale, factor_text(g_.zeros, "z", false, f),
                                     factor_text(g_.zeros, wbar(f), true, f)},
                                    f);
    return den.empty() ? num : fraction(num, den, f);
  }

 private:
  std::shared_ptr<const KernelNode> inner_;
  RationalFactors g_;
};

// Re-expands a jet computed at a singular center onto a nearby point. Used
// when an evaluation point lies within kSingularEps of a center without
// being equal to it, where direct division would cancel catastrophically.
std::optional<Jet> near_center_jet(const KernelNode& node, const std::vector<Factor>& centers,
                                   Complex z0, Complex u0, int pz, int pw) {
  constexpr int kExtra = 2;
  for (const auto& f : centers) {
    const Complex d = z0 - f.center;
    if (d != Complex(0.0) && std::abs(d) < kSingularEps)
      return node.jet(f.center, u0, pz + kExtra, pw).recenter_z(d, pz);
  }
  for (const auto& f : centers) {
    const Complex d = u0 - std::conj(f.center);
    if (d != Complex(0.0) && std::abs(d) < kSingularEps)
      return node.jet(z0, std::conj(f.center), pz, pw + kExtra).recenter_w(d, pw);
  }
  return std::nullopt;
}

// Divides a numerator jet by p(z) conj(p(w)), shifting out factors whose
// center is the expansion point.
Jet divide_by_centers(Jet n, const std::vector<Factor>& centers, Complex z0, Complex u0,
                      int pz, int pw) {
  std::vector<Factor> rest_z, rest_w;
  for (const auto& f : centers) {
    if (f.center == z0)
      n = n.shift_z(f.multiplicity);
    else
      rest_z.push_back(f);
    if (std::conj(f.center) == u0)
      n = n.shift_w(f.multiplicity);
    else
      rest_w.push_back(f);
  }
  n = n.truncated(pz, pw);
  return n.mul_z(factor_series(rest_z, z0, pz, -1, false))
      .mul_w(factor_series(rest_w, u0, pw, -1, true));
}

int multiplicity_at(const std::vector<Factor>& centers, Complex x, bool conjugate) {
  for (const auto& f : centers)
    if ((conjugate ? std::conj(f.center) : f.center) == x) return f.multiplicity;
  return 0;
}

class RankOneDeflateNode final : public KernelNode {
 public:
  RankOneDeflateNode(std::shared_ptr<const KernelNode> inner, Complex c, Complex kcc)
      : inner_(std::move(inner)), c_(c), kcc_(kcc) {}

  NodeKind kind() const override { return NodeKind::RankOneDeflate; }

  Jet jet(Complex z0, Complex u0, int pz, int pw) const override {
    const std::vector<Factor> centers{{c_, 1}};
    if (auto j = near_center_jet(*this, centers, z0, u0, pz, pw)) return *j;
    const Complex cb = std::conj(c_);
    const int PZ = pz + (z0 == c_ ? 1 : 0);
    const int PW = pw + (u0 == cb ? 1 : 0);
    Jet n = inner_->jet(z0, u0, PZ, PW) * kcc_;
    const Series b = inner_->jet(z0, cb, PZ, 0).z_series();
    const Series cw = inner_->jet(c_, u0, 0, PW).w_series();
    n -= Jet::outer(b, cw, PZ, PW);
    return divide_by_centers(std::move(n), centers, z0, u0, pz, pw) / kcc_;
  }

  Complex naive(Complex z, Complex u) const override {
    const Complex cb = std::conj(c_);
    const Complex n = inner_->naive(z, u) * kcc_ - inner_->naive(z, cb) * inner_->naive(c_, u);
    return n / ((z - c_) * (u - cb) * kcc_);
  }

  std::vector<const KernelNode*> children() const override { return {inner_.get()}; }
  std::vector<Complex> own_singular_centers() const override { return {c_}; }
  std::vector<Complex> own_weight_centers() const override { return {c_}; }

  std::string formula(const FormulaNames& names) const override {
    const auto f = names.format();
    const auto c = format_number(c_, f);
    const auto den = product({linear_factor("z", c_, f), linear_factor(wbar(f), std::conj(c_), f)}, f);
    const auto* k = inner_.get();
    const auto first = fraction(names.call(k, "z", "w"), den, f);
    const auto second = fraction(product({names.call(k, "z", c), names.call(k, c, "w")}, f),
                                 product({den, names.call(k, c, c)}, f), f);
    return fmt::format("{} - {}", first, second);
  }

 private:
  std::shared_ptr<const KernelNode> inner_;
  Complex c_;
  Complex kcc_;
};

// One correction term of the direct-sum form:
// K_q(z, c) q(z) K_q(c, w) conj(q(w)) / K_q(c, c), all over p(z) conj(p(w)).
struct DirectSumTerm {
  std::shared_ptr<const KernelNode> kq;
  Complex center;
  std::vector<Factor> q;       // p / p_{jk}
  std::vector<Factor> p_jk;    // used only in formulas
  Complex kcc;
};

class DirectSumNode final : public KernelNode {
 public:
  DirectSumNode(std::shared_ptr<const KernelNode> base, std::vector<Factor> p,
                std::vector<DirectSumTerm> terms)
      : base_(std::move(base)), p_(std::move(p)), terms_(std::move(terms)) {}

  NodeKind kind() const override { return NodeKind::DirectSumAugment; }

  Jet jet(Complex z0, Complex u0, int pz, int pw) const override {
    if (auto j = near_center_jet(*this, p_, z0, u0, pz, pw)) return *j;
    const int PZ = pz + multiplicity_at(p_, z0, false);
    const int PW = pw + multiplicity_at(p_, u0, true);
    Jet n = base_->jet(z0, u0, PZ, PW);
    for (const auto& t : terms_) {
      const Complex cb = std::conj(t.center);
      const Series b = series::mul(t.kq->jet(z0, cb, PZ, 0).z_series(),
                                   factor_series(t.q, z0, PZ, 1, false), PZ);
      const Series cw = series::mul(t.kq->jet(t.center, u0, 0, PW).w_series(),
                                    factor_series(t.q, u0, PW, 1, true), PW);
      n -= Jet::outer(b, cw, PZ, PW) / t.kcc;
    }
    return divide_by_centers(std::move(n), p_, z0, u0, pz, pw);
  }

  Complex naive(Complex z, Complex u) const override {
    Complex n = base_->naive(z, u);
    for (const auto& t : terms_) {
      const Complex cb = std::conj(t.center);
      n -= t.kq->naive(z, cb) * factor_value(t.q, z, false) * t.kq->naive(t.center, u) *
           factor_value(t.q, u, true) / t.kcc;
    }
    return n / (factor_value(p_, z, false) * factor_value(p_, u, true));
  }

  std::vector<const KernelNode*> children() const override {
    std::vector<const KernelNode*> out{base_.get()};
    for (const auto& t : terms_) out.push_back(t.kq.get());
    return out;
  }

  std::vector<Complex> own_singular_centers() const override {
    std::vector<Complex> out;
    for (const auto& f : p_) out.push_back(f.center);
    return out;
  }
  std::vector<Complex> own_weight_centers() const override { return own_singular_centers(); }

  std::string formula(const FormulaNames& names) const override {
    const auto f = names.format();
    std::string out = fraction(
        names.call(base_.get(), "z", "w"),
        product({factor_text(p_, "z", false, f), factor_text(p_, wbar(f), true, f)}, f), f);
    for (const auto& t : terms_) {
      const auto c = format_number(t.center, f);
      const auto* k = t.kq.get();
      out += " - " + fraction(product({names.call(k, "z", c), names.call(k, c, "w")}, f),
                              product({factor_text(t.p_jk, "z", false, f),
                                       factor_text(t.p_jk, wbar(f), true, f),
                                       names.call(k, c, c)},
                                      f),
                              f);
    }
    return out;
  }

 private:
  std::shared_ptr<const KernelNode> base_;
  std::vector<Factor> p_;
  std::vector<DirectSumTerm> terms_;
};

void require_interior_center(const KernelExpr& k, Complex c) {
  require_finite(c, "augmentation center");
  if (!k.domain().interior(c))
    fail(ErrorKind::DomainViolation,
         fmt::format("augmentation center ({}, {}) is not inside the {}", c.real(), c.imag(),
                     k.domain().describe()));
}

Complex diagonal_at_center(const KernelNode& node, Complex c, const std::string& label) {
  const Complex kcc = node.jet(c, std::conj(c), 0, 0).value();
  if (!(std::abs(kcc) > kDegeneracyTol))
    fail(ErrorKind::DegenerateCenter,
         fmt::format("K({0}, {0}) = {1:.3g} is degenerate{2}", format_number(c, FormulaFormat::Plain),
                     std::abs(kcc), label));
  return kcc;
}

using PlanKey = std::vector<std::pair<std::pair<double, double>, int>>;

PlanKey key_of(const std::vector<Factor>& plan) {
  PlanKey key;
  for (const auto& f : plan) key.push_back({{f.center.real(), f.center.imag()}, f.multiplicity});
  return key;
}

// Direct-sum kernel for a plan, reusing kernels of shared suffix plans.
std::shared_ptr<const KernelNode> build_direct_sum(
    const std::shared_ptr<const KernelNode>& base, const std::vector<Factor>& plan,
    std::map<PlanKey, std::shared_ptr<const KernelNode>>& memo) {
  if (plan.empty()) return base;
  const auto key = key_of(plan);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  std::vector<DirectSumTerm> terms;
  for (std::size_t j = 0; j < plan.size(); ++j) {
    for (int k = 1; k <= plan[j].multiplicity; ++k) {
      std::vector<Factor> q;
      if (plan[j].multiplicity - k > 0) q.push_back({plan[j].center, plan[j].multiplicity - k});
      for (std::size_t i = j + 1; i < plan.size(); ++i) q.push_back(plan[i]);
      std::vector<Factor> p_jk(plan.begin(), plan.begin() + static_cast<std::ptrdiff_t>(j));
      p_jk.push_back({plan[j].center, k});

      auto kq = build_direct_sum(base, q, memo);
      const Complex kcc = diagonal_at_center(
          *kq, plan[j].center, fmt::format(" (term j = {}, k = {})", j + 1, k));
      terms.push_back({std::move(kq), plan[j].center, std::move(q), std::move(p_jk), kcc});
    }
  }
  auto node = std::make_shared<DirectSumNode>(base, plan, std::move(terms));
  memo.emplace(key, node);
  return node;
}

}  // namespace

// ---------------------------------------------------------------------------

KernelExpr pole_divide(const KernelExpr& k, const RationalFactors& g) {
  require_finite(g.scale, "g scale");
  if (g.scale == Complex(0.0)) fail(ErrorKind::InvalidArgument, "g must not vanish identically");
  for (const auto& f : g.zeros) require_finite(f.center, "g zero");
  for (const auto& f : g.poles) require_finite(f.center, "g pole");

  std::shared_ptr<const KernelNode> inner = k.node_ptr();
  RationalFactors combined = g;
  if (const auto* rd = dynamic_cast<const RationalDivideNode*>(inner.get())) {
    combined = rd->g() * g;
    inner = rd->inner();
  } else {
    combined = RationalFactors{g.scale, merge_factors(g.zeros), merge_factors(g.poles)};
  }
  for (const auto& f : combined.zeros)
    if (k.domain().closure_contains(f.center))
      fail(ErrorKind::HolomorphyViolation,
           fmt::format("g vanishes at ({}, {}) in the closed domain; use zero_augment",
                       f.center.real(), f.center.imag()));
  if (total_multiplicity(combined.zeros) > kMaxPolynomialDegree ||
      total_multiplicity(combined.poles) > kMaxPolynomialDegree)
    fail(ErrorKind::DegreeTooHigh, "rational factor degree exceeds the cap");
  if (combined.is_identity()) return KernelExpr(inner, k.domain());
  return KernelExpr(std::make_shared<RationalDivideNode>(inner, std::move(combined)),
                    k.domain());
}

KernelExpr pole_divide(const KernelExpr& k, const std::vector<Factor>& g_zeros) {
  return pole_divide(k, RationalFactors{1.0, g_zeros, {}});
}

KernelExpr zero_augment(const KernelExpr& k, Complex c) {
  require_interior_center(k, c);
  const Complex kcc = diagonal_at_center(k.node(), c, "");
  return KernelExpr(std::make_shared<RankOneDeflateNode>(k.node_ptr(), c, kcc), k.domain());
}

void DecompositionPlan::validate() const {
  for (std::size_t i = 0; i < centers.size(); ++i) {
    require_finite(centers[i].center, "plan center");
    if (centers[i].multiplicity < 1)
      fail(ErrorKind::InvalidArgument, "plan multiplicities must be positive");
    for (std::size_t j = 0; j < i; ++j)
      if (centers[j].center == centers[i].center)
        fail(ErrorKind::InvalidArgument, "plan centers must be distinct");
  }
  if (total_multiplicity(centers) > kMaxPolynomialDegree)
    fail(ErrorKind::DegreeTooHigh, "plan degree exceeds the cap");
}

KernelExpr multi_zero_augment(const KernelExpr& k, const DecompositionPlan& plan) {
  plan.validate();
  for (const auto& f : plan.centers) require_interior_center(k, f.center);
  if (plan.mode == AugmentMode::Iterated) {
    KernelExpr out = k;
    for (const auto& f : plan.centers)
      for (int i = 0; i < f.multiplicity; ++i) out = zero_augment(out, f.center);
    return out;
  }
  std::map<PlanKey, std::shared_ptr<const KernelNode>> memo;
  return KernelExpr(build_direct_sum(k.node_ptr(), plan.centers, memo), k.domain());
}

KernelExpr weighted_kernel(const DomainSpec& d, const WeightSpec& w, AugmentMode mode) {
  KernelExpr k = base_kernel_expr(d, w.base());
  RationalFactors outside{1.0, {}, w.poles()};
  std::vector<Factor> inside;
  for (const auto& f : w.zeros()) (d.interior(f.center) ? inside : outside.zeros).push_back(f);
  if (!outside.is_identity()) k = pole_divide(k, outside);
  if (!inside.empty()) k = multi_zero_augment(k, {inside, mode});
  return k;
}

}  // namespace bergman
