#include "bergman/kernel_expr.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <fmt/format.h>

#include "bergman/errors.hpp"

namespace bergman {

KernelExpr::KernelExpr(std::shared_ptr<const KernelNode> node, DomainSpec domain)
    : node_(std::move(node)), domain_(std::move(domain)) {
  if (!node_) fail(ErrorKind::InvalidArgument, "null kernel node");
}

void KernelExpr::check_point(Complex p, const char* what) const {
  require_finite(p, what);
  if (!domain_.contains(p))
    fail(ErrorKind::DomainViolation,
         fmt::format("{} ({}, {}) is not in the {}", what, p.real(), p.imag(),
                     domain_.describe()));
}

Jet KernelExpr::jet(Complex z, Complex w, int order_z, int order_w) const {
  check_point(z, "z");
  check_point(w, "w");
  return node_->jet(z, std::conj(w), order_z, order_w);
}

Complex KernelExpr::operator()(Complex z, Complex w) const {
  return jet(z, w, 0, 0).value();
}

Complex KernelExpr::naive(Complex z, Complex w) const {
  check_point(z, "z");
  check_point(w, "w");
  return node_->naive(z, std::conj(w));
}

Complex KernelExpr::d_dz(Complex z, Complex w) const { return jet(z, w, 1, 0)(1, 0); }

Complex KernelExpr::d_dwbar(Complex z, Complex w) const {
  return jet(z, w, 0, 1)(0, 1);
}

namespace {

void walk(const KernelNode* node, std::set<const KernelNode*>& seen,
          const std::function<void(const KernelNode*)>& visit) {
  if (!seen.insert(node).second) return;
  for (const auto* child : node->children()) walk(child, seen, visit);
  visit(node);
}

std::vector<Complex> unique_points(std::vector<Complex> pts) {
  std::vector<Complex> out;
  for (const auto& p : pts)
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  return out;
}

}  // namespace

std::vector<Complex> KernelExpr::singular_centers() const {
  std::vector<Complex> out;
  std::set<const KernelNode*> seen;
  walk(node_.get(), seen, [&](const KernelNode* n) {
    auto c = n->own_singular_centers();
    out.insert(out.end(), c.begin(), c.end());
  });
  return unique_points(std::move(out));
}

std::vector<Complex> KernelExpr::weight_centers() const {
  std::vector<Complex> out;
  std::set<const KernelNode*> seen;
  walk(node_.get(), seen, [&](const KernelNode* n) {
    auto c = n->own_weight_centers();
    out.insert(out.end(), c.begin(), c.end());
  });
  return unique_points(std::move(out));
}

Complex eval_with_limits(const KernelExpr& k, Complex z, Complex w) { return k(z, w); }

// ---------------------------------------------------------------------------
// Formula emission

std::string format_number(Complex c, FormulaFormat /*format*/) {
  const auto re = fmt::format("{:.10g}", c.real());
  if (c.imag() == 0.0) return re;
  const char* unit = "i";
  const double im = c.imag();
  std::string ims = fmt::format("{:.10g}", std::abs(im));
  if (ims == "1") ims.clear();
  if (c.real() == 0.0)
    return fmt::format("({}{}{})", im < 0 ? "-" : "", ims, unit);
  return fmt::format("({}{}{}{})", re, im < 0 ? "-" : "+", ims, unit);
}

std::string linear_factor(const std::string& var, Complex c, FormulaFormat format) {
  if (c == Complex(0.0)) return var;
  if (c.imag() == 0.0) {
    const double r = c.real();
    return fmt::format("({}{}{:.10g})", var, r < 0 ? "+" : "-", std::abs(r));
  }
  return fmt::format("({}-{})", var, format_number(c, format));
}

std::string FormulaNames::name(const KernelNode* node) const {
  auto it = names_.find(node);
  return it == names_.end() ? std::string("K?") : it->second;
}

std::string FormulaNames::call(const KernelNode* node, const std::string& z,
                               const std::string& w) const {
  return fmt::format("{}({},{})", name(node), z, w);
}

std::string to_formula(const KernelExpr& k, FormulaFormat format) {
  FormulaNames names(format);
  std::vector<const KernelNode*> order;
  std::set<const KernelNode*> seen;
  walk(k.node_ptr().get(), seen, [&](const KernelNode* n) { order.push_back(n); });
  if (order.size() == 1) return order.front()->formula(names);

  int idx = 0;
  std::vector<std::string> lines;
  for (const auto* n : order) {
    names.assign(n, format == FormulaFormat::LaTeX ? fmt::format("K_{{{}}}", idx)
                                                   : fmt::format("K{}", idx));
    ++idx;
    lines.push_back(fmt::format("{} = {}", names.call(n, "z", "w"), n->formula(names)));
  }
  std::string out;
  const char* sep = format == FormulaFormat::LaTeX ? " \\\\\n" : "\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += sep;
    out += lines[i];
  }
  return out;
}

}  // namespace bergman
