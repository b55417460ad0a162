#include "bergman/oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "bergman/errors.hpp"
#include "bergman/parallel.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

GaussLegendre gauss_legendre(int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "Gauss-Legendre needs at least one node");
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    gl.weights[i] = gl.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) gl.nodes[n / 2] = 0.0;
  return gl;
}

void QuadratureSpec::validate() const {
  if (radial_nodes < 1 || angular_nodes < 2 || angular_nodes % 2 != 0)
    fail(ErrorKind::InvalidArgument,
         fmt::format("quadrature needs radial >= 1 and even angular >= 2 nodes, got {} x {}",
                     radial_nodes, angular_nodes));
}

int QuadratureSpec::exact_degree() const {
  return std::min(2 * radial_nodes - 2, angular_nodes - 1);
}

QuadratureRule quadrature_rule(const DomainSpec& d, const QuadratureSpec& q) {
  q.validate();
  const auto gl = gauss_legendre(q.radial_nodes);
  const double lo = d.inner_radius(), hi = 1.0;
  const double half = (hi - lo) / 2.0, mid = (hi + lo) / 2.0;
  const double dtheta = 2.0 * kPi / q.angular_nodes;
  QuadratureRule rule;
  rule.points.reserve(static_cast<std::size_t>(q.radial_nodes) * q.angular_nodes);
  rule.weights.reserve(rule.points.capacity());
  for (int i = 0; i < q.radial_nodes; ++i) {
    const double rho = mid + half * gl.nodes[i];
    const double wr = half * gl.weights[i] * rho * dtheta;
    for (int k = 0; k < q.angular_nodes; ++k) {
      rule.points.push_back(std::polar(rho, k * dtheta));
      rule.weights.push_back(wr);
    }
  }
  return rule;
}

// ---------------------------------------------------------------------------
// Moments

namespace {

// integral of |z|^{2n} * scale * |z|^alpha over the domain
double monomial_norm(const DomainSpec& d, const BaseWeight& base, int n) {
  const double beta = n + 1.0 + base.alpha / 2.0;
  if (d.is_disk()) {
    if (!(beta > 0.0))
      fail(ErrorKind::DivergentMoment, fmt::format("disk moment of z^{} diverges", n));
    return base.scale * kPi / beta;
  }
  const double r = d.inner_radius();
  if (std::abs(beta) < 1e-12) return base.scale * 2.0 * kPi * std::log(1.0 / r);
  return base.scale * kPi * -std::expm1(2.0 * beta * std::log(r)) / beta;
}

std::vector<int> exponents_for(const DomainSpec& d, int degree) {
  std::vector<int> e;
  for (int n = d.is_disk() ? 0 : -degree; n <= degree; ++n) e.push_back(n);
  return e;
}

Eigen::MatrixXcd closed_form_moments(const DomainSpec& d, const WeightSpec& w,
                                     const std::vector<int>& ex) {
  const auto p = Polynomial::from_factors(w.zeros()).coeffs();
  const int deg = static_cast<int>(p.size()) - 1;
  const auto m = static_cast<Eigen::Index>(ex.size());
  Eigen::MatrixXcd g(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = j; k < m; ++k) {
      // <z^a, z^b> = sum_{s,t} p_s conj(p_t) int z^{a+s} conj(z)^{b+t}, nonzero
      // only when a + s == b + t.
      Complex acc = 0.0;
      const int a = ex[j], b = ex[k];
      for (int s = 0; s <= deg; ++s) {
        const int t = a + s - b;
        if (t < 0 || t > deg) continue;
        acc += p[s] * std::conj(p[t]) * monomial_norm(d, w.base(), a + s);
      }
      g(j, k) = acc;
      g(k, j) = std::conj(acc);
    }
  return g;
}

Eigen::MatrixXcd quadrature_moments(const DomainSpec& d, const WeightSpec& w,
                                    const std::vector<int>& ex, const QuadratureSpec& q) {
  const auto rule = quadrature_rule(d, q);
  const auto m = static_cast<Eigen::Index>(ex.size());
  const auto np = static_cast<Eigen::Index>(rule.points.size());
  // V(i, j) = z_i^{e_j} sqrt(weight_i)
  Eigen::MatrixXcd v(np, m);
  parallel_for(static_cast<std::size_t>(np), [&](std::size_t i) {
    const Complex z = rule.points[i];
    const double s = std::sqrt(rule.weights[i] * w.value(z));
    for (Eigen::Index j = 0; j < m; ++j)
      v(static_cast<Eigen::Index>(i), j) = s * std::pow(z, ex[j]);
  });
  // G(j, k) = sum_i z^{e_j} conj(z^{e_k}) w_i = (V^T conj(V))(j, k)
  Eigen::MatrixXcd g = v.transpose() * v.conjugate();
  return (g + g.adjoint()) / 2.0;
}

}  // namespace

GramSpec monomial_moments(const DomainSpec& d, const WeightSpec& w, int degree,
                          const QuadratureSpec& fallback) {
  if (degree < 0) fail(ErrorKind::InvalidArgument, "Gram degree must be nonnegative");
  for (const auto& f : w.poles())
    if (d.closure_contains(f.center))
      fail(ErrorKind::DivergentMoment,
           fmt::format("pole factor at ({}, {}) lies in the closed domain",
                       f.center.real(), f.center.imag()));
  GramSpec g;
  g.domain = d;
  g.weight = w;
  g.degree = degree;
  g.exponents = exponents_for(d, degree);
  if (w.poles().empty()) {
    g.moments = closed_form_moments(d, w, g.exponents);
    return g;
  }
  g.quadrature_fallback = true;
  g.moments = quadrature_moments(d, w, g.exponents, fallback);
  const QuadratureSpec finer{2 * fallback.radial_nodes, 2 * fallback.angular_nodes};
  const auto check = quadrature_moments(d, w, g.exponents, finer);
  g.quadrature_error = (check - g.moments).cwiseAbs().maxCoeff();
  g.moments = check;
  return g;
}

// ---------------------------------------------------------------------------
// Gram kernel

GramKernel::GramKernel(const GramSpec& g, double max_condition)
    : domain_(g.domain), exponents_(g.exponents) {
  const auto m = g.moments.rows();
  if (m == 0 || g.moments.cols() != m || static_cast<std::size_t>(m) != exponents_.size())
    fail(ErrorKind::InvalidArgument, "malformed Gram matrix");
  scale_.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double d = g.moments(i, i).real();
    if (!(d > 0.0)) fail(ErrorKind::IllConditioned, "Gram matrix has a nonpositive diagonal");
    scale_(i) = 1.0 / std::sqrt(d);
  }
  const Eigen::MatrixXcd scaled = scale_.asDiagonal() * g.moments * scale_.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> scaled_eig(scaled, Eigen::EigenvaluesOnly);
  const auto& ev = scaled_eig.eigenvalues();
  condition_ = ev.minCoeff() > 0.0 ? ev.maxCoeff() / ev.minCoeff()
                                   : std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> raw_eig(g.moments, Eigen::EigenvaluesOnly);
  min_eig_rel_ = raw_eig.eigenvalues().minCoeff() / g.moments.diagonal().real().sum();

  if (!(condition_ <= max_condition))
    fail(ErrorKind::IllConditioned,
         fmt::format("scaled Gram condition {:.3g} exceeds {:.3g} at degree {}", condition_,
                     max_condition, g.degree));
  Eigen::LLT<Eigen::MatrixXcd> llt(scaled);
  if (llt.info() != Eigen::Success)
    fail(ErrorKind::IllConditioned, "Gram matrix is not positive definite");
  factor_ = llt.matrixL();
}

Eigen::VectorXcd GramKernel::reduced(Complex z) const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(exponents_.size()));
  for (std::size_t j = 0; j < exponents_.size(); ++j)
    v(static_cast<Eigen::Index>(j)) = scale_(static_cast<Eigen::Index>(j)) * std::pow(z, exponents_[j]);
  return factor_.triangularView<Eigen::Lower>().solve(v);
}

Complex GramKernel::operator()(Complex z, Complex w) const {
  for (const auto& [p, what] : {std::pair{z, "z"}, std::pair{w, "w"}}) {
    require_finite(p, what);
    if (!domain_.interior(p))
      fail(ErrorKind::DomainViolation,
           fmt::format("{} ({}, {}) is not inside the {}", what, p.real(), p.imag(),
                       domain_.describe()));
  }
  // With G = D^{-1} L L^H D^{-1}: v(w)^H G^{-1} v(z) = (L^{-1} D v(w))^H (L^{-1} D v(z))
  return reduced(w).dot(reduced(z));
}

Complex gram_kernel_eval(const GramSpec& g, Complex z, Complex w) {
  return GramKernel(g)(z, w);
}

Complex disk_series_kernel(Complex z, Complex w, int n_max) {
  const Complex t = z * std::conj(w);
  Complex sum = 0.0, tp = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    sum += static_cast<double>(n + 1) * tp;
    tp *= t;
  }
  return sum / kPi;
}

std::vector<std::pair<Complex, Complex>> sample_pairs(const DomainSpec& d, double radius, int n,
                                                      std::uint64_t seed) {
  const double lo = d.is_annulus() ? d.inner_radius() + 0.02 : 0.0;
  if (!(radius > lo && radius < 1.0))
    fail(ErrorKind::InvalidArgument, fmt::format("sampling radius {} outside ({}, 1)", radius, lo));
  if (n < 0) fail(ErrorKind::InvalidArgument, "pair count must be nonnegative");
  std::mt19937_64 gen(seed);
  auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  auto point = [&] {
    const double rho = std::sqrt(lo * lo + unit() * (radius * radius - lo * lo));
    Complex p = std::polar(rho, 2.0 * kPi * unit());
    while (!d.contains(p)) p = std::polar(rho, 2.0 * kPi * unit());
    return p;
  };
  std::vector<std::pair<Complex, Complex>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Complex z = point();
    out.emplace_back(z, point());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reproducing property

std::vector<double> verify_reproducing(const KernelExpr& k, const WeightSpec& w,
                                       const std::vector<Polynomial>& fs,
                                       const QuadratureSpec& q, Complex z) {
  k.check_point(z, "z");
  const auto rule = quadrature_rule(k.domain().without_punctures(), q);
  const std::size_t n = rule.points.size();
  std::vector<Complex> kw(n);
  parallel_for(n, [&](std::size_t i) {
    const Complex x = rule.points[i];
    kw[i] = k(z, x) * (w.value(x) * rule.weights[i]);
  });
  std::vector<double> out;
  out.reserve(fs.size());
  for (const auto& f : fs) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += f(rule.points[i]) * kw[i];
    out.push_back(std::abs(acc - f(z)));
  }
  return out;
}

double verify_reproducing(const KernelExpr& k, const WeightSpec& w, const Polynomial& f,
                          const QuadratureSpec& q, Complex z) {
  return verify_reproducing(k, w, std::vector<Polynomial>{f}, q, z).front();
}

}  // namespace bergman
