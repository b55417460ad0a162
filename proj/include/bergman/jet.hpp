#pragma once

// Truncated Taylor arithmetic.
//
// A sesqui-holomorphic kernel K(z, w) is handled as F(z, u) = K(z, w) with
// u = conj(w); F is holomorphic in both arguments. A Jet holds the Taylor
// coefficients F_{ij} of F(z0 + h, u0 + k) = sum F_{ij} h^i k^j for
// i <= order_z, j <= order_w. Division of a jet by h^m (a coefficient shift)
// is how removable singularities are evaluated exactly.

#include <cassert>
#include <complex>
#include <span>
#include <vector>

#include "bergman/domain.hpp"

namespace bergman {

/// Univariate truncated power series helpers, templated so the annulus
/// series can run in extended precision.
namespace series {

template <class T>
using Coeffs = std::vector<std::complex<T>>;

template <class T>
Coeffs<T> mul(const Coeffs<T>& a, const Coeffs<T>& b, int order) {
  Coeffs<T> c(static_cast<std::size_t>(order) + 1, T(0));
  const int na = static_cast<int>(a.size()) - 1;
  const int nb = static_cast<int>(b.size()) - 1;
  for (int i = 0; i <= std::min(na, order); ++i)
    for (int j = 0; j <= std::min(nb, order - i); ++j) c[i + j] += a[i] * b[j];
  return c;
}

template <class T>
Coeffs<T> reciprocal(const Coeffs<T>& a, int order) {
  assert(!a.empty() && a[0] != std::complex<T>(0));
  Coeffs<T> b(static_cast<std::size_t>(order) + 1, T(0));
  const int na = static_cast<int>(a.size()) - 1;
  b[0] = T(1) / a[0];
  for (int n = 1; n <= order; ++n) {
    std::complex<T> acc = T(0);
    for (int k = 1; k <= std::min(n, na); ++k) acc += a[k] * b[n - k];
    b[n] = -acc * b[0];
  }
  return b;
}

/// a^p for integer p (negative allowed when a[0] != 0).
template <class T>
Coeffs<T> pow(const Coeffs<T>& a, int p, int order) {
  Coeffs<T> base = p >= 0 ? a : reciprocal(a, order);
  base.resize(static_cast<std::size_t>(order) + 1, T(0));
  Coeffs<T> result(static_cast<std::size_t>(order) + 1, T(0));
  result[0] = T(1);
  for (int e = p >= 0 ? p : -p; e > 0; e >>= 1) {
    if (e & 1) result = mul(result, base, order);
    if (e > 1) base = mul(base, base, order);
  }
  return result;
}

/// Series of (x0 + h).
template <class T>
Coeffs<T> linear(std::complex<T> x0, int order) {
  Coeffs<T> c(static_cast<std::size_t>(order) + 1, T(0));
  c[0] = x0;
  if (order >= 1) c[1] = T(1);
  return c;
}

}  // namespace series

using Series = series::Coeffs<double>;

class Jet {
 public:
  Jet() : Jet(0, 0) {}
  Jet(int order_z, int order_w)
      : pz_(order_z),
        pw_(order_w),
        c_(static_cast<std::size_t>((order_z + 1) * (order_w + 1)), 0.0) {
    assert(order_z >= 0 && order_w >= 0);
  }

  static Jet constant(Complex v, int order_z, int order_w) {
    Jet j(order_z, order_w);
    j(0, 0) = v;
    return j;
  }

  /// u(h) * v(k) for series u in h and v in k.
  static Jet outer(std::span<const Complex> u, std::span<const Complex> v,
                   int order_z, int order_w) {
    Jet j(order_z, order_w);
    for (int a = 0; a <= order_z && a < static_cast<int>(u.size()); ++a)
      for (int b = 0; b <= order_w && b < static_cast<int>(v.size()); ++b)
        j(a, b) = u[a] * v[b];
    return j;
  }

  int order_z() const { return pz_; }
  int order_w() const { return pw_; }

  Complex& operator()(int i, int j) { return c_[index(i, j)]; }
  const Complex& operator()(int i, int j) const { return c_[index(i, j)]; }
  Complex value() const { return c_[0]; }

  Jet& operator+=(const Jet& o) {
    assert(same_shape(o));
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    assert(same_shape(o));
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(Complex s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Jet& operator/=(Complex s) {
    for (auto& x : c_) x /= s;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, Complex s) { return a *= s; }
  friend Jet operator*(Complex s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, Complex s) { return a /= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    assert(a.same_shape(b));
    Jet r(a.pz_, a.pw_);
    for (int i = 0; i <= a.pz_; ++i)
      for (int j = 0; j <= a.pw_; ++j) {
        const Complex x = a(i, j);
        if (x == Complex(0.0)) continue;
        for (int k = 0; k + i <= a.pz_; ++k)
          for (int l = 0; l + j <= a.pw_; ++l) r(i + k, j + l) += x * b(k, l);
      }
    return r;
  }

  /// Multiply by a series in h only.
  Jet mul_z(std::span<const Complex> u) const {
    Jet r(pz_, pw_);
    for (int i = 0; i <= pz_; ++i)
      for (int k = 0; k <= i && k < static_cast<int>(u.size()); ++k)
        for (int j = 0; j <= pw_; ++j) r(i, j) += u[k] * (*this)(i - k, j);
    return r;
  }

  /// Multiply by a series in k only.
  Jet mul_w(std::span<const Complex> v) const {
    Jet r(pz_, pw_);
    for (int j = 0; j <= pw_; ++j)
      for (int l = 0; l <= j && l < static_cast<int>(v.size()); ++l)
        for (int i = 0; i <= pz_; ++i) r(i, j) += v[l] * (*this)(i, j - l);
    return r;
  }

  Jet reciprocal() const {
    assert(c_[0] != Complex(0.0));
    Jet b(pz_, pw_);
    const Complex inv = 1.0 / c_[0];
    for (int i = 0; i <= pz_; ++i)
      for (int j = 0; j <= pw_; ++j) {
        Complex acc = (i == 0 && j == 0) ? Complex(1.0) : Complex(0.0);
        for (int k = 0; k <= i; ++k)
          for (int l = 0; l <= j; ++l) {
            if (k == 0 && l == 0) continue;
            acc -= (*this)(k, l) * b(i - k, j - l);
          }
        b(i, j) = acc * inv;
      }
    return b;
  }

  /// Divide by h^m, discarding the first m rows (which must vanish).
  Jet shift_z(int m) const {
    assert(m <= pz_);
    Jet r(pz_ - m, pw_);
    for (int i = 0; i <= pz_ - m; ++i)
      for (int j = 0; j <= pw_; ++j) r(i, j) = (*this)(i + m, j);
    return r;
  }

  Jet shift_w(int m) const {
    assert(m <= pw_);
    Jet r(pz_, pw_ - m);
    for (int i = 0; i <= pz_; ++i)
      for (int j = 0; j <= pw_ - m; ++j) r(i, j) = (*this)(i, j + m);
    return r;
  }

  Jet truncated(int order_z, int order_w) const {
    assert(order_z <= pz_ && order_w <= pw_);
    Jet r(order_z, order_w);
    for (int i = 0; i <= order_z; ++i)
      for (int j = 0; j <= order_w; ++j) r(i, j) = (*this)(i, j);
    return r;
  }

  /// Re-expand about z0 + d (Taylor shift in h), keeping orders <= order_z.
  Jet recenter_z(Complex d, int order_z) const {
    Jet r(order_z, pw_);
    std::vector<Complex> col(static_cast<std::size_t>(pz_) + 1);
    for (int j = 0; j <= pw_; ++j) {
      for (int i = 0; i <= pz_; ++i) col[i] = (*this)(i, j);
      for (int k = 0; k <= order_z && k <= pz_; ++k) {
        Complex acc = 0.0;
        for (int i = pz_; i >= k; --i) {
          acc = acc * d + col[i];
          col[i] = acc;
        }
        r(k, j) = col[k];
      }
    }
    return r;
  }

  Jet recenter_w(Complex d, int order_w) const {
    Jet r(pz_, order_w);
    std::vector<Complex> row(static_cast<std::size_t>(pw_) + 1);
    for (int i = 0; i <= pz_; ++i) {
      for (int j = 0; j <= pw_; ++j) row[j] = (*this)(i, j);
      for (int k = 0; k <= order_w && k <= pw_; ++k) {
        Complex acc = 0.0;
        for (int j = pw_; j >= k; --j) {
          acc = acc * d + row[j];
          row[j] = acc;
        }
        r(i, k) = row[k];
      }
    }
    return r;
  }

  /// Coefficients F_{i0} (the function of h at k = 0).
  Series z_series() const {
    Series s(static_cast<std::size_t>(pz_) + 1);
    for (int i = 0; i <= pz_; ++i) s[i] = (*this)(i, 0);
    return s;
  }
  /// Coefficients F_{0j}.
  Series w_series() const {
    Series s(static_cast<std::size_t>(pw_) + 1);
    for (int j = 0; j <= pw_; ++j) s[j] = (*this)(0, j);
    return s;
  }

  bool same_shape(const Jet& o) const { return pz_ == o.pz_ && pw_ == o.pw_; }

 private:
  std::size_t index(int i, int j) const {
    assert(i >= 0 && i <= pz_ && j >= 0 && j <= pw_);
    return static_cast<std::size_t>(i * (pw_ + 1) + j);
  }

  int pz_;
  int pw_;
  std::vector<Complex> c_;
};

/// f(t0 + delta) where f is given by its Taylor coefficients at t0 and
/// delta is a jet with zero constant term.
inline Jet compose(std::span<const Complex> f, const Jet& delta) {
  assert(delta.value() == Complex(0.0));
  const int pz = delta.order_z(), pw = delta.order_w();
  const int top = std::min<int>(static_cast<int>(f.size()) - 1, pz + pw);
  Jet acc = Jet::constant(f[top], pz, pw);
  for (int k = top - 1; k >= 0; --k) {
    acc = acc * delta;
    acc(0, 0) += f[k];
  }
  return acc;
}

/// The jet of the product variable t = z * u about (z0, u0), minus t0.
inline Jet product_offset(Complex z0, Complex u0, int order_z, int order_w) {
  Jet d(order_z, order_w);
  if (order_z >= 1) d(1, 0) = u0;
  if (order_w >= 1) d(0, 1) = z0;
  if (order_z >= 1 && order_w >= 1) d(1, 1) = 1.0;
  return d;
}

}  // namespace bergman
