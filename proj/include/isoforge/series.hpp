#pragma once

// Truncated univariate power series sum_k c_k v^k, stored as coefficient
// vectors. All routines are templated on the coefficient scalar so the same
// code runs on plain doubles and on first-order dual numbers (value plus
// t-derivative), which is how t-derivatives of v-jets are carried exactly.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace isoforge {

/// First-order forward-mode dual number: value and derivative along one parameter.
struct Dual {
  double v = 0.0;
  double d = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}  // NOLINT: implicit lift of constants
  constexpr Dual(double value, double deriv) : v(value), d(deriv) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) {
    d = (d * o.v - v * o.d) / (o.v * o.v);
    v /= o.v;
    return *this;
  }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
inline Dual sin(const Dual& a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual cos(const Dual& a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline Dual sqrt(const Dual& a) {
  const double r = std::sqrt(a.v);
  return {r, a.d / (2.0 * r)};
}
inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

namespace series {

template <class T>
std::vector<T> truncated(std::vector<T> a, std::size_t order) {
  a.resize(order + 1, T(0.0));
  return a;
}

template <class T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b, std::size_t order) {
  std::vector<T> c(order + 1, T(0.0));
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

template <class T>
std::vector<T> add(const std::vector<T>& a, const std::vector<T>& b, std::size_t order) {
  std::vector<T> c(order + 1, T(0.0));
  for (std::size_t i = 0; i <= order; ++i) {
    if (i < a.size()) c[i] += a[i];
    if (i < b.size()) c[i] += b[i];
  }
  return c;
}

template <class T>
std::vector<T> scale(std::vector<T> a, const T& s) {
  for (auto& x : a) x *= s;
  return a;
}

/// Antiderivative vanishing at v = 0.
template <class T>
std::vector<T> integrate(const std::vector<T>& a, std::size_t order) {
  std::vector<T> c(order + 1, T(0.0));
  for (std::size_t i = 0; i < a.size() && i + 1 <= order; ++i) c[i + 1] = a[i] / T(static_cast<double>(i + 1));
  return c;
}

template <class T>
std::vector<T> derivative(const std::vector<T>& a) {
  if (a.size() <= 1) return {T(0.0)};
  std::vector<T> c(a.size() - 1, T(0.0));
  for (std::size_t i = 1; i < a.size(); ++i) c[i - 1] = a[i] * T(static_cast<double>(i));
  return c;
}

/// (sin a, cos a) through s' = c a', c' = -s a'.
template <class T>
void sin_cos(const std::vector<T>& a, std::size_t order, std::vector<T>& s, std::vector<T>& c) {
  using std::cos;
  using std::sin;
  s.assign(order + 1, T(0.0));
  c.assign(order + 1, T(0.0));
  const T a0 = a.empty() ? T(0.0) : a[0];
  s[0] = sin(a0);
  c[0] = cos(a0);
  // k s_k = sum_{j=1..k} j a_j c_{k-j};  k c_k = -sum j a_j s_{k-j}
  for (std::size_t k = 1; k <= order; ++k) {
    T sk(0.0), ck(0.0);
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) {
      const T ja = a[j] * T(static_cast<double>(j));
      sk += ja * c[k - j];
      ck -= ja * s[k - j];
    }
    s[k] = sk / T(static_cast<double>(k));
    c[k] = ck / T(static_cast<double>(k));
  }
}

/// Square root of a series with positive constant term.
template <class T>
std::vector<T> sqrt(const std::vector<T>& a, std::size_t order) {
  using std::sqrt;
  if (a.empty() || !(value_of(a[0]) > 0.0)) throw std::domain_error("series sqrt needs a positive constant term");
  std::vector<T> r(order + 1, T(0.0));
  r[0] = sqrt(a[0]);
  for (std::size_t k = 1; k <= order; ++k) {
    T acc = k < a.size() ? a[k] : T(0.0);
    for (std::size_t j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc / (T(2.0) * r[0]);
  }
  return r;
}

/// Reciprocal of a series with nonzero constant term.
template <class T>
std::vector<T> reciprocal(const std::vector<T>& a, std::size_t order) {
  if (a.empty() || value_of(a[0]) == 0.0) throw std::domain_error("series reciprocal needs a nonzero constant term");
  std::vector<T> r(order + 1, T(0.0));
  r[0] = T(1.0) / a[0];
  for (std::size_t k = 1; k <= order; ++k) {
    T acc(0.0);
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * r[k - j];
    r[k] = -acc / a[0];
  }
  return r;
}

/// outer(inner(v)) for inner with zero constant term (Horner in series
/// arithmetic). `zero` is the additive identity of the outer coefficient type.
template <class T, class U>
std::vector<U> compose(const std::vector<U>& outer, const std::vector<T>& inner, std::size_t order,
                       const U& zero) {
  std::vector<U> acc(order + 1, zero);
  for (std::size_t i = outer.size(); i-- > 0;) {
    // acc <- acc * inner + outer[i]
    std::vector<U> next(order + 1, zero);
    for (std::size_t a = 0; a <= order; ++a) {
      for (std::size_t b = 1; b < inner.size() && a + b <= order; ++b) next[a + b] += acc[a] * inner[b];
    }
    next[0] += outer[i];
    acc = std::move(next);
  }
  return acc;
}

inline std::vector<double> compose(const std::vector<double>& outer, const std::vector<double>& inner,
                                   std::size_t order) {
  return compose(outer, inner, order, 0.0);
}

/// Compositional inverse of w(v) = w_1 v + w_2 v^2 + ..., w_1 != 0.
inline std::vector<double> revert(const std::vector<double>& w, std::size_t order) {
  if (w.size() < 2 || w[1] == 0.0) throw std::domain_error("series reversion needs a nonzero linear term");
  // Fixed point v = (x - (w(v) - w_1 v)) / w_1, one new order per sweep.
  std::vector<double> v(order + 1, 0.0);
  if (order >= 1) v[1] = 1.0 / w[1];
  for (std::size_t sweep = 2; sweep <= order; ++sweep) {
    std::vector<double> higher(w.size(), 0.0);
    for (std::size_t k = 2; k < w.size(); ++k) higher[k] = w[k];
    const auto hv = compose(higher, v, order);
    std::vector<double> next(order + 1, 0.0);
    next[1] = 1.0 / w[1];
    for (std::size_t k = 2; k <= order; ++k) next[k] = -hv[k] / w[1];
    v = std::move(next);
  }
  return v;
}

}  // namespace series
}  // namespace isoforge
