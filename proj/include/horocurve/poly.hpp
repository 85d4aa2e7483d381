// Copyright 2026 The horocurve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "horocurve/scalar.hpp"

namespace horocurve {

/// Closed interval [lo, hi]; lo == hi is a legal degenerate interval.
template <class S>
struct Interval {
  S lo{};
  S hi{};

  Interval() = default;
  Interval(S a, S b) : lo(std::move(a)), hi(std::move(b)) {
    if (hi < lo) throw std::invalid_argument("Interval: hi < lo");
  }

  S length() const { return S(hi - lo); }
  bool degenerate() const { return lo == hi; }
  bool contains(const S& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
  S midpoint() const { return S((lo + hi) / 2); }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// Dense univariate polynomial Σ c_i (x - origin)^i, coefficients in
/// ascending degree.
///
/// The origin is an expansion point, not part of the function: two
/// polynomials with different origins are equal when they agree as
/// functions. Binary operations work at the left operand's origin unless
/// the left operand is a constant. Pieces living on short intervals far from
/// 0 are kept about their left end so double arithmetic stays well
/// conditioned.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial
/// has an empty coefficient vector and degree -1.
template <class S>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<S> coeffs, S origin = S(0)) : c_(std::move(coeffs)), o_(std::move(origin)) { normalize(); }
  Poly(std::initializer_list<S> coeffs) : c_(coeffs) { normalize(); }

  static Poly constant(const S& v) { return Poly(std::vector<S>{v}); }
  static Poly identity() { return Poly(std::vector<S>{S(0), S(1)}); }
  static Poly monomial(int k, const S& coeff = S(1)) {
    std::vector<S> c(static_cast<std::size_t>(k) + 1, S(0));
    c.back() = coeff;
    return Poly(std::move(c));
  }
  /// (x - root)^k, expanded about root.
  static Poly shifted_power(const S& root, int k) {
    std::vector<S> c(static_cast<std::size_t>(k) + 1, S(0));
    c.back() = S(1);
    return Poly(std::move(c), root);
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  /// Coefficients about origin().
  const std::vector<S>& coeffs() const { return c_; }
  S coeff(std::size_t i) const { return i < c_.size() ? c_[i] : S(0); }
  S leading() const { return c_.empty() ? S(0) : c_.back(); }
  const S& origin() const { return o_; }

  S operator()(const S& x) const {
    const S t = x - o_;
    S r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      r *= t;
      r += *it;
    }
    return r;
  }

  /// Same function expanded about `origin` (Taylor shift).
  Poly recentered(const S& origin) const {
    Poly r = *this;
    if (origin == o_) return r;
    r.o_ = origin;
    if (c_.size() <= 1) return r;
    auto& c = r.c_;
    const std::size_t n = c.size();
    if constexpr (std::is_floating_point_v<S>) {
      // Shift exactly and round once; a shift in double cancels badly for
      // high degrees and long shifts.
      std::vector<Rational> e(c.begin(), c.end());
      const Rational delta = Rational(origin) - Rational(o_);
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) e[j - 1] += delta * e[j];
      for (std::size_t i = 0; i < n; ++i) c[i] = e[i].get_d();
      r.normalize();
      return r;
    }
    const S delta = origin - o_;
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) c[j - 1] += delta * c[j];
    r.normalize();
    return r;
  }

  /// Expanded about 0.
  Poly global() const { return recentered(S(0)); }

  Poly derivative(int k = 1) const {
    if (k <= 0) return *this;
    if (degree() < k) return Poly(std::vector<S>{}, o_);
    std::vector<S> d(c_.size() - static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < d.size(); ++i) {
      S f(1);
      for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j) f *= S(static_cast<long>(i + 1 + j));
      d[i] = c_[i + static_cast<std::size_t>(k)] * f;
    }
    return Poly(std::move(d), o_);
  }

  /// Antiderivative vanishing at origin().
  Poly antiderivative() const {
    if (c_.empty()) return *this;
    std::vector<S> a(c_.size() + 1, S(0));
    for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / S(static_cast<long>(i + 1));
    return Poly(std::move(a), o_);
  }

  /// p(scale * x + shift), scale != 0. Expanded about the preimage of
  /// origin(), so no cancellation is introduced.
  Poly compose_affine(const S& scale, const S& shift) const {
    if (scale == 0) return constant((*this)(shift));
    std::vector<S> c = c_;
    S pw(1);
    for (auto& v : c) {
      v *= pw;
      pw *= scale;
    }
    return Poly(std::move(c), S((o_ - shift) / scale));
  }

  Poly& operator+=(const Poly& o) {
    const Poly b = aligned(o);
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size(), S(0));
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] += b.c_[i];
    normalize();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    const Poly b = aligned(o);
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size(), S(0));
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] -= b.c_[i];
    normalize();
    return *this;
  }
  Poly& operator*=(const S& s) {
    for (auto& v : c_) v *= s;
    normalize();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Poly operator*(Poly a, const S& s) { return a *= s; }
  friend Poly operator*(const S& s, Poly a) { return a *= s; }
  friend Poly operator*(Poly a, const Poly& o) {
    if (a.c_.empty() || o.c_.empty()) return Poly(std::vector<S>{}, a.o_);
    const Poly b = a.aligned(o);
    std::vector<S> r(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r), a.o_);
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() <= 1 || b.c_.size() <= 1 || a.o_ == b.o_) return a.c_ == b.c_;
    return a.c_ == b.recentered(a.o_).c_;
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  // `o` expanded about our origin; a constant left side adopts o's origin.
  Poly aligned(const Poly& o) {
    if (c_.size() <= 1) o_ = o.o_;
    return o.recentered(o_);
  }

  std::vector<S> c_;
  S o_{};
};

template <class S>
S eval(const Poly<S>& p, const S& x) {
  return p(x);
}

template <class S>
S definite_integral(const Poly<S>& p, const Interval<S>& I) {
  Poly<S> q = p.antiderivative();
  return S(q(I.hi) - q(I.lo));
}

template <class S>
S definite_integral(const Poly<S>& p, const S& lo, const S& hi) {
  Poly<S> q = p.antiderivative();
  return S(q(hi) - q(lo));
}

/// Long division p = q*d + r with deg r < deg d.
template <class S>
std::pair<Poly<S>, Poly<S>> divmod(const Poly<S>& p, const Poly<S>& d) {
  if (d.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
  const Poly<S> dl = d.recentered(p.origin());
  std::vector<S> r = p.coeffs();
  const int dd = d.degree();
  if (p.degree() < dd) return {Poly<S>(), p};
  std::vector<S> q(static_cast<std::size_t>(p.degree() - dd) + 1, S(0));
  const S lead = dl.leading();
  for (int i = p.degree(); i >= dd; --i) {
    S coef = r[static_cast<std::size_t>(i)] / lead;
    q[static_cast<std::size_t>(i - dd)] = coef;
    if (coef == 0) continue;
    for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(i - dd + j)] -= coef * dl.coeffs()[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(i)] = S(0);
  }
  return {Poly<S>(std::move(q), p.origin()), Poly<S>(std::move(r), p.origin())};
}

/// Largest coefficient magnitude about the origin, as a double; 0 for the
/// zero polynomial.
template <class S>
double coeff_scale(const Poly<S>& p) {
  double s = 0.0;
  for (const auto& c : p.coeffs()) s = std::max(s, std::abs(to_double(c)));
  return s;
}

/// Σ |c_i| |x - origin|^i, the size of the terms a Horner evaluation at x
/// adds up.
template <class S>
double eval_magnitude(const Poly<S>& p, const S& x) {
  const double t = std::abs(to_double(S(x - p.origin())));
  double r = 0.0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) r = r * t + std::abs(to_double(*it));
  return r;
}

/// Rounding allowance for evaluating p at x in double: a multiple of the
/// textbook Horner bound (2n+1)·eps·Σ|c_i||t|^i, which also covers the
/// roundoff already present in the coefficients. Zero in exact mode.
template <class S>
double rounding_allowance(const Poly<S>& p, const S& x) {
  if constexpr (ScalarTraits<S>::exact) {
    return 0.0;
  } else {
    const double n = static_cast<double>(std::max(p.degree(), 0));
    return 8.0 * (2.0 * n + 1.0) * 2.220446049250313e-16 * eval_magnitude(p, x);
  }
}

template <class To, class From>
Poly<To> convert_poly(const Poly<From>& p) {
  std::vector<To> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) {
    if constexpr (std::is_same_v<To, From>) {
      c.push_back(v);
    } else {
      c.push_back(from_double<To>(to_double(v)));
    }
  }
  if constexpr (std::is_same_v<To, From>) {
    return Poly<To>(std::move(c), p.origin());
  } else {
    return Poly<To>(std::move(c), from_double<To>(to_double(p.origin())));
  }
}

}  // namespace horocurve
