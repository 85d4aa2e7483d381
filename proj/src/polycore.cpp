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

#include "horocurve/polycore.hpp"

#include <algorithm>
#include <cmath>

namespace horocurve {

namespace {

template <class S>
Poly<S> scaled_positive(Poly<S> p) {
  if (p.is_zero()) return p;
  S lead = abs_of(p.leading());
  p *= S(S(1) / lead);
  return p;
}

template <class S>
S absolute_tolerance(const Interval<S>& I, double tol) {
  double scale = std::max({1.0, std::abs(to_double(I.lo)), std::abs(to_double(I.hi))});
  return from_double<S>(tol * scale);
}

// Float-mode isolation: split at critical points, bisect monotone pieces.
void float_roots(const Poly<double>& p, double a, double b, double tol, std::vector<double>& out) {
  const int deg = p.degree();
  if (deg <= 0) return;
  if (deg == 1) {
    double r = p.origin() - p.coeff(0) / p.coeff(1);
    if (a <= r && r <= b) out.push_back(r);
    return;
  }
  std::vector<double> crit;
  float_roots(p.derivative(), a, b, tol, crit);
  std::vector<double> pts;
  pts.reserve(crit.size() + 2);
  pts.push_back(a);
  for (double c : crit)
    if (c > a && c < b) pts.push_back(c);
  pts.push_back(b);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double u = pts[i], v = pts[i + 1];
    double pu = p(u), pv = p(v);
    if (!std::isfinite(pu) || !std::isfinite(pv)) throw RootIsolationError("isolate_roots: non-finite polynomial value");
    if (pu == 0.0) {
      out.push_back(u);
      continue;
    }
    if (pv == 0.0 || (pu > 0) == (pv > 0)) continue;
    int guard = 0;
    while (v - u > tol) {
      double mid = 0.5 * (u + v);
      if (mid <= u || mid >= v) break;
      double pm = p(mid);
      if (pm == 0.0) {
        u = v = mid;
        break;
      }
      if ((pm > 0) == (pu > 0)) {
        u = mid;
        pu = pm;
      } else {
        v = mid;
      }
      if (++guard > 2000) throw RootIsolationError("isolate_roots: bisection failed to converge");
    }
    out.push_back(0.5 * (u + v));
  }
  if (p(b) == 0.0) out.push_back(b);
}

std::vector<RootBracket<double>> isolate_float(const Poly<double>& p, const Interval<double>& I, double tol) {
  std::vector<double> roots;
  const double abs_tol = absolute_tolerance(I, tol);
  float_roots(p, I.lo, I.hi, abs_tol, roots);
  std::sort(roots.begin(), roots.end());
  std::vector<RootBracket<double>> out;
  for (double r : roots) {
    if (!out.empty() && r - out.back().hi <= abs_tol) continue;
    out.push_back({r, r});
  }
  return out;
}

void rational_bisect(const Poly<Rational>& q, const std::vector<Poly<Rational>>& chain, Rational a, Rational b,
                     int count, const Rational& tol, std::vector<RootBracket<Rational>>& out, int depth) {
  if (count <= 0) return;
  if (depth > 4000) throw RootIsolationError("isolate_roots: refinement depth exceeded");
  if (count == 1) {
    if (q(b) == 0) {
      out.push_back({b, b});
      return;
    }
    Rational qa = q(a);
    while (b - a > tol) {
      Rational c = (a + b) / 2;
      Rational qc = q(c);
      if (qc == 0) {
        out.push_back({c, c});
        return;
      }
      bool root_left;
      if (qa != 0) {
        root_left = sign_of(qa) != sign_of(qc);
      } else {
        root_left = sturm_variations(chain, a) - sturm_variations(chain, c) == 1;
      }
      if (root_left) {
        b = c;
      } else {
        a = c;
        qa = qc;
      }
    }
    out.push_back({a, b});
    return;
  }
  Rational c = (a + b) / 2;
  int left = sturm_variations(chain, a) - sturm_variations(chain, c);
  rational_bisect(q, chain, a, c, left, tol, out, depth + 1);
  rational_bisect(q, chain, c, b, count - left, tol, out, depth + 1);
}

std::vector<RootBracket<Rational>> isolate_rational(const Poly<Rational>& p, const Interval<Rational>& I, double tol) {
  std::vector<RootBracket<Rational>> out;
  if (p.degree() <= 0) return out;
  Poly<Rational> q = squarefree_part(p);
  if (q.degree() == 1) {
    Rational r = q.origin() - q.coeff(0) / q.coeff(1);
    if (I.contains(r)) out.push_back({r, r});
    return out;
  }
  if (I.degenerate()) {
    if (q(I.lo) == 0) out.push_back({I.lo, I.lo});
    return out;
  }
  auto chain = sturm_sequence(q);
  if (q(I.lo) == 0) out.push_back({I.lo, I.lo});
  int count = sturm_variations(chain, I.lo) - sturm_variations(chain, I.hi);
  rational_bisect(q, chain, I.lo, I.hi, count, absolute_tolerance(I, tol), out, 0);
  return out;
}

}  // namespace

template <class S>
std::vector<Poly<S>> sturm_sequence(const Poly<S>& p) {
  std::vector<Poly<S>> chain;
  if (p.is_zero()) return chain;
  chain.push_back(scaled_positive(p));
  Poly<S> d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(scaled_positive(d));
  while (true) {
    const auto& a = chain[chain.size() - 2];
    const auto& b = chain.back();
    Poly<S> r = divmod(a, b).second;
    if (r.is_zero()) break;
    chain.push_back(scaled_positive(Poly<S>(-r)));
  }
  return chain;
}

template <class S>
int sturm_variations(const std::vector<Poly<S>>& chain, const S& x) {
  int variations = 0;
  int prev = 0;
  for (const auto& p : chain) {
    int s = sign_of(p(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++variations;
    prev = s;
  }
  return variations;
}

template <class S>
Poly<S> poly_gcd(const Poly<S>& a, const Poly<S>& b) {
  Poly<S> x = a, y = b;
  while (!y.is_zero()) {
    Poly<S> r = divmod(x, y).second;
    x = std::move(y);
    y = scaled_positive(std::move(r));
  }
  if (x.is_zero()) return x;
  return x * S(S(1) / x.leading());
}

template <class S>
Poly<S> squarefree_part(const Poly<S>& p) {
  if (p.degree() <= 1) return p;
  Poly<S> g = poly_gcd(p, p.derivative());
  if (g.degree() <= 0) return scaled_positive(p);
  return scaled_positive(divmod(p, g).first);
}

template <class S>
std::vector<RootBracket<S>> isolate_roots(const Poly<S>& p, const Interval<S>& I, double tol) {
  if constexpr (ScalarTraits<S>::exact) {
    return isolate_rational(p, I, tol);
  } else {
    return isolate_float(p, I, tol);
  }
}

template <class S>
MaxAbs<S> max_abs(const Poly<S>& p, const Interval<S>& I, double tol) {
  if (I.degenerate()) return {abs_of(p(I.lo)), I.lo, true};
  MaxAbs<S> best{abs_of(p(I.lo)), I.lo, false};
  auto consider = [&](const S& x) {
    S v = abs_of(p(x));
    if (v > best.value) best = {v, x, false};
  };
  for (const auto& r : isolate_roots(p.derivative(), I, tol)) consider(r.point());
  consider(I.hi);
  return best;
}

template <class S>
S min_value(const Poly<S>& p, const Interval<S>& I, double tol) {
  S best = p(I.lo);
  auto consider = [&](const S& x) {
    S v = p(x);
    if (v < best) best = v;
  };
  consider(I.hi);
  if (!I.degenerate())
    for (const auto& r : isolate_roots(p.derivative(), I, tol)) consider(r.point());
  return best;
}

template <class S>
S l1_norm(const Poly<S>& p, const Interval<S>& I, double tol) {
  if (p.is_zero() || I.degenerate()) return S(0);
  std::vector<S> pts{I.lo};
  for (const auto& r : isolate_roots(p, I, tol)) {
    S x = r.point();
    if (x > pts.back() && x < I.hi) pts.push_back(x);
  }
  pts.push_back(I.hi);
  Poly<S> q = p.antiderivative();
  S total(0);
  S prev = q(pts.front());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    S cur = q(pts[i]);
    total += abs_of(S(cur - prev));
    prev = cur;
  }
  return total;
}

template <class S>
S markov_bound(const Poly<S>& p, const Interval<S>& I, double tol) {
  const int n = markov_degree(p);
  return S(S(2 * n * n) / I.length() * max_abs(p, I, tol).value);
}

template <class S>
ExtremalCert<S> pbig_subinterval(const Poly<S>& p, const Interval<S>& I, double tol) {
  if (p.is_zero()) throw std::invalid_argument("pbig_subinterval: polynomial is identically zero");
  auto mx = max_abs(p, I, tol);
  if (mx.value == 0) throw std::invalid_argument("pbig_subinterval: polynomial vanishes on the interval");
  ExtremalCert<S> cert;
  cert.max_abs = mx.value;
  cert.argmax = mx.argmax;
  cert.lower_bound = S(mx.value / 2);
  cert.degree = markov_degree(p);
  if (p.degree() <= 0 || I.degenerate()) {
    cert.subinterval = I;
    return cert;
  }
  const int n = cert.degree;
  S len = S(I.length() / S(4 * n * n));
  S x0 = mx.argmax;
  if (S(x0 + len) <= I.hi) {
    cert.subinterval = Interval<S>(x0, S(x0 + len));
  } else {
    cert.subinterval = Interval<S>(S(x0 - len), x0);
  }
  return cert;
}

template <class S>
bool validate_cert(const Poly<S>& p, const Interval<S>& I, const ExtremalCert<S>& cert, double rel_slack) {
  if (!I.contains(cert.subinterval)) return false;
  const int n = markov_degree(p);
  S need = p.degree() <= 0 ? I.length() : S(I.length() / S(4 * n * n));
  if constexpr (ScalarTraits<S>::exact) {
    if (cert.subinterval.length() < need) return false;
  } else {
    if (cert.subinterval.length() < need * (1.0 - 1e-12)) return false;
  }
  Poly<S> q = p * p - Poly<S>::constant(S(cert.lower_bound * cert.lower_bound));
  S mn = min_value(q, cert.subinterval);
  S slack = from_double<S>(rel_slack * to_double(S(cert.lower_bound * cert.lower_bound)));
  return mn >= S(-slack);
}

template <class S>
Poly<S> smoothstep(int m, const Interval<S>& I) {
  if (m < 1) throw std::invalid_argument("smoothstep: order must be >= 1");
  if (I.degenerate()) throw std::invalid_argument("smoothstep: degenerate interval");
  // In u in [0,1]: u^{m+1} * sum_k C(m+k, k) (1-u)^k.
  Poly<S> one_minus_u{S(1), S(-1)};
  Poly<S> sum;
  Poly<S> power = Poly<S>::constant(S(1));
  for (int k = 0; k <= m; ++k) {
    sum += power * S(binomial(m + k, k));
    power = power * one_minus_u;
  }
  Poly<S> unit = Poly<S>::monomial(m + 1) * sum;
  S inv = S(S(1) / I.length());
  return unit.compose_affine(inv, S(-I.lo * inv));
}

template <class S>
Poly<S> bump(int m, const Interval<S>& I) {
  if (m < 0) throw std::invalid_argument("bump: order must be >= 0");
  if (I.degenerate()) throw std::invalid_argument("bump: degenerate interval");
  Poly<S> base(std::vector<S>{S(0), I.length(), S(-1)}, I.lo);  // (t-lo)(hi-t)
  Poly<S> r = Poly<S>::constant(S(1));
  for (int i = 0; i <= m; ++i) r = r * base;
  S half = S(I.length() / 2);
  return r * S(S(1) / ipow(S(half * half), m + 1));
}

#define HOROCURVE_INSTANTIATE_POLYCORE(S)                                                                  \
  template std::vector<Poly<S>> sturm_sequence<S>(const Poly<S>&);                                         \
  template int sturm_variations<S>(const std::vector<Poly<S>>&, const S&);                                 \
  template Poly<S> poly_gcd<S>(const Poly<S>&, const Poly<S>&);                                            \
  template Poly<S> squarefree_part<S>(const Poly<S>&);                                                     \
  template std::vector<RootBracket<S>> isolate_roots<S>(const Poly<S>&, const Interval<S>&, double);       \
  template MaxAbs<S> max_abs<S>(const Poly<S>&, const Interval<S>&, double);                               \
  template S min_value<S>(const Poly<S>&, const Interval<S>&, double);                                     \
  template S l1_norm<S>(const Poly<S>&, const Interval<S>&, double);                                       \
  template S markov_bound<S>(const Poly<S>&, const Interval<S>&, double);                                  \
  template ExtremalCert<S> pbig_subinterval<S>(const Poly<S>&, const Interval<S>&, double);                \
  template bool validate_cert<S>(const Poly<S>&, const Interval<S>&, const ExtremalCert<S>&, double);      \
  template Poly<S> smoothstep<S>(int, const Interval<S>&);                                                 \
  template Poly<S> bump<S>(int, const Interval<S>&);

HOROCURVE_INSTANTIATE_POLYCORE(double)
HOROCURVE_INSTANTIATE_POLYCORE(Rational)

}  // namespace horocurve
