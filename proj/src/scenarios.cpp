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

#include "horocurve/scenarios.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace horocurve {

template <class S>
S counterexample_c(int n) {
  return S(S(1) - S(1) / ipow(S(2), n));
}

template <class S>
S counterexample_d(int n) {
  return S(S(1) - S(3) / (S(4) * ipow(S(2), n)));
}

template <class S>
JetTriple<S> gen_counterexample(const CounterexampleSpec& spec) {
  if (spec.m < 1 || spec.depth < 1) throw std::invalid_argument("counterexample: need m >= 1 and depth >= 1");
  const int m = spec.m;
  std::vector<Interval<S>> comps;
  std::vector<ComponentJet<S>> F, G, H;
  for (int n = 0; n < spec.depth; ++n) {
    comps.emplace_back(counterexample_c<S>(n), counterexample_d<S>(n));
    F.push_back(ComponentJet<S>::interval(Poly<S>(), m));
    G.push_back(ComponentJet<S>::interval(Poly<S>(), m));
    H.push_back(ComponentJet<S>::interval(Poly<S>::constant(S(S(1) / ipow(S(3), m * n))), m));
  }
  if (spec.terminal) {
    comps.emplace_back(S(1), S(1));
    std::vector<S> zero(static_cast<std::size_t>(m) + 1, S(0));
    F.push_back(ComponentJet<S>::point(zero));
    G.push_back(ComponentJet<S>::point(zero));
    H.push_back(ComponentJet<S>::point(zero));
  }
  return make_jet_triple(m, std::move(comps), std::move(F), std::move(G), std::move(H));
}

Rational counterexample_ratio(int m, int n) {
  Rational three_m = ipow(Rational(3), m);
  Rational r = (three_m - 1) * ipow(Rational(16), m) / three_m * ipow(Rational(4, 3), m * n);
  r.canonicalize();
  return r;
}

namespace {

using R = Rational;

R dyadic(long num, long den) {
  R r(num, den);
  r.canonicalize();
  return r;
}

Poly<R> random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_int_distribution<long> coef(-4, 4);
  std::vector<R> c;
  for (int i = 0; i <= degree; ++i) c.push_back(dyadic(coef(rng), 4));
  if (c.back() == 0) c.back() = dyadic(1, 4);
  return Poly<R>(std::move(c));
}

std::size_t span_of(const std::vector<R>& breaks, const R& x) {
  std::size_t s = static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
  s = s == 0 ? 0 : s - 1;
  return std::min(s, breaks.size() - 2);
}

}  // namespace

template <class S>
ValidInstance<S> gen_valid_instance_with_source(int m, int points, std::uint64_t seed, const ValidInstanceOptions& opt) {
  if (m < 1) throw std::invalid_argument("gen_valid_instance: m must be >= 1");
  if (points < 1) throw std::invalid_argument("gen_valid_instance: need at least one point");
  std::mt19937_64 rng(seed);
  constexpr long kGrid = 64;  // positions j/64 on [0, 2]
  constexpr long kSlots = 2 * kGrid;

  std::uniform_int_distribution<int> nspans(1, std::max(1, opt.max_spans));
  const int spans = nspans(rng);
  std::set<long> cuts;
  std::uniform_int_distribution<long> cut(1, kSlots - 1);
  while (static_cast<int>(cuts.size()) < spans - 1) cuts.insert(cut(rng));
  std::vector<R> breaks{R(0)};
  for (long c : cuts) breaks.push_back(dyadic(c, kGrid));
  breaks.push_back(R(2));

  std::uniform_int_distribution<int> extra(0, 1);
  std::uniform_int_distribution<long> jump(-4, 4);
  SourceCurve<R> src;
  src.breaks = breaks;
  src.f.push_back(random_poly(rng, m + 1 + extra(rng)));
  src.g.push_back(random_poly(rng, m + 1 + extra(rng)));
  for (std::size_t j = 1; j + 1 < breaks.size(); ++j) {
    // Adding c(x - t)^{m+1} keeps derivatives 0..m continuous at t.
    long cf = jump(rng), cg = jump(rng);
    if (cf == 0 && cg == 0) cf = 1;
    src.f.push_back(src.f.back() + Poly<R>::shifted_power(breaks[j], m + 1) * dyadic(cf, 4));
    src.g.push_back(src.g.back() + Poly<R>::shifted_power(breaks[j], m + 1) * dyadic(cg, 4));
  }
  R h0 = dyadic(jump(rng), 4);
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    PlanePolyCurve<R> c{Interval<R>(breaks[j], breaks[j + 1]), src.f[j], src.g[j]};
    src.h.push_back(horizontal_lift(c, h0).h);
    h0 = src.h.back()(breaks[j + 1]);
  }

  // K: distinct grid positions, some widened into short intervals.
  const long npts = std::min<long>(points, kSlots + 1);
  std::set<long> slots;
  std::uniform_int_distribution<long> slot(0, kSlots);
  while (static_cast<long>(slots.size()) < npts) slots.insert(slot(rng));
  std::vector<long> pos(slots.begin(), slots.end());
  std::bernoulli_distribution widen(opt.interval_probability);
  std::uniform_int_distribution<long> width(1, 4);

  std::vector<Interval<R>> comps;
  std::vector<ComponentJet<R>> F, G, H;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const R x = dyadic(pos[i], kGrid);
    const std::size_t sp = span_of(breaks, x);
    long hi = pos[i];
    if (widen(rng)) {
      long w = width(rng);
      long limit = i + 1 < pos.size() ? pos[i + 1] - 1 : kSlots;
      // Interval must stay inside the span that contains its left end.
      for (std::size_t j = 0; j < breaks.size(); ++j) {
        long b = static_cast<long>(R(breaks[j] * kGrid).get_d());
        if (b > pos[i]) {
          limit = std::min(limit, b);
          break;
        }
      }
      hi = std::min(pos[i] + w, limit);
    }
    if (hi > pos[i]) {
      comps.emplace_back(x, dyadic(hi, kGrid));
      F.push_back(ComponentJet<R>::interval(src.f[sp], m));
      G.push_back(ComponentJet<R>::interval(src.g[sp], m));
      H.push_back(ComponentJet<R>::interval(src.h[sp], m));
    } else {
      comps.emplace_back(x, x);
      std::vector<R> fv, gv, hv;
      for (int k = 0; k <= m; ++k) {
        fv.push_back(src.f[sp].derivative(k)(x));
        gv.push_back(src.g[sp].derivative(k)(x));
        hv.push_back(src.h[sp].derivative(k)(x));
      }
      F.push_back(ComponentJet<R>::point(std::move(fv)));
      G.push_back(ComponentJet<R>::point(std::move(gv)));
      H.push_back(ComponentJet<R>::point(std::move(hv)));
    }
  }
  JetTriple<R> T = make_jet_triple(m, std::move(comps), std::move(F), std::move(G), std::move(H));

  ValidInstance<S> out;
  out.T = convert_triple<S>(T);
  out.source.breaks.clear();
  for (const auto& b : src.breaks) out.source.breaks.push_back(from_double<S>(to_double(b)));
  for (std::size_t j = 0; j < src.f.size(); ++j) {
    out.source.f.push_back(convert_poly<S>(src.f[j]));
    out.source.g.push_back(convert_poly<S>(src.g[j]));
    out.source.h.push_back(convert_poly<S>(src.h[j]));
  }
  if constexpr (ScalarTraits<S>::exact) {
    out.source = src;
  }
  return out;
}

template <class S>
JetTriple<S> gen_valid_instance(int m, int points, std::uint64_t seed, const ValidInstanceOptions& opt) {
  return gen_valid_instance_with_source<S>(m, points, seed, opt).T;
}

template <class S>
S c1_area_discrepancy(const JetTriple<S>& T, const S& a, const S& b) {
  if (T.m != 1) throw std::invalid_argument("c1_area_discrepancy: requires m = 1");
  std::size_t ca = T.require_component(a), cb = T.require_component(b);
  S Fa = T.F.value(ca, a, 0), Ga = T.G.value(ca, a, 0), Ha = T.H.value(ca, a, 0);
  S Fb = T.F.value(cb, b, 0), Gb = T.G.value(cb, b, 0), Hb = T.H.value(cb, b, 0);
  return S(Hb - Ha - 2 * (Fb * Ga - Fa * Gb));
}

namespace {

template <class To, class From>
To convert_scalar(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else {
    return from_double<To>(to_double(v));
  }
}

template <class To, class From>
Jet<To> convert_jet(const Jet<From>& J) {
  Jet<To> out;
  out.m = J.m;
  for (const auto& c : J.data) {
    if (c.is_interval()) {
      out.data.push_back(ComponentJet<To>::interval(convert_poly<To>(c.poly()), J.m));
    } else {
      std::vector<To> v;
      for (const auto& x : c.values()) v.push_back(convert_scalar<To>(x));
      out.data.push_back(ComponentJet<To>::point(std::move(v)));
    }
  }
  return out;
}

}  // namespace

template <class To, class From>
JetTriple<To> convert_triple(const JetTriple<From>& T) {
  std::vector<Interval<To>> comps;
  for (const auto& c : T.K.components()) comps.emplace_back(convert_scalar<To>(c.lo), convert_scalar<To>(c.hi));
  JetTriple<To> out;
  out.K = CompactSet<To>(std::move(comps));
  out.m = T.m;
  out.F = convert_jet<To>(T.F);
  out.G = convert_jet<To>(T.G);
  out.H = convert_jet<To>(T.H);
  return out;
}

#define HOROCURVE_INSTANTIATE_SCENARIOS(S)                                                                        \
  template S counterexample_c<S>(int);                                                                            \
  template S counterexample_d<S>(int);                                                                            \
  template JetTriple<S> gen_counterexample<S>(const CounterexampleSpec&);                                         \
  template ValidInstance<S> gen_valid_instance_with_source<S>(int, int, std::uint64_t, const ValidInstanceOptions&); \
  template JetTriple<S> gen_valid_instance<S>(int, int, std::uint64_t, const ValidInstanceOptions&);              \
  template S c1_area_discrepancy<S>(const JetTriple<S>&, const S&, const S&);

HOROCURVE_INSTANTIATE_SCENARIOS(double)
HOROCURVE_INSTANTIATE_SCENARIOS(Rational)

template JetTriple<double> convert_triple<double, Rational>(const JetTriple<Rational>&);
template JetTriple<Rational> convert_triple<Rational, double>(const JetTriple<double>&);
template JetTriple<double> convert_triple<double, double>(const JetTriple<double>&);
template JetTriple<Rational> convert_triple<Rational, Rational>(const JetTriple<Rational>&);

}  // namespace horocurve
