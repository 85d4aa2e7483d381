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

#include "horocurve/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "horocurve/polycore.hpp"

namespace horocurve {

namespace {

// Value of 𝒫ᵏ together with the sum of the magnitudes of its terms.
template <class S>
std::pair<S, S> leibniz_terms(int k, const std::vector<S>& F, const std::vector<S>& G) {
  S sum(0), mag(0);
  for (int j = 0; j <= k - 1; ++j) {
    const S c(binomial(k - 1, j));
    const auto uj = static_cast<std::size_t>(j + 1), vj = static_cast<std::size_t>(k - 1 - j);
    S t1 = c * F[uj] * G[vj];
    S t2 = c * G[uj] * F[vj];
    sum += t1 - t2;
    mag += abs_of(t1) + abs_of(t2);
  }
  return {S(2 * sum), S(2 * mag)};
}

}  // namespace

template <class S>
S leibniz_horizontality(int k, const std::vector<S>& F, const std::vector<S>& G) {
  if (k < 1) throw std::invalid_argument("leibniz_horizontality: order must be >= 1");
  if (F.size() < static_cast<std::size_t>(k) || G.size() < static_cast<std::size_t>(k))
    throw std::invalid_argument("leibniz_horizontality: jets too short");
  return leibniz_terms(k, F, G).first;
}

template <class S>
std::vector<Condition2Violation<S>> check_condition2(const JetTriple<S>& T, const MeshPolicy& mesh) {
  std::vector<Condition2Violation<S>> out;
  for (const auto& sp : sample_points(T.K, mesh)) {
    auto F = T.F.values_at(sp.comp, sp.x);
    auto G = T.G.values_at(sp.comp, sp.x);
    auto H = T.H.values_at(sp.comp, sp.x);
    for (int k = 1; k <= T.m; ++k) {
      auto [p, mag] = leibniz_terms(k, F, G);
      const S& hk = H[static_cast<std::size_t>(k)];
      S diff = abs_of(S(hk - p));
      bool bad;
      if constexpr (ScalarTraits<S>::exact) {
        bad = diff != 0;
      } else {
        double scale = std::max({1.0, std::abs(hk), mag});
        bad = diff > kHorizTolerance * scale;
      }
      if (bad) out.push_back({sp.comp, sp.x, k, diff});
    }
  }
  return out;
}

template <class S>
Poly<S> horizontality_defect(const Poly<S>& f, const Poly<S>& g, const Poly<S>& h) {
  Poly<S> rhs = f.derivative() * g - g.derivative() * f;
  return h.derivative() - rhs * S(2);
}

template <class S>
double HorizontalPiece<S>::defect_size() const {
  double scale = std::max({1.0, coeff_scale(h.derivative()), 2 * coeff_scale(f.derivative() * g),
                           2 * coeff_scale(g.derivative() * f)});
  return coeff_scale(defect) / scale;
}

template <class S>
bool HorizontalPiece<S>::horizontal(double tol) const {
  if constexpr (ScalarTraits<S>::exact) {
    return defect.is_zero();
  } else {
    return defect_size() <= tol;
  }
}

template <class S>
HorizontalPiece<S> horizontal_lift(const PlanePolyCurve<S>& c, const S& h0) {
  Poly<S> integrand = (c.f.derivative() * c.g - c.f * c.g.derivative()) * S(2);
  Poly<S> q = integrand.antiderivative();
  Poly<S> h = q + Poly<S>::constant(S(h0 - q(c.domain.lo)));
  return HorizontalPiece<S>(c.domain, c.f, c.g, std::move(h));
}

template <class S>
S signed_area(const std::vector<PlanePolyCurve<S>>& pieces) {
  if (pieces.empty()) return S(0);
  const auto& first = pieces.front();
  S x0 = first.f(first.domain.lo), y0 = first.g(first.domain.lo);
  if constexpr (ScalarTraits<S>::exact) {
    if (x0 != 0 || y0 != 0) throw std::invalid_argument("signed_area: curve must start at the origin");
  } else {
    if (std::abs(x0) > 1e-12 || std::abs(y0) > 1e-12) throw std::invalid_argument("signed_area: curve must start at the origin");
  }
  S total(0);
  for (const auto& c : pieces) total += definite_integral(Poly<S>(c.f * c.g.derivative() - c.g * c.f.derivative()), c.domain);
  return S(total / 2);
}

template <class S>
S signed_area(const PlanePolyCurve<S>& c) {
  return signed_area(std::vector<PlanePolyCurve<S>>{c});
}

template <class S>
S area_discrepancy(const std::vector<S>& Fa, const std::vector<S>& Ga, const S& Ha, const S& Fb, const S& Gb,
                   const S& Hb, const S& a, const S& b) {
  if (!(a < b)) throw std::invalid_argument("area_discrepancy: need a < b");
  const S d = b - a;
  Poly<S> tf = taylor_poly_local(Fa), tg = taylor_poly_local(Ga);
  Poly<S> integrand = tf.derivative() * tg - tg.derivative() * tf;
  S integral = definite_integral(integrand, S(0), d);
  return S(Hb - Ha - 2 * integral + 2 * Fa[0] * (Gb - tg(d)) - 2 * Ga[0] * (Fb - tf(d)));
}

template <class S>
S area_discrepancy(const JetTriple<S>& T, const S& a, const S& b) {
  std::size_t ca = T.require_component(a), cb = T.require_component(b);
  return area_discrepancy(T.F.values_at(ca, a), T.G.values_at(ca, a), T.H.value(ca, a, 0), T.F.value(cb, b, 0),
                          T.G.value(cb, b, 0), T.H.value(cb, b, 0), a, b);
}

template <class S>
S velocity(const std::vector<S>& Fa, const std::vector<S>& Ga, const S& a, const S& b) {
  if (!(a < b)) throw std::invalid_argument("velocity: need a < b");
  const int m = static_cast<int>(Fa.size()) - 1;
  const S d = b - a;
  const Interval<S> I(S(0), d);
  S dm = ipow(d, m);
  S l1 = l1_norm(taylor_poly_local(Fa).derivative(), I) + l1_norm(taylor_poly_local(Ga).derivative(), I);
  return S(dm * dm + dm * l1);
}

template <class S>
S velocity(const JetTriple<S>& T, const S& a, const S& b) {
  std::size_t ca = T.require_component(a);
  T.require_component(b);
  return velocity(T.F.values_at(ca, a), T.G.values_at(ca, a), a, b);
}

template <class S>
AVReport<S> av_report(const JetTriple<S>& T, const S& a, const S& b) {
  AVReport<S> r{a, b, area_discrepancy(T, a, b), velocity(T, a, b), 0.0};
  r.ratio = to_double(S(r.A / r.V));
  return r;
}

namespace {

template <class S>
struct AVSamples {
  std::vector<SamplePoint<S>> pts;
  std::vector<std::vector<S>> F, G;
  std::vector<S> H;
  std::vector<double> xs;

  AVSamples(const JetTriple<S>& T, const MeshPolicy& mesh) : pts(sample_points(T.K, mesh)) {
    for (const auto& p : pts) {
      F.push_back(T.F.values_at(p.comp, p.x));
      G.push_back(T.G.values_at(p.comp, p.x));
      H.push_back(T.H.value(p.comp, p.x, 0));
      xs.push_back(to_double(p.x));
    }
  }

  std::pair<S, S> AV(std::size_t i, std::size_t j) const {
    const S& a = pts[i].x;
    const S& b = pts[j].x;
    S A = area_discrepancy(F[i], G[i], H[i], F[j][0], G[j][0], H[j], a, b);
    S V = velocity(F[i], G[i], a, b);
    return {A, V};
  }
};

}  // namespace

template <class S>
ScaleProfile av_profile(const JetTriple<S>& T, const ScaleGrid& grid, const MeshPolicy& mesh, Exec exec) {
  const AVSamples<S> smp(T, mesh);
  auto kernel = [&](std::size_t i, std::size_t j, BinAccumulator& acc) {
    auto [A, V] = smp.AV(i, j);
    double ratio = to_double(S(abs_of(A) / V));
    acc.add(0, grid.level(smp.xs[j] - smp.xs[i]), ratio, smp.xs[i], smp.xs[j]);
  };
  BinAccumulator acc = exec == Exec::Parallel ? reduce_pairs_parallel(smp.pts.size(), 1, kernel)
                                              : reduce_pairs_serial(smp.pts.size(), 1, kernel);
  ScaleProfile prof;
  prof.grid = grid;
  ProfileSeries s;
  s.name = "A/V";
  s.bins = acc.bins(0, grid);
  prof.series.push_back(std::move(s));
  return prof;
}

template <class S>
std::vector<AVReport<S>> av_pairs(const JetTriple<S>& T, const MeshPolicy& mesh) {
  const AVSamples<S> smp(T, mesh);
  std::vector<AVReport<S>> out;
  for (std::size_t i = 0; i < smp.pts.size(); ++i) {
    for (std::size_t j = i + 1; j < smp.pts.size(); ++j) {
      auto [A, V] = smp.AV(i, j);
      AVReport<S> r{smp.pts[i].x, smp.pts[j].x, A, V, 0.0};
      r.ratio = to_double(S(A / V));
      out.push_back(std::move(r));
    }
  }
  return out;
}

template <class S>
JetTriple<S> left_translate(const JetTriple<S>& T, const HPoint<S>& base) {
  const S& x0 = base.x;
  const S& y0 = base.y;
  const S& t0 = base.t;
  JetTriple<S> out = T;
  for (std::size_t i = 0; i < T.K.size(); ++i) {
    const auto& f = T.F.data[i];
    const auto& g = T.G.data[i];
    const auto& h = T.H.data[i];
    if (f.is_interval()) {
      out.F.data[i] = ComponentJet<S>::interval(f.poly() - Poly<S>::constant(x0), T.m);
      out.G.data[i] = ComponentJet<S>::interval(g.poly() - Poly<S>::constant(y0), T.m);
      Poly<S> w = h.poly() - Poly<S>::constant(t0) + g.poly() * S(2 * x0) - f.poly() * S(2 * y0);
      out.H.data[i] = ComponentJet<S>::interval(std::move(w), T.m);
    } else {
      std::vector<S> u = f.values(), v = g.values(), w = h.values();
      u[0] -= x0;
      v[0] -= y0;
      w[0] -= t0;
      for (std::size_t k = 0; k < w.size(); ++k) w[k] += 2 * x0 * g.values()[k] - 2 * y0 * f.values()[k];
      out.F.data[i] = ComponentJet<S>::point(std::move(u));
      out.G.data[i] = ComponentJet<S>::point(std::move(v));
      out.H.data[i] = ComponentJet<S>::point(std::move(w));
    }
  }
  return out;
}

template <class S>
HorizontalPiece<S> left_translate(const HorizontalPiece<S>& p, const HPoint<S>& base) {
  Poly<S> u = p.f - Poly<S>::constant(base.x);
  Poly<S> v = p.g - Poly<S>::constant(base.y);
  Poly<S> w = p.h - Poly<S>::constant(base.t) + p.g * S(2 * base.x) - p.f * S(2 * base.y);
  return HorizontalPiece<S>(p.domain, std::move(u), std::move(v), std::move(w));
}

#define HOROCURVE_INSTANTIATE_HEISENBERG(S)                                                                         \
  template S leibniz_horizontality<S>(int, const std::vector<S>&, const std::vector<S>&);                           \
  template std::vector<Condition2Violation<S>> check_condition2<S>(const JetTriple<S>&, const MeshPolicy&);         \
  template Poly<S> horizontality_defect<S>(const Poly<S>&, const Poly<S>&, const Poly<S>&);                         \
  template struct HorizontalPiece<S>;                                                                               \
  template HorizontalPiece<S> horizontal_lift<S>(const PlanePolyCurve<S>&, const S&);                               \
  template S signed_area<S>(const PlanePolyCurve<S>&);                                                              \
  template S signed_area<S>(const std::vector<PlanePolyCurve<S>>&);                                                 \
  template S area_discrepancy<S>(const std::vector<S>&, const std::vector<S>&, const S&, const S&, const S&,        \
                                 const S&, const S&, const S&);                                                     \
  template S area_discrepancy<S>(const JetTriple<S>&, const S&, const S&);                                          \
  template S velocity<S>(const std::vector<S>&, const std::vector<S>&, const S&, const S&);                         \
  template S velocity<S>(const JetTriple<S>&, const S&, const S&);                                                  \
  template AVReport<S> av_report<S>(const JetTriple<S>&, const S&, const S&);                                       \
  template ScaleProfile av_profile<S>(const JetTriple<S>&, const ScaleGrid&, const MeshPolicy&, Exec);              \
  template std::vector<AVReport<S>> av_pairs<S>(const JetTriple<S>&, const MeshPolicy&);                            \
  template JetTriple<S> left_translate<S>(const JetTriple<S>&, const HPoint<S>&);                                   \
  template HorizontalPiece<S> left_translate<S>(const HorizontalPiece<S>&, const HPoint<S>&);

HOROCURVE_INSTANTIATE_HEISENBERG(double)
HOROCURVE_INSTANTIATE_HEISENBERG(Rational)

}  // namespace horocurve
