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

#include <gtest/gtest.h>

#include <random>

#include "horocurve/heisenberg.hpp"
#include "horocurve/scenarios.hpp"
#include "test_support.hpp"

namespace horocurve {
namespace {

using fixtures::q;
using R = Rational;
using HP = HPoint<R>;

Poly<R> PR(std::initializer_list<long> c) {
  std::vector<R> v;
  for (long x : c) v.push_back(R(x));
  return Poly<R>(std::move(v));
}

std::vector<R> jet_of(const Poly<R>& p, int m, const R& x) {
  std::vector<R> v;
  for (int k = 0; k <= m; ++k) v.push_back(p.derivative(k)(x));
  return v;
}

HP rand_point(std::mt19937_64& rng) {
  return {fixtures::rand_dyadic(rng, 16, 4), fixtures::rand_dyadic(rng, 16, 4), fixtures::rand_dyadic(rng, 16, 4)};
}

TEST(Group, Examples) {
  EXPECT_EQ(group_mul(HP{R(1), R(0), R(0)}, HP{R(0), R(1), R(0)}), (HP{R(1), R(1), R(-2)}));
  const HP p{q(3, 2), R(-2), q(5, 7)};
  EXPECT_EQ(group_mul(HP{}, p), p);
  EXPECT_EQ(group_mul(p, group_inv(p)), HP{});
}

TEST(Group, Axioms) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    HP a = rand_point(rng), b = rand_point(rng), c = rand_point(rng);
    EXPECT_EQ(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c)));
    EXPECT_EQ(group_mul(a, HP{}), a);
    EXPECT_EQ(group_mul(group_inv(a), a), HP{});
  }
}

TEST(Leibniz, Examples) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    std::vector<R> F, G;
    for (int k = 0; k <= 3; ++k) {
      F.push_back(fixtures::rand_dyadic(rng, 9, 2));
      G.push_back(fixtures::rand_dyadic(rng, 9, 2));
    }
    EXPECT_EQ(leibniz_horizontality(1, F, G), R(2 * (F[1] * G[0] - G[1] * F[0])));
    EXPECT_EQ(leibniz_horizontality(2, F, G), R(2 * (F[2] * G[0] - G[2] * F[0])));
  }
  std::vector<R> z(4, R(0));
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(leibniz_horizontality(k, z, z), R(0));
  EXPECT_THROW(leibniz_horizontality(0, z, z), std::invalid_argument);
}

TEST(Leibniz, MatchesDerivativesOfTheLift) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const Poly<R> f = fixtures::rand_poly(rng, 1 + i % 5), g = fixtures::rand_poly(rng, 1 + (i + 2) % 5);
    const auto piece = horizontal_lift(PlanePolyCurve<R>{{R(-1), R(2)}, f, g}, fixtures::rand_dyadic(rng, 8, 4));
    const R x = fixtures::rand_dyadic(rng, 4, 4);
    const int m = 6;
    const auto F = jet_of(f, m, x), G = jet_of(g, m, x);
    for (int k = 1; k <= m; ++k) EXPECT_EQ(leibniz_horizontality(k, F, G), fixtures::deriv_naive(piece.h, k, x));
  }
}

JetTriple<R> point_triple(int m, std::vector<R> F, std::vector<R> G, std::vector<R> H) {
  return make_jet_triple<R>(m, {{R(0), R(0)}}, {ComponentJet<R>::point(std::move(F))},
                            {ComponentJet<R>::point(std::move(G))}, {ComponentJet<R>::point(std::move(H))});
}

TEST(Condition2, Examples) {
  for (int m = 1; m <= 4; ++m) EXPECT_TRUE(check_condition2(gen_counterexample<R>({m, 4, true})).empty());
  auto bad = check_condition2(point_triple(2, {R(0), R(0), R(0)}, {R(0), R(0), R(0)}, {R(0), R(1), R(0)}));
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0].k, 1);
  EXPECT_EQ(bad[0].magnitude, R(1));
}

TEST(Lift, Examples) {
  const Interval<R> I(R(0), R(1));
  const Poly<R> t = Poly<R>::identity();
  EXPECT_TRUE(horizontal_lift(PlanePolyCurve<R>{I, t, t}, R(0)).h.is_zero());
  auto p = horizontal_lift(PlanePolyCurve<R>{I, t, PR({0, 0, 1})}, R(0));
  EXPECT_EQ(p.h, Poly<R>(std::vector<R>{R(0), R(0), R(0), q(-2, 3)}));
  EXPECT_EQ(p.h(R(1)), q(-2, 3));
  const Interval<R> J(R(2), R(5));
  auto c = horizontal_lift(PlanePolyCurve<R>{J, t, Poly<R>::constant(q(3, 2))}, R(7));
  EXPECT_EQ(c.h, Poly<R>(std::vector<R>{R(7 - 6), R(3)}));
  EXPECT_TRUE(c.horizontal());
  EXPECT_EQ(c.defect_size(), 0.0);
}

TEST(Lift, DefectOfPerturbedHeight) {
  const Interval<R> I(R(0), R(1));
  auto p = horizontal_lift(PlanePolyCurve<R>{I, PR({1, 2}), PR({0, -1, 3})}, R(0));
  HorizontalPiece<R> bad(I, p.f, p.g, p.h + Poly<R>::identity());
  EXPECT_EQ(bad.defect, Poly<R>::constant(R(1)));
  EXPECT_FALSE(bad.horizontal());
}

TEST(SignedArea, Examples) {
  const Interval<R> I(R(0), R(1));
  const Poly<R> t = Poly<R>::identity();
  EXPECT_EQ(signed_area(PlanePolyCurve<R>{I, t, t}), R(0));
  EXPECT_EQ(signed_area(PlanePolyCurve<R>{I, t, PR({0, 0, 1})}), q(1, 6));
  EXPECT_THROW(signed_area(PlanePolyCurve<R>{I, PR({1, 1}), t}), std::invalid_argument);
}

// Polygon traversal, vertex i reached at parameter i.
std::vector<PlanePolyCurve<R>> polygon_curve(const std::vector<std::pair<R, R>>& v) {
  std::vector<PlanePolyCurve<R>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& [x0, y0] = v[i];
    const auto& [x1, y1] = v[(i + 1) % v.size()];
    const R s(static_cast<long>(i));
    // Linear in t on [s, s+1]: p(t) = p0 + (p1 - p0)(t - s).
    out.push_back({{s, R(s + 1)}, Poly<R>(std::vector<R>{R(x0 - (x1 - x0) * s), R(x1 - x0)}),
                   Poly<R>(std::vector<R>{R(y0 - (y1 - y0) * s), R(y1 - y0)})});
  }
  return out;
}

TEST(SignedArea, UnitSquareAndRandomPolygons) {
  std::vector<std::pair<R, R>> sq{{R(0), R(0)}, {R(1), R(0)}, {R(1), R(1)}, {R(0), R(1)}};
  EXPECT_EQ(signed_area(polygon_curve(sq)), R(1));
  EXPECT_EQ(fixtures::shoelace2(sq), R(2));
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<R, R>> v{{R(0), R(0)}};
    for (int i = 0; i < 3 + trial % 6; ++i) v.emplace_back(fixtures::rand_dyadic(rng, 20, 4), fixtures::rand_dyadic(rng, 20, 4));
    EXPECT_EQ(signed_area(polygon_curve(v)), R(fixtures::shoelace2(v) / 2));
  }
}

TEST(SignedArea, LiftEndpointIsMinusFourTimesArea) {
  // h(end) = 2∫(f'g - fg') = -4·area for a curve from the origin with h0 = 0.
  const Interval<R> I(R(0), R(1));
  const Poly<R> f = PR({0, 3, -1}), g = PR({0, 1, 0, 2});
  auto p = horizontal_lift(PlanePolyCurve<R>{I, f, g}, R(0));
  EXPECT_EQ(p.h(R(1)), R(-4 * signed_area(PlanePolyCurve<R>{I, f, g})));
}

TEST(AreaVelocity, ZeroJetExamples) {
  for (int m = 1; m <= 3; ++m) {
    std::vector<R> z(static_cast<std::size_t>(m) + 1, R(0));
    const R a = q(1, 3), b = q(7, 8);
    EXPECT_EQ(area_discrepancy(z, z, R(5), R(0), R(0), R(2), a, b), R(-3));
    EXPECT_EQ(velocity(z, z, a, b), ipow(R(b - a), 2 * m));
  }
}

TEST(AreaVelocity, OrderOneClosedForms) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    auto r = [&] { return fixtures::rand_dyadic(rng, 12, 4); };
    std::vector<R> Fa{r(), r()}, Ga{r(), r()};
    const R Ha = r(), Fb = r(), Gb = r(), Hb = r();
    const R a = r(), b = R(a + q(1 + i % 7, 8));
    EXPECT_EQ(area_discrepancy(Fa, Ga, Ha, Fb, Gb, Hb, a, b), R(Hb - Ha - 2 * (Fb * Ga[0] - Fa[0] * Gb)));
    const R d = b - a;
    EXPECT_EQ(velocity(Fa, Ga, a, b), R(d * d * (1 + abs_of(Fa[1]) + abs_of(Ga[1]))));
  }
  EXPECT_EQ(velocity<R>({R(0), R(3)}, {R(0), R(4)}, R(0), q(1, 2)), R(2));
  EXPECT_THROW(velocity<R>({R(0), R(3)}, {R(0), R(4)}, R(1), R(1)), std::invalid_argument);
  EXPECT_THROW(area_discrepancy<R>({R(0), R(0)}, {R(0), R(0)}, R(0), R(0), R(0), R(0), R(1), R(0)),
               std::invalid_argument);
}

TEST(AreaVelocity, HorizontalPolynomialTripleHasZeroDiscrepancy) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 60; ++i) {
    const int m = 1 + i % 4;
    const Poly<R> f = fixtures::rand_poly(rng, m), g = fixtures::rand_poly(rng, m);
    const auto h = horizontal_lift(PlanePolyCurve<R>{{R(-2), R(2)}, f, g}, fixtures::rand_dyadic(rng, 8, 4)).h;
    const R a = fixtures::rand_dyadic(rng, 4, 4), b = R(a + q(1 + i % 5, 4));
    EXPECT_EQ(area_discrepancy(jet_of(f, m, a), jet_of(g, m, a), h(a), f(b), g(b), h(b), a, b), R(0));
  }
}

TEST(AVProfile, ZeroJetsGiveZeroRatios) {
  const int m = 2;
  auto z = ComponentJet<R>::interval(Poly<R>(), m);
  auto T = make_jet_triple<R>(m, {{R(0), q(1, 4)}, {q(1, 2), R(1)}}, {z, z}, {z, z}, {z, z});
  auto prof = av_profile(T, ScaleGrid{}, MeshPolicy{4});
  EXPECT_EQ(prof.series.at(0).sup(), 0.0);
}

TEST(LeftTranslate, IdentityIsNoop) {
  auto T = gen_valid_instance<R>(2, 6, 5);
  auto U = left_translate(T, HP{});
  for (std::size_t i = 0; i < T.K.size(); ++i) {
    const R x = T.K.component(i).lo;
    EXPECT_EQ(T.F.values_at(i, x), U.F.values_at(i, x));
    EXPECT_EQ(T.G.values_at(i, x), U.G.values_at(i, x));
    EXPECT_EQ(T.H.values_at(i, x), U.H.values_at(i, x));
  }
}

TEST(LeftTranslate, PreservesConditionTwoAreaAndVelocity) {
  std::mt19937_64 rng(12);
  for (int seed = 1; seed <= 12; ++seed) {
    const int m = 1 + seed % 4;
    auto T = gen_valid_instance<R>(m, 6, static_cast<std::uint64_t>(seed));
    auto U = left_translate(T, rand_point(rng));
    EXPECT_TRUE(check_condition2(U, MeshPolicy{4}).empty());
    auto pa = av_pairs(T, MeshPolicy{2}), pb = av_pairs(U, MeshPolicy{2});
    ASSERT_EQ(pa.size(), pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
      EXPECT_EQ(pa[i].A, pb[i].A);
      EXPECT_EQ(pa[i].V, pb[i].V);
    }
  }
}

TEST(LeftTranslate, KeepsPiecesHorizontal) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 30; ++i) {
    auto p = horizontal_lift(PlanePolyCurve<R>{{R(0), R(1)}, fixtures::rand_poly(rng, 3), fixtures::rand_poly(rng, 4)},
                             R(1));
    const HP base = rand_point(rng);
    auto t = left_translate(p, base);
    EXPECT_TRUE(t.defect.is_zero());
    // Pointwise it is the group product base⁻¹·γ(x).
    const R x = q(1, 3);
    EXPECT_EQ((HP{t.f(x), t.g(x), t.h(x)}), group_mul(group_inv(base), HP{p.f(x), p.g(x), p.h(x)}));
  }
}

}  // namespace
}  // namespace horocurve
