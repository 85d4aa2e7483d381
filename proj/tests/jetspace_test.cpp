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

#include "horocurve/jetspace.hpp"
#include "horocurve/scenarios.hpp"
#include "test_support.hpp"

namespace horocurve {
namespace {

using fixtures::q;
using R = Rational;

Poly<R> PR(std::initializer_list<long> c) {
  std::vector<R> v;
  for (long x : c) v.push_back(R(x));
  return Poly<R>(std::move(v));
}

TEST(CompactSet, GapsAndLookup) {
  CompactSet<R> K({{R(0), R(1)}, {R(2), R(2)}, {R(3), R(5)}});
  ASSERT_EQ(K.gap_count(), 2u);
  EXPECT_EQ(K.gap(0).lo, R(1));
  EXPECT_EQ(K.gap(0).hi, R(2));
  EXPECT_EQ(K.gap(1).lo, R(2));
  EXPECT_EQ(K.gap(1).hi, R(3));
  EXPECT_EQ(K.component_of(q(1, 2)), std::optional<std::size_t>(0));
  EXPECT_EQ(K.component_of(R(2)), std::optional<std::size_t>(1));
  EXPECT_EQ(K.component_of(R(5)), std::optional<std::size_t>(2));
  EXPECT_FALSE(K.contains(q(3, 2)));
  EXPECT_FALSE(K.contains(R(-1)));
  EXPECT_FALSE(K.contains(R(6)));
}

TEST(CompactSet, RejectsUnsortedOrOverlapping) {
  EXPECT_THROW(CompactSet<R>({{R(0), R(2)}, {R(1), R(3)}}), std::invalid_argument);
  EXPECT_THROW(CompactSet<R>({{R(2), R(3)}, {R(0), R(1)}}), std::invalid_argument);
  EXPECT_THROW(CompactSet<R>(std::vector<Interval<R>>{}), std::invalid_argument);
}

TEST(MakeJetTriple, SortsAndMergesTouchingComponents) {
  const int m = 1;
  auto pt = [](long v, long d) { return ComponentJet<R>::point({R(v), R(d)}); };
  // [1,2] carries p = x, and the point 1 carries the matching jet (1, 1).
  auto T = make_jet_triple<R>(m, {{R(1), R(2)}, {R(1), R(1)}, {R(-1), R(-1)}},
                              {ComponentJet<R>::interval(PR({0, 1}), m), pt(1, 1), pt(0, 0)},
                              {ComponentJet<R>::interval(Poly<R>(), m), pt(0, 0), pt(0, 0)},
                              {ComponentJet<R>::interval(Poly<R>(), m), pt(0, 0), pt(0, 0)});
  ASSERT_EQ(T.K.size(), 2u);
  EXPECT_EQ(T.K.component(0).lo, R(-1));
  EXPECT_EQ(T.K.component(1).lo, R(1));
  EXPECT_EQ(T.K.component(1).hi, R(2));
  EXPECT_NO_THROW(T.validate());
}

TEST(MakeJetTriple, RejectsInconsistentTouchingData) {
  const int m = 1;
  auto z = ComponentJet<R>::interval(Poly<R>(), m);
  EXPECT_THROW(make_jet_triple<R>(m, {{R(0), R(1)}, {R(1), R(1)}}, {z, ComponentJet<R>::point({R(5), R(0)})}, {z, z},
                                  {z, z}),
               std::invalid_argument);
  EXPECT_THROW(make_jet_triple<R>(m, {{R(0), R(2)}, {R(1), R(3)}}, {z, z}, {z, z}, {z, z}), std::invalid_argument);
  EXPECT_THROW(make_jet_triple<R>(2, {{R(0), R(1)}}, {z}, {z}, {z}), std::invalid_argument);
}

TEST(Taylor, Examples) {
  // Jet (1, 2, 6) at 0 is 1 + 2x + 3x².
  EXPECT_EQ(taylor_poly<R>({R(1), R(2), R(6)}, R(0)), PR({1, 2, 3}));
  EXPECT_TRUE(taylor_poly<R>({R(0), R(0), R(0)}, R(5)).is_zero());
  // Read the jet of 1 + x³ at 2 and expand it back.
  const Poly<R> p = PR({1, 0, 0, 1});
  std::vector<R> jet;
  for (int k = 0; k <= 3; ++k) jet.push_back(p.derivative(k)(R(2)));
  EXPECT_EQ(jet, (std::vector<R>{R(9), R(12), R(12), R(6)}));
  const Poly<R> T = taylor_poly(jet, R(2)).global();
  EXPECT_EQ(T.coeffs(), p.coeffs());
}

TEST(Taylor, ReproducesJetAtBasePoint) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 5;
    std::vector<R> jet;
    for (int k = 0; k <= m; ++k) jet.push_back(fixtures::rand_dyadic(rng, 20, 8));
    const R a = fixtures::rand_dyadic(rng, 16, 4);
    const Poly<R> T = taylor_poly(jet, a);
    EXPECT_LE(T.degree(), m);
    for (int k = 0; k <= m; ++k) EXPECT_EQ(fixtures::deriv_naive(T, k, a), jet[static_cast<std::size_t>(k)]);
  }
}

TEST(Remainder, Examples) {
  // Polynomial jets have zero remainder.
  const Poly<R> p = PR({3, -1, 2, 5});
  auto jet_at = [&](const R& x) {
    std::vector<R> v;
    for (int k = 0; k <= 3; ++k) v.push_back(p.derivative(k)(x));
    return v;
  };
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(remainder(jet_at(R(-2)), jet_at(q(7, 3)), R(-2), q(7, 3), k), R(0));
  // a = b gives zero for any data.
  std::vector<R> J{R(4), R(-3)};
  EXPECT_EQ(remainder(J, J, R(1), R(1), 0), R(0));
  EXPECT_EQ(remainder(J, J, R(1), R(1), 1), R(0));
  EXPECT_THROW(remainder(J, J, R(0), R(1), 2), std::invalid_argument);
}

TEST(Remainder, CounterexampleJump) {
  for (int m = 1; m <= 4; ++m) {
    auto T = gen_counterexample<R>({m, 3, true});
    const R a = counterexample_d<R>(0), b = counterexample_c<R>(1);
    // H is locally constant: the k=0 remainder is the jump 3^{-m} - 1.
    EXPECT_EQ(remainder(T.H, T.K, a, b, 0), R(R(1) / ipow(R(3), m) - 1));
    for (int k = 1; k <= m; ++k) EXPECT_EQ(remainder(T.H, T.K, a, b, k), R(0));
    EXPECT_EQ(remainder(T.H, T.K, counterexample_c<R>(1), counterexample_d<R>(0), 0), R(1 - R(1) / ipow(R(3), m)));
  }
}

TEST(WhitneyProfile, SinglePolynomialIsFlat) {
  const int m = 3;
  CompactSet<R> K({{R(0), q(1, 2)}, {R(1), R(1)}, {q(3, 2), R(2)}});
  const Poly<R> p = PR({1, -2, 0, 3});
  Jet<R> F{m, {}};
  F.data.push_back(ComponentJet<R>::interval(p, m));
  std::vector<R> v;
  for (int k = 0; k <= m; ++k) v.push_back(p.derivative(k)(R(1)));
  F.data.push_back(ComponentJet<R>::point(v));
  F.data.push_back(ComponentJet<R>::interval(p, m));
  auto prof = whitney_profile(F, K, ScaleGrid{}, MeshPolicy{8});
  ASSERT_EQ(prof.series.size(), 4u);
  for (const auto& s : prof.series) {
    EXPECT_FALSE(s.bins.empty());
    EXPECT_EQ(s.sup(), 0.0) << s.name;
  }
}

TEST(WhitneyProfile, TwoPointExample) {
  CompactSet<R> K({{R(0), R(0)}, {R(1), R(1)}});
  Jet<R> F{1, {ComponentJet<R>::point({R(0), R(0)}), ComponentJet<R>::point({R(1), R(0)})}};
  auto prof = whitney_profile(F, K, ScaleGrid{}, MeshPolicy{});
  ASSERT_EQ(prof.series.size(), 2u);
  ASSERT_EQ(prof.series[0].bins.size(), 1u);
  EXPECT_EQ(prof.series[0].bins[0].level, 0);
  EXPECT_DOUBLE_EQ(prof.series[0].bins[0].ratio, 1.0);
  EXPECT_DOUBLE_EQ(prof.series[1].bins[0].ratio, 0.0);
}

TEST(WhitneyProfile, CounterexampleRatioDecays) {
  for (int m = 1; m <= 3; ++m) {
    auto T = gen_counterexample<R>({m, 8, true});
    auto prof = whitney_profile(T.H, T.K, ScaleGrid{}, MeshPolicy{4});
    const auto& s0 = prof.series[0];
    auto tr = trend(s0);
    EXPECT_GE(tr.bins_used, 3u);
    EXPECT_LT(tr.slope, 0.0) << "m=" << m;
    // Across the gap (d_n, c_{n+1}) of length 2^{-(n+2)} the ratio is (1 - 3^{-m}) 4^m (2/3)^{mn}.
    for (int n = 0; n < 7; ++n) {
      const double closed = (1 - std::pow(3.0, -m)) * std::pow(4.0, m) * std::pow(2.0 / 3.0, m * n);
      bool found = false;
      for (const auto& b : s0.bins)
        if (b.level == n + 2) {
          found = true;
          EXPECT_GE(b.ratio, closed * (1 - 1e-12));
          if (m == 1) {
            EXPECT_LE(b.ratio, 4 * std::pow(2.0 / 3.0, n) * (1 + 1e-12));
          }
        }
      EXPECT_TRUE(found);
    }
  }
}

TEST(WhitneyProfile, InvariantUnderAddingPolynomial) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 1 + trial % 3;
    CompactSet<R> K({{R(0), q(1, 4)}, {q(1, 2), q(1, 2)}, {q(3, 4), R(1)}});
    Jet<R> F{m, {}}, F2{m, {}};
    const Poly<R> add = fixtures::rand_poly(rng, m);
    for (std::size_t i = 0; i < K.size(); ++i) {
      if (K.component(i).degenerate()) {
        std::vector<R> v, w;
        for (int k = 0; k <= m; ++k) {
          v.push_back(fixtures::rand_dyadic(rng, 8, 4));
          w.push_back(R(v.back() + add.derivative(k)(K.component(i).lo)));
        }
        F.data.push_back(ComponentJet<R>::point(v));
        F2.data.push_back(ComponentJet<R>::point(w));
      } else {
        const Poly<R> p = fixtures::rand_poly(rng, m + 1);
        F.data.push_back(ComponentJet<R>::interval(p, m));
        F2.data.push_back(ComponentJet<R>::interval(p + add, m));
      }
    }
    auto a = whitney_profile(F, K, ScaleGrid{}, MeshPolicy{4}, Exec::Serial);
    auto b = whitney_profile(F2, K, ScaleGrid{}, MeshPolicy{4}, Exec::Serial);
    ASSERT_EQ(a.series.size(), b.series.size());
    for (std::size_t s = 0; s < a.series.size(); ++s) {
      ASSERT_EQ(a.series[s].bins.size(), b.series[s].bins.size());
      for (std::size_t i = 0; i < a.series[s].bins.size(); ++i)
        EXPECT_DOUBLE_EQ(a.series[s].bins[i].ratio, b.series[s].bins[i].ratio);
    }
  }
}

TEST(SamplePoints, MeshIncludesEndpoints) {
  CompactSet<R> K({{R(0), R(1)}, {R(2), R(2)}});
  auto pts = sample_points(K, MeshPolicy{4});
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_EQ(pts[0].x, R(0));
  EXPECT_EQ(pts[1].x, q(1, 4));
  EXPECT_EQ(pts[4].x, R(1));
  EXPECT_EQ(pts[5].x, R(2));
  EXPECT_EQ(pts[5].comp, 1u);
}

}  // namespace
}  // namespace horocurve
