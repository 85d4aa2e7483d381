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

#include "horocurve/extender.hpp"
#include "horocurve/scenarios.hpp"
#include "test_support.hpp"

namespace horocurve {
namespace {

using fixtures::q;
using R = Rational;

TEST(Counterexample, Endpoints) {
  EXPECT_EQ(counterexample_c<R>(0), R(0));
  EXPECT_EQ(counterexample_d<R>(0), q(1, 4));
  EXPECT_EQ(counterexample_c<R>(1), q(1, 2));
  EXPECT_EQ(counterexample_d<R>(1), q(5, 8));
  EXPECT_EQ(counterexample_c<R>(3), q(7, 8));
  for (int n = 0; n < 10; ++n) EXPECT_EQ(R(counterexample_c<R>(n + 1) - counterexample_d<R>(n)), R(R(1) / ipow(R(2), n + 2)));
}

TEST(Counterexample, Structure) {
  auto T = gen_counterexample<R>({2, 5, true});
  ASSERT_EQ(T.K.size(), 6u);
  EXPECT_TRUE(T.K.component(5).degenerate());
  EXPECT_EQ(T.K.component(5).lo, R(1));
  EXPECT_EQ(T.H.value(3, counterexample_c<R>(3), 0), R(R(1) / ipow(R(3), 6)));
  EXPECT_EQ(T.H.value(5, R(1), 0), R(0));
  EXPECT_TRUE(check_condition2(T).empty());
  EXPECT_EQ(gen_counterexample<R>({1, 3, false}).K.size(), 3u);
  EXPECT_THROW(gen_counterexample<R>({0, 3, true}), std::invalid_argument);
}

TEST(Counterexample, RatioMatchesClosedForm) {
  for (int m = 1; m <= 4; ++m) {
    auto T = gen_counterexample<R>({m, 14, true});
    for (int n = 0; n <= 12; ++n) {
      const R a = counterexample_d<R>(n), b = counterexample_c<R>(n + 1);
      // Direct: A = 3^{-m(n+1)} - 3^{-mn}, V = (2^{-(n+2)})^{2m}.
      const R A = R(1) / ipow(R(3), m * (n + 1)) - R(1) / ipow(R(3), m * n);
      const R V = R(1) / ipow(R(2), 2 * m * (n + 2));
      auto rep = av_report(T, a, b);
      EXPECT_EQ(rep.A, A);
      EXPECT_EQ(rep.V, V);
      EXPECT_EQ(R(abs_of(rep.A) / rep.V), counterexample_ratio(m, n)) << "m=" << m << " n=" << n;
    }
  }
  EXPECT_EQ(counterexample_ratio(1, 0), q(32, 3));
}

TEST(Counterexample, ProfileDiverges) {
  auto T = gen_counterexample<R>({1, 8, true});
  auto prof = av_profile(T, ScaleGrid{}, MeshPolicy{2});
  auto tr = trend(prof.series[0]);
  EXPECT_GT(tr.slope, 0.1);
  EXPECT_FALSE(tr.ok);
}

TEST(C1Oracle, AgreesWithGeneralDiscrepancy) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto T = gen_valid_instance<R>(1, 6, seed);
    auto pts = sample_points(T.K, MeshPolicy{2});
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        EXPECT_EQ(c1_area_discrepancy(T, pts[i].x, pts[j].x), area_discrepancy(T, pts[i].x, pts[j].x));
  }
  EXPECT_THROW(c1_area_discrepancy(gen_valid_instance<R>(2, 3, 1), R(0), R(1)), std::invalid_argument);
}

TEST(C1Oracle, Example) {
  auto p = [](R v, R d) { return ComponentJet<R>::point({v, d}); };
  auto T = make_jet_triple<R>(1, {{R(0), R(0)}, {R(1), R(1)}}, {p(R(1), R(7)), p(R(2), R(0))},
                              {p(R(3), R(-1)), p(R(5), R(2))}, {p(R(0), R(-40)), p(R(4), R(0))});
  // 4 - 0 - 2(2·3 - 1·5) = 2
  EXPECT_EQ(c1_area_discrepancy(T, R(0), R(1)), R(2));
}

TEST(Generator, InstancesAreValidAndDeterministic) {
  for (int m = 1; m <= 4; ++m) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const int points = 3 + static_cast<int>(seed);
      auto vi = gen_valid_instance_with_source<R>(m, points, seed);
      const auto& T = vi.T;
      EXPECT_NO_THROW(T.validate());
      EXPECT_LE(T.K.size(), static_cast<std::size_t>(points));
      EXPECT_GE(T.K.hull().lo, R(0));
      EXPECT_LE(T.K.hull().hi, R(2));
      EXPECT_TRUE(check_condition2(T, MeshPolicy{4}).empty());
      EXPECT_NO_THROW(preflight(T));

      // Source spans join with matching derivatives 0..m.
      const auto& s = vi.source;
      for (std::size_t j = 1; j + 1 < s.breaks.size(); ++j)
        for (int k = 0; k <= m; ++k) {
          EXPECT_EQ(s.f[j - 1].derivative(k)(s.breaks[j]), s.f[j].derivative(k)(s.breaks[j]));
          EXPECT_EQ(s.g[j - 1].derivative(k)(s.breaks[j]), s.g[j].derivative(k)(s.breaks[j]));
          EXPECT_EQ(s.h[j - 1].derivative(k)(s.breaks[j]), s.h[j].derivative(k)(s.breaks[j]));
        }

      auto again = gen_valid_instance<R>(m, points, seed);
      ASSERT_EQ(again.K.size(), T.K.size());
      for (std::size_t i = 0; i < T.K.size(); ++i) {
        EXPECT_EQ(again.K.component(i).lo, T.K.component(i).lo);
        EXPECT_EQ(again.H.values_at(i, T.K.component(i).lo), T.H.values_at(i, T.K.component(i).lo));
      }
    }
  }
}

// F and G have dyadic coefficients; H does not (the lift divides by 3).
TEST(Generator, ConvertTripleRoundTripsDyadicData) {
  auto T = gen_valid_instance<R>(2, 8, 6);
  auto U = convert_triple<R>(convert_triple<double>(T));
  for (const auto& sp : sample_points(T.K, MeshPolicy{2})) {
    EXPECT_EQ(U.F.values_at(sp.comp, sp.x), T.F.values_at(sp.comp, sp.x));
    EXPECT_EQ(U.G.values_at(sp.comp, sp.x), T.G.values_at(sp.comp, sp.x));
  }
}

}  // namespace
}  // namespace horocurve
