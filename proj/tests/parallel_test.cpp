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

// The parallel kernels must agree bit for bit with the serial ones.

#include <gtest/gtest.h>

#include "horocurve/extender.hpp"
#include "horocurve/io.hpp"
#include "horocurve/scenarios.hpp"

namespace horocurve {
namespace {

using R = Rational;

void expect_same(const ScaleProfile& a, const ScaleProfile& b) {
  ASSERT_EQ(a.series.size(), b.series.size());
  for (std::size_t s = 0; s < a.series.size(); ++s) {
    const auto& x = a.series[s].bins;
    const auto& y = b.series[s].bins;
    ASSERT_EQ(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_EQ(x[i].level, y[i].level);
      EXPECT_EQ(x[i].ratio, y[i].ratio);
      EXPECT_EQ(x[i].a, y[i].a);
      EXPECT_EQ(x[i].b, y[i].b);
      EXPECT_EQ(x[i].count, y[i].count);
    }
  }
}

TEST(Parallel, ThreadBudgetPositive) { EXPECT_GE(thread_budget(), 1); }

TEST(Parallel, WhitneyProfileMatchesSerial) {
  for (int m = 1; m <= 3; ++m) {
    auto T = gen_valid_instance<double>(m, 12, static_cast<std::uint64_t>(m));
    expect_same(whitney_profile(T.F, T.K, ScaleGrid{2}, MeshPolicy{16}, Exec::Serial),
                whitney_profile(T.F, T.K, ScaleGrid{2}, MeshPolicy{16}, Exec::Parallel));
  }
}

TEST(Parallel, AreaProfileMatchesSerial) {
  auto T = gen_valid_instance<R>(2, 10, 9);
  expect_same(av_profile(T, ScaleGrid{}, MeshPolicy{8}, Exec::Serial),
              av_profile(T, ScaleGrid{}, MeshPolicy{8}, Exec::Parallel));
  auto C = gen_counterexample<double>({2, 10, true});
  expect_same(av_profile(C, ScaleGrid{3}, MeshPolicy{8}, Exec::Serial),
              av_profile(C, ScaleGrid{3}, MeshPolicy{8}, Exec::Parallel));
}

TEST(Parallel, GlueMatchesSerial) {
  for (int m = 1; m <= 3; ++m) {
    auto T = gen_valid_instance<R>(m, 16, static_cast<std::uint64_t>(40 + m));
    EXPECT_EQ(curve_to_json(glue_extension(T, Exec::Serial)), curve_to_json(glue_extension(T, Exec::Parallel)));
    auto Tf = convert_triple<double>(T);
    EXPECT_EQ(curve_to_json(glue_extension(Tf, Exec::Serial)), curve_to_json(glue_extension(Tf, Exec::Parallel)));
  }
}

TEST(BinAccumulator, MergeKeepsBestAndCounts) {
  ScaleGrid g;
  BinAccumulator a(1), b(1);
  a.add(0, 1, 2.0, 0.1, 0.6);
  a.add(0, 1, 1.0, 0.0, 0.5);
  b.add(0, 1, 2.0, 0.05, 0.55);
  b.add(0, 2, 3.0, 0.2, 0.4);
  a.merge(b);
  auto bins = a.bins(0, g);
  ASSERT_EQ(bins.size(), 2u);
  EXPECT_EQ(bins[0].count, 3u);
  EXPECT_EQ(bins[0].ratio, 2.0);
  EXPECT_EQ(bins[0].a, 0.05);  // ties broken by smaller a
  EXPECT_EQ(bins[1].scale, 0.25);
}

TEST(Trend, SlopeOfGeometricSeries) {
  ProfileSeries up, down;
  for (int l = 0; l < 6; ++l) {
    up.bins.push_back({l, 0, std::exp(0.5 * l), 0, 0, 1});
    down.bins.push_back({l, 0, std::exp(-0.5 * l), 0, 0, 1});
  }
  EXPECT_NEAR(trend(up).slope, 0.5, 1e-12);
  EXPECT_FALSE(trend(up).ok);
  EXPECT_NEAR(trend(down).slope, -0.5, 1e-12);
  EXPECT_TRUE(trend(down).ok);
  ProfileSeries short_series;
  short_series.bins.push_back({0, 1, 5, 0, 0, 1});
  EXPECT_TRUE(trend(short_series).ok);
}

}  // namespace
}  // namespace horocurve
