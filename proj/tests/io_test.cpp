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

#include <sstream>

#include "horocurve/io.hpp"
#include "horocurve/scenarios.hpp"
#include "test_support.hpp"

namespace horocurve {
namespace {

using fixtures::q;
using R = Rational;

TEST(Json, RationalScalarsAreExactStrings) {
  EXPECT_EQ(scalar_to_json(q(-3, 8)), json("-3/8"));
  EXPECT_EQ(scalar_to_json(R(5)), json("5"));
  EXPECT_EQ(scalar_from_json<R>(json("-3/8")), q(-3, 8));
  EXPECT_EQ(scalar_from_json<R>(json(7)), R(7));
  EXPECT_EQ(scalar_from_json<R>(json(0.1)), q(1, 10));
  EXPECT_EQ(scalar_from_json<double>(json("1/4")), 0.25);
  EXPECT_THROW(scalar_from_json<R>(json("abc")), InputError);
  EXPECT_THROW(scalar_from_json<R>(json::array()), InputError);
}

TEST(Json, PolynomialForms) {
  const Poly<R> p(std::vector<R>{R(1), q(1, 3)}, R(2));
  // Rational output is expanded about 0: 1 + (x-2)/3 = 1/3 + x/3.
  EXPECT_EQ(poly_to_json(p), json({"1/3", "1/3"}));
  EXPECT_EQ(poly_from_json<R>(poly_to_json(p)), p);

  const Poly<double> d(std::vector<double>{1.0, 0.5}, 1.5);
  json jd = poly_to_json(d);
  ASSERT_TRUE(jd.is_object());
  EXPECT_EQ(jd.at("origin"), json(1.5));
  EXPECT_EQ(jd.at("coeffs"), json({1.0, 0.5}));
  Poly<double> back = poly_from_json<double>(jd);
  EXPECT_EQ(back.origin(), 1.5);
  EXPECT_EQ(back.coeffs(), d.coeffs());
  EXPECT_EQ(poly_to_json(Poly<double>(std::vector<double>{2.0})), json({2.0}));

  EXPECT_THROW(poly_from_json<R>(json({{"coeffs", json::array()}})), InputError);
  EXPECT_THROW(poly_from_json<R>(json("x")), InputError);
}

TEST(Json, InstanceRoundTrip) {
  for (int m = 1; m <= 3; ++m) {
    auto T = gen_valid_instance<R>(m, 8, static_cast<std::uint64_t>(m));
    json j = instance_to_json(T);
    auto U = instance_from_json<R>(json::parse(j.dump()));
    ASSERT_EQ(U.K.size(), T.K.size());
    EXPECT_EQ(U.m, T.m);
    for (const auto& sp : sample_points(T.K, MeshPolicy{2})) {
      EXPECT_EQ(U.F.values_at(sp.comp, sp.x), T.F.values_at(sp.comp, sp.x));
      EXPECT_EQ(U.H.values_at(sp.comp, sp.x), T.H.values_at(sp.comp, sp.x));
    }
  }
}

TEST(Json, CurveRoundTripBothModes) {
  auto T = gen_valid_instance<R>(2, 6, 3);
  auto c = glue_extension(T);
  auto c2 = curve_from_json<R>(json::parse(curve_to_json(c).dump()));
  ASSERT_EQ(c2.pieces.size(), c.pieces.size());
  for (std::size_t i = 0; i < c.pieces.size(); ++i) {
    EXPECT_EQ(c2.pieces[i].piece.h, c.pieces[i].piece.h);
    EXPECT_EQ(c2.pieces[i].kind, c.pieces[i].kind);
    EXPECT_EQ(c2.pieces[i].tag, c.pieces[i].tag);
  }
  for (const auto& j : c2.junctions) EXPECT_TRUE(j.ok);

  auto Tf = convert_triple<double>(T);
  auto cf = glue_extension(Tf);
  auto cf2 = curve_from_json<double>(json::parse(curve_to_json(cf).dump()));
  for (std::size_t i = 0; i < cf.pieces.size(); ++i) {
    EXPECT_EQ(cf2.pieces[i].piece.f.coeffs(), cf.pieces[i].piece.f.coeffs());
    EXPECT_EQ(cf2.pieces[i].piece.f.origin(), cf.pieces[i].piece.f.origin());
  }
  for (const auto& j : cf2.junctions) EXPECT_TRUE(j.ok);
}

TEST(Json, MalformedInstances) {
  auto bad = [](const char* text) { return json::parse(text); };
  EXPECT_THROW(instance_from_json<R>(bad(R"({"components": []})")), InputError);
  EXPECT_THROW(instance_from_json<R>(bad(R"({"m": 1, "components": []})")), InputError);
  EXPECT_THROW(instance_from_json<R>(bad(R"({"m": -1, "components": [{"point": 0, "F": [0], "G": [0], "H": [0]}]})")),
               InputError);
  EXPECT_THROW(instance_from_json<R>(bad(R"({"m": 1, "components": [{"point": 0, "F": [0], "G": [0,0], "H": [0,0]}]})")),
               InputError);
  EXPECT_THROW(instance_from_json<R>(bad(R"({"m": 1, "components": [{"interval": [1, 0], "F": [0], "G": [0], "H": [0]}]})")),
               InputError);
  EXPECT_THROW(instance_from_json<R>(bad(R"({"m": 1, "components": [{"interval": [0, 2], "F": [0], "G": [0], "H": [0]},
      {"interval": [1, 3], "F": [0], "G": [0], "H": [0]}]})")),
               InputError);
  EXPECT_THROW(instance_from_json<R>(bad(R"({"m": 1, "components": [{"point": "1/0", "F": [0,0], "G": [0,0], "H": [0,0]}]})")),
               InputError);
  EXPECT_THROW(curve_from_json<R>(bad(R"({"m": 1, "pieces": [{"interval": [0, 1], "f": [0], "g": [0], "h": [0], "case": "zz"}]})")),
               InputError);
  EXPECT_NO_THROW(instance_from_json<R>(bad(R"({"m": 1, "components": [{"point": "1/2", "F": [0, 1], "G": [0, 0], "H": [0, 0]}]})")));
}

TEST(Csv, SampleHeaderAndRows) {
  auto T = gen_valid_instance<R>(1, 4, 2);
  auto c = glue_extension(T);
  std::ostringstream os;
  const R step = R(c.domain().length() / 4);
  write_sample_csv(os, c, step);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,f,g,h,df,dg,dh,defect");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "0");
  }
  EXPECT_EQ(rows, 5);
  EXPECT_THROW(write_sample_csv(os, c, R(0)), InputError);
}

TEST(Csv, AreaVelocityRows) {
  std::vector<AVReport<R>> rows{{R(0), q(1, 2), R(1), q(1, 4), 4.0}};
  std::ostringstream os;
  write_av_csv(os, rows);
  EXPECT_EQ(os.str(), "a,b,A,V,ratio\n0,0.5,1,0.25,4\n");
}

}  // namespace
}  // namespace horocurve
