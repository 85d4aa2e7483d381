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

// The first Heisenberg group, horizontality algebra, lifts, and the
// area-discrepancy / velocity functionals.

#pragma once

#include <cstddef>
#include <vector>

#include "horocurve/jetspace.hpp"
#include "horocurve/poly.hpp"

namespace horocurve {

/// Relative coefficient tolerance for "defect is identically zero" in float mode.
inline constexpr double kHorizTolerance = 1e-10;

template <class S>
struct HPoint {
  S x{}, y{}, t{};
  friend bool operator==(const HPoint& a, const HPoint& b) { return a.x == b.x && a.y == b.y && a.t == b.t; }
};

/// (x,y,t)(x',y',t') = (x+x', y+y', t+t'+2(yx'-xy'))
template <class S>
HPoint<S> group_mul(const HPoint<S>& p, const HPoint<S>& q) {
  return {S(p.x + q.x), S(p.y + q.y), S(p.t + q.t + 2 * (p.y * q.x - p.x * q.y))};
}

template <class S>
HPoint<S> group_inv(const HPoint<S>& p) {
  return {S(-p.x), S(-p.y), S(-p.t)};
}

/// k-th derivative of 2(f'g - g'f) from the jets F⁰..Fᵏ, G⁰..Gᵏ.
template <class S>
S leibniz_horizontality(int k, const std::vector<S>& F, const std::vector<S>& G);

template <class S>
struct Condition2Violation {
  std::size_t component;
  S x;
  int k;
  S magnitude;  // |Hᵏ - 𝒫ᵏ|
};

/// Hᵏ = 𝒫ᵏ for 1 ≤ k ≤ m at point components and mesh points of interval
/// components. Exact in rational mode; float mode allows kHorizTolerance
/// relative to the size of the terms.
template <class S>
std::vector<Condition2Violation<S>> check_condition2(const JetTriple<S>& T, const MeshPolicy& mesh = {});

template <class S>
struct PlanePolyCurve {
  Interval<S> domain;
  Poly<S> f, g;
};

/// h' - 2(f'g - g'f)
template <class S>
Poly<S> horizontality_defect(const Poly<S>& f, const Poly<S>& g, const Poly<S>& h);

template <class S>
struct HorizontalPiece {
  Interval<S> domain;
  Poly<S> f, g, h;
  Poly<S> defect;

  HorizontalPiece() = default;
  HorizontalPiece(Interval<S> d, Poly<S> f_, Poly<S> g_, Poly<S> h_)
      : domain(std::move(d)), f(std::move(f_)), g(std::move(g_)), h(std::move(h_)), defect(horizontality_defect(f, g, h)) {}

  /// Largest defect coefficient relative to max(1, size of the terms).
  double defect_size() const;
  bool horizontal(double tol = kHorizTolerance) const;
};

/// h = h0 + 2∫_lo^x (f'g - fg')
template <class S>
HorizontalPiece<S> horizontal_lift(const PlanePolyCurve<S>& c, const S& h0);

/// (1/2)∫(f g' - g f'); the curve must start at the origin.
template <class S>
S signed_area(const PlanePolyCurve<S>& c);
/// Concatenated curve; the first piece must start at the origin.
template <class S>
S signed_area(const std::vector<PlanePolyCurve<S>>& pieces);

template <class S>
struct AVReport {
  S a, b;
  S A, V;
  double ratio = 0.0;  // A / V
};

template <class S>
S area_discrepancy(const std::vector<S>& Fa, const std::vector<S>& Ga, const S& Ha, const S& Fb, const S& Gb,
                   const S& Hb, const S& a, const S& b);
template <class S>
S area_discrepancy(const JetTriple<S>& T, const S& a, const S& b);

template <class S>
S velocity(const std::vector<S>& Fa, const std::vector<S>& Ga, const S& a, const S& b);
template <class S>
S velocity(const JetTriple<S>& T, const S& a, const S& b);

template <class S>
AVReport<S> av_report(const JetTriple<S>& T, const S& a, const S& b);

/// Scale-binned sup of |A|/V over sampled pairs.
template <class S>
ScaleProfile av_profile(const JetTriple<S>& T, const ScaleGrid& grid, const MeshPolicy& mesh, Exec exec = Exec::Parallel);

/// Every sampled pair in (a, b) order; used for CSV export.
template <class S>
std::vector<AVReport<S>> av_pairs(const JetTriple<S>& T, const MeshPolicy& mesh);

/// Applies base⁻¹ · (f, g, h) to every jet value / polynomial.
template <class S>
JetTriple<S> left_translate(const JetTriple<S>& T, const HPoint<S>& base);
template <class S>
HorizontalPiece<S> left_translate(const HorizontalPiece<S>& p, const HPoint<S>& base);

}  // namespace horocurve
