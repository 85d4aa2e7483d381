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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "horocurve/parallel.hpp"
#include "horocurve/poly.hpp"
#include "horocurve/profile.hpp"

namespace horocurve {

/// Finite union of disjoint closed intervals, points allowed.
template <class S>
class CompactSet {
 public:
  CompactSet() = default;
  /// Components must be sorted with strictly positive gaps between them.
  explicit CompactSet(std::vector<Interval<S>> components);

  const std::vector<Interval<S>>& components() const { return comps_; }
  const Interval<S>& component(std::size_t i) const { return comps_[i]; }
  std::size_t size() const { return comps_.size(); }
  bool empty() const { return comps_.empty(); }

  /// Gap i is the open interval between component i and component i+1.
  std::vector<Interval<S>> gaps() const;
  Interval<S> gap(std::size_t i) const { return {comps_[i].hi, comps_[i + 1].lo}; }
  std::size_t gap_count() const { return comps_.empty() ? 0 : comps_.size() - 1; }

  Interval<S> hull() const { return {comps_.front().lo, comps_.back().hi}; }
  std::optional<std::size_t> component_of(const S& x) const;
  bool contains(const S& x) const { return component_of(x).has_value(); }

 private:
  std::vector<Interval<S>> comps_;
};

/// Jet data on one component: values F⁰..Fᵐ at a point, or one polynomial
/// whose derivatives give the jet on an interval.
template <class S>
class ComponentJet {
 public:
  static ComponentJet point(std::vector<S> values);
  static ComponentJet interval(Poly<S> p, int m);

  bool is_interval() const { return interval_; }
  int order() const { return m_; }
  const std::vector<S>& values() const { return values_; }
  const Poly<S>& poly() const { return derivs_.front(); }

  S value(const S& x, int k) const { return interval_ ? derivs_[static_cast<std::size_t>(k)](x) : values_[static_cast<std::size_t>(k)]; }
  std::vector<S> values_at(const S& x) const;

 private:
  bool interval_ = false;
  int m_ = 0;
  std::vector<S> values_;
  std::vector<Poly<S>> derivs_;  // D⁰p..Dᵐp
};

/// Order-m jet on a compact set, one ComponentJet per component.
template <class S>
struct Jet {
  int m = 0;
  std::vector<ComponentJet<S>> data;

  S value(std::size_t comp, const S& x, int k) const { return data[comp].value(x, k); }
  std::vector<S> values_at(std::size_t comp, const S& x) const { return data[comp].values_at(x); }
};

template <class S>
struct JetTriple {
  CompactSet<S> K;
  int m = 0;
  Jet<S> F, G, H;

  /// Checks shared order, component counts and point/interval kinds.
  void validate() const;
  std::size_t require_component(const S& x) const;
};

/// Builds a triple, merging components that touch when their data agree.
template <class S>
JetTriple<S> make_jet_triple(int m, std::vector<Interval<S>> components, std::vector<ComponentJet<S>> F,
                             std::vector<ComponentJet<S>> G, std::vector<ComponentJet<S>> H);

/// T_a^m F as a polynomial in x.
template <class S>
Poly<S> taylor_poly(const std::vector<S>& jet_at_a, const S& a);
template <class S>
Poly<S> taylor_poly(const Jet<S>& F, const CompactSet<S>& K, const S& a);

/// Same polynomial in the local variable s = x - a.
template <class S>
Poly<S> taylor_poly_local(const std::vector<S>& jet_at_a);

/// Fᵏ(b) - Σ_{ℓ=0}^{m-k} F^{k+ℓ}(a)(b-a)^ℓ/ℓ!
template <class S>
S remainder(const std::vector<S>& jet_a, const std::vector<S>& jet_b, const S& a, const S& b, int k);
template <class S>
S remainder(const Jet<S>& F, const CompactSet<S>& K, const S& a, const S& b, int k);

struct MeshPolicy {
  int divisions = 64;  // per interval component
};

template <class S>
struct SamplePoint {
  std::size_t comp;
  S x;
};

template <class S>
std::vector<SamplePoint<S>> sample_points(const CompactSet<S>& K, const MeshPolicy& mesh);

/// Series k = 0..m: sup over sampled pairs of |remainder_k| / |b-a|^{m-k}.
template <class S>
ScaleProfile whitney_profile(const Jet<S>& F, const CompactSet<S>& K, const ScaleGrid& grid, const MeshPolicy& mesh,
                             Exec exec = Exec::Parallel);

}  // namespace horocurve
