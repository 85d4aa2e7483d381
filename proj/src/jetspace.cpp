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

#include "horocurve/jetspace.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace horocurve {

template <class S>
CompactSet<S>::CompactSet(std::vector<Interval<S>> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw std::invalid_argument("CompactSet: no components");
  for (std::size_t i = 0; i + 1 < comps_.size(); ++i)
    if (!(comps_[i].hi < comps_[i + 1].lo))
      throw std::invalid_argument("CompactSet: components must be sorted and disjoint (component " + std::to_string(i) +
                                  ")");
}

template <class S>
std::vector<Interval<S>> CompactSet<S>::gaps() const {
  std::vector<Interval<S>> out;
  for (std::size_t i = 0; i + 1 < comps_.size(); ++i) out.push_back(gap(i));
  return out;
}

template <class S>
std::optional<std::size_t> CompactSet<S>::component_of(const S& x) const {
  auto it = std::upper_bound(comps_.begin(), comps_.end(), x, [](const S& v, const Interval<S>& c) { return v < c.lo; });
  if (it == comps_.begin()) return std::nullopt;
  --it;
  if (it->contains(x)) return static_cast<std::size_t>(it - comps_.begin());
  return std::nullopt;
}

template <class S>
ComponentJet<S> ComponentJet<S>::point(std::vector<S> values) {
  if (values.empty()) throw std::invalid_argument("ComponentJet: empty point data");
  ComponentJet j;
  j.m_ = static_cast<int>(values.size()) - 1;
  j.values_ = std::move(values);
  return j;
}

template <class S>
ComponentJet<S> ComponentJet<S>::interval(Poly<S> p, int m) {
  ComponentJet j;
  j.interval_ = true;
  j.m_ = m;
  j.derivs_.push_back(std::move(p));
  for (int k = 1; k <= m; ++k) j.derivs_.push_back(j.derivs_.back().derivative());
  return j;
}

template <class S>
std::vector<S> ComponentJet<S>::values_at(const S& x) const {
  if (!interval_) return values_;
  std::vector<S> out;
  out.reserve(derivs_.size());
  for (const auto& d : derivs_) out.push_back(d(x));
  return out;
}

template <class S>
void JetTriple<S>::validate() const {
  const std::size_t n = K.size();
  for (const Jet<S>* J : {&F, &G, &H}) {
    if (J->m != m) throw std::invalid_argument("JetTriple: order mismatch");
    if (J->data.size() != n) throw std::invalid_argument("JetTriple: component count mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = J->data[i];
      if (c.order() != m) throw std::invalid_argument("JetTriple: component " + std::to_string(i) + " has wrong order");
      if (c.is_interval() == K.component(i).degenerate())
        throw std::invalid_argument("JetTriple: data kind does not match component " + std::to_string(i));
    }
  }
}

template <class S>
std::size_t JetTriple<S>::require_component(const S& x) const {
  auto c = K.component_of(x);
  if (!c) throw std::invalid_argument("point " + format_scalar(x) + " is not in K");
  return *c;
}

namespace {

template <class S>
bool same_data(const ComponentJet<S>& a, const ComponentJet<S>& b, const S& at) {
  if (a.is_interval() && b.is_interval()) return a.poly() == b.poly();
  return a.values_at(at) == b.values_at(at);
}

}  // namespace

template <class S>
JetTriple<S> make_jet_triple(int m, std::vector<Interval<S>> components, std::vector<ComponentJet<S>> F,
                             std::vector<ComponentJet<S>> G, std::vector<ComponentJet<S>> H) {
  const std::size_t n = components.size();
  if (m < 0) throw std::invalid_argument("jet order must be nonnegative");
  if (n == 0) throw std::invalid_argument("instance has no components");
  if (F.size() != n || G.size() != n || H.size() != n) throw std::invalid_argument("jet data count mismatch");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (components[i].lo != components[j].lo) return components[i].lo < components[j].lo;
    return components[i].hi < components[j].hi;
  });

  std::vector<Interval<S>> cs;
  std::vector<ComponentJet<S>> fs, gs, hs;
  for (std::size_t idx : order) {
    Interval<S> c = components[idx];
    ComponentJet<S> f = F[idx], g = G[idx], h = H[idx];
    for (const auto* cj : {&f, &g, &h}) {
      if (cj->order() != m) throw std::invalid_argument("component " + std::to_string(idx) + ": jet order mismatch");
      if (cj->is_interval() == c.degenerate())
        throw std::invalid_argument("component " + std::to_string(idx) + ": data kind does not match component");
    }
    if (!cs.empty() && !(cs.back().hi < c.lo)) {
      const Interval<S>& prev = cs.back();
      if (prev.hi > c.lo) throw std::invalid_argument("components overlap near " + format_scalar(c.lo));
      // Touching: merge if consistent.
      const S at = c.lo;
      if (!same_data(fs.back(), f, at) || !same_data(gs.back(), g, at) || !same_data(hs.back(), h, at))
        throw std::invalid_argument("touching components at " + format_scalar(at) + " carry inconsistent data");
      if (prev.degenerate()) {
        cs.back() = c;
        fs.back() = f;
        gs.back() = g;
        hs.back() = h;
      } else if (!c.degenerate()) {
        cs.back().hi = c.hi;
      }
      continue;
    }
    cs.push_back(c);
    fs.push_back(std::move(f));
    gs.push_back(std::move(g));
    hs.push_back(std::move(h));
  }
  JetTriple<S> T;
  T.K = CompactSet<S>(std::move(cs));
  T.m = m;
  T.F = {m, std::move(fs)};
  T.G = {m, std::move(gs)};
  T.H = {m, std::move(hs)};
  T.validate();
  return T;
}

template <class S>
Poly<S> taylor_poly_local(const std::vector<S>& jet_at_a) {
  std::vector<S> c(jet_at_a.size());
  S fact(1);
  for (std::size_t k = 0; k < jet_at_a.size(); ++k) {
    if (k > 0) fact *= S(static_cast<long>(k));
    c[k] = jet_at_a[k] / fact;
  }
  return Poly<S>(std::move(c));
}

template <class S>
Poly<S> taylor_poly(const std::vector<S>& jet_at_a, const S& a) {
  return taylor_poly_local(jet_at_a).compose_affine(S(1), S(-a));
}

template <class S>
Poly<S> taylor_poly(const Jet<S>& F, const CompactSet<S>& K, const S& a) {
  auto c = K.component_of(a);
  if (!c) throw std::invalid_argument("taylor_poly: point " + format_scalar(a) + " is not in K");
  return taylor_poly(F.values_at(*c, a), a);
}

template <class S>
S remainder(const std::vector<S>& jet_a, const std::vector<S>& jet_b, const S& a, const S& b, int k) {
  const int m = static_cast<int>(jet_a.size()) - 1;
  if (k < 0 || k > m) throw std::invalid_argument("remainder: order out of range");
  const S d = b - a;
  S sum(0);
  S term(1);  // d^l / l!
  for (int l = 0; l <= m - k; ++l) {
    if (l > 0) term = term * d / S(l);
    sum += jet_a[static_cast<std::size_t>(k + l)] * term;
  }
  return S(jet_b[static_cast<std::size_t>(k)] - sum);
}

template <class S>
S remainder(const Jet<S>& F, const CompactSet<S>& K, const S& a, const S& b, int k) {
  auto ca = K.component_of(a), cb = K.component_of(b);
  if (!ca || !cb) throw std::invalid_argument("remainder: points must lie in K");
  return remainder(F.values_at(*ca, a), F.values_at(*cb, b), a, b, k);
}

template <class S>
std::vector<SamplePoint<S>> sample_points(const CompactSet<S>& K, const MeshPolicy& mesh) {
  std::vector<SamplePoint<S>> out;
  const int div = std::max(1, mesh.divisions);
  for (std::size_t i = 0; i < K.size(); ++i) {
    const auto& c = K.component(i);
    if (c.degenerate()) {
      out.push_back({i, c.lo});
      continue;
    }
    const S step = c.length() / S(div);
    for (int j = 0; j < div; ++j) out.push_back({i, S(c.lo + step * S(j))});
    out.push_back({i, c.hi});
  }
  return out;
}

template <class S>
ScaleProfile whitney_profile(const Jet<S>& F, const CompactSet<S>& K, const ScaleGrid& grid, const MeshPolicy& mesh,
                             Exec exec) {
  const int m = F.m;
  const auto samples = sample_points(K, mesh);
  std::vector<std::vector<S>> jets;
  jets.reserve(samples.size());
  for (const auto& s : samples) jets.push_back(F.values_at(s.comp, s.x));
  std::vector<double> xs;
  for (const auto& s : samples) xs.push_back(to_double(s.x));

  auto kernel = [&](std::size_t i, std::size_t j, BinAccumulator& acc) {
    const S& a = samples[i].x;
    const S& b = samples[j].x;
    const S d = b - a;
    const int level = grid.level(to_double(d));
    S dpow = ipow(d, m);  // d^{m-k}, updated as k grows
    for (int k = 0; k <= m; ++k) {
      if (k > 0) dpow /= d;
      S r1 = abs_of(remainder(jets[i], jets[j], a, b, k));
      S r2 = abs_of(remainder(jets[j], jets[i], b, a, k));
      S r = r1 > r2 ? r1 : r2;
      acc.add(static_cast<std::size_t>(k), level, to_double(S(r / dpow)), xs[i], xs[j]);
    }
  };
  const std::size_t nseries = static_cast<std::size_t>(m) + 1;
  BinAccumulator acc = exec == Exec::Parallel ? reduce_pairs_parallel(samples.size(), nseries, kernel)
                                              : reduce_pairs_serial(samples.size(), nseries, kernel);
  ScaleProfile prof;
  prof.grid = grid;
  for (int k = 0; k <= m; ++k) {
    ProfileSeries s;
    s.name = "k=" + std::to_string(k);
    s.k = k;
    s.bins = acc.bins(static_cast<std::size_t>(k), grid);
    prof.series.push_back(std::move(s));
  }
  return prof;
}

#define HOROCURVE_INSTANTIATE_JETSPACE(S)                                                                         \
  template class CompactSet<S>;                                                                                   \
  template class ComponentJet<S>;                                                                                 \
  template struct JetTriple<S>;                                                                                   \
  template JetTriple<S> make_jet_triple<S>(int, std::vector<Interval<S>>, std::vector<ComponentJet<S>>,           \
                                           std::vector<ComponentJet<S>>, std::vector<ComponentJet<S>>);           \
  template Poly<S> taylor_poly<S>(const std::vector<S>&, const S&);                                               \
  template Poly<S> taylor_poly<S>(const Jet<S>&, const CompactSet<S>&, const S&);                                 \
  template Poly<S> taylor_poly_local<S>(const std::vector<S>&);                                                   \
  template S remainder<S>(const std::vector<S>&, const std::vector<S>&, const S&, const S&, int);                  \
  template S remainder<S>(const Jet<S>&, const CompactSet<S>&, const S&, const S&, int);                          \
  template std::vector<SamplePoint<S>> sample_points<S>(const CompactSet<S>&, const MeshPolicy&);                 \
  template ScaleProfile whitney_profile<S>(const Jet<S>&, const CompactSet<S>&, const ScaleGrid&, const MeshPolicy&, \
                                           Exec);

HOROCURVE_INSTANTIATE_JETSPACE(double)
HOROCURVE_INSTANTIATE_JETSPACE(Rational)

}  // namespace horocurve
