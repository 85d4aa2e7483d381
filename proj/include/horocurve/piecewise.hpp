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

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "horocurve/poly.hpp"

namespace horocurve {

/// Piecewise polynomial on [breaks.front(), breaks.back()]; piece i lives on
/// [breaks[i], breaks[i+1]]. Used for perturbations whose support is a
/// strict subinterval of a gap.
template <class S>
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(std::vector<S> breaks, std::vector<Poly<S>> pieces)
      : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
    if (breaks_.size() != pieces_.size() + 1) throw std::invalid_argument("PiecewisePoly: size mismatch");
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
      if (!(breaks_[i] < breaks_[i + 1])) throw std::invalid_argument("PiecewisePoly: breaks not increasing");
  }

  static PiecewisePoly single(const Interval<S>& I, Poly<S> p) { return PiecewisePoly({I.lo, I.hi}, {std::move(p)}); }
  static PiecewisePoly zero(const Interval<S>& I) { return single(I, Poly<S>()); }

  /// `p` on `support`, zero elsewhere in `outer`.
  static PiecewisePoly supported_on(const Interval<S>& outer, const Interval<S>& support, Poly<S> p) {
    if (!outer.contains(support) || support.degenerate())
      throw std::invalid_argument("PiecewisePoly: support must be a nondegenerate subinterval");
    std::vector<S> br{outer.lo};
    std::vector<Poly<S>> ps;
    if (outer.lo < support.lo) {
      br.push_back(support.lo);
      ps.emplace_back();
    }
    br.push_back(support.hi);
    ps.push_back(std::move(p));
    if (support.hi < outer.hi) {
      br.push_back(outer.hi);
      ps.emplace_back();
    }
    return PiecewisePoly(std::move(br), std::move(ps));
  }

  Interval<S> domain() const { return {breaks_.front(), breaks_.back()}; }
  std::size_t size() const { return pieces_.size(); }
  const std::vector<S>& breaks() const { return breaks_; }
  const Poly<S>& piece(std::size_t i) const { return pieces_[i]; }
  Interval<S> piece_domain(std::size_t i) const { return {breaks_[i], breaks_[i + 1]}; }

  bool is_zero() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Poly<S>& p) { return p.is_zero(); });
  }

  /// Index of the piece used to evaluate at x (right-continuous, last piece at the right end).
  std::size_t locate(const S& x) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    std::size_t i = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return std::min(i, pieces_.size() - 1);
  }

  S operator()(const S& x) const { return pieces_[locate(x)](x); }

  PiecewisePoly derivative(int k = 1) const {
    PiecewisePoly r = *this;
    for (auto& p : r.pieces_) p = p.derivative(k);
    return r;
  }

  PiecewisePoly scaled(const S& s) const {
    PiecewisePoly r = *this;
    for (auto& p : r.pieces_) p *= s;
    return r;
  }

  /// Same function, expressed on a finer break list (must contain ours).
  PiecewisePoly refined(const std::vector<S>& breaks) const {
    std::vector<Poly<S>> ps;
    ps.reserve(breaks.size() - 1);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) ps.push_back(pieces_[locate(S((breaks[i] + breaks[i + 1]) / 2))]);
    return PiecewisePoly(breaks, std::move(ps));
  }

  static std::vector<S> merged_breaks(const std::vector<S>& a, const std::vector<S>& b) {
    std::vector<S> out;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
    auto br = merged_breaks(a.breaks_, b.breaks_);
    PiecewisePoly ra = a.refined(br), rb = b.refined(br);
    for (std::size_t i = 0; i < ra.pieces_.size(); ++i) ra.pieces_[i] += rb.pieces_[i];
    return ra;
  }

  friend PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b) {
    auto br = merged_breaks(a.breaks_, b.breaks_);
    PiecewisePoly ra = a.refined(br), rb = b.refined(br);
    for (std::size_t i = 0; i < ra.pieces_.size(); ++i) ra.pieces_[i] = ra.pieces_[i] * rb.pieces_[i];
    return ra;
  }

  S integral() const {
    S total(0);
    for (std::size_t i = 0; i < pieces_.size(); ++i) total += definite_integral(pieces_[i], breaks_[i], breaks_[i + 1]);
    return total;
  }

 private:
  std::vector<S> breaks_;
  std::vector<Poly<S>> pieces_;
};

template <class S>
S integral_of_product(const PiecewisePoly<S>& a, const PiecewisePoly<S>& b) {
  return (a * b).integral();
}

}  // namespace horocurve
