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

// Extremal-value toolkit for polynomials on intervals: root isolation,
// maxima, L1 norms, the Markov-based "large on a long subinterval"
// certificate, and the flat smoothstep / bump generators.

#pragma once

#include <stdexcept>
#include <vector>

#include "horocurve/poly.hpp"

namespace horocurve {

inline constexpr double kDefaultRootTolerance = 1e-12;

class RootIsolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed bracket holding exactly one distinct real root. lo == hi when
/// the root was hit exactly.
template <class S>
struct RootBracket {
  S lo;
  S hi;
  bool exact() const { return lo == hi; }
  S point() const { return exact() ? lo : S((lo + hi) / 2); }
};

/// Sturm chain p, p', -rem(p, p'), ... with each member scaled by a positive
/// constant (signs are preserved).
template <class S>
std::vector<Poly<S>> sturm_sequence(const Poly<S>& p);

/// Sign variations of a Sturm chain at x, zeros skipped.
template <class S>
int sturm_variations(const std::vector<Poly<S>>& chain, const S& x);

template <class S>
Poly<S> poly_gcd(const Poly<S>& a, const Poly<S>& b);

/// p / gcd(p, p'): same distinct roots, all simple.
template <class S>
Poly<S> squarefree_part(const Poly<S>& p);

/// Distinct real roots of p in the closed interval I, sorted, each bracket
/// narrower than `tol` (absolute, scaled by max(1, |lo|, |hi|) in float mode).
///
/// Rational mode counts roots with exact Sturm sequences and bisects.
/// Float mode splits I at the (recursively found) critical points and
/// bisects each monotone segment that changes sign; roots of even
/// multiplicity that are not hit exactly are not reported, which is harmless
/// for every caller here (they only need sign changes and critical values).
template <class S>
std::vector<RootBracket<S>> isolate_roots(const Poly<S>& p, const Interval<S>& I,
                                          double tol = kDefaultRootTolerance);

template <class S>
struct MaxAbs {
  S value;
  S argmax;
  bool degenerate = false;
};

template <class S>
MaxAbs<S> max_abs(const Poly<S>& p, const Interval<S>& I, double tol = kDefaultRootTolerance);

/// Smallest value of p (signed) on I.
template <class S>
S min_value(const Poly<S>& p, const Interval<S>& I, double tol = kDefaultRootTolerance);

/// ∫_I |p|, split at the sign changes of p.
template <class S>
S l1_norm(const Poly<S>& p, const Interval<S>& I, double tol = kDefaultRootTolerance);

/// Certificate that |P| stays at least half its maximum on a subinterval
/// of relative length 1/(4n²).
template <class S>
struct ExtremalCert {
  S max_abs;
  S argmax;
  Interval<S> subinterval;
  S lower_bound;
  int degree = 0;
};

/// Degree used in the Markov-type length formulas: degree 0 counts as 1.
template <class S>
int markov_degree(const Poly<S>& p) {
  return p.degree() < 1 ? 1 : p.degree();
}

/// 2n²/|I| · max_I |p|
template <class S>
S markov_bound(const Poly<S>& p, const Interval<S>& I, double tol = kDefaultRootTolerance);

template <class S>
ExtremalCert<S> pbig_subinterval(const Poly<S>& p, const Interval<S>& I, double tol = kDefaultRootTolerance);

/// Checks containment, the length guarantee and |p| >= lower_bound on the
/// subinterval via the minimum of p² - lower_bound². `rel_slack` absorbs the
/// root-isolation error of the stored argmax.
template <class S>
bool validate_cert(const Poly<S>& p, const Interval<S>& I, const ExtremalCert<S>& cert, double rel_slack = 1e-9);

/// Degree 2m+1 polynomial with S(lo)=0, S(hi)=1 and derivatives 1..m
/// vanishing at both ends.
template <class S>
Poly<S> smoothstep(int m, const Interval<S>& I);

/// c·(t-lo)^{m+1}(hi-t)^{m+1}, scaled so its maximum on I is 1.
template <class S>
Poly<S> bump(int m, const Interval<S>& I);

}  // namespace horocurve
