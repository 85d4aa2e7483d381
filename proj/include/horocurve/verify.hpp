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

#include <cstdint>
#include <string>
#include <vector>

#include "horocurve/extender.hpp"

namespace horocurve {

struct VerifyOptions {
  MeshPolicy mesh{8};  // sampling for the necessity check
  ScaleGrid grid{};
  std::uint64_t seed = 1;
  int fd_points = 20;         // per piece; 0 disables the finite-difference audit
  bool necessity = true;
  double envelope_slack = 10.0;
};

struct Finding {
  std::string check;  // "defect", "junction", "restriction", "finite-difference", "necessity"
  std::string location;
  std::string message;
  double magnitude = 0.0;
};

struct EnvelopeRow {
  int level = 0;
  double av = 0.0;        // sup |A|/V in the bin
  double envelope = 0.0;  // nonincreasing bound at this level
  bool ok = true;
};

struct NecessityReport {
  std::size_t condition2_violations = 0;
  std::vector<EnvelopeRow> rows;
  bool ok() const;
};

struct VerifyReport {
  std::vector<Finding> findings;
  std::size_t pieces_checked = 0;
  std::size_t junctions_checked = 0;
  std::size_t fd_samples = 0;
  NecessityReport necessity;

  bool ok() const { return findings.empty(); }
  std::size_t count(const std::string& check) const;
};

/// Jets of the curve on K' (interval components of K' must lie inside one piece).
template <class S>
JetTriple<S> restrict_curve(const HorizontalCurve<S>& curve, const CompactSet<S>& Kp);

/// |central difference of order k - Dᵏp| at x with step h, in exact arithmetic.
double fd_error(const Poly<Rational>& p, const Rational& x, const Rational& h, int k);
/// max(1e-6, h²·sup|D^{k+2}p|)
double fd_tolerance(const Poly<Rational>& p, const Interval<Rational>& I, const Rational& h, int k);

/// Restrict to K', check condition (2) and compare the A/V profile with
/// the envelope 4ε² + 6ε built from the curve's local Taylor modulus
/// ε(a,b) = max over f, g of osc_{[a,b]} u^{(m)} / (m-1)!.
template <class S>
NecessityReport necessity_check(const HorizontalCurve<S>& curve, const CompactSet<S>& Kp, const VerifyOptions& opt);

template <class S>
VerifyReport verify_extension(const HorizontalCurve<S>& curve, const JetTriple<S>& T, const VerifyOptions& opt = {});

}  // namespace horocurve
