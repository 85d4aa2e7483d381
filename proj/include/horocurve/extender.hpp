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

// Construction of Cᵐ horizontal extensions: per-gap Taylor blend, height
// budget, perturbation, lift, and gluing.
//
// On a gap (a, b) with blended planar curve (f, g), the lift of (f, g)
// from H(a) misses H(b) by the budget 𝒜. Perturbing to (f + φ, g + ψ)
// with φ, ψ flat to order m at both ends changes the lifted height at b by
// 4∫(ψf' - φg' + ψφ'), so the perturbation is chosen to make that equal 𝒜.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "horocurve/heisenberg.hpp"
#include "horocurve/jetspace.hpp"
#include "horocurve/piecewise.hpp"
#include "horocurve/polycore.hpp"

namespace horocurve {

template <class S>
struct BlendPiece {
  Interval<S> domain;
  Poly<S> p;
  bool gap = false;
};

/// One piece per interval component and per gap, in order along I.
template <class S>
struct BlendExtension {
  std::vector<BlendPiece<S>> pieces;
  std::vector<std::size_t> gap_piece;  // gap index -> piece index

  const Poly<S>& on_gap(std::size_t i) const { return pieces[gap_piece[i]].p; }
};

/// f = T_a + S·(T_b - T_a) on each gap, S the order-m smoothstep.
template <class S>
BlendExtension<S> whitney_blend_extend(const Jet<S>& F, const CompactSet<S>& K);

template <class S>
struct GapBudget {
  Interval<S> gap;
  S budget{};
  double bound = 0.0;      // C₁·α̂·V(a,b), recorded only
  double alpha = 0.0;      // measured local modulus at (a, b)
  double velocity = 0.0;   // V(a, b)
};

/// 𝒜 = H(b) - H(a) - 2∫_a^b (f'g - g'f), computed after translating the
/// jet at a to the origin.
template <class S>
GapBudget<S> gap_budget(const JetTriple<S>& T, const Poly<S>& f, const Poly<S>& g, std::size_t gap_index);

enum class CaseTag { FbigF, FbigG, SmallCase1, SmallCase2, SmallCase3 };

std::string case_name(CaseTag t);
std::optional<CaseTag> parse_case(const std::string& s);

template <class S>
struct Perturbation {
  Interval<S> gap;
  PiecewisePoly<S> phi, psi;
  CaseTag tag = CaseTag::SmallCase1;
  double beta_achieved = 0.0;
  double lambda = 0.0;  // case 3 only
  std::string note;
};

/// 4∫(ψf' - φg' + ψφ') over the gap.
template <class S>
S perturbation_integral(const Poly<S>& f, const Poly<S>& g, const Perturbation<S>& p);

/// max over k ≤ m of sup |Dᵏφ|, |Dᵏψ| on the gap (double precision).
template <class S>
double measure_beta(const Perturbation<S>& p, int m);

/// Bump on the large-derivative subinterval of (Tu)'. With on_g = false the
/// bump goes into ψ (u = f); with on_g = true into φ (u = g). Returns
/// nothing when ∫η u' = 0.
template <class S>
std::optional<Perturbation<S>> perturb_fbig(const Poly<S>& u, const Poly<S>& Tu, const S& budget,
                                            const Interval<S>& gap, int m, bool on_g = false);

template <class S>
Perturbation<S> perturb_fgsmall(const Poly<S>& f, const Poly<S>& g, const S& budget, const Interval<S>& gap, int m);

struct DispatchNorms {
  double l1f = 0.0, l1g = 0.0, len_m = 0.0;
};

/// Which solver the L1 trichotomy picks.
template <class S>
CaseTag dispatch_family(const S& l1f, const S& l1g, const S& len_m);

template <class S>
struct GapCurve {
  std::size_t index = 0;
  Interval<S> gap;
  GapBudget<S> budget;
  Perturbation<S> perturbation;
  std::vector<HorizontalPiece<S>> pieces;
  DispatchNorms norms;
  CaseTag dispatched = CaseTag::FbigF;  // family chosen by the trichotomy before any fallback
  double deviation = 0.0;               // max_k sup |Dᵏ𝓕 - Fᵏ(a)|, |Dᵏ𝒢 - Gᵏ(a)|
};

template <class S>
GapCurve<S> build_gap_curve(const JetTriple<S>& T, const Poly<S>& f, const Poly<S>& g, std::size_t gap_index);

class PreflightError : public std::runtime_error {
 public:
  PreflightError(std::string criterion, std::string location, const std::string& what)
      : std::runtime_error(what), criterion_(std::move(criterion)), location_(std::move(location)) {}
  const std::string& criterion() const { return criterion_; }
  const std::string& location() const { return location_; }

 private:
  std::string criterion_;
  std::string location_;
};

enum class PieceKind { Component, Gap };

template <class S>
struct CurvePiece {
  HorizontalPiece<S> piece;
  PieceKind kind = PieceKind::Component;
  std::optional<CaseTag> tag;
};

template <class S>
struct JunctionCert {
  S x{};
  std::size_t left = 0, right = 0;
  bool ok = false;
  double max_mismatch = 0.0;
};

template <class S>
struct HorizontalCurve {
  int m = 0;
  std::vector<CurvePiece<S>> pieces;
  std::vector<JunctionCert<S>> junctions;
  std::vector<GapCurve<S>> gaps;

  Interval<S> domain() const { return {pieces.front().piece.domain.lo, pieces.back().piece.domain.hi}; }
  /// Piece containing x (right-continuous; last piece at the right end).
  std::size_t locate(const S& x) const;
};

/// Jet-match certificates between consecutive pieces. Float mode accepts
/// a 1e-9 relative mismatch plus the rounding allowance of both sides.
template <class S>
std::vector<JunctionCert<S>> junction_certs(const std::vector<CurvePiece<S>>& pieces, int m);

/// Raises PreflightError when condition (2) fails or interval data is not horizontal.
template <class S>
void preflight(const JetTriple<S>& T, const MeshPolicy& mesh = {});

template <class S>
HorizontalCurve<S> glue_extension(const JetTriple<S>& T, Exec exec = Exec::Parallel);

}  // namespace horocurve
