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

#include "horocurve/extender.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

namespace horocurve {

namespace {

// 0 -> 1 ramp, flat to order m at both ends.
template <class S>
Poly<S> ramp(int m, const Interval<S>& I) {
  if (m >= 1) return smoothstep(m, I);
  S inv = S(S(1) / I.length());
  return Poly<S>(std::vector<S>{S(0), inv}, I.lo);
}

// Taylor blend across gap i of F, expanded about x0. Double inputs are
// blended exactly and rounded once, so a piece far from the gap ends keeps
// full relative accuracy.
template <class S>
Poly<S> blend_about(const Jet<S>& F, std::size_t i, const Interval<S>& gap, const S& x0) {
  if constexpr (ScalarTraits<S>::exact) {
    Poly<S> Ta = taylor_poly(F.values_at(i, gap.lo), gap.lo);
    Poly<S> Tb = taylor_poly(F.values_at(i + 1, gap.hi), gap.hi);
    return Poly<S>(Ta + ramp(F.m, gap) * (Tb - Ta)).recentered(x0);
  } else {
    auto exact = [](const std::vector<S>& v) {
      std::vector<Rational> r;
      for (const auto& x : v) r.emplace_back(x);
      return r;
    };
    const Interval<Rational> G(Rational(gap.lo), Rational(gap.hi));
    Poly<Rational> Ta = taylor_poly(exact(F.values_at(i, gap.lo)), G.lo);
    Poly<Rational> Tb = taylor_poly(exact(F.values_at(i + 1, gap.hi)), G.hi);
    return convert_poly<S>(Poly<Rational>(Ta + ramp(F.m, G) * (Tb - Ta)).recentered(Rational(x0)));
  }
}

template <class S>
double sup_abs(const Poly<S>& p, const Interval<S>& I) {
  Poly<double> q = convert_poly<double>(p);
  return max_abs(q, Interval<double>(to_double(I.lo), to_double(I.hi))).value;
}

template <class S>
Perturbation<S> zero_perturbation(const Interval<S>& gap, CaseTag tag) {
  Perturbation<S> p;
  p.gap = gap;
  p.phi = PiecewisePoly<S>::zero(gap);
  p.psi = PiecewisePoly<S>::zero(gap);
  p.tag = tag;
  return p;
}

}  // namespace

std::string case_name(CaseTag t) {
  switch (t) {
    case CaseTag::FbigF: return "fbig-f";
    case CaseTag::FbigG: return "fbig-g";
    case CaseTag::SmallCase1: return "small-case1";
    case CaseTag::SmallCase2: return "small-case2";
    case CaseTag::SmallCase3: return "small-case3";
  }
  return "unknown";
}

std::optional<CaseTag> parse_case(const std::string& s) {
  for (CaseTag t : {CaseTag::FbigF, CaseTag::FbigG, CaseTag::SmallCase1, CaseTag::SmallCase2, CaseTag::SmallCase3})
    if (case_name(t) == s) return t;
  return std::nullopt;
}

template <class S>
BlendExtension<S> whitney_blend_extend(const Jet<S>& F, const CompactSet<S>& K) {
  BlendExtension<S> ext;
  for (std::size_t i = 0; i < K.size(); ++i) {
    const auto& c = K.component(i);
    if (F.data[i].is_interval()) ext.pieces.push_back({c, F.data[i].poly(), false});
    if (i + 1 == K.size()) break;
    const Interval<S> gap = K.gap(i);
    Poly<S> p = blend_about(F, i, gap, gap.lo);
    ext.gap_piece.push_back(ext.pieces.size());
    ext.pieces.push_back({gap, std::move(p), true});
  }
  return ext;
}

template <class S>
GapBudget<S> gap_budget(const JetTriple<S>& T, const Poly<S>& f, const Poly<S>& g, std::size_t gap_index) {
  const Interval<S> gap = T.K.gap(gap_index);
  const std::size_t ca = gap_index, cb = gap_index + 1;
  const S& a = gap.lo;
  const S& b = gap.hi;
  auto Fa = T.F.values_at(ca, a), Ga = T.G.values_at(ca, a), Ha = T.H.values_at(ca, a);
  auto Fb = T.F.values_at(cb, b), Gb = T.G.values_at(cb, b), Hb = T.H.values_at(cb, b);

  // Translate so the jet at a sits at the origin; the budget is invariant.
  Poly<S> u = f - Poly<S>::constant(Fa[0]);
  Poly<S> v = g - Poly<S>::constant(Ga[0]);
  S W = Hb[0] - Ha[0] + 2 * Fa[0] * Gb[0] - 2 * Ga[0] * Fb[0];
  S lift;
  if constexpr (ScalarTraits<S>::exact) {
    lift = definite_integral(Poly<S>(u.derivative() * v - v.derivative() * u), gap);
  } else {
    // The integrand cancels heavily for long gaps; integrate the double
    // inputs exactly and round once.
    const Poly<Rational> ur = convert_poly<Rational>(u), vr = convert_poly<Rational>(v);
    lift = to_double(definite_integral(Poly<Rational>(ur.derivative() * vr - vr.derivative() * ur),
                                       Rational(gap.lo), Rational(gap.hi)));
  }

  GapBudget<S> out;
  out.gap = gap;
  out.budget = W - 2 * lift;

  // Diagnostic: local modulus from the Whitney ratios and |A|/V at (a, b).
  const int m = T.m;
  const S d = b - a;
  double alpha = 0.0;
  for (int k = 0; k <= m; ++k) {
    S dpow = ipow(d, m - k);
    for (const auto* J : {&T.F, &T.G}) {
      auto ja = J->values_at(ca, a), jb = J->values_at(cb, b);
      S r1 = abs_of(remainder(ja, jb, a, b, k)), r2 = abs_of(remainder(jb, ja, b, a, k));
      alpha = std::max({alpha, to_double(S(r1 / dpow)), to_double(S(r2 / dpow))});
    }
  }
  S A = area_discrepancy(Fa, Ga, Ha[0], Fb[0], Gb[0], Hb[0], a, b);
  S V = velocity(Fa, Ga, a, b);
  alpha = std::max(alpha, to_double(S(abs_of(A) / V)));
  const double C1 = 3.0 + 16.0 * m * m;
  out.alpha = alpha;
  out.velocity = to_double(V);
  out.bound = C1 * (alpha * alpha + alpha) * out.velocity;
  return out;
}

template <class S>
S perturbation_integral(const Poly<S>& f, const Poly<S>& g, const Perturbation<S>& p) {
  auto fp = PiecewisePoly<S>::single(p.gap, f.derivative());
  auto gp = PiecewisePoly<S>::single(p.gap, g.derivative());
  S total = integral_of_product(p.psi, fp) - integral_of_product(p.phi, gp) +
            integral_of_product(p.psi, p.phi.derivative());
  return S(4 * total);
}

template <class S>
double measure_beta(const Perturbation<S>& p, int m) {
  double beta = 0.0;
  for (const auto* w : {&p.phi, &p.psi}) {
    for (std::size_t i = 0; i < w->size(); ++i) {
      if (w->piece(i).is_zero()) continue;
      for (int k = 0; k <= m; ++k) beta = std::max(beta, sup_abs(w->piece(i).derivative(k), w->piece_domain(i)));
    }
  }
  return beta;
}

template <class S>
std::optional<Perturbation<S>> perturb_fbig(const Poly<S>& u, const Poly<S>& Tu, const S& budget,
                                            const Interval<S>& gap, int m, bool on_g) {
  const CaseTag tag = on_g ? CaseTag::FbigG : CaseTag::FbigF;
  if (budget == 0) return zero_perturbation(gap, tag);
  Poly<S> dT = Tu.derivative();
  if (dT.is_zero()) return std::nullopt;
  ExtremalCert<S> cert = pbig_subinterval(dT, gap);
  Interval<S> J = cert.subinterval;
  {
    // Snap inward to a dyadic grid of the gap; keeps exact coefficients small.
    const S h = gap.length() / S(1024);
    S lo = gap.lo + ScalarTraits<S>::ceil(S((J.lo - gap.lo) / h)) * h;
    S hi = gap.lo + ScalarTraits<S>::floor(S((J.hi - gap.lo) / h)) * h;
    if (lo < hi && S(hi - lo) * 2 >= J.length()) J = Interval<S>(lo, hi);
  }
  const int sigma = sign_of(dT(J.midpoint()));
  Poly<S> eta = bump(m, J) * S(sigma);
  S I = definite_integral(Poly<S>(eta * u.derivative()), J);
  if (I == 0) return std::nullopt;
  S coef = budget / (4 * I);
  if (on_g) coef = -coef;
  Perturbation<S> p = zero_perturbation(gap, tag);
  auto w = PiecewisePoly<S>::supported_on(gap, J, eta * coef);
  if (on_g) {
    p.phi = std::move(w);
  } else {
    p.psi = std::move(w);
  }
  return p;
}

template <class S>
Perturbation<S> perturb_fgsmall(const Poly<S>& f, const Poly<S>& g, const S& budget, const Interval<S>& gap, int m) {
  if (budget == 0) return zero_perturbation(gap, CaseTag::SmallCase1);
  const S a = gap.lo, b = gap.hi, L = gap.length();
  const S mid = a + L / 2;
  const S absA = abs_of(budget);

  // ξ rises on the first half and falls on the second; η sits where ξ' is large.
  Poly<S> up = ramp(m, Interval<S>(a, mid));
  Poly<S> down = Poly<S>::constant(S(1)) - ramp(m, Interval<S>(mid, b));
  const Interval<S> I(S(a + L / 12), S(a + 5 * L / 12));
  Poly<S> eta0 = bump(m, I);
  S c = definite_integral(Poly<S>(eta0 * up.derivative()), I);

  // Amplitude with s²c ≈ |𝒜|/2.
  double sd = std::sqrt(to_double(absA) / (2.0 * to_double(c)));
  S s = from_double<S>(sd);
  for (int tries = 0; !(s * s * c > absA / 3) && tries < 64; ++tries) s = from_double<S>(to_double(s) * 1.01);
  if (!(s * s * c > absA / 3)) throw std::logic_error("perturb_fgsmall: amplitude selection failed");

  auto xi = PiecewisePoly<S>({a, mid, b}, {up * s, down * s});
  auto eta = PiecewisePoly<S>::supported_on(gap, I, eta0 * s);
  auto fp = PiecewisePoly<S>::single(gap, f.derivative());
  auto gp = PiecewisePoly<S>::single(gap, g.derivative());
  const S If = integral_of_product(eta, fp);
  const S Ig = integral_of_product(xi, gp);
  const S Ix = integral_of_product(eta, xi.derivative());
  const S threshold = absA / 24;

  Perturbation<S> p = zero_perturbation(gap, CaseTag::SmallCase1);
  if (abs_of(If) >= threshold) {
    p.psi = eta.scaled(S(budget / (4 * If)));
    return p;
  }
  if (abs_of(Ig) >= threshold) {
    p.tag = CaseTag::SmallCase2;
    p.phi = xi.scaled(S(-budget / (4 * Ig)));
    return p;
  }
  // Case 3: φ = σξ, ψ = λη with 4(λ(σ If + Ix) - Ig) = |𝒜|.
  p.tag = CaseTag::SmallCase3;
  const int sigma = sign_of(budget);
  const S slope = S(sigma) * If + Ix;
  S lambda;
  if constexpr (ScalarTraits<S>::exact) {
    lambda = (absA + 4 * Ig) / (4 * slope);
  } else {
    auto F = [&](double l) { return 4.0 * (l * slope - Ig) - absA; };
    double lo = 0.0, hi = 1.0;
    if (!(F(lo) < 0.0 && F(hi) > 0.0)) throw std::logic_error("perturb_fgsmall: case 3 bracket failed");
    while (hi - lo > 1e-14 * hi) {
      double md = 0.5 * (lo + hi);
      if (md <= lo || md >= hi) break;
      (F(md) < 0.0 ? lo : hi) = md;
    }
    lambda = 0.5 * (lo + hi);
  }
  if (!(lambda > 0 && lambda < 1)) throw std::logic_error("perturb_fgsmall: case 3 lambda outside (0,1)");
  p.lambda = to_double(lambda);
  p.phi = xi.scaled(S(sigma));
  p.psi = eta.scaled(lambda);
  return p;
}

template <class S>
CaseTag dispatch_family(const S& l1f, const S& l1g, const S& len_m) {
  if (l1f >= l1g && l1f >= len_m) return CaseTag::FbigF;
  if (l1g >= l1f && l1g >= len_m) return CaseTag::FbigG;
  return CaseTag::SmallCase1;
}

template <class S>
GapCurve<S> build_gap_curve(const JetTriple<S>& T, const Poly<S>& f, const Poly<S>& g, std::size_t gap_index) {
  const int m = T.m;
  GapCurve<S> out;
  out.index = gap_index;
  out.gap = T.K.gap(gap_index);
  const Interval<S>& gap = out.gap;
  const S& a = gap.lo;
  out.budget = gap_budget(T, f, g, gap_index);
  const S& A = out.budget.budget;

  const auto Fa = T.F.values_at(gap_index, a), Ga = T.G.values_at(gap_index, a);
  Poly<S> Tf = taylor_poly(Fa, a), Tg = taylor_poly(Ga, a);
  S l1f = l1_norm(Tf.derivative(), gap), l1g = l1_norm(Tg.derivative(), gap);
  S Lm = ipow(gap.length(), m);
  out.norms = {to_double(l1f), to_double(l1g), to_double(Lm)};
  out.dispatched = dispatch_family(l1f, l1g, Lm);

  std::optional<Perturbation<S>> pert;
  std::string note;
  if (out.dispatched == CaseTag::FbigF) {
    pert = perturb_fbig(f, Tf, A, gap, m, false);
    if (!pert) note = "fbig-f: integral of bump against f' vanished; used fgsmall";
  } else if (out.dispatched == CaseTag::FbigG) {
    pert = perturb_fbig(g, Tg, A, gap, m, true);
    if (!pert) note = "fbig-g: integral of bump against g' vanished; used fgsmall";
  }
  if (!pert) pert = perturb_fgsmall(f, g, A, gap, m);
  pert->note = note;
  pert->beta_achieved = measure_beta(*pert, m);
  out.perturbation = std::move(*pert);

  const auto& P = out.perturbation;
  auto breaks = PiecewisePoly<S>::merged_breaks(P.phi.breaks(), P.psi.breaks());
  auto phi = P.phi.refined(breaks), psi = P.psi.refined(breaks);
  S h0 = T.H.value(gap_index, a, 0);
  bool blends = false;
  if constexpr (!ScalarTraits<S>::exact) {
    const Poly<S> bf = blend_about(T.F, gap_index, gap, a), bg = blend_about(T.G, gap_index, gap, a);
    blends = f.origin() == a && g.origin() == a && f.coeffs() == bf.coeffs() && g.coeffs() == bg.coeffs();
  }
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const Interval<S> dom = phi.piece_domain(i);
    const S mid = dom.midpoint();
    Poly<S> fl = f.recentered(mid), gl = g.recentered(mid);
    if constexpr (!ScalarTraits<S>::exact) {
      // When f and g are the blends of T, rebuild them locally at full accuracy.
      if (blends) {
        fl = blend_about(T.F, gap_index, gap, mid);
        gl = blend_about(T.G, gap_index, gap, mid);
      }
    }
    PlanePolyCurve<S> c{dom, fl + phi.piece(i), gl + psi.piece(i)};
    out.pieces.push_back(horizontal_lift(c, h0));
    h0 = out.pieces.back().h(c.domain.hi);
  }
  if constexpr (ScalarTraits<S>::exact) {
    if (h0 != T.H.value(gap_index + 1, gap.hi, 0))
      throw std::logic_error("build_gap_curve: lifted height misses H(b) on gap " + std::to_string(gap_index));
  }

  double dev = 0.0;
  for (const auto& pc : out.pieces) {
    for (int k = 0; k <= m; ++k) {
      dev = std::max(dev, sup_abs(Poly<S>(pc.f.derivative(k) - Poly<S>::constant(Fa[static_cast<std::size_t>(k)])), pc.domain));
      dev = std::max(dev, sup_abs(Poly<S>(pc.g.derivative(k) - Poly<S>::constant(Ga[static_cast<std::size_t>(k)])), pc.domain));
    }
  }
  out.deviation = dev;
  return out;
}

template <class S>
std::size_t HorizontalCurve<S>::locate(const S& x) const {
  auto it = std::upper_bound(pieces.begin(), pieces.end(), x,
                             [](const S& v, const CurvePiece<S>& p) { return v < p.piece.domain.lo; });
  std::size_t i = it == pieces.begin() ? 0 : static_cast<std::size_t>(it - pieces.begin()) - 1;
  return std::min(i, pieces.size() - 1);
}

template <class S>
std::vector<JunctionCert<S>> junction_certs(const std::vector<CurvePiece<S>>& pieces, int m) {
  std::vector<JunctionCert<S>> out;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    const auto& p = pieces[i].piece;
    const auto& q = pieces[i + 1].piece;
    JunctionCert<S> c;
    c.x = p.domain.hi;
    c.left = i;
    c.right = i + 1;
    if (p.domain.hi != q.domain.lo) {
      c.ok = false;
      c.max_mismatch = std::numeric_limits<double>::infinity();
      out.push_back(c);
      continue;
    }
    bool ok = true;
    double worst = 0.0;
    for (int k = 0; k <= m; ++k) {
      const std::pair<const Poly<S>*, const Poly<S>*> comps[] = {{&p.f, &q.f}, {&p.g, &q.g}, {&p.h, &q.h}};
      for (const auto& [l, r] : comps) {
        const Poly<S> dl = l->derivative(k), dr = r->derivative(k);
        S lv = dl(c.x), rv = dr(c.x);
        double diff = std::abs(to_double(S(lv - rv)));
        if constexpr (ScalarTraits<S>::exact) {
          if (lv != rv) ok = false;
          worst = std::max(worst, diff);
        } else {
          double rel = diff / std::max({1.0, std::abs(lv), std::abs(rv)});
          worst = std::max(worst, rel);
          if (diff > 1e-9 * std::max({1.0, std::abs(lv), std::abs(rv)}) + rounding_allowance(dl, c.x) +
                         rounding_allowance(dr, c.x))
            ok = false;
        }
      }
    }
    c.ok = ok;
    c.max_mismatch = worst;
    out.push_back(c);
  }
  return out;
}

template <class S>
void preflight(const JetTriple<S>& T, const MeshPolicy& mesh) {
  auto viol = check_condition2(T, mesh);
  if (!viol.empty()) {
    const auto& v = viol.front();
    std::string loc = "x=" + format_scalar(v.x) + " k=" + std::to_string(v.k);
    throw PreflightError("condition2", loc,
                         "condition (2) fails at " + loc + ": |H^k - P^k| = " + format_scalar(v.magnitude) + " (" +
                             std::to_string(viol.size()) + " violation(s) total)");
  }
  for (std::size_t i = 0; i < T.K.size(); ++i) {
    if (!T.F.data[i].is_interval()) continue;
    HorizontalPiece<S> piece(T.K.component(i), T.F.data[i].poly(), T.G.data[i].poly(), T.H.data[i].poly());
    if (!piece.horizontal()) {
      const auto& c = T.K.component(i);
      std::string loc = "component " + std::to_string(i) + " [" + format_scalar(c.lo) + "," + format_scalar(c.hi) + "]";
      throw PreflightError("component-horizontality", loc,
                           "interval data is not horizontal on " + loc + " (defect size " +
                               std::to_string(piece.defect_size()) + ")");
    }
  }
}

template <class S>
HorizontalCurve<S> glue_extension(const JetTriple<S>& T, Exec exec) {
  if (T.m < 1) throw std::invalid_argument("glue_extension: order m must be >= 1");
  preflight(T);
  const auto BF = whitney_blend_extend(T.F, T.K);
  const auto BG = whitney_blend_extend(T.G, T.K);
  const std::size_t ngaps = T.K.gap_count();

  HorizontalCurve<S> curve;
  curve.m = T.m;
  curve.gaps.resize(ngaps);
  std::vector<std::exception_ptr> errors(ngaps);
  auto run = [&](std::size_t i) {
    try {
      curve.gaps[i] = build_gap_curve(T, BF.on_gap(i), BG.on_gap(i), i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (exec == Exec::Parallel) {
    const long long n = static_cast<long long>(ngaps);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_budget())
    for (long long i = 0; i < n; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < ngaps; ++i) run(i);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t i = 0; i < T.K.size(); ++i) {
    if (T.F.data[i].is_interval()) {
      HorizontalPiece<S> p(T.K.component(i), T.F.data[i].poly(), T.G.data[i].poly(), T.H.data[i].poly());
      curve.pieces.push_back({std::move(p), PieceKind::Component, std::nullopt});
    }
    if (i < ngaps)
      for (const auto& gp : curve.gaps[i].pieces)
        curve.pieces.push_back({gp, PieceKind::Gap, curve.gaps[i].perturbation.tag});
  }
  if (curve.pieces.empty()) {
    // K is a single point: a degenerate piece carrying the Taylor data.
    const S a = T.K.component(0).lo;
    PlanePolyCurve<S> c{Interval<S>(a, a), taylor_poly(T.F.values_at(0, a), a), taylor_poly(T.G.values_at(0, a), a)};
    curve.pieces.push_back({horizontal_lift(c, T.H.value(0, a, 0)), PieceKind::Component, std::nullopt});
  }
  curve.junctions = junction_certs(curve.pieces, T.m);
  return curve;
}

#define HOROCURVE_INSTANTIATE_EXTENDER(S)                                                                          \
  template BlendExtension<S> whitney_blend_extend<S>(const Jet<S>&, const CompactSet<S>&);                         \
  template GapBudget<S> gap_budget<S>(const JetTriple<S>&, const Poly<S>&, const Poly<S>&, std::size_t);           \
  template S perturbation_integral<S>(const Poly<S>&, const Poly<S>&, const Perturbation<S>&);                     \
  template double measure_beta<S>(const Perturbation<S>&, int);                                                    \
  template std::optional<Perturbation<S>> perturb_fbig<S>(const Poly<S>&, const Poly<S>&, const S&,                \
                                                          const Interval<S>&, int, bool);                          \
  template Perturbation<S> perturb_fgsmall<S>(const Poly<S>&, const Poly<S>&, const S&, const Interval<S>&, int);  \
  template CaseTag dispatch_family<S>(const S&, const S&, const S&);                                               \
  template GapCurve<S> build_gap_curve<S>(const JetTriple<S>&, const Poly<S>&, const Poly<S>&, std::size_t);       \
  template struct HorizontalCurve<S>;                                                                              \
  template std::vector<JunctionCert<S>> junction_certs<S>(const std::vector<CurvePiece<S>>&, int);                 \
  template void preflight<S>(const JetTriple<S>&, const MeshPolicy&);                                              \
  template HorizontalCurve<S> glue_extension<S>(const JetTriple<S>&, Exec);

HOROCURVE_INSTANTIATE_EXTENDER(double)
HOROCURVE_INSTANTIATE_EXTENDER(Rational)

}  // namespace horocurve
