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

#include "horocurve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace horocurve {

bool NecessityReport::ok() const {
  if (condition2_violations != 0) return false;
  return std::all_of(rows.begin(), rows.end(), [](const EnvelopeRow& r) { return r.ok; });
}

std::size_t VerifyReport::count(const std::string& check) const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [&](const Finding& f) { return f.check == check; }));
}

template <class S>
JetTriple<S> restrict_curve(const HorizontalCurve<S>& curve, const CompactSet<S>& Kp) {
  const int m = curve.m;
  std::vector<Interval<S>> comps;
  std::vector<ComponentJet<S>> F, G, H;
  for (const auto& c : Kp.components()) {
    const auto& piece = curve.pieces[curve.locate(c.lo)].piece;
    if (!piece.domain.contains(c.lo) || !piece.domain.contains(c.hi))
      throw std::invalid_argument("restrict_curve: component [" + format_scalar(c.lo) + "," + format_scalar(c.hi) +
                                  "] is not inside one piece of the curve");
    comps.push_back(c);
    if (c.degenerate()) {
      std::vector<S> fv, gv, hv;
      for (int k = 0; k <= m; ++k) {
        fv.push_back(piece.f.derivative(k)(c.lo));
        gv.push_back(piece.g.derivative(k)(c.lo));
        hv.push_back(piece.h.derivative(k)(c.lo));
      }
      F.push_back(ComponentJet<S>::point(std::move(fv)));
      G.push_back(ComponentJet<S>::point(std::move(gv)));
      H.push_back(ComponentJet<S>::point(std::move(hv)));
    } else {
      F.push_back(ComponentJet<S>::interval(piece.f, m));
      G.push_back(ComponentJet<S>::interval(piece.g, m));
      H.push_back(ComponentJet<S>::interval(piece.h, m));
    }
  }
  return make_jet_triple(m, std::move(comps), std::move(F), std::move(G), std::move(H));
}

double fd_error(const Poly<Rational>& p, const Rational& x, const Rational& h, int k) {
  Rational sum(0);
  for (int j = 0; j <= k; ++j) {
    Rational offset = (Rational(k, 2) - Rational(j)) * h;
    offset.canonicalize();
    Rational term = Rational(binomial(k, j)) * p(Rational(x + offset));
    if (j % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  Rational fd = sum / ipow(h, k);
  Rational err = fd - p.derivative(k)(x);
  return std::abs(err.get_d());
}

double fd_tolerance(const Poly<Rational>& p, const Interval<Rational>& I, const Rational& h, int k) {
  Poly<double> d = convert_poly<double>(p.derivative(k + 2));
  double bound = max_abs(d, Interval<double>(I.lo.get_d(), I.hi.get_d())).value;
  double hd = h.get_d();
  return std::max(1e-6, hd * hd * bound);
}

namespace {

// u^{(m)} on one piece with its interior critical points, in double.
struct OscPiece {
  double lo, hi;
  Poly<double> p;
  std::vector<double> crit;
};

template <class S>
std::vector<OscPiece> osc_pieces(const HorizontalCurve<S>& curve, bool use_g) {
  std::vector<OscPiece> out;
  for (const auto& cp : curve.pieces) {
    const auto& u = use_g ? cp.piece.g : cp.piece.f;
    OscPiece o;
    o.lo = to_double(cp.piece.domain.lo);
    o.hi = to_double(cp.piece.domain.hi);
    o.p = convert_poly<double>(Poly<S>(u.derivative(curve.m)));
    if (o.hi > o.lo)
      for (const auto& r : isolate_roots(o.p.derivative(), Interval<double>(o.lo, o.hi))) o.crit.push_back(r.point());
    out.push_back(std::move(o));
  }
  return out;
}

double oscillation(const std::vector<OscPiece>& pieces, double a, double b) {
  double mx = -INFINITY, mn = INFINITY;
  auto take = [&](const OscPiece& o, double x) {
    double v = o.p(x);
    mx = std::max(mx, v);
    mn = std::min(mn, v);
  };
  for (const auto& o : pieces) {
    if (o.hi < a || o.lo > b) continue;
    double lo = std::max(o.lo, a), hi = std::min(o.hi, b);
    take(o, lo);
    take(o, hi);
    for (double c : o.crit)
      if (c > lo && c < hi) take(o, c);
  }
  return mx >= mn ? mx - mn : 0.0;
}

// True when a condition (2) residual on jets read off the curve is within
// the rounding allowance of reading them off (float mode only).
template <class S>
bool within_evaluation_error(const HorizontalCurve<S>& curve, const Condition2Violation<S>& v) {
  if constexpr (ScalarTraits<S>::exact) {
    return false;
  } else {
    const auto& p = curve.pieces[curve.locate(v.x)].piece;
    const int k = v.k;
    std::vector<double> F, G, aF, aG;
    for (int j = 0; j <= k; ++j) {
      const Poly<S> df = p.f.derivative(j), dg = p.g.derivative(j);
      F.push_back(std::abs(df(v.x)));
      G.push_back(std::abs(dg(v.x)));
      aF.push_back(rounding_allowance(df, v.x));
      aG.push_back(rounding_allowance(dg, v.x));
    }
    const Poly<S> dh = p.h.derivative(k);
    double mag = 0.0, allow = rounding_allowance(dh, v.x);
    for (int j = 0; j <= k - 1; ++j) {
      const double c = static_cast<double>(binomial(k - 1, j));
      const auto u = static_cast<std::size_t>(j + 1), w = static_cast<std::size_t>(k - 1 - j);
      mag += 2 * c * (F[u] * G[w] + G[u] * F[w]);
      allow += 2 * c * (F[u] * aG[w] + aF[u] * G[w] + aF[u] * aG[w] + G[u] * aF[w] + aG[u] * F[w] + aG[u] * aF[w]);
    }
    const double scale = std::max({1.0, std::abs(dh(v.x)), mag});
    return v.magnitude <= kHorizTolerance * scale + allow;
  }
}

}  // namespace

template <class S>
NecessityReport necessity_check(const HorizontalCurve<S>& curve, const CompactSet<S>& Kp, const VerifyOptions& opt) {
  NecessityReport rep;
  JetTriple<S> Tp = restrict_curve(curve, Kp);
  for (const auto& v : check_condition2(Tp, opt.mesh))
    if (!within_evaluation_error(curve, v)) ++rep.condition2_violations;

  const ScaleProfile av = av_profile(Tp, opt.grid, opt.mesh);
  const auto fpieces = osc_pieces(curve, false), gpieces = osc_pieces(curve, true);
  const double fact = to_double(factorial<S>(curve.m - 1));
  const auto samples = sample_points(Kp, opt.mesh);
  std::vector<double> xs;
  for (const auto& s : samples) xs.push_back(to_double(s.x));
  auto kernel = [&](std::size_t i, std::size_t j, BinAccumulator& acc) {
    double eps = std::max(oscillation(fpieces, xs[i], xs[j]), oscillation(gpieces, xs[i], xs[j])) / fact;
    acc.add(0, opt.grid.level(xs[j] - xs[i]), 4 * eps * eps + 6 * eps, xs[i], xs[j]);
  };
  BinAccumulator env = reduce_pairs_parallel(samples.size(), 1, kernel);
  auto ebins = env.bins(0, opt.grid);

  // Running max over finer levels makes the envelope nonincreasing in scale.
  std::vector<double> running(ebins.size());
  double run = 0.0;
  for (std::size_t i = ebins.size(); i-- > 0;) {
    run = std::max(run, ebins[i].ratio);
    running[i] = run;
  }
  const double abs_slack = ScalarTraits<S>::exact ? 0.0 : 1e-9;
  for (const auto& bin : av.series.front().bins) {
    auto it = std::find_if(ebins.begin(), ebins.end(), [&](const ProfileBin& b) { return b.level == bin.level; });
    EnvelopeRow row;
    row.level = bin.level;
    row.av = bin.ratio;
    row.envelope = it == ebins.end() ? 0.0 : running[static_cast<std::size_t>(it - ebins.begin())];
    row.ok = row.av <= opt.envelope_slack * row.envelope + abs_slack;
    rep.rows.push_back(row);
  }
  return rep;
}

template <class S>
VerifyReport verify_extension(const HorizontalCurve<S>& curve, const JetTriple<S>& T, const VerifyOptions& opt) {
  VerifyReport rep;
  const int m = curve.m;
  auto piece_loc = [&](std::size_t i) {
    const auto& d = curve.pieces[i].piece.domain;
    return "piece " + std::to_string(i) + " [" + format_scalar(d.lo) + "," + format_scalar(d.hi) + "]";
  };

  // (i) horizontality
  for (std::size_t i = 0; i < curve.pieces.size(); ++i) {
    const auto& p = curve.pieces[i].piece;
    HorizontalPiece<S> fresh(p.domain, p.f, p.g, p.h);
    ++rep.pieces_checked;
    if (!fresh.horizontal())
      rep.findings.push_back({"defect", piece_loc(i), "defect = " + std::to_string(coeff_scale(fresh.defect)),
                              coeff_scale(fresh.defect)});
  }

  // (ii) junctions
  for (const auto& j : junction_certs(curve.pieces, m)) {
    ++rep.junctions_checked;
    if (!j.ok)
      rep.findings.push_back({"junction", "x=" + format_scalar(j.x) + " (pieces " + std::to_string(j.left) + "," +
                                              std::to_string(j.right) + ")",
                              "derivative mismatch " + std::to_string(j.max_mismatch), j.max_mismatch});
  }

  // (iii) restriction to K
  const Interval<S> dom = curve.domain();
  for (std::size_t c = 0; c < T.K.size(); ++c) {
    const auto& comp = T.K.component(c);
    const std::string loc = "component " + std::to_string(c);
    if (!dom.contains(comp)) {
      rep.findings.push_back({"restriction", loc, "component outside the curve domain", 0.0});
      continue;
    }
    if (comp.degenerate()) {
      const auto& p = curve.pieces[curve.locate(comp.lo)].piece;
      const std::pair<const Poly<S>*, const Jet<S>*> comps[] = {{&p.f, &T.F}, {&p.g, &T.G}, {&p.h, &T.H}};
      double worst = 0.0;
      bool bad = false;
      for (const auto& [poly, jet] : comps) {
        for (int k = 0; k <= m; ++k) {
          const Poly<S> dp = poly->derivative(k);
          S cv = dp(comp.lo), jv = jet->value(c, comp.lo, k);
          double diff = std::abs(to_double(S(cv - jv)));
          worst = std::max(worst, diff);
          if constexpr (ScalarTraits<S>::exact) {
            bad |= cv != jv;
          } else {
            bad |= diff > 1e-9 * std::max({1.0, std::abs(cv), std::abs(jv)}) + rounding_allowance(dp, comp.lo);
          }
        }
      }
      if (bad) rep.findings.push_back({"restriction", loc + " x=" + format_scalar(comp.lo), "jet mismatch", worst});
    } else {
      const auto& p = curve.pieces[curve.locate(comp.lo)].piece;
      if (!p.domain.contains(comp)) {
        rep.findings.push_back({"restriction", loc, "interval component split across pieces", 0.0});
        continue;
      }
      const std::pair<const Poly<S>*, const Jet<S>*> comps[] = {{&p.f, &T.F}, {&p.g, &T.G}, {&p.h, &T.H}};
      for (const auto& [poly, jet] : comps) {
        Poly<S> diff = *poly - jet->data[c].poly();
        bool bad;
        if constexpr (ScalarTraits<S>::exact) {
          bad = !diff.is_zero();
        } else {
          bad = coeff_scale(diff) > 1e-10 * std::max(1.0, coeff_scale(jet->data[c].poly()));
        }
        if (bad) rep.findings.push_back({"restriction", loc, "polynomial data differs", coeff_scale(diff)});
      }
    }
  }

  // (iv) finite differences in exact arithmetic
  if (opt.fd_points > 0) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<long> pick(0, (1L << 20));
    for (std::size_t i = 0; i < curve.pieces.size(); ++i) {
      const auto& p = curve.pieces[i].piece;
      if (p.domain.degenerate()) continue;
      Interval<Rational> I(from_double<Rational>(0), from_double<Rational>(0));
      if constexpr (ScalarTraits<S>::exact) {
        I = p.domain;
      } else {
        I = Interval<Rational>(Rational(p.domain.lo), Rational(p.domain.hi));
      }
      const Rational len = I.length();
      Rational h = len / 10000;
      h.canonicalize();
      const Poly<Rational> polys[] = {convert_poly<Rational>(p.f), convert_poly<Rational>(p.g), convert_poly<Rational>(p.h)};
      const char* names[] = {"f", "g", "h"};
      for (int q = 0; q < opt.fd_points; ++q) {
        Rational t(pick(rng), 1L << 20);
        t.canonicalize();
        Rational margin = h * m;
        Rational x = I.lo + margin + t * (len - 2 * margin);
        ++rep.fd_samples;
        for (int w = 0; w < 3; ++w) {
          for (int k = 1; k <= m; ++k) {
            double err = fd_error(polys[w], x, h, k);
            double tol = fd_tolerance(polys[w], I, h, k);
            if (err > tol)
              rep.findings.push_back({"finite-difference",
                                      piece_loc(i) + " " + names[w] + " k=" + std::to_string(k) + " x=" + x.get_str(),
                                      "error " + std::to_string(err) + " > " + std::to_string(tol), err});
          }
        }
      }
    }
  }

  // (v) necessity round trip on K itself
  if (opt.necessity) {
    try {
      rep.necessity = necessity_check(curve, T.K, opt);
    } catch (const std::exception& e) {
      rep.findings.push_back({"necessity", "restricted jets", e.what(), 0.0});
      return rep;
    }
    if (rep.necessity.condition2_violations)
      rep.findings.push_back({"necessity", "restricted jets",
                              std::to_string(rep.necessity.condition2_violations) + " condition (2) violations",
                              static_cast<double>(rep.necessity.condition2_violations)});
    for (const auto& row : rep.necessity.rows)
      if (!row.ok)
        rep.findings.push_back({"necessity", "level " + std::to_string(row.level),
                                "A/V " + std::to_string(row.av) + " exceeds envelope " + std::to_string(row.envelope),
                                row.av});
  }
  return rep;
}

#define HOROCURVE_INSTANTIATE_VERIFY(S)                                                                      \
  template JetTriple<S> restrict_curve<S>(const HorizontalCurve<S>&, const CompactSet<S>&);                  \
  template NecessityReport necessity_check<S>(const HorizontalCurve<S>&, const CompactSet<S>&,               \
                                              const VerifyOptions&);                                         \
  template VerifyReport verify_extension<S>(const HorizontalCurve<S>&, const JetTriple<S>&, const VerifyOptions&);

HOROCURVE_INSTANTIATE_VERIFY(double)
HOROCURVE_INSTANTIATE_VERIFY(Rational)

}  // namespace horocurve
