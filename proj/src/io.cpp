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

#include "horocurve/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace horocurve {

template <class S>
json scalar_to_json(const S& v) {
  if constexpr (ScalarTraits<S>::exact) {
    return v.get_str();
  } else {
    return v;
  }
}

template <class S>
S scalar_from_json(const json& j) {
  try {
    if (j.is_string()) return parse_scalar<S>(j.get<std::string>());
    if (j.is_number_integer()) return S(j.get<long>());
    if (j.is_number_float()) {
      double v = j.get<double>();
      if constexpr (ScalarTraits<S>::exact) {
        return parse_scalar<Rational>(shortest_decimal(v));
      } else {
        return v;
      }
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  throw InputError("expected a number or a \"p/q\" string, got " + j.dump());
}

template <class S>
json poly_to_json(const Poly<S>& p) {
  // Exact mode always writes coefficients about 0. Float mode keeps a
  // nonzero expansion point, since expanding about 0 would lose the digits.
  const Poly<S> q = ScalarTraits<S>::exact ? p.global() : p;
  json arr = json::array();
  for (const auto& c : q.coeffs()) arr.push_back(scalar_to_json(c));
  if (q.origin() == 0) return arr;
  return json{{"origin", scalar_to_json(q.origin())}, {"coeffs", std::move(arr)}};
}

template <class S>
Poly<S> poly_from_json(const json& j) {
  if (j.is_object()) {
    if (!j.contains("coeffs") || !j.contains("origin"))
      throw InputError("polynomial object needs \"origin\" and \"coeffs\", got " + j.dump());
    Poly<S> p = poly_from_json<S>(j.at("coeffs"));
    return Poly<S>(p.coeffs(), scalar_from_json<S>(j.at("origin")));
  }
  if (!j.is_array()) throw InputError("expected a coefficient array, got " + j.dump());
  std::vector<S> c;
  for (const auto& v : j) c.push_back(scalar_from_json<S>(v));
  return Poly<S>(std::move(c));
}

namespace {

template <class S>
json jet_to_json(const ComponentJet<S>& c) {
  if (c.is_interval()) return poly_to_json(c.poly());
  json arr = json::array();
  for (const auto& v : c.values()) arr.push_back(scalar_to_json(v));
  return arr;
}

template <class S>
json interval_to_json(const Interval<S>& I) {
  return json::array({scalar_to_json(I.lo), scalar_to_json(I.hi)});
}

template <class S>
Interval<S> interval_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("interval must be [a, b], got " + j.dump());
  S lo = scalar_from_json<S>(j[0]), hi = scalar_from_json<S>(j[1]);
  if (hi < lo) throw InputError("interval has hi < lo: " + j.dump());
  return {lo, hi};
}

const json& field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return obj.at(name);
}

}  // namespace

template <class S>
json instance_to_json(const JetTriple<S>& T) {
  json comps = json::array();
  for (std::size_t i = 0; i < T.K.size(); ++i) {
    const auto& c = T.K.component(i);
    json o;
    if (c.degenerate()) {
      o["point"] = scalar_to_json(c.lo);
    } else {
      o["interval"] = interval_to_json(c);
    }
    o["F"] = jet_to_json(T.F.data[i]);
    o["G"] = jet_to_json(T.G.data[i]);
    o["H"] = jet_to_json(T.H.data[i]);
    comps.push_back(std::move(o));
  }
  return json{{"m", T.m}, {"components", std::move(comps)}};
}

template <class S>
JetTriple<S> instance_from_json(const json& j) {
  const json& mj = field(j, "m");
  if (!mj.is_number_integer() || mj.get<long>() < 0) throw InputError("\"m\" must be a nonnegative integer");
  const int m = mj.get<int>();
  const json& cj = field(j, "components");
  if (!cj.is_array() || cj.empty()) throw InputError("\"components\" must be a nonempty array");
  std::vector<Interval<S>> comps;
  std::vector<ComponentJet<S>> F, G, H;
  for (const auto& c : cj) {
    bool point = c.is_object() && c.contains("point");
    if (point) {
      S x = scalar_from_json<S>(c.at("point"));
      comps.emplace_back(x, x);
    } else {
      comps.push_back(interval_from_json<S>(field(c, "interval")));
    }
    if (!point && comps.back().degenerate()) point = true;
    for (auto [name, dst] : {std::pair{"F", &F}, std::pair{"G", &G}, std::pair{"H", &H}}) {
      const json& d = field(c, name);
      if (point) {
        if (!d.is_array() || d.size() != static_cast<std::size_t>(m) + 1)
          throw InputError(std::string("point data \"") + name + "\" must list " + std::to_string(m + 1) + " values");
        std::vector<S> v;
        for (const auto& e : d) v.push_back(scalar_from_json<S>(e));
        dst->push_back(ComponentJet<S>::point(std::move(v)));
      } else {
        dst->push_back(ComponentJet<S>::interval(poly_from_json<S>(d), m));
      }
    }
  }
  try {
    return make_jet_triple(m, std::move(comps), std::move(F), std::move(G), std::move(H));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

template <class S>
json curve_to_json(const HorizontalCurve<S>& c) {
  json pieces = json::array();
  for (const auto& cp : c.pieces) {
    json o{{"interval", interval_to_json(cp.piece.domain)},
           {"f", poly_to_json(cp.piece.f)},
           {"g", poly_to_json(cp.piece.g)},
           {"h", poly_to_json(cp.piece.h)},
           {"kind", cp.kind == PieceKind::Gap ? "gap" : "component"}};
    if (cp.tag) o["case"] = case_name(*cp.tag);
    pieces.push_back(std::move(o));
  }
  return json{{"m", c.m}, {"mode", ScalarTraits<S>::name}, {"pieces", std::move(pieces)}};
}

template <class S>
HorizontalCurve<S> curve_from_json(const json& j) {
  HorizontalCurve<S> c;
  const json& mj = field(j, "m");
  if (!mj.is_number_integer() || mj.get<long>() < 0) throw InputError("\"m\" must be a nonnegative integer");
  c.m = mj.get<int>();
  const json& pj = field(j, "pieces");
  if (!pj.is_array() || pj.empty()) throw InputError("\"pieces\" must be a nonempty array");
  for (const auto& p : pj) {
    CurvePiece<S> cp;
    cp.piece = HorizontalPiece<S>(interval_from_json<S>(field(p, "interval")), poly_from_json<S>(field(p, "f")),
                                  poly_from_json<S>(field(p, "g")), poly_from_json<S>(field(p, "h")));
    if (p.contains("kind")) cp.kind = p.at("kind") == "gap" ? PieceKind::Gap : PieceKind::Component;
    if (p.contains("case")) {
      if (!p.at("case").is_string()) throw InputError("\"case\" must be a string");
      cp.tag = parse_case(p.at("case").get<std::string>());
      if (!cp.tag) throw InputError("unknown case tag " + p.at("case").dump());
    }
    c.pieces.push_back(std::move(cp));
  }
  c.junctions = junction_certs(c.pieces, c.m);
  return c;
}

json profile_to_json(const ScaleProfile& p) {
  json series = json::array();
  for (const auto& s : p.series) {
    json bins = json::array();
    for (const auto& b : s.bins)
      bins.push_back(
          {{"level", b.level}, {"scale", b.scale}, {"ratio", b.ratio}, {"a", b.a}, {"b", b.b}, {"count", b.count}});
    TrendReport t = trend(s);
    series.push_back({{"name", s.name},
                      {"k", s.k},
                      {"sup", s.sup()},
                      {"trend_slope", t.slope},
                      {"trend_ok", t.ok},
                      {"bins", std::move(bins)}});
  }
  return json{{"levels_per_octave", p.grid.levels_per_octave}, {"series", std::move(series)}};
}

json verify_report_to_json(const VerifyReport& r) {
  json findings = json::array();
  for (const auto& f : r.findings)
    findings.push_back({{"check", f.check}, {"location", f.location}, {"message", f.message}, {"magnitude", f.magnitude}});
  json rows = json::array();
  for (const auto& row : r.necessity.rows)
    rows.push_back({{"level", row.level}, {"av", row.av}, {"envelope", row.envelope}, {"ok", row.ok}});
  return json{{"ok", r.ok()},
              {"pieces_checked", r.pieces_checked},
              {"junctions_checked", r.junctions_checked},
              {"fd_samples", r.fd_samples},
              {"necessity",
               {{"condition2_violations", r.necessity.condition2_violations}, {"envelope", std::move(rows)}}},
              {"findings", std::move(findings)}};
}

template <class S>
json gap_table_to_json(const HorizontalCurve<S>& c) {
  json rows = json::array();
  for (const auto& g : c.gaps) {
    json o{{"gap", g.index},
           {"interval", interval_to_json(g.gap)},
           {"case", case_name(g.perturbation.tag)},
           {"budget", scalar_to_json(g.budget.budget)},
           {"beta_achieved", g.perturbation.beta_achieved},
           {"deviation", g.deviation},
           {"alpha", g.budget.alpha},
           {"bound", g.budget.bound},
           {"l1_f", g.norms.l1f},
           {"l1_g", g.norms.l1g},
           {"length_pow_m", g.norms.len_m}};
    if (g.perturbation.tag == CaseTag::SmallCase3) o["lambda"] = g.perturbation.lambda;
    if (!g.perturbation.note.empty()) o["note"] = g.perturbation.note;
    rows.push_back(std::move(o));
  }
  return rows;
}

namespace {

std::string num(double v) { return shortest_decimal(v); }

}  // namespace

template <class S>
void write_av_csv(std::ostream& os, const std::vector<AVReport<S>>& rows) {
  os << "a,b,A,V,ratio\n";
  for (const auto& r : rows)
    os << num(to_double(r.a)) << ',' << num(to_double(r.b)) << ',' << num(to_double(r.A)) << ','
       << num(to_double(r.V)) << ',' << num(r.ratio) << '\n';
}

template <class S>
void write_sample_csv(std::ostream& os, const HorizontalCurve<S>& c, const S& step) {
  if (!(step > 0)) throw InputError("sample step must be positive");
  const Interval<S> dom = c.domain();
  os << "x,f,g,h,df,dg,dh,defect\n";
  for (long i = 0;; ++i) {
    S x = dom.lo + step * S(i);
    if (x > dom.hi) break;
    const auto& p = c.pieces[c.locate(x)].piece;
    os << num(to_double(x)) << ',' << num(to_double(p.f(x))) << ',' << num(to_double(p.g(x))) << ','
       << num(to_double(p.h(x))) << ',' << num(to_double(p.f.derivative()(x))) << ','
       << num(to_double(p.g.derivative()(x))) << ',' << num(to_double(p.h.derivative()(x))) << ','
       << num(to_double(p.defect(x))) << '\n';
    if (dom.degenerate()) break;
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed for " + path);
}

#define HOROCURVE_INSTANTIATE_IO(S)                                                       \
  template json scalar_to_json<S>(const S&);                                              \
  template S scalar_from_json<S>(const json&);                                            \
  template json poly_to_json<S>(const Poly<S>&);                                          \
  template Poly<S> poly_from_json<S>(const json&);                                        \
  template json instance_to_json<S>(const JetTriple<S>&);                                 \
  template JetTriple<S> instance_from_json<S>(const json&);                               \
  template json curve_to_json<S>(const HorizontalCurve<S>&);                              \
  template HorizontalCurve<S> curve_from_json<S>(const json&);                            \
  template json gap_table_to_json<S>(const HorizontalCurve<S>&);                          \
  template void write_av_csv<S>(std::ostream&, const std::vector<AVReport<S>>&);          \
  template void write_sample_csv<S>(std::ostream&, const HorizontalCurve<S>&, const S&);

HOROCURVE_INSTANTIATE_IO(double)
HOROCURVE_INSTANTIATE_IO(Rational)

}  // namespace horocurve
