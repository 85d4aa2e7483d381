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

// horocurve: check, extend, verify, sample, counterexample, generate.
// Exit codes: 0 pass, 1 I/O or parse error, 2 mathematical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "horocurve/extender.hpp"
#include "horocurve/heisenberg.hpp"
#include "horocurve/io.hpp"
#include "horocurve/jetspace.hpp"
#include "horocurve/scenarios.hpp"
#include "horocurve/verify.hpp"

namespace hc = horocurve;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitMath = 2;

struct RunConfig {
  std::string mode = "float";
  int mesh = 64;
  int bins = 1;
  int depth = 6;
  int m = 1;
  int points = 8;
  std::uint64_t seed = 1;
  std::string out;
  std::string csv;
  std::string instance_out;
  std::string step = "1/64";
  std::string instance;
  std::string curve;
  int fd_points = 20;
};

void emit(const RunConfig& cfg, const hc::json& report) {
  if (cfg.out.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    hc::write_text_file(cfg.out, report.dump(2) + "\n");
  }
}

template <class S>
int cmd_check(const RunConfig& cfg) {
  auto T = hc::instance_from_json<S>(hc::read_json_file(cfg.instance));
  const hc::MeshPolicy mesh{cfg.mesh};
  const hc::ScaleGrid grid{cfg.bins};
  auto viol = hc::check_condition2(T, mesh);
  hc::json vj = hc::json::array();
  for (const auto& v : viol)
    vj.push_back({{"component", v.component}, {"x", hc::scalar_to_json(v.x)}, {"k", v.k},
                  {"magnitude", hc::scalar_to_json(v.magnitude)}});

  hc::json report{{"mode", hc::ScalarTraits<S>::name}, {"m", T.m}, {"condition2_violations", vj}};
  bool trends_ok = true;
  auto add_profile = [&](const std::string& key, const hc::ScaleProfile& p) {
    for (const auto& s : p.series) trends_ok &= hc::trend(s).ok;
    report[key] = hc::profile_to_json(p);
  };
  add_profile("whitney_F", hc::whitney_profile(T.F, T.K, grid, mesh));
  add_profile("whitney_G", hc::whitney_profile(T.G, T.K, grid, mesh));
  add_profile("whitney_H", hc::whitney_profile(T.H, T.K, grid, mesh));
  add_profile("area_velocity", hc::av_profile(T, grid, mesh));
  const bool pass = viol.empty() && trends_ok;
  report["trends_nonincreasing"] = trends_ok;
  report["pass"] = pass;
  if (!cfg.csv.empty()) {
    std::ofstream os(cfg.csv);
    if (!os) throw hc::InputError("cannot write " + cfg.csv);
    hc::write_av_csv(os, hc::av_pairs(T, mesh));
  }
  emit(cfg, report);
  if (!cfg.out.empty())
    std::printf("condition (2) violations: %zu; profile trends %s; %s\n", viol.size(),
                trends_ok ? "nonincreasing" : "increasing", pass ? "PASS" : "FAIL");
  return pass ? kExitOk : kExitMath;
}

template <class S>
int cmd_extend(const RunConfig& cfg) {
  auto T = hc::instance_from_json<S>(hc::read_json_file(cfg.instance));
  hc::HorizontalCurve<S> curve;
  try {
    curve = hc::glue_extension(T);
  } catch (const hc::PreflightError& e) {
    std::fprintf(stderr, "preflight failed [%s] at %s: %s\n", e.criterion().c_str(), e.location().c_str(), e.what());
    return kExitMath;
  }
  const hc::json cj = hc::curve_to_json(curve);
  if (cfg.out.empty()) {
    std::cout << cj.dump(2) << "\n";
  } else {
    hc::write_text_file(cfg.out, cj.dump(2) + "\n");
  }
  std::FILE* table = cfg.out.empty() ? stderr : stdout;
  std::fprintf(table, "%-5s %-24s %-12s %-14s %-14s\n", "gap", "interval", "case", "budget", "beta_achieved");
  for (const auto& g : curve.gaps) {
    std::ostringstream iv;
    iv << "[" << hc::to_double(g.gap.lo) << "," << hc::to_double(g.gap.hi) << "]";
    std::fprintf(table, "%-5zu %-24s %-12s %-14.6g %-14.6g\n", g.index, iv.str().c_str(),
                 hc::case_name(g.perturbation.tag).c_str(), hc::to_double(g.budget.budget),
                 g.perturbation.beta_achieved);
  }
  bool junctions_ok = true;
  for (const auto& j : curve.junctions) junctions_ok &= j.ok;
  return junctions_ok ? kExitOk : kExitMath;
}

template <class S>
int cmd_verify(const RunConfig& cfg) {
  auto curve = hc::curve_from_json<S>(hc::read_json_file(cfg.curve));
  auto T = hc::instance_from_json<S>(hc::read_json_file(cfg.instance));
  if (curve.m != T.m) throw hc::InputError("curve and instance disagree on m");
  hc::VerifyOptions opt;
  opt.seed = cfg.seed;
  opt.grid = hc::ScaleGrid{cfg.bins};
  opt.fd_points = cfg.fd_points;
  auto rep = hc::verify_extension(curve, T, opt);
  emit(cfg, hc::verify_report_to_json(rep));
  for (const auto& f : rep.findings)
    std::fprintf(stderr, "FAIL %s at %s: %s\n", f.check.c_str(), f.location.c_str(), f.message.c_str());
  if (!cfg.out.empty()) std::printf("%s (%zu findings)\n", rep.ok() ? "PASS" : "FAIL", rep.findings.size());
  return rep.ok() ? kExitOk : kExitMath;
}

template <class S>
int cmd_sample(const RunConfig& cfg) {
  auto curve = hc::curve_from_json<S>(hc::read_json_file(cfg.curve));
  S step;
  try {
    step = hc::parse_scalar<S>(cfg.step);
  } catch (const std::invalid_argument& e) {
    throw hc::InputError(e.what());
  }
  if (cfg.out.empty()) {
    hc::write_sample_csv(std::cout, curve, step);
  } else {
    std::ofstream os(cfg.out);
    if (!os) throw hc::InputError("cannot write " + cfg.out);
    hc::write_sample_csv(os, curve, step);
  }
  return kExitOk;
}

template <class S>
int cmd_counterexample(const RunConfig& cfg) {
  hc::CounterexampleSpec spec{cfg.m, cfg.depth, true};
  auto T = hc::gen_counterexample<S>(spec);
  if (!cfg.instance_out.empty()) hc::write_text_file(cfg.instance_out, hc::instance_to_json(T).dump(2) + "\n");
  hc::json rows = hc::json::array();
  bool ok = true;
  double prev = 0.0;
  bool increasing = true;
  std::printf("%-4s %-22s %-22s %-22s %-22s %-10s\n", "n", "A", "V", "|A|/V", "closed form", "rel.err");
  for (int n = 0; n + 1 < cfg.depth; ++n) {
    const S a = hc::counterexample_d<S>(n), b = hc::counterexample_c<S>(n + 1);
    auto r = hc::av_report(T, a, b);
    S ratio = hc::abs_of(S(r.A / r.V));
    hc::Rational closed = hc::counterexample_ratio(cfg.m, n);
    double rel;
    if constexpr (hc::ScalarTraits<S>::exact) {
      hc::Rational d = (ratio - closed) / closed;
      rel = std::abs(d.get_d());
      ok &= ratio == closed;
    } else {
      rel = std::abs(ratio - closed.get_d()) / closed.get_d();
      ok &= rel <= 1e-9;
    }
    increasing &= n == 0 || hc::to_double(ratio) > prev;
    prev = hc::to_double(ratio);
    std::printf("%-4d %-22.12g %-22.12g %-22.12g %-22.12g %-10.3g\n", n, hc::to_double(r.A), hc::to_double(r.V),
                hc::to_double(ratio), closed.get_d(), rel);
    rows.push_back({{"n", n},
                    {"a", hc::scalar_to_json(a)},
                    {"b", hc::scalar_to_json(b)},
                    {"A", hc::scalar_to_json(r.A)},
                    {"V", hc::scalar_to_json(r.V)},
                    {"ratio", hc::scalar_to_json(ratio)},
                    {"closed_form", closed.get_str()},
                    {"relative_error", rel}});
  }
  hc::json report{{"mode", hc::ScalarTraits<S>::name}, {"m", cfg.m}, {"depth", cfg.depth}, {"rows", rows},
                  {"closed_form_match", ok}, {"ratio_increasing", increasing}};
  if (!cfg.out.empty()) hc::write_text_file(cfg.out, report.dump(2) + "\n");
  return ok ? kExitOk : kExitMath;
}

template <class S>
int cmd_generate(const RunConfig& cfg) {
  auto T = hc::gen_valid_instance<S>(cfg.m, cfg.points, cfg.seed);
  const std::string text = hc::instance_to_json(T).dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    hc::write_text_file(cfg.out, text);
  }
  return kExitOk;
}

template <class S>
int run(const std::string& cmd, const RunConfig& cfg) {
  if (cmd == "check") return cmd_check<S>(cfg);
  if (cmd == "extend") return cmd_extend<S>(cfg);
  if (cmd == "verify") return cmd_verify<S>(cfg);
  if (cmd == "sample") return cmd_sample<S>(cfg);
  if (cmd == "counterexample") return cmd_counterexample<S>(cfg);
  if (cmd == "generate") return cmd_generate<S>(cfg);
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cm horizontal-curve extension in the Heisenberg group"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "numeric mode")->check(CLI::IsMember({"float", "rational"}));
    sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
  };
  auto profiles = [&](CLI::App* sub) {
    sub->add_option("--mesh", cfg.mesh, "divisions per interval component")->check(CLI::PositiveNumber);
    sub->add_option("--bins", cfg.bins, "scale bins per octave")->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check", "evaluate the three extension criteria on an instance");
  check->add_option("instance", cfg.instance)->required();
  check->add_option("--csv", cfg.csv, "write every sampled (a, b, A, V, ratio) row");
  common(check);
  profiles(check);

  auto* extend = app.add_subcommand("extend", "build a horizontal extension");
  extend->add_option("instance", cfg.instance)->required();
  common(extend);

  auto* verify = app.add_subcommand("verify", "verify a curve against an instance");
  verify->add_option("curve", cfg.curve)->required();
  verify->add_option("instance", cfg.instance)->required();
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--fd-points", cfg.fd_points, "finite-difference points per piece");
  common(verify);
  profiles(verify);

  auto* sample = app.add_subcommand("sample", "sample a curve to CSV");
  sample->add_option("curve", cfg.curve)->required();
  sample->add_option("--step", cfg.step, "sampling step, e.g. 0.01 or 1/64");
  common(sample);

  auto* cex = app.add_subcommand("counterexample", "A/V table for the divergent family");
  cex->add_option("--m", cfg.m)->check(CLI::Range(1, 12));
  cex->add_option("--depth", cfg.depth)->check(CLI::Range(2, 40));
  cex->add_option("--instance-out", cfg.instance_out, "also write the instance JSON");
  common(cex);

  auto* gen = app.add_subcommand("generate", "random instance that admits an extension");
  gen->add_option("--m", cfg.m)->check(CLI::Range(1, 8));
  gen->add_option("--points", cfg.points)->check(CLI::Range(1, 129));
  gen->add_option("--seed", cfg.seed);
  common(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return cfg.mode == "rational" ? run<hc::Rational>(cmd, cfg) : run<double>(cmd, cfg);
  } catch (const hc::InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const hc::json::exception& e) {
    std::fprintf(stderr, "error: malformed input: %s\n", e.what());
    return kExitInput;
  } catch (const hc::PreflightError& e) {
    std::fprintf(stderr, "preflight failed [%s] at %s: %s\n", e.criterion().c_str(), e.location().c_str(), e.what());
    return kExitMath;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitMath;
  }
}
