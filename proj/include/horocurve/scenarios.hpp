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
#include <vector>

#include "horocurve/extender.hpp"
#include "horocurve/jetspace.hpp"

namespace horocurve {

struct CounterexampleSpec {
  int m = 1;
  int depth = 1;
  bool terminal = true;  // include the point 1 with H = 0
};

/// c_n = 1 - 2^-n
template <class S>
S counterexample_c(int n);
/// d_n = 1 - (3/4)2^-n
template <class S>
S counterexample_d(int n);

/// F = G = 0, H = 3^{-mn} on [c_n, d_n] for n < depth.
template <class S>
JetTriple<S> gen_counterexample(const CounterexampleSpec& spec);

/// (3^m - 1)·16^m·3^{-m}·(4/3)^{mn}: |A|/V at the pair (d_n, c_{n+1}).
Rational counterexample_ratio(int m, int n);

struct ValidInstanceOptions {
  int max_spans = 3;
  double interval_probability = 0.25;
};

/// Random horizontal curve built from polynomial spans on [0, 2].
template <class S>
struct SourceCurve {
  std::vector<S> breaks;  // span boundaries, breaks.front() = 0, breaks.back() = 2
  std::vector<Poly<S>> f, g, h;
};

template <class S>
struct ValidInstance {
  JetTriple<S> T;
  SourceCurve<S> source;
};

/// Jets of a random Cᵐ horizontal curve restricted to `points` components.
template <class S>
ValidInstance<S> gen_valid_instance_with_source(int m, int points, std::uint64_t seed, const ValidInstanceOptions& opt = {});

template <class S>
JetTriple<S> gen_valid_instance(int m, int points, std::uint64_t seed, const ValidInstanceOptions& opt = {});

/// H(b) - H(a) - 2(F(b)G(a) - F(a)G(b)); m = 1 only.
template <class S>
S c1_area_discrepancy(const JetTriple<S>& T, const S& a, const S& b);

/// Converts every scalar of a triple (double <-> Rational; to Rational is exact).
template <class To, class From>
JetTriple<To> convert_triple(const JetTriple<From>& T);

}  // namespace horocurve
