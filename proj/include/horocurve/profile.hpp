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

// Scale-binned sup reductions over pairs of sample points.
//
// A pair (a, b) with d = b - a falls into level floor(L * -log2 d), where L
// is the number of levels per octave, so with L = 1 the bin of level j
// holds d in (2^-(j+1), 2^-j]. Each bin keeps the largest ratio seen and
// the pair that produced it. Ties go to the lexicographically smaller
// (a, b), which makes the result independent of how pairs are sharded.

#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "horocurve/parallel.hpp"

namespace horocurve {

struct ScaleGrid {
  int levels_per_octave = 1;

  int level(double d) const { return static_cast<int>(std::floor(levels_per_octave * -std::log2(d))); }
  /// Upper edge of the distances in a level.
  double scale(int level) const { return std::exp2(-static_cast<double>(level) / levels_per_octave); }
};

struct ProfileBin {
  int level = 0;
  double scale = 0.0;
  double ratio = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::size_t count = 0;
};

inline bool bin_better(double r, double a, double b, const ProfileBin& cur) {
  if (r != cur.ratio) return r > cur.ratio;
  if (a != cur.a) return a < cur.a;
  return b < cur.b;
}

struct ProfileSeries {
  std::string name;
  int k = 0;
  std::vector<ProfileBin> bins;  // sorted by level, i.e. decreasing scale

  double sup() const {
    double s = 0.0;
    for (const auto& b : bins) s = std::max(s, b.ratio);
    return s;
  }
};

struct ScaleProfile {
  ScaleGrid grid;
  std::vector<ProfileSeries> series;
};

/// Per-series map level -> bin.
class BinAccumulator {
 public:
  explicit BinAccumulator(std::size_t nseries = 1) : bins_(nseries) {}

  void add(std::size_t series, int level, double ratio, double a, double b) {
    auto [it, inserted] = bins_[series].try_emplace(level);
    ProfileBin& bin = it->second;
    if (inserted) {
      bin.level = level;
      bin.ratio = ratio;
      bin.a = a;
      bin.b = b;
    } else if (bin_better(ratio, a, b, bin)) {
      bin.ratio = ratio;
      bin.a = a;
      bin.b = b;
    }
    ++bin.count;
  }

  void merge(const BinAccumulator& other) {
    for (std::size_t s = 0; s < bins_.size(); ++s) {
      for (const auto& [level, ob] : other.bins_[s]) {
        auto [it, inserted] = bins_[s].try_emplace(level, ob);
        if (inserted) continue;
        ProfileBin& bin = it->second;
        std::size_t count = bin.count + ob.count;
        if (bin_better(ob.ratio, ob.a, ob.b, bin)) bin = ob;
        bin.count = count;
      }
    }
  }

  std::vector<ProfileBin> bins(std::size_t series, const ScaleGrid& grid) const {
    std::vector<ProfileBin> out;
    for (auto [level, bin] : bins_[series]) {
      bin.scale = grid.scale(level);
      out.push_back(bin);
    }
    return out;
  }

 private:
  std::vector<std::map<int, ProfileBin>> bins_;
};

/// Kernel signature: kernel(i, j, acc) adds the contributions of pair i < j.
template <class Kernel>
BinAccumulator reduce_pairs_serial(std::size_t n, std::size_t nseries, Kernel&& kernel) {
  BinAccumulator acc(nseries);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) kernel(i, j, acc);
  return acc;
}

template <class Kernel>
BinAccumulator reduce_pairs_parallel(std::size_t n, std::size_t nseries, Kernel&& kernel) {
  BinAccumulator result(nseries);
  const long long rows = static_cast<long long>(n);
#pragma omp parallel num_threads(thread_budget())
  {
    BinAccumulator local(nseries);
#pragma omp for schedule(dynamic, 4) nowait
    for (long long i = 0; i < rows; ++i)
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) kernel(static_cast<std::size_t>(i), j, local);
#pragma omp critical(horocurve_profile_merge)
    result.merge(local);
  }
  return result;
}

/// Least-squares slope of log(ratio) against level over bins with a positive
/// ratio; `ok` when fewer than 3 such bins exist or the slope is <= tol.
struct TrendReport {
  bool ok = true;
  double slope = 0.0;
  std::size_t bins_used = 0;
};

inline TrendReport trend(const ProfileSeries& s, double tol = 0.1) {
  std::vector<double> xs, ys;
  for (const auto& b : s.bins) {
    if (b.ratio > 0.0 && std::isfinite(b.ratio)) {
      xs.push_back(b.level);
      ys.push_back(std::log(b.ratio));
    }
  }
  TrendReport r;
  r.bins_used = xs.size();
  if (xs.size() < 3) return r;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  r.slope = sxx > 0 ? sxy / sxx : 0.0;
  r.ok = r.slope <= tol;
  return r;
}

}  // namespace horocurve
