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

namespace horocurve {

/// OpenMP team size: omp_get_max_threads(), capped by HOROCURVE_THREADS
/// when that is set to a positive integer.
int thread_budget();

/// Which implementation of the data-parallel kernels to use.
enum class Exec { Serial, Parallel };

}  // namespace horocurve
