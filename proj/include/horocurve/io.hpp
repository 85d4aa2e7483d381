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

// JSON and CSV formats.
//
// Scalars are JSON numbers in float mode and "p/q" strings in rational
// mode. Readers accept either form in both modes; a JSON number read in
// rational mode is taken as its shortest round-trip decimal, so 0.1 is 1/10.

#pragma once

#include <json.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "horocurve/extender.hpp"
#include "horocurve/heisenberg.hpp"
#include "horocurve/verify.hpp"

namespace horocurve {

using json = nlohmann::json;

/// Malformed or unreadable input (exit code 1 in the CLI).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class S>
json scalar_to_json(const S& v);
template <class S>
S scalar_from_json(const json& j);

template <class S>
json poly_to_json(const Poly<S>& p);
template <class S>
Poly<S> poly_from_json(const json& j);

/// {"m": int, "components": [{"interval": [a,b] | "point": x, "F": ..., "G": ..., "H": ...}]}
template <class S>
json instance_to_json(const JetTriple<S>& T);
template <class S>
JetTriple<S> instance_from_json(const json& j);

/// {"m": int, "pieces": [{"interval": [a,b], "f", "g", "h", "kind", "case"}]}
template <class S>
json curve_to_json(const HorizontalCurve<S>& c);
template <class S>
HorizontalCurve<S> curve_from_json(const json& j);

json profile_to_json(const ScaleProfile& p);
json verify_report_to_json(const VerifyReport& r);

template <class S>
json gap_table_to_json(const HorizontalCurve<S>& c);

/// a,b,A,V,ratio
template <class S>
void write_av_csv(std::ostream& os, const std::vector<AVReport<S>>& rows);

/// x,f,g,h,df,dg,dh,defect at lo, lo + step, ... ≤ hi.
template <class S>
void write_sample_csv(std::ostream& os, const HorizontalCurve<S>& c, const S& step);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace horocurve
