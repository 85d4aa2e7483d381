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

#include "horocurve/scalar.hpp"

#include <cctype>

namespace horocurve {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("cannot parse scalar '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Decimal or scientific literal read exactly.
Rational parse_decimal(std::string_view s, std::string_view original) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    std::string_view es = s.substr(epos + 1);
    bool eneg = false;
    if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6) bad(original);
    exponent = std::stol(std::string(es));
    if (eneg) exponent = -exponent;
    s = s.substr(0, epos);
  }
  std::string digits;
  auto dot = s.find('.');
  std::string_view ip = s.substr(0, dot);
  std::string_view fp = dot == std::string_view::npos ? std::string_view() : s.substr(dot + 1);
  if (ip.empty() && fp.empty()) bad(original);
  if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) bad(original);
  digits.append(ip);
  digits.append(fp);
  exponent -= static_cast<long>(fp.size());
  mpz_class num(digits.empty() ? std::string("0") : digits, 10);
  if (neg) num = -num;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r;
  if (exponent >= 0) {
    r = Rational(mpz_class(num * scale));
  } else {
    r = Rational(num, scale);
    r.canonicalize();
  }
  return r;
}

}  // namespace

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) bad(text);
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string_view ns = s.substr(0, slash), ds = s.substr(slash + 1);
    std::string_view nd = (!ns.empty() && (ns.front() == '-' || ns.front() == '+')) ? ns.substr(1) : ns;
    if (!all_digits(nd) || !all_digits(ds)) bad(text);
    mpz_class num(std::string(nd), 10), den(std::string(ds), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    if (!ns.empty() && ns.front() == '-') num = -num;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  return parse_decimal(s, text);
}

template <>
double parse_scalar<double>(std::string_view text) {
  std::string_view s = trim(text);
  if (s.find('/') != std::string_view::npos) return parse_scalar<Rational>(s).get_d();
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad(text);
  return v;
}

}  // namespace horocurve
