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

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace horocurve {

using Rational = mpq_class;

enum class NumericMode { Float, Rational };

/// Per-field operations the templated algorithms need. Only `double` and
/// `Rational` are supported; every algorithm is instantiated for both.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr NumericMode mode = NumericMode::Float;
  static constexpr const char* name = "float";

  static double to_double(double v) { return v; }
  static double from_double(double v) { return v; }
  static double from_int(long v) { return static_cast<double>(v); }
  static double ratio(long p, long q) { return static_cast<double>(p) / static_cast<double>(q); }
  static double floor(double v) { return std::floor(v); }
  static double ceil(double v) { return std::ceil(v); }

  static std::string to_string(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr NumericMode mode = NumericMode::Rational;
  static constexpr const char* name = "rational";

  static double to_double(const Rational& v) { return v.get_d(); }
  // mpq_set_d is exact: every finite double is a dyadic rational.
  static Rational from_double(double v) { return Rational(v); }
  static Rational from_int(long v) { return Rational(v); }
  static Rational ratio(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
  }
  static Rational floor(const Rational& v) {
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return Rational(z);
  }
  static Rational ceil(const Rational& v) {
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return Rational(z);
  }
  static std::string to_string(const Rational& v) { return v.get_str(); }
};

template <class S>
inline double to_double(const S& v) {
  return ScalarTraits<S>::to_double(v);
}

template <class S>
inline S from_double(double v) {
  return ScalarTraits<S>::from_double(v);
}

template <class S>
inline int sign_of(const S& v) {
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

template <class S>
inline S abs_of(const S& v) {
  return v < 0 ? S(-v) : v;
}

template <class S>
inline S ipow(const S& base, int e) {
  S r(1);
  S b(base);
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

/// Exact k! as a scalar.
template <class S>
inline S factorial(int k) {
  S r(1);
  for (int i = 2; i <= k; ++i) r *= S(i);
  return r;
}

inline long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Parses "p/q", integers, and decimal / scientific literals. Decimal
/// literals are read exactly in rational mode ("0.1" is 1/10).
template <class S>
S parse_scalar(std::string_view text);

template <class S>
inline std::string format_scalar(const S& v) {
  return ScalarTraits<S>::to_string(v);
}

/// Shortest decimal text that round-trips `v`; used to read JSON numbers
/// exactly in rational mode.
inline std::string shortest_decimal(double v) { return ScalarTraits<double>::to_string(v); }

}  // namespace horocurve
