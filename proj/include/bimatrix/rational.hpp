// Copyright 2026 The bimatrix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Exact arithmetic types. GMP's mpq_class keeps every arithmetic result in
// canonical form (positive denominator, gcd 1); values built from raw
// numerator/denominator pairs must go through make_rat.

#include <gmpxx.h>

#include <cctype>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bimatrix {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(long num, long den = 1) {
  return make_rat(Int(num), Int(den));
}

inline Int pow2(unsigned long bits) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, bits);
  return r;
}

inline Int pow10(unsigned long exp) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, exp);
  return r;
}

inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Always "num/den", including integers ("3/1") and zero ("0/1").
inline std::string to_string(const Rat& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rat& r) { return r.get_d(); }

// Convenience rendering with `digits` significant digits. Not authoritative.
inline std::string to_decimal(const Rat& r, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, r.get_d());
  return buf;
}

// Parses "a/b", "-a/b", integers, and decimal literals such as "0.125",
// "-3.5e-2". Decimals are converted exactly (0.125 -> 1/8).
inline Rat parse_rat(std::string_view text) {
  auto fail = [&](const char* why) {
    throw std::invalid_argument(std::string(why) + ": '" + std::string(text) +
                                "'");
  };
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
    ++i;
  std::size_t end = text.size();
  while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1])))
    --end;
  std::string_view s = text.substr(i, end - i);
  if (s.empty()) fail("empty number");

  auto digits_only = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  std::string_view body = s.substr(pos);

  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) fail("malformed fraction");
    Int n(std::string(num), 10);
    Int d(std::string(den), 10);
    if (d == 0) fail("zero denominator");
    return make_rat(negative ? Int(-n) : n, d);
  }

  std::string_view mantissa = body;
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = body.substr(0, e);
    std::string_view ex = body.substr(e + 1);
    bool ex_negative = false;
    if (!ex.empty() && (ex[0] == '+' || ex[0] == '-')) {
      ex_negative = ex[0] == '-';
      ex.remove_prefix(1);
    }
    if (!digits_only(ex) || ex.size() > 6) fail("malformed exponent");
    exponent = std::stol(std::string(ex));
    if (ex_negative) exponent = -exponent;
  }
  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) fail("malformed number");
  if (!int_part.empty() && !digits_only(int_part)) fail("malformed number");
  if (!frac_part.empty() && !digits_only(frac_part)) fail("malformed number");

  std::string all_digits = std::string(int_part) + std::string(frac_part);
  Int n(all_digits.empty() ? std::string("0") : all_digits, 10);
  exponent -= static_cast<long>(frac_part.size());
  Int d = 1;
  if (exponent >= 0)
    n *= pow10(static_cast<unsigned long>(exponent));
  else
    d = pow10(static_cast<unsigned long>(-exponent));
  return make_rat(negative ? Int(-n) : n, d);
}

}  // namespace bimatrix
