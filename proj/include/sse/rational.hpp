// Copyright 2026 The sse-memory Authors
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

#ifndef SSE_RATIONAL_HPP
#define SSE_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sse {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "3", "-2", "11/2", "5.5" or "-0.125" exactly. Returns nullopt on
/// malformed input.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string s(text);
  auto all_digits = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d)
      if (c < '0' || c > '9') return false;
    return true;
  };
  bool neg = false;
  std::string_view body(s);
  if (body.front() == '-' || body.front() == '+') {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto n = body.substr(0, slash), d = body.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) return std::nullopt;
    mpz_class den{std::string(d), 10};
    if (den == 0) return std::nullopt;
    out = Rational(mpz_class(std::string(n), 10), den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || !all_digits(fp)) return std::nullopt;
    mpz_class scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    out = Rational(mpz_class(std::string(ip) + std::string(fp), 10), scale);
  } else {
    if (!all_digits(body)) return std::nullopt;
    out = Rational(mpz_class(std::string(body), 10));
  }
  out.canonicalize();
  if (neg) out = -out;
  return out;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Fixed six-decimal rendering, for human-facing output next to the exact form.
inline std::string to_decimal(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", r.get_d());
  return buf;
}

/// A rational extended with a negative-infinity sentinel.
class Extended {
 public:
  Extended() : neg_inf_(true) {}
  Extended(Rational v) : neg_inf_(false), value_(std::move(v)) {}  // NOLINT
  static Extended neg_inf() { return Extended(); }

  bool is_neg_inf() const { return neg_inf_; }
  bool is_finite() const { return !neg_inf_; }
  const Rational& value() const {
    if (neg_inf_) throw std::logic_error("value() of -inf");
    return value_;
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
    if (a.neg_inf_ && b.neg_inf_) return std::strong_ordering::equal;
    if (a.neg_inf_) return std::strong_ordering::less;
    if (b.neg_inf_) return std::strong_ordering::greater;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string str() const { return neg_inf_ ? std::string("-inf") : value_.get_str(); }

 private:
  bool neg_inf_;
  Rational value_;
};

inline Extended max(const Extended& a, const Extended& b) { return a < b ? b : a; }

}  // namespace sse

#endif  // SSE_RATIONAL_HPP
