#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>

#include "zelkl/errors.hpp"

namespace zelkl {

// Exact rational with 64-bit numerator/denominator, always reduced, den > 0.
// Segment endpoints never leave desk scale (the calculus itself only needs
// denominators 1 and 2), so 64 bits is generous; overflow in intermediate
// products is avoided with 128-bit arithmetic.
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(long long value) : num_(value) {} // NOLINT: implicit

  Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw ArgumentError("Rational: zero denominator");
    normalize();
  }

  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos)
        return {parse_int(text), 1};
      return {parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
    } catch (const ParseError&) {
      throw ParseError("Rational: cannot parse '" + std::string(text) + "'");
    }
  }

  [[nodiscard]] std::string to_string() const {
    std::string out = std::to_string(num_);
    if (den_ != 1) {
      out.push_back('/');
      out += std::to_string(den_);
    }
    return out;
  }

  [[nodiscard]] long long numerator() const { return num_; }
  [[nodiscard]] long long denominator() const { return den_; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }

  // Largest integer <= value.
  [[nodiscard]] long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  // Value - floor(value), in [0, 1). Characterizes the integer-shift class.
  [[nodiscard]] Rational fractional_part() const { return *this - Rational(floor()); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make_checked(static_cast<__int128>(a.num_) * b.den_ +
                            static_cast<__int128>(b.num_) * a.den_,
                        static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  Rational operator-() const {
    Rational out = *this;
    out.num_ = -out.num_;
    return out;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make_checked(static_cast<__int128>(a.num_) * b.num_,
                        static_cast<__int128>(a.den_) * b.den_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

private:
  static long long parse_int(std::string_view text) {
    if (text.empty()) throw ParseError("empty integer");
    std::size_t pos = 0;
    bool negative = false;
    if (text[0] == '-' || text[0] == '+') {
      negative = text[0] == '-';
      pos = 1;
    }
    if (pos == text.size()) throw ParseError("sign without digits");
    long long value = 0;
    for (; pos < text.size(); ++pos) {
      char c = text[pos];
      if (c < '0' || c > '9') throw ParseError("invalid digit");
      value = value * 10 + (c - '0');
    }
    return negative ? -value : value;
  }

  static Rational make_checked(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr __int128 lo = std::numeric_limits<long long>::min();
    constexpr __int128 hi = std::numeric_limits<long long>::max();
    if (num < lo || num > hi || den > hi)
      throw OverflowError("Rational: 64-bit overflow");
    Rational out;
    out.num_ = static_cast<long long>(num);
    out.den_ = static_cast<long long>(den);
    return out;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  long long num_ = 0;
  long long den_ = 1;
};

} // namespace zelkl
