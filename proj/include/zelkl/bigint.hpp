#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "zelkl/errors.hpp"

namespace zelkl {

// Arbitrary-precision signed integer, sign-magnitude over base 2^32 limbs.
// Covers exactly what exact polynomial arithmetic needs: ring operations,
// comparison, and decimal conversion.
class BigInt {
public:
  BigInt() = default;

  BigInt(long long value) { // NOLINT: implicit by design, mirrors int literals
    if (value == 0) return;
    sign_ = value < 0 ? -1 : 1;
    // avoid UB negating LLONG_MIN
    std::uint64_t mag = value < 0 ? ~static_cast<std::uint64_t>(value) + 1
                                  : static_cast<std::uint64_t>(value);
    while (mag != 0) {
      mag_.push_back(static_cast<std::uint32_t>(mag & 0xffffffffu));
      mag >>= 32;
    }
  }

  static BigInt from_string(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      negative = text[pos] == '-';
      ++pos;
    }
    if (pos == text.size()) throw ParseError("BigInt: empty digit string");
    BigInt out;
    for (; pos < text.size(); ++pos) {
      char c = text[pos];
      if (c < '0' || c > '9')
        throw ParseError("BigInt: invalid digit in '" + std::string(text) + "'");
      out.mul_small_inplace(10);
      out.add_small_inplace(static_cast<std::uint32_t>(c - '0'));
    }
    if (!out.mag_.empty()) out.sign_ = negative ? -1 : 1;
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> work = mag_;
    std::string digits;
    while (!work.empty()) {
      std::uint64_t rem = 0;
      for (std::size_t i = work.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | work[i];
        work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
        rem = cur % 1000000000u;
      }
      while (!work.empty() && work.back() == 0) work.pop_back();
      for (int d = 0; d < 9; ++d) {
        digits.push_back(static_cast<char>('0' + rem % 10));
        rem /= 10;
      }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    std::string out;
    if (sign_ < 0) out.push_back('-');
    out.append(digits.rbegin(), digits.rend());
    return out;
  }

  [[nodiscard]] bool is_zero() const { return sign_ == 0; }
  [[nodiscard]] int sign() const { return sign_; }

  // Checked narrowing; throws instead of wrapping.
  [[nodiscard]] long long to_int64() const {
    if (sign_ == 0) return 0;
    if (mag_.size() > 2) throw OverflowError("BigInt: value exceeds 64 bits");
    std::uint64_t mag = mag_[0];
    if (mag_.size() == 2) mag |= static_cast<std::uint64_t>(mag_[1]) << 32;
    const auto limit = static_cast<std::uint64_t>(std::numeric_limits<long long>::max());
    if (sign_ > 0) {
      if (mag > limit) throw OverflowError("BigInt: value exceeds int64 max");
      return static_cast<long long>(mag);
    }
    if (mag > limit + 1) throw OverflowError("BigInt: value below int64 min");
    if (mag == limit + 1) return std::numeric_limits<long long>::min();
    return -static_cast<long long>(mag);
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt out;
    if (a.sign_ == b.sign_) {
      out.mag_ = add_mag(a.mag_, b.mag_);
      out.sign_ = a.sign_;
      return out;
    }
    int cmp = cmp_mag(a.mag_, b.mag_);
    if (cmp == 0) return out;
    if (cmp > 0) {
      out.mag_ = sub_mag(a.mag_, b.mag_);
      out.sign_ = a.sign_;
    } else {
      out.mag_ = sub_mag(b.mag_, a.mag_);
      out.sign_ = b.sign_;
    }
    return out;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  BigInt operator-() const {
    BigInt out = *this;
    out.sign_ = -out.sign_;
    return out;
  }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return {};
    BigInt out;
    out.sign_ = a.sign_ * b.sign_;
    out.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
    for (std::size_t i = 0; i < a.mag_.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.mag_.size(); ++j) {
        std::uint64_t cur = static_cast<std::uint64_t>(a.mag_[i]) * b.mag_[j] +
                            out.mag_[i + j] + carry;
        out.mag_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
        carry = cur >> 32;
      }
      out.mag_[i + b.mag_.size()] = static_cast<std::uint32_t>(carry);
    }
    out.trim();
    return out;
  }

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.mag_ == b.mag_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }

  friend bool operator<(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int cmp = cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? cmp < 0 : cmp > 0;
  }
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

private:
  void trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
  }

  void mul_small_inplace(std::uint32_t factor) {
    std::uint64_t carry = 0;
    for (auto& limb : mag_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * factor + carry;
      limb = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    if (carry != 0) mag_.push_back(static_cast<std::uint32_t>(carry));
  }

  void add_small_inplace(std::uint32_t addend) {
    std::uint64_t carry = addend;
    for (auto& limb : mag_) {
      if (carry == 0) break;
      std::uint64_t cur = limb + carry;
      limb = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    if (carry != 0) mag_.push_back(static_cast<std::uint32_t>(carry));
  }

  static int cmp_mag(const std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> out = big;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::uint64_t cur = carry + out[i] + (i < small.size() ? small[i] : 0);
      out[i] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      if (carry == 0 && i >= small.size()) break;
    }
    if (carry != 0) out.push_back(static_cast<std::uint32_t>(carry));
    return out;
  }

  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(out[i]) - borrow -
                         (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
      if (cur < 0) {
        cur += static_cast<std::int64_t>(1) << 32;
        borrow = 1;
      } else {
        borrow = 0;
      }
      out[i] = static_cast<std::uint32_t>(cur);
      if (borrow == 0 && i >= b.size()) break;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
  }

  int sign_ = 0; // -1, 0, +1; zero iff mag_ empty
  std::vector<std::uint32_t> mag_;
};

} // namespace zelkl
