#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "zelkl/bigint.hpp"
#include "zelkl/errors.hpp"

namespace zelkl {

// Exact integer polynomial in q, dense little-endian coefficients.
// Empty coefficient vector is the zero polynomial; the top coefficient of a
// nonzero polynomial is never zero.
class IntPolynomial {
public:
  IntPolynomial() = default;

  static IntPolynomial zero() { return {}; }

  static IntPolynomial one() { return constant(1); }

  static IntPolynomial constant(BigInt c) {
    IntPolynomial p;
    if (!c.is_zero()) p.coeff_.push_back(std::move(c));
    return p;
  }

  // c * q^degree
  static IntPolynomial monomial(BigInt c, int degree) {
    if (degree < 0) throw ArgumentError("IntPolynomial: negative degree");
    IntPolynomial p;
    if (!c.is_zero()) {
      p.coeff_.assign(static_cast<std::size_t>(degree) + 1, BigInt());
      p.coeff_.back() = std::move(c);
    }
    return p;
  }

  static IntPolynomial from_coefficients(std::vector<BigInt> coeff) {
    IntPolynomial p;
    p.coeff_ = std::move(coeff);
    p.trim();
    return p;
  }

  [[nodiscard]] bool is_zero() const { return coeff_.empty(); }
  [[nodiscard]] int degree() const { return static_cast<int>(coeff_.size()) - 1; }

  [[nodiscard]] const BigInt& coefficient(int i) const {
    static const BigInt kZero{};
    if (i < 0 || static_cast<std::size_t>(i) >= coeff_.size()) return kZero;
    return coeff_[static_cast<std::size_t>(i)];
  }

  [[nodiscard]] const std::vector<BigInt>& coefficients() const { return coeff_; }

  [[nodiscard]] BigInt evaluate_at_one() const {
    BigInt sum;
    for (const auto& c : coeff_) sum += c;
    return sum;
  }

  // q^m * p(1/q); requires m >= degree so the result stays polynomial.
  [[nodiscard]] IntPolynomial reversal(int m) const {
    if (is_zero()) return {};
    if (m < degree()) throw ArgumentError("IntPolynomial: reversal below degree");
    std::vector<BigInt> out(static_cast<std::size_t>(m) + 1);
    for (std::size_t i = 0; i < coeff_.size(); ++i)
      out[static_cast<std::size_t>(m) - i] = coeff_[i];
    return from_coefficients(std::move(out));
  }

  [[nodiscard]] IntPolynomial shifted(int by) const { // multiply by q^by
    if (is_zero()) return {};
    if (by < 0) throw ArgumentError("IntPolynomial: negative shift");
    std::vector<BigInt> out(coeff_.size() + static_cast<std::size_t>(by));
    for (std::size_t i = 0; i < coeff_.size(); ++i) out[i + by] = coeff_[i];
    return from_coefficients(std::move(out));
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> out(std::max(a.coeff_.size(), b.coeff_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i < a.coeff_.size()) out[i] += a.coeff_[i];
      if (i < b.coeff_.size()) out[i] += b.coeff_[i];
    }
    return from_coefficients(std::move(out));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> out(std::max(a.coeff_.size(), b.coeff_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i < a.coeff_.size()) out[i] += a.coeff_[i];
      if (i < b.coeff_.size()) out[i] -= b.coeff_[i];
    }
    return from_coefficients(std::move(out));
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeff_.size() + b.coeff_.size() - 1);
    for (std::size_t i = 0; i < a.coeff_.size(); ++i) {
      if (a.coeff_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeff_.size(); ++j)
        out[i + j] += a.coeff_[i] * b.coeff_[j];
    }
    return from_coefficients(std::move(out));
  }

  IntPolynomial& operator+=(const IntPolynomial& o) { return *this = *this + o; }
  IntPolynomial& operator-=(const IntPolynomial& o) { return *this = *this - o; }
  IntPolynomial& operator*=(const IntPolynomial& o) { return *this = *this * o; }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeff_ == b.coeff_;
  }
  friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) {
    return !(a == b);
  }

  // Compact human form, terms by ascending degree: "1+q", "q^3-q", "0".
  [[nodiscard]] std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
      const BigInt& c = coeff_[i];
      if (c.is_zero()) continue;
      std::string mag = (c.sign() < 0 ? (-c) : c).to_string();
      if (out.empty()) {
        if (c.sign() < 0) out.push_back('-');
      } else {
        out.push_back(c.sign() < 0 ? '-' : '+');
      }
      if (i == 0) {
        out += mag;
      } else {
        if (mag != "1") out += mag;
        out.push_back('q');
        if (i > 1) {
          out.push_back('^');
          out += std::to_string(i);
        }
      }
    }
    return out;
  }

private:
  void trim() {
    while (!coeff_.empty() && coeff_.back().is_zero()) coeff_.pop_back();
  }

  std::vector<BigInt> coeff_;
};

// q - 1 and friends show up in every R-polynomial recursion step.
inline IntPolynomial q_minus_one() {
  return IntPolynomial::from_coefficients({BigInt(-1), BigInt(1)});
}

inline IntPolynomial q_poly() { return IntPolynomial::monomial(BigInt(1), 1); }

} // namespace zelkl
