#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "zelkl/config.hpp"
#include "zelkl/errors.hpp"

namespace zelkl {

// Element of S_n in one-line notation with 1-based values: w(i) = images[i-1].
// Composition convention throughout: (u*v)(i) = u(v(i)), so left
// multiplication by a simple transposition s_i swaps the *values* i, i+1 and
// right multiplication swaps the *positions* i, i+1.
class Permutation {
public:
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    validate();
  }

  static Permutation identity(int n) {
    if (n < 1) throw ArgumentError("Permutation: rank must be positive");
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 1);
    return Permutation(std::move(images));
  }

  // "3412" for n <= 9, "3,4,1,2" (or "10,2,...") otherwise.
  static Permutation parse(std::string_view text) {
    if (text.empty()) throw ParseError("Permutation: empty string");
    std::vector<int> images;
    if (text.find(',') == std::string_view::npos) {
      for (char c : text) {
        if (c < '1' || c > '9')
          throw ParseError("Permutation: invalid digit in '" + std::string(text) + "'");
        images.push_back(c - '0');
      }
    } else {
      std::size_t start = 0;
      while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view tok = text.substr(
            start, comma == std::string_view::npos ? text.size() - start : comma - start);
        if (tok.empty()) throw ParseError("Permutation: empty component");
        int value = 0;
        for (char c : tok) {
          if (c < '0' || c > '9')
            throw ParseError("Permutation: invalid digit in '" + std::string(text) + "'");
          value = value * 10 + (c - '0');
        }
        images.push_back(value);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    }
    try {
      return Permutation(std::move(images));
    } catch (const ValidationError& e) {
      throw ParseError(std::string("Permutation: ") + e.what());
    }
  }

  [[nodiscard]] int rank() const { return static_cast<int>(images_.size()); }
  [[nodiscard]] int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  [[nodiscard]] const std::vector<int>& images() const { return images_; }

  [[nodiscard]] Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      inv[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i) + 1;
    return Permutation(std::move(inv));
  }

  friend Permutation operator*(const Permutation& u, const Permutation& v) {
    if (u.rank() != v.rank()) throw ArgumentError("Permutation: rank mismatch in product");
    std::vector<int> images(u.images_.size());
    for (std::size_t i = 0; i < images.size(); ++i)
      images[i] = u.images_[static_cast<std::size_t>(v.images_[i] - 1)];
    return Permutation(std::move(images));
  }

  // s_i * w: swaps the values i and i+1 in one-line notation.
  [[nodiscard]] Permutation left_mult_simple(int i) const {
    check_simple_index(i);
    std::vector<int> images = images_;
    for (auto& v : images) {
      if (v == i) v = i + 1;
      else if (v == i + 1) v = i;
    }
    return Permutation(std::move(images));
  }

  // w * s_i: swaps positions i and i+1.
  [[nodiscard]] Permutation right_mult_simple(int i) const {
    check_simple_index(i);
    std::vector<int> images = images_;
    std::swap(images[static_cast<std::size_t>(i - 1)], images[static_cast<std::size_t>(i)]);
    return Permutation(std::move(images));
  }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    if (rank() <= 9) {
      for (int v : images_) out.push_back(static_cast<char>('0' + v));
    } else {
      for (std::size_t i = 0; i < images_.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(images_[i]);
      }
    }
    return out;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

private:
  void validate() const {
    if (images_.empty()) throw ValidationError("Permutation: rank must be positive");
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
      if (v < 1 || v > rank() || seen[static_cast<std::size_t>(v - 1)])
        throw ValidationError("Permutation: not a bijection of {1..n}");
      seen[static_cast<std::size_t>(v - 1)] = true;
    }
  }

  void check_simple_index(int i) const {
    if (i < 1 || i >= rank())
      throw ArgumentError("Permutation: simple transposition index out of range");
  }

  std::vector<int> images_;
};

inline int length(const Permutation& w) {
  int inv = 0;
  int n = w.rank();
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (w(i) > w(j)) ++inv;
  return inv;
}

struct LengthDescents {
  int length = 0;
  std::vector<int> left_descents;  // i with l(s_i w) < l(w), ascending
  std::vector<int> right_descents; // i with w(i) > w(i+1), ascending
};

inline LengthDescents length_and_descents(const Permutation& w) {
  LengthDescents out;
  out.length = length(w);
  const Permutation winv = w.inverse();
  for (int i = 1; i < w.rank(); ++i) {
    if (w(i) > w(i + 1)) out.right_descents.push_back(i);
    if (winv(i) > winv(i + 1)) out.left_descents.push_back(i);
  }
  return out;
}

// w_0(i) = n+1-i, the order-reversing element; l(w_0) = n(n-1)/2.
inline Permutation longest_element(int n) {
  if (n < 1) throw ArgumentError("longest_element: rank must be positive");
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) images[static_cast<std::size_t>(i - 1)] = n + 1 - i;
  return Permutation(std::move(images));
}

// Ehresmann's criterion: x <= w iff for every k the ascending sorted prefixes
// {x(1..k)} and {w(1..k)} compare entrywise. Agrees with the subword
// criterion on reduced words (checked in the test suite).
inline bool bruhat_leq(const Permutation& x, const Permutation& w) {
  if (x.rank() != w.rank()) throw ArgumentError("bruhat_leq: rank mismatch");
  const int n = x.rank();
  std::vector<int> px, pw;
  px.reserve(static_cast<std::size_t>(n));
  pw.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) {
    px.insert(std::upper_bound(px.begin(), px.end(), x(k)), x(k));
    pw.insert(std::upper_bound(pw.begin(), pw.end(), w(k)), w(k));
    for (int t = 0; t < k; ++t)
      if (px[static_cast<std::size_t>(t)] > pw[static_cast<std::size_t>(t)]) return false;
  }
  return true;
}

// All of S_n sorted by (length, lexicographic one-line notation); a linear
// extension of Bruhat order.
inline std::vector<Permutation> enumerate_sn(int n, int ceiling = Limits::sn_ceiling) {
  if (n < 1) throw ArgumentError("enumerate_sn: rank must be positive");
  if (n > ceiling)
    throw ResourceLimitError("enumerate_sn: rank " + std::to_string(n) +
                             " above ceiling " + std::to_string(ceiling));
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> out;
  std::vector<int> lengths;
  do {
    out.emplace_back(images);
    lengths.push_back(length(out.back()));
  } while (std::next_permutation(images.begin(), images.end()));
  std::vector<std::size_t> order(out.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lengths[a] < lengths[b];
  });
  std::vector<Permutation> sorted;
  sorted.reserve(out.size());
  for (std::size_t idx : order) sorted.push_back(std::move(out[idx]));
  return sorted;
}

} // namespace zelkl
