#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zelkl/errors.hpp"
#include "zelkl/klpoly.hpp"
#include "zelkl/permutation.hpp"
#include "zelkl/segment.hpp"

namespace zelkl {

// Integer combination of standard-module labels, indexed by canonical
// multisegments. Zero coefficients are never stored and all keys share one
// absolute length (the Grothendieck group is graded by rank).
class GrothendieckVector {
public:
  GrothendieckVector() = default;

  static GrothendieckVector basis(const Multisegment& m) {
    GrothendieckVector v;
    v.add(m, 1);
    return v;
  }

  void add(const Multisegment& m, long long coefficient) {
    if (coefficient == 0) return;
    if (!coeff_.empty()) {
      const int existing = coeff_.begin()->first.absolute_length();
      if (m.absolute_length() != existing)
        throw ArgumentError("GrothendieckVector: mixed absolute lengths " +
                            std::to_string(existing) + " and " +
                            std::to_string(m.absolute_length()));
    }
    auto it = coeff_.find(m);
    if (it == coeff_.end()) {
      coeff_.emplace(m, coefficient);
      return;
    }
    it->second += coefficient;
    if (it->second == 0) coeff_.erase(it);
  }

  [[nodiscard]] long long coefficient(const Multisegment& m) const {
    auto it = coeff_.find(m);
    return it == coeff_.end() ? 0 : it->second;
  }

  [[nodiscard]] const std::map<Multisegment, long long>& terms() const { return coeff_; }
  [[nodiscard]] bool is_zero() const { return coeff_.empty(); }

  [[nodiscard]] long long coefficient_sum() const {
    long long sum = 0;
    for (const auto& [m, c] : coeff_) sum += c;
    return sum;
  }

  // absolute length of the support; zero vector supports any length
  [[nodiscard]] std::optional<int> support_length() const {
    if (coeff_.empty()) return std::nullopt;
    return coeff_.begin()->first.absolute_length();
  }

  GrothendieckVector& operator+=(const GrothendieckVector& o) {
    for (const auto& [m, c] : o.coeff_) add(m, c);
    return *this;
  }
  friend GrothendieckVector operator+(GrothendieckVector a, const GrothendieckVector& b) {
    a += b;
    return a;
  }
  GrothendieckVector operator-() const {
    GrothendieckVector out;
    for (const auto& [m, c] : coeff_) out.coeff_.emplace(m, -c);
    return out;
  }
  friend GrothendieckVector operator-(GrothendieckVector a, const GrothendieckVector& b) {
    a += -b;
    return a;
  }

  friend bool operator==(const GrothendieckVector&, const GrothendieckVector&) = default;

private:
  std::map<Multisegment, long long> coeff_;
};

// The regular integral block: endpoints b_1 > ... > b_n > a_1 > ... > a_n on
// a single self-dual degree-1 line, members m^w = { [a_i, b_{w(i)}] }. The
// interleaving guarantees every member segment is valid.
class RegularBlock {
public:
  RegularBlock(int n, std::vector<long long> a, std::vector<long long> b)
      : RegularBlock(n, std::move(a), std::move(b),
                     LineRegistry::global().intern("triv")) {}

  RegularBlock(int n, std::vector<long long> a, std::vector<long long> b, LineId line)
      : n_(n), a_(std::move(a)), b_(std::move(b)), line_(line) {
    if (n_ < 1) throw ValidationError("RegularBlock: rank must be positive");
    if (a_.size() != static_cast<std::size_t>(n_) || b_.size() != static_cast<std::size_t>(n_))
      throw ValidationError("RegularBlock: need n values in each of a and b");
    for (int i = 0; i + 1 < n_; ++i) {
      if (!(b_[i] > b_[i + 1]))
        throw ValidationError("RegularBlock: b must be strictly decreasing");
      if (!(a_[i] > a_[i + 1]))
        throw ValidationError("RegularBlock: a must be strictly decreasing");
    }
    if (!(b_.back() > a_.front()))
      throw ValidationError("RegularBlock: need b_n > a_1");
    if (LineRegistry::global().dual(line_) != line_ ||
        LineRegistry::global().degree(line_) != 1)
      throw ValidationError("RegularBlock: line must be self-dual of degree 1");
  }

  // the canonical block with b = (2n, ..., n+1), a = (n, ..., 1)
  static RegularBlock standard(int n) {
    std::vector<long long> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      b[static_cast<std::size_t>(i)] = 2 * n - i;
      a[static_cast<std::size_t>(i)] = n - i;
    }
    return {n, std::move(a), std::move(b)};
  }

  [[nodiscard]] int rank() const { return n_; }
  [[nodiscard]] LineId line() const { return line_; }

  [[nodiscard]] Multisegment member(const Permutation& w) const {
    if (w.rank() != n_) throw ArgumentError("RegularBlock: rank mismatch");
    std::vector<Segment> segs;
    segs.reserve(static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i)
      segs.emplace_back(line_, Rational(a_[static_cast<std::size_t>(i - 1)]),
                        Rational(b_[static_cast<std::size_t>(w(i) - 1)]));
    return Multisegment::of(std::move(segs));
  }

private:
  int n_;
  std::vector<long long> a_, b_;
  LineId line_;
};

// [St(m^w)] = sum_{w'} (-1)^{l(w')+l(w)} P_{w0 w', w0 w}(1) [lambda(m^{w'})];
// the coefficient vanishes unless w0 w' <= w0 w.
inline GrothendieckVector decompose_irreducible(const RegularBlock& block,
                                                const Permutation& w,
                                                const KLTable& table) {
  if (w.rank() != block.rank() || table.rank() != block.rank())
    throw ArgumentError("decompose_irreducible: rank mismatch");
  const auto& g = table.group();
  const Permutation w0 = longest_element(block.rank());
  const int lw = length(w);
  const int w0w = *g.find(w0 * w);
  GrothendieckVector out;
  for (const Permutation& w_prime : g.elements()) {
    const int w0wp = *g.find(w0 * w_prime);
    if (!g.leq(w0wp, w0w)) continue;
    const BigInt value = table.polynomial_by_index(w0wp, w0w).evaluate_at_one();
    if (value.is_zero()) continue;
    const long long sign = ((length(w_prime) + lw) % 2 == 0) ? 1 : -1;
    out.add(block.member(w_prime), sign * value.to_int64());
  }
  return out;
}

struct KlIdentityRecord {
  Permutation w;
  int length = 0;
  long long sum = 0;
  long long expected = 0;
  [[nodiscard]] bool pass() const { return sum == expected; }
};

struct KlIdentityReport {
  int rank = 0;
  std::vector<KlIdentityRecord> records;
  std::size_t checked = 0;
  std::vector<Permutation> failures;
  [[nodiscard]] bool pass() const { return failures.empty(); }
};

// S(w) = sum_{w'} (-1)^{l(w')+l(w)} P_{w0 w', w0 w}(1); zero for w != w0 and
// one at w = w0 (where only w' = w0 survives the Bruhat constraint).
inline KlIdentityReport verify_kl_identity(const KLTable& table) {
  KlIdentityReport report;
  report.rank = table.rank();
  const auto& g = table.group();
  const Permutation w0 = longest_element(table.rank());
  for (const Permutation& w : g.elements()) {
    const int w0w = *g.find(w0 * w);
    const int lw = length(w);
    BigInt sum;
    for (const Permutation& w_prime : g.elements()) {
      const int w0wp = *g.find(w0 * w_prime);
      const BigInt value = table.polynomial_by_index(w0wp, w0w).evaluate_at_one();
      if (value.is_zero()) continue;
      sum += ((length(w_prime) + lw) % 2 == 0) ? value : -value;
    }
    KlIdentityRecord record{w, lw, sum.to_int64(), w == w0 ? 1 : 0};
    ++report.checked;
    if (!record.pass()) report.failures.push_back(w);
    report.records.push_back(std::move(record));
  }
  return report;
}

// Each standard label carries Whittaker dimension 1, so the dimension of a
// virtual class is just its coefficient sum.
inline long long whittaker_dim(const GrothendieckVector& v) { return v.coefficient_sum(); }

// Euler-Poincare pairing of finite-length classes across the G_{n+1}/G_n
// pair: the product of the Whittaker dimensions. The rank gap is enforced
// unless the caller asks for the formal (graded-blind) pairing.
inline long long ep_pairing(const GrothendieckVector& v1, const GrothendieckVector& v2,
                            bool enforce_ranks = true) {
  if (enforce_ranks) {
    const auto n1 = v1.support_length();
    const auto n2 = v2.support_length();
    if (n1 && n2 && *n1 != *n2 + 1)
      throw ArgumentError("ep_pairing: supports must sit in lengths N+1 and N "
                          "(pass the formal flag to skip)");
  }
  return whittaker_dim(v1) * whittaker_dim(v2);
}

} // namespace zelkl
