#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "zelkl/config.hpp"
#include "zelkl/errors.hpp"
#include "zelkl/permutation.hpp"
#include "zelkl/polynomial.hpp"

namespace zelkl {

namespace detail {

// Indexed S_n with precomputed lengths, descent masks, simple-multiplication
// tables and the full Bruhat order as bitset rows. Built once per table; all
// reads after construction are const.
class GroupContext {
public:
  static GroupContext make(int n) {
    GroupContext g;
    g.n_ = n;
    g.elements_ = enumerate_sn(n, n);
    const std::size_t size = g.elements_.size();
    g.length_.resize(size);
    g.left_desc_.assign(size, 0);
    g.right_desc_.assign(size, 0);
    for (std::size_t i = 0; i < size; ++i) g.index_[g.elements_[i].to_string()] = static_cast<int>(i);
    g.left_mult_.assign(static_cast<std::size_t>(n - 1), std::vector<int>(size));
    g.right_mult_.assign(static_cast<std::size_t>(n - 1), std::vector<int>(size));
    for (std::size_t i = 0; i < size; ++i) {
      const Permutation& w = g.elements_[i];
      const LengthDescents ld = length_and_descents(w);
      g.length_[i] = ld.length;
      for (int s : ld.left_descents) g.left_desc_[i] |= 1u << (s - 1);
      for (int s : ld.right_descents) g.right_desc_[i] |= 1u << (s - 1);
      for (int s = 1; s < n; ++s) {
        g.left_mult_[static_cast<std::size_t>(s - 1)][i] = g.index_.at(w.left_mult_simple(s).to_string());
        g.right_mult_[static_cast<std::size_t>(s - 1)][i] = g.index_.at(w.right_mult_simple(s).to_string());
      }
    }
    g.build_bruhat();
    return g;
  }

  [[nodiscard]] int rank() const { return n_; }
  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  [[nodiscard]] const std::vector<Permutation>& elements() const { return elements_; }
  [[nodiscard]] const Permutation& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] int length(int i) const { return length_[static_cast<std::size_t>(i)]; }

  [[nodiscard]] std::optional<int> find(const Permutation& w) const {
    auto it = index_.find(w.to_string());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] int left_mult(int s, int w) const {
    return left_mult_[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(w)];
  }
  [[nodiscard]] int right_mult(int w, int s) const {
    return right_mult_[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(w)];
  }

  [[nodiscard]] bool has_left_descent(int w, int s) const {
    return (left_desc_[static_cast<std::size_t>(w)] >> (s - 1)) & 1u;
  }
  [[nodiscard]] bool has_right_descent(int w, int s) const {
    return (right_desc_[static_cast<std::size_t>(w)] >> (s - 1)) & 1u;
  }

  [[nodiscard]] int first_left_descent(int w) const {
    const std::uint32_t mask = left_desc_[static_cast<std::size_t>(w)];
    if (mask == 0) return 0;
    for (int s = 1; s < n_; ++s)
      if ((mask >> (s - 1)) & 1u) return s;
    return 0;
  }
  [[nodiscard]] int first_right_descent(int w) const {
    const std::uint32_t mask = right_desc_[static_cast<std::size_t>(w)];
    if (mask == 0) return 0;
    for (int s = 1; s < n_; ++s)
      if ((mask >> (s - 1)) & 1u) return s;
    return 0;
  }

  [[nodiscard]] bool leq(int x, int w) const {
    const auto& row = below_[static_cast<std::size_t>(w)];
    return (row[static_cast<std::size_t>(x) >> 6] >> (x & 63)) & 1ull;
  }

  // ascending in the (length, lex) enumeration, hence in any Bruhat chain
  [[nodiscard]] std::vector<int> interval_below(int w) const {
    std::vector<int> out;
    for (int x = 0; x <= w; ++x)
      if (leq(x, w)) out.push_back(x);
    return out;
  }

private:
  void build_bruhat() {
    const std::size_t size = elements_.size();
    const int n = n_;
    // sorted ascending prefixes of every element, n x n, row k holds {w(1..k+1)} sorted
    std::vector<std::vector<int>> prefixes(size);
    for (std::size_t i = 0; i < size; ++i) {
      const Permutation& w = elements_[i];
      std::vector<int> table;
      table.reserve(static_cast<std::size_t>(n) * n);
      std::vector<int> sorted;
      for (int k = 1; k <= n; ++k) {
        sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), w(k)), w(k));
        table.insert(table.end(), sorted.begin(), sorted.end());
      }
      prefixes[i] = std::move(table);
    }
    const std::size_t words = (size + 63) / 64;
    below_.assign(size, std::vector<std::uint64_t>(words, 0));
    for (std::size_t wi = 0; wi < size; ++wi) {
      for (std::size_t xi = 0; xi < size; ++xi) {
        if (length_[xi] > length_[wi]) continue; // elements sorted by length
        bool leq = true;
        const auto& px = prefixes[xi];
        const auto& pw = prefixes[wi];
        for (std::size_t t = 0; t < px.size() && leq; ++t)
          if (px[t] > pw[t]) leq = false;
        if (leq) below_[wi][xi >> 6] |= 1ull << (xi & 63);
      }
    }
  }

  int n_ = 0;
  std::vector<Permutation> elements_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> length_;
  std::vector<std::uint32_t> left_desc_, right_desc_;
  std::vector<std::vector<int>> left_mult_, right_mult_;
  std::vector<std::vector<std::uint64_t>> below_;
};

enum class DescentSide { Left, Right };

// Kazhdan-Lusztig recursion worker over a GroupContext. For a descent s of w
// (taken on the configured side, first in index order) and v = sw:
//   P_{x,w} = q^{1-c} P_{sx,v} + q^c P_{x,v}
//             - sum_{z <= v, sz < z, x <= z} mu(z,v) q^{(l(w)-l(z))/2} P_{x,z}
// with c = 1 iff sx < x. The recursion path is irrelevant to the result; the
// test suite checks left/right agreement and the inversion identity.
class KlSolver {
public:
  explicit KlSolver(const GroupContext& g, DescentSide side = DescentSide::Left)
      : g_(g), side_(side) {}

  // by value: memo rehashes during recursion would invalidate references
  IntPolynomial polynomial(int x, int w) {
    if (!g_.leq(x, w)) return {};
    const std::uint64_t key = pair_key(x, w);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    IntPolynomial value = compute(x, w);
    memo_.emplace(key, value);
    return value;
  }

  BigInt mu(int x, int w) {
    const int diff = g_.length(w) - g_.length(x);
    if (diff <= 0 || diff % 2 == 0 || !g_.leq(x, w)) return {};
    return polynomial(x, w).coefficient((diff - 1) / 2);
  }

private:
  std::uint64_t pair_key(int x, int w) const {
    return (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint64_t>(w);
  }

  int descent_of(int w) const {
    return side_ == DescentSide::Left ? g_.first_left_descent(w) : g_.first_right_descent(w);
  }
  int mult(int s, int w) const {
    return side_ == DescentSide::Left ? g_.left_mult(s, w) : g_.right_mult(w, s);
  }
  bool is_descent(int w, int s) const {
    return side_ == DescentSide::Left ? g_.has_left_descent(w, s) : g_.has_right_descent(w, s);
  }

  const std::vector<int>& interval(int w) {
    auto it = interval_cache_.find(w);
    if (it != interval_cache_.end()) return it->second;
    return interval_cache_.emplace(w, g_.interval_below(w)).first->second;
  }

  IntPolynomial compute(int x, int w) {
    if (x == w) return IntPolynomial::one();
    const int s = descent_of(w);
    const int v = mult(s, w);
    const int sx = mult(s, x);
    const bool sx_down = g_.length(sx) < g_.length(x);
    const IntPolynomial first = polynomial(sx, v);
    const IntPolynomial second = polynomial(x, v);
    IntPolynomial result =
        sx_down ? first + q_poly() * second : q_poly() * first + second;
    const std::vector<int> below_v = interval(v);
    for (int z : below_v) {
      if (!is_descent(z, s)) continue;
      if (!g_.leq(x, z)) continue;
      const BigInt m = mu(z, v);
      if (m.is_zero()) continue;
      const int power = (g_.length(w) - g_.length(z)) / 2;
      result -= IntPolynomial::monomial(m, power) * polynomial(x, z);
    }
    return result;
  }

  const GroupContext& g_;
  DescentSide side_;
  std::unordered_map<std::uint64_t, IntPolynomial> memo_;
  std::unordered_map<int, std::vector<int>> interval_cache_;
};

// R-polynomial recursion worker. For a left descent s of w:
//   R_{x,w} = R_{sx,sw}               if sx < x
//           = (q-1) R_{x,sw} + q R_{sx,sw}  otherwise
// with R_{w,w} = 1 and R_{x,w} = 0 unless x <= w. Serves as the independent
// side of the inversion-identity oracle.
class RSolver {
public:
  explicit RSolver(const GroupContext& g) : g_(g) {}

  IntPolynomial polynomial(int x, int w) {
    if (!g_.leq(x, w)) return {};
    const std::uint64_t key = (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint64_t>(w);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    IntPolynomial value = compute(x, w);
    memo_.emplace(key, value);
    return value;
  }

private:
  IntPolynomial compute(int x, int w) {
    if (x == w) return IntPolynomial::one();
    const int s = g_.first_left_descent(w);
    const int v = g_.left_mult(s, w);
    const int sx = g_.left_mult(s, x);
    if (g_.length(sx) < g_.length(x)) return polynomial(sx, v);
    const IntPolynomial keep = polynomial(x, v);
    const IntPolynomial dropped = polynomial(sx, v);
    return q_minus_one() * keep + q_poly() * dropped;
  }

  const GroupContext& g_;
  std::unordered_map<std::uint64_t, IntPolynomial> memo_;
};

} // namespace detail

// Complete table of Kazhdan-Lusztig polynomials P_{x,w} over S_n. Built as a
// single-writer pass, then frozen; concurrent const reads are safe.
class KLTable {
public:
  static KLTable build(int n, int ceiling = Limits::kl_table_ceiling) {
    check_ceiling(n, ceiling);
    KLTable table(detail::GroupContext::make(n));
    detail::KlSolver solver(table.group());
    const int size = static_cast<int>(table.group().size());
    for (int w = 0; w < size; ++w)
      for (int x : table.group().interval_below(w))
        table.entries_[pair_key(x, w)] = solver.polynomial(x, w);
    table.complete_ = true;
    return table;
  }

  [[nodiscard]] int rank() const { return group_.rank(); }
  [[nodiscard]] bool complete() const { return complete_; }
  [[nodiscard]] std::size_t stored_entries() const { return entries_.size(); }

  [[nodiscard]] const detail::GroupContext& group() const { return group_; }

  [[nodiscard]] const IntPolynomial& polynomial(const Permutation& x, const Permutation& w) const {
    if (x.rank() != rank() || w.rank() != rank())
      throw ArgumentError("KLTable: rank mismatch");
    return polynomial_by_index(require_index(x), require_index(w));
  }

  [[nodiscard]] const IntPolynomial& polynomial_by_index(int x, int w) const {
    static const IntPolynomial kZero{};
    auto it = entries_.find(pair_key(x, w));
    return it == entries_.end() ? kZero : it->second;
  }

  // f(x_index, w_index, polynomial) over every ordered pair, x-major in w.
  template <class F>
  void for_each_pair(F&& f) const {
    const int size = static_cast<int>(group_.size());
    for (int x = 0; x < size; ++x)
      for (int w = 0; w < size; ++w) f(x, w, polynomial_by_index(x, w));
  }

  // Line-oriented cache records `n;x;w;c0,c1,...`, permutations in one-line
  // notation, coefficients low-to-high, empty list for the zero polynomial.
  // All n!^2 ordered pairs in (x, w) index order, so output is reproducible.
  void save(std::ostream& os) const {
    const int size = static_cast<int>(group_.size());
    for (int x = 0; x < size; ++x) {
      for (int w = 0; w < size; ++w) {
        os << rank() << ';' << group_.element(x).to_string() << ';'
           << group_.element(w).to_string() << ';';
        const IntPolynomial& p = polynomial_by_index(x, w);
        const auto& coeff = p.coefficients();
        for (std::size_t i = 0; i < coeff.size(); ++i) {
          if (i) os << ',';
          os << coeff[i].to_string();
        }
        os << '\n';
      }
    }
  }

  // Reload a saved table, validating every record against the invariants:
  // P_{w,w} = 1, vanishing exactly off Bruhat order, unit constant term and
  // the degree bound below the diagonal. Malformed input never half-loads.
  static KLTable load(std::istream& is, int n, int ceiling = Limits::kl_table_ceiling) {
    check_ceiling(n, ceiling);
    KLTable table(detail::GroupContext::make(n));
    const auto& g = table.group();
    std::string line;
    std::size_t records = 0;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      ++records;
      std::vector<std::string> parts = split(line, ';');
      if (parts.size() != 4) throw ParseError("KLTable: malformed record '" + line + "'");
      if (parts[0] != std::to_string(n))
        throw ValidationError("KLTable: record rank differs from table rank");
      const auto xi = g.find(Permutation::parse(parts[1]));
      const auto wi = g.find(Permutation::parse(parts[2]));
      if (!xi || !wi) throw ValidationError("KLTable: record permutation outside S_n");
      IntPolynomial p = parse_coefficients(parts[3]);
      validate_entry(g, *xi, *wi, p);
      if (!p.is_zero()) {
        auto [it, inserted] = table.entries_.emplace(pair_key(*xi, *wi), std::move(p));
        if (!inserted) throw ValidationError("KLTable: duplicate record");
      }
    }
    const std::size_t expected = g.size() * g.size();
    if (records != expected)
      throw ValidationError("KLTable: expected " + std::to_string(expected) +
                            " records, found " + std::to_string(records));
    // vanishing exactly off Bruhat order: every comparable pair must be present
    for (int w = 0; w < static_cast<int>(g.size()); ++w)
      for (int x : g.interval_below(w))
        if (table.entries_.find(pair_key(x, w)) == table.entries_.end())
          throw ValidationError("KLTable: missing entry for a Bruhat-comparable pair");
    table.complete_ = true;
    return table;
  }

private:
  explicit KLTable(detail::GroupContext g) : group_(std::move(g)) {}

  [[nodiscard]] int require_index(const Permutation& w) const {
    const auto idx = group_.find(w);
    if (!idx) throw ArgumentError("KLTable: permutation outside S_n");
    return *idx;
  }

  static void check_ceiling(int n, int ceiling) {
    if (n < 1) throw ArgumentError("KLTable: rank must be positive");
    if (n > ceiling)
      throw ResourceLimitError("KLTable: rank " + std::to_string(n) + " above ceiling " +
                               std::to_string(ceiling));
  }

  static std::uint64_t pair_key(int x, int w) {
    return (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint64_t>(w);
  }

  static std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
      std::size_t pos = text.find(sep, start);
      if (pos == std::string::npos) {
        out.push_back(text.substr(start));
        return out;
      }
      out.push_back(text.substr(start, pos - start));
      start = pos + 1;
    }
  }

  static IntPolynomial parse_coefficients(const std::string& text) {
    if (text.empty()) return IntPolynomial::zero();
    std::vector<BigInt> coeff;
    for (const std::string& tok : split(text, ',')) coeff.push_back(BigInt::from_string(tok));
    return IntPolynomial::from_coefficients(std::move(coeff));
  }

  static void validate_entry(const detail::GroupContext& g, int x, int w,
                             const IntPolynomial& p) {
    const bool comparable = g.leq(x, w);
    if (!comparable) {
      if (!p.is_zero())
        throw ValidationError("KLTable: nonzero entry off Bruhat order");
      return;
    }
    if (x == w) {
      if (!(p == IntPolynomial::one()))
        throw ValidationError("KLTable: diagonal entry must be 1");
      return;
    }
    if (p.is_zero() || !(p.coefficient(0) == BigInt(1)))
      throw ValidationError("KLTable: constant term must be 1 below the diagonal");
    if (2 * p.degree() > g.length(w) - g.length(x) - 1)
      throw ValidationError("KLTable: degree bound violated");
  }

  detail::GroupContext group_;
  std::unordered_map<std::uint64_t, IntPolynomial> entries_;
  bool complete_ = false;
};

// One-shot operations (fresh recursion, no shared cache).

inline IntPolynomial kl_polynomial(const Permutation& x, const Permutation& w,
                                   int ceiling = Limits::kl_table_ceiling) {
  if (x.rank() != w.rank()) throw ArgumentError("kl_polynomial: rank mismatch");
  if (x.rank() > ceiling)
    throw ResourceLimitError("kl_polynomial: rank above ceiling");
  const detail::GroupContext g = detail::GroupContext::make(x.rank());
  detail::KlSolver solver(g);
  return solver.polynomial(*g.find(x), *g.find(w));
}

inline IntPolynomial r_polynomial(const Permutation& x, const Permutation& w,
                                  int ceiling = Limits::kl_table_ceiling) {
  if (x.rank() != w.rank()) throw ArgumentError("r_polynomial: rank mismatch");
  if (x.rank() > ceiling)
    throw ResourceLimitError("r_polynomial: rank above ceiling");
  const detail::GroupContext g = detail::GroupContext::make(x.rank());
  detail::RSolver solver(g);
  return solver.polynomial(*g.find(x), *g.find(w));
}

// Coefficient of q^{(l(w)-l(x)-1)/2} in P_{x,w} when the length gap is odd
// and x < w; zero otherwise.
inline long long mu(const Permutation& x, const Permutation& w,
                    int ceiling = Limits::kl_table_ceiling) {
  if (x.rank() != w.rank()) throw ArgumentError("mu: rank mismatch");
  if (x.rank() > ceiling) throw ResourceLimitError("mu: rank above ceiling");
  const detail::GroupContext g = detail::GroupContext::make(x.rank());
  detail::KlSolver solver(g);
  return solver.mu(*g.find(x), *g.find(w)).to_int64();
}

// The defining characterization, used as the correctness oracle for a table:
//   q^{l(w)-l(x)} P_{x,w}(1/q) - P_{x,w}(q) = sum_{x<z<=w} R_{x,z} P_{z,w}.
inline bool inversion_identity_holds(const KLTable& table, int x, int w,
                                     detail::RSolver& rsolver) {
  const auto& g = table.group();
  if (!g.leq(x, w)) return true; // both sides vanish
  const IntPolynomial& p = table.polynomial_by_index(x, w);
  const IntPolynomial lhs = p.reversal(g.length(w) - g.length(x)) - p;
  IntPolynomial rhs;
  for (int z : g.interval_below(w)) {
    if (z == x || !g.leq(x, z)) continue;
    rhs += rsolver.polynomial(x, z) * table.polynomial_by_index(z, w);
  }
  return lhs == rhs;
}

struct InversionIdentityReport {
  std::size_t pairs_checked = 0;
  std::vector<std::pair<Permutation, Permutation>> failures;
  [[nodiscard]] bool pass() const { return failures.empty(); }
};

inline InversionIdentityReport verify_inversion_identity(const KLTable& table) {
  InversionIdentityReport report;
  const auto& g = table.group();
  detail::RSolver rsolver(g);
  const int size = static_cast<int>(g.size());
  for (int w = 0; w < size; ++w) {
    for (int x = 0; x < size; ++x) {
      ++report.pairs_checked;
      if (!inversion_identity_holds(table, x, w, rsolver))
        report.failures.emplace_back(g.element(x), g.element(w));
    }
  }
  return report;
}

} // namespace zelkl
