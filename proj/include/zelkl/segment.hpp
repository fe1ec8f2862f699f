#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zelkl/errors.hpp"
#include "zelkl/rational.hpp"

namespace zelkl {

// Cuspidal lines are opaque interned symbols: a name, a degree (the d of the
// GL_d the cuspidal representation lives on) and an involutive dual pairing.
// The engine never models the representations themselves; line identity,
// degree and rational twists carry every computation.
struct LineId {
  std::uint32_t value = 0;
  friend bool operator==(LineId, LineId) = default;
  friend std::strong_ordering operator<=>(LineId, LineId) = default;
};

class LineRegistry {
public:
  static LineRegistry& global() {
    static LineRegistry instance;
    return instance;
  }

  // Self-dual line; re-interning an existing name checks degree consistency.
  LineId intern(std::string_view name, int degree = 1) {
    std::scoped_lock lock(mutex_);
    if (auto existing = find_locked(name)) {
      if (entries_[existing->value].degree != degree)
        throw ValidationError("LineRegistry: degree conflict for line '" +
                              std::string(name) + "'");
      return *existing;
    }
    validate_name(name);
    if (degree < 1) throw ValidationError("LineRegistry: degree must be positive");
    const LineId id{static_cast<std::uint32_t>(entries_.size())};
    entries_.push_back(Entry{std::string(name), degree, id});
    return id;
  }

  // Parser entry point: an already-interned name resolves as-is whatever its
  // declared degree or pairing; an unknown one becomes a degree-1 self-dual
  // line.
  LineId resolve(std::string_view name) {
    {
      std::scoped_lock lock(mutex_);
      if (auto existing = find_locked(name)) return *existing;
    }
    return intern(name, 1);
  }

  // A dual pair rho ~ rho^vee; both fresh or both already paired this way.
  std::pair<LineId, LineId> intern_dual_pair(std::string_view name,
                                             std::string_view dual_name,
                                             int degree = 1) {
    if (name == dual_name) {
      const LineId id = intern(name, degree);
      return {id, id};
    }
    std::scoped_lock lock(mutex_);
    auto a = find_locked(name);
    auto b = find_locked(dual_name);
    if (a && b) {
      if (entries_[a->value].dual != *b || entries_[a->value].degree != degree)
        throw ValidationError("LineRegistry: conflicting dual pairing");
      return {*a, *b};
    }
    if (a || b)
      throw ValidationError("LineRegistry: half of the dual pair already interned");
    validate_name(name);
    validate_name(dual_name);
    if (degree < 1) throw ValidationError("LineRegistry: degree must be positive");
    const LineId first{static_cast<std::uint32_t>(entries_.size())};
    const LineId second{first.value + 1};
    entries_.push_back(Entry{std::string(name), degree, second});
    entries_.push_back(Entry{std::string(dual_name), degree, first});
    return {first, second};
  }

  // Unused self-dual line for the sigma of the dual-swap and insertion moves;
  // "fresh" is the machine analogue of "outside every existing Z-line".
  LineId fresh_line(int degree, std::string_view prefix = "sigma") {
    std::scoped_lock lock(mutex_);
    for (;; ++fresh_counter_) {
      std::string candidate = std::string(prefix) + "." + std::to_string(fresh_counter_);
      if (!find_locked(candidate)) {
        const LineId id{static_cast<std::uint32_t>(entries_.size())};
        entries_.push_back(Entry{std::move(candidate), degree, id});
        ++fresh_counter_;
        return id;
      }
    }
  }

  [[nodiscard]] std::string name(LineId id) const {
    std::scoped_lock lock(mutex_);
    check(id);
    return entries_[id.value].name;
  }
  [[nodiscard]] int degree(LineId id) const {
    std::scoped_lock lock(mutex_);
    check(id);
    return entries_[id.value].degree;
  }
  [[nodiscard]] LineId dual(LineId id) const {
    std::scoped_lock lock(mutex_);
    check(id);
    return entries_[id.value].dual;
  }

private:
  struct Entry {
    std::string name;
    int degree;
    LineId dual;
  };

  std::optional<LineId> find_locked(std::string_view name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].name == name) return LineId{static_cast<std::uint32_t>(i)};
    return std::nullopt;
  }

  void check(LineId id) const {
    if (id.value >= entries_.size()) throw ArgumentError("LineRegistry: unknown line id");
  }

  static void validate_name(std::string_view name) {
    if (name.empty()) throw ValidationError("LineRegistry: empty line name");
    auto head = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    auto tail = [&](char c) {
      return head(c) || (c >= '0' && c <= '9') || c == '\'' || c == '^' || c == '.';
    };
    if (!head(name.front()))
      throw ValidationError("LineRegistry: line name must start with a letter or '_'");
    for (char c : name)
      if (!tail(c))
        throw ValidationError("LineRegistry: invalid character in line name");
  }

  mutable std::mutex mutex_;
  std::vector<Entry> entries_;
  std::uint64_t fresh_counter_ = 0;
};

// nu^shift . rho for the line of rho
struct CuspidalPoint {
  LineId line;
  Rational shift;
  friend bool operator==(const CuspidalPoint&, const CuspidalPoint&) = default;
  friend std::strong_ordering operator<=>(const CuspidalPoint& a, const CuspidalPoint& b) {
    if (auto c = a.line <=> b.line; c != 0) return c;
    return a.shift <=> b.shift;
  }
  [[nodiscard]] std::string to_string() const {
    return "nu^" + shift.to_string() + "@" + LineRegistry::global().name(line);
  }
};

// [nu^a rho, nu^b rho] with b - a a non-negative integer.
class Segment {
public:
  Segment(LineId line, Rational a, Rational b) : line_(line), a_(a), b_(b) {
    const Rational gap = b - a;
    if (!gap.is_integer() || gap < Rational(0))
      throw ValidationError("Segment: b-a must be a non-negative integer");
  }

  [[nodiscard]] LineId line() const { return line_; }
  [[nodiscard]] const Rational& a() const { return a_; }
  [[nodiscard]] const Rational& b() const { return b_; }
  [[nodiscard]] CuspidalPoint start() const { return {line_, a_}; }
  [[nodiscard]] CuspidalPoint end() const { return {line_, b_}; }

  // number of cuspidal points in the segment
  [[nodiscard]] int relative_length() const {
    return static_cast<int>((b_ - a_).numerator()) + 1;
  }
  // n(Delta) = deg(rho) * relative length
  [[nodiscard]] int absolute_length() const {
    return LineRegistry::global().degree(line_) * relative_length();
  }

  [[nodiscard]] Segment twisted(const Rational& c) const { return {line_, a_ + c, b_ + c}; }

  [[nodiscard]] std::string to_string() const {
    return "[" + a_.to_string() + "," + b_.to_string() + "]@" +
           LineRegistry::global().name(line_);
  }

  friend bool operator==(const Segment&, const Segment&) = default;
  friend std::strong_ordering operator<=>(const Segment& s, const Segment& t) {
    if (auto c = s.line_ <=> t.line_; c != 0) return c;
    if (auto c = s.a_ <=> t.a_; c != 0) return c;
    return s.b_ <=> t.b_;
  }

private:
  LineId line_;
  Rational a_, b_;
};

inline Segment make_segment(LineId line, const Rational& a, const Rational& b) {
  return {line, a, b};
}

// Same cuspidal line in the sense of the calculus: identical interned line
// and integer shift gap.
inline bool same_line_class(const Segment& s, const Segment& t) {
  return s.line() == t.line() && (s.a() - t.a()).is_integer();
}

// Strict segment comparison Delta < Delta': same Z-line and strictly smaller
// right endpoint. Only this relation constrains the standard order.
inline bool segment_lt(const Segment& s, const Segment& t) {
  return same_line_class(s, t) && s.b() < t.b();
}

// Linked: the union of the two point sets is again a segment and neither
// contains the other. Different lines or non-integer gaps are never linked.
inline bool linked(const Segment& s, const Segment& t) {
  if (!same_line_class(s, t)) return false;
  const bool overlap_or_adjacent =
      !(s.a() > t.b() + Rational(1)) && !(t.a() > s.b() + Rational(1));
  if (!overlap_or_adjacent) return false;
  const bool s_contains_t = s.a() <= t.a() && t.b() <= s.b();
  const bool t_contains_s = t.a() <= s.a() && s.b() <= t.b();
  return !s_contains_t && !t_contains_s;
}

namespace detail {
// Canonical storage order: integer-line classes ascending by (interned id,
// fractional shift); inside a class descending by b, then descending by a.
// Any admissible relabelling of a multisegment normalizes to this form.
inline bool canonical_less(const Segment& s, const Segment& t) {
  if (s.line() != t.line()) return s.line() < t.line();
  const Rational fs = s.a().fractional_part();
  const Rational ft = t.a().fractional_part();
  if (fs != ft) return fs < ft;
  if (s.b() != t.b()) return s.b() > t.b();
  return s.a() > t.a();
}
} // namespace detail

// A multiset of segments held in canonical standard order.
class Multisegment {
public:
  Multisegment() = default;

  static Multisegment of(std::vector<Segment> segments) {
    Multisegment m;
    m.segments_ = std::move(segments);
    std::stable_sort(m.segments_.begin(), m.segments_.end(), detail::canonical_less);
    return m;
  }

  [[nodiscard]] const std::vector<Segment>& segments() const { return segments_; }
  [[nodiscard]] bool empty() const { return segments_.empty(); }
  [[nodiscard]] std::size_t size() const { return segments_.size(); }

  // n(m): sum of absolute lengths; additive under disjoint union
  [[nodiscard]] int absolute_length() const {
    int n = 0;
    for (const Segment& s : segments_) n += s.absolute_length();
    return n;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      if (i) out += ", ";
      out += segments_[i].to_string();
    }
    out += "}";
    return out;
  }

  friend bool operator==(const Multisegment&, const Multisegment&) = default;
  friend std::strong_ordering operator<=>(const Multisegment& a, const Multisegment& b) {
    return a.segments_ <=> b.segments_;
  }

private:
  std::vector<Segment> segments_;
};

// True when the sequence already satisfies the standard-order constraint
// (no earlier segment strictly below a later one on the same Z-line).
inline bool is_standard_sequence(const std::vector<Segment>& segments) {
  for (std::size_t i = 0; i < segments.size(); ++i)
    for (std::size_t j = i + 1; j < segments.size(); ++j)
      if (segment_lt(segments[i], segments[j])) return false;
  return true;
}

inline Multisegment standard_order(std::vector<Segment> segments) {
  return Multisegment::of(std::move(segments));
}

enum class Side { Left, Right };

inline std::string to_string(Side side) { return side == Side::Left ? "left" : "right"; }

// Truncation label of a Bernstein-Zelevinsky derivative: the right derivative truncates i points
// from the left end, the left derivative truncates from the right end; the
// full truncation is the empty label. The shifted variants twist the result
// by nu^{1/2} (right) or nu^{-1/2} (left).
inline std::optional<Segment> derivative_segment(const Segment& s, Side side, int i,
                                                 bool shifted) {
  const int len = s.relative_length();
  if (i < 0 || i > len)
    throw ArgumentError("derivative_segment: index out of range 0.." + std::to_string(len));
  if (i == len) return std::nullopt;
  Segment out = side == Side::Right ? Segment(s.line(), s.a() + Rational(i), s.b())
                                    : Segment(s.line(), s.a(), s.b() - Rational(i));
  if (shifted) out = out.twisted(side == Side::Right ? Rational(1, 2) : Rational(-1, 2));
  return out;
}

inline Segment dual_segment(const Segment& s) {
  return {LineRegistry::global().dual(s.line()), -s.b(), -s.a()};
}

inline Multisegment dual_multisegment(const Multisegment& m) {
  std::vector<Segment> out;
  out.reserve(m.size());
  for (const Segment& s : m.segments()) out.push_back(dual_segment(s));
  return Multisegment::of(std::move(out));
}

inline Multisegment twist(const Multisegment& m, const Rational& c) {
  std::vector<Segment> out;
  out.reserve(m.size());
  for (const Segment& s : m.segments()) out.push_back(s.twisted(c));
  return Multisegment::of(std::move(out));
}

// Cuspidal support as a sorted multiset of points.
inline std::vector<CuspidalPoint> csupp(const Multisegment& m) {
  std::vector<CuspidalPoint> out;
  for (const Segment& s : m.segments()) {
    Rational shift = s.a();
    for (int i = 0; i < s.relative_length(); ++i) {
      out.push_back({s.line(), shift});
      shift += Rational(1);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool csupp_contains(const std::vector<CuspidalPoint>& support,
                           const CuspidalPoint& point) {
  return std::binary_search(support.begin(), support.end(), point);
}

// L*: pairs of nu^{1/2}m x dual(m') lying on a common Z-line — the induction
// statistic of the branching engine.
inline long long lstar(const Multisegment& m, const Multisegment& m_prime) {
  const Multisegment left = twist(m, Rational(1, 2));
  const Multisegment right = dual_multisegment(m_prime);
  long long count = 0;
  for (const Segment& s : left.segments())
    for (const Segment& t : right.segments())
      if (same_line_class(s, t)) ++count;
  return count;
}

// Generic = the standard module is irreducible = segments pairwise unlinked.
inline bool is_generic(const Multisegment& m) {
  const auto& segs = m.segments();
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j)
      if (linked(segs[i], segs[j])) return false;
  return true;
}

namespace detail {

// Recursive-descent parser for the text grammar `[a,b]@line` and
// `{[a,b]@rho, [c,d]@rho'}`; rationals as `p/q`. Unknown line names intern as
// degree-1 self-dual lines. Round-trips bit-exactly with to_string().
class SegmentParser {
public:
  SegmentParser(std::string_view text, LineRegistry& registry)
      : text_(text), registry_(registry) {}

  Segment parse_segment() {
    Segment out = segment();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("segment: trailing input");
    return out;
  }

  Multisegment parse_multisegment() {
    Multisegment out = multisegment();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("multisegment: trailing input");
    return out;
  }

private:
  Multisegment multisegment() {
    expect('{');
    std::vector<Segment> segments;
    skip_ws();
    if (peek() == '}') {
      ++pos_;
      return Multisegment::of(std::move(segments));
    }
    while (true) {
      segments.push_back(segment());
      skip_ws();
      const char c = next();
      if (c == '}') break;
      if (c != ',') throw ParseError("multisegment: expected ',' or '}'");
    }
    return Multisegment::of(std::move(segments));
  }

  Segment segment() {
    expect('[');
    const Rational a = rational();
    expect(',');
    const Rational b = rational();
    expect(']');
    expect('@');
    const LineId line = registry_.resolve(name());
    try {
      return {line, a, b};
    } catch (const ValidationError& e) {
      throw ParseError(std::string("segment: ") + e.what());
    }
  }

  Rational rational() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() &&
           ((text_[pos_] >= '0' && text_[pos_] <= '9') || text_[pos_] == '/'))
      ++pos_;
    if (pos_ == start) throw ParseError("expected a rational");
    return Rational::parse(text_.substr(start, pos_ - start));
  }

  std::string name() {
    skip_ws();
    std::size_t start = pos_;
    auto ok = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
             (c >= '0' && c <= '9') || c == '_' || c == '\'' || c == '^' || c == '.';
    };
    while (pos_ < text_.size() && ok(text_[pos_])) ++pos_;
    if (pos_ == start) throw ParseError("expected a line name");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  char peek() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input");
    return text_[pos_];
  }
  char next() {
    const char c = peek();
    ++pos_;
    return c;
  }
  void expect(char c) {
    if (next() != c) throw ParseError(std::string("expected '") + c + "'");
  }

  std::string_view text_;
  LineRegistry& registry_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline Segment parse_segment(std::string_view text) {
  return detail::SegmentParser(text, LineRegistry::global()).parse_segment();
}

inline Multisegment parse_multisegment(std::string_view text) {
  return detail::SegmentParser(text, LineRegistry::global()).parse_multisegment();
}

} // namespace zelkl
