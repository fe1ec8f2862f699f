#pragma once

#include <cstdint>
#include <vector>

#include "zelkl/segment.hpp"

namespace zelkl {

// Deterministic generator of branching instances (n(m) = n(m') + 1) for the
// randomized trace suites: up to 3 lines (one self-dual, one dual pair), up
// to 4 segments per side, endpoints in [-5, 5] with denominators 1 or 2.
// splitmix64 keeps runs reproducible across platforms for a fixed seed.
class InstanceGenerator {
public:
  explicit InstanceGenerator(std::uint64_t seed) : state_(seed) {
    auto& reg = LineRegistry::global();
    lines_[0] = reg.intern("gen_a");
    const auto pair = reg.intern_dual_pair("gen_b", "gen_b^");
    lines_[1] = pair.first;
    lines_[2] = pair.second;
  }

  struct Instance {
    Multisegment m, m_prime;
  };

  Instance next() {
    const int line_count = 1 + static_cast<int>(draw(3));
    const int prime_segments = 1 + static_cast<int>(draw(4));
    std::vector<int> prime_lengths;
    int total = 0;
    for (int i = 0; i < prime_segments; ++i) {
      const int len = 1 + static_cast<int>(draw(3));
      prime_lengths.push_back(len);
      total += len;
    }
    const std::vector<int> m_lengths = composition(total + 1);
    Instance out;
    out.m_prime = build(prime_lengths, line_count);
    out.m = build(m_lengths, line_count);
    return out;
  }

private:
  std::uint64_t draw(std::uint64_t bound) {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z % bound;
  }

  // random composition of total into at most 4 positive parts
  std::vector<int> composition(int total) {
    const int max_parts = total < 4 ? total : 4;
    const int parts = 1 + static_cast<int>(draw(static_cast<std::uint64_t>(max_parts)));
    std::vector<int> out;
    int remaining = total;
    for (int i = 0; i < parts - 1; ++i) {
      const int slack = remaining - (parts - 1 - i); // keep 1 per later part
      const int part = 1 + static_cast<int>(draw(static_cast<std::uint64_t>(slack)));
      out.push_back(part);
      remaining -= part;
    }
    out.push_back(remaining);
    return out;
  }

  Multisegment build(const std::vector<int>& lengths, int line_count) {
    std::vector<Segment> segs;
    segs.reserve(lengths.size());
    for (int len : lengths) {
      const LineId line = lines_[draw(static_cast<std::uint64_t>(line_count))];
      // a in [-5, 5 - (len-1)] over half-integers so b stays within [-5, 5]
      const long long twice_span = 21 - 2 * (len - 1);
      const long long twice_a = -10 + static_cast<long long>(draw(static_cast<std::uint64_t>(twice_span)));
      const Rational a(twice_a, 2);
      segs.emplace_back(line, a, a + Rational(len - 1));
    }
    return Multisegment::of(std::move(segs));
  }

  std::uint64_t state_;
  LineId lines_[3];
};

} // namespace zelkl
