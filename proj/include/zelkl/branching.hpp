#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zelkl/errors.hpp"
#include "zelkl/segment.hpp"

namespace zelkl {

enum class ReductionCase { Case1, Case2 };

// The rho* of the induction: the maximal point on an integer-shift class
// meeting both csupp(nu^{1/2} m) and csupp(dual(m')). Case2 when the maximum
// is realized as the right endpoint of a dualized m'-segment, Case1 when only
// a twisted m-segment realizes it. Classes are canonically ordered by
// (interned line id, fractional shift), which settles cross-line ties.
struct RhoStarSelection {
  CuspidalPoint point;
  ReductionCase reduction = ReductionCase::Case1;
  std::size_t anchor_index = 0; // into m (Case1) or m_prime (Case2), canonical order
  Segment anchor;
};

namespace detail {

struct ClassKey {
  LineId line;
  Rational frac;
  friend bool operator==(const ClassKey&, const ClassKey&) = default;
  friend bool operator<(const ClassKey& a, const ClassKey& b) {
    if (a.line != b.line) return a.line < b.line;
    return a.frac < b.frac;
  }
};

struct ClassEntry {
  Rational end;           // right endpoint in the twisted/dualized picture
  bool from_dual = false; // true when contributed by dual(m')
  std::size_t index = 0;  // segment index on its own side, canonical order
};

} // namespace detail

inline RhoStarSelection select_rho_star(const Multisegment& m, const Multisegment& m_prime) {
  if (lstar(m, m_prime) == 0)
    throw ArgumentError("select_rho_star: L* must be positive");

  using detail::ClassEntry;
  using detail::ClassKey;
  std::map<ClassKey, std::vector<ClassEntry>> classes;
  const Rational half(1, 2);
  const auto& msegs = m.segments();
  for (std::size_t i = 0; i < msegs.size(); ++i) {
    const Rational a = msegs[i].a() + half;
    classes[{msegs[i].line(), a.fractional_part()}].push_back(
        ClassEntry{msegs[i].b() + half, false, i});
  }
  const auto& psegs = m_prime.segments();
  for (std::size_t j = 0; j < psegs.size(); ++j) {
    const Segment d = dual_segment(psegs[j]);
    classes[{d.line(), d.a().fractional_part()}].push_back(ClassEntry{d.b(), true, j});
  }

  for (const auto& [key, entries] : classes) {
    bool has_m = false, has_dual = false;
    for (const ClassEntry& e : entries) (e.from_dual ? has_dual : has_m) = true;
    if (!has_m || !has_dual) continue; // no pair on this class

    Rational max_end = entries.front().end;
    for (const ClassEntry& e : entries)
      if (e.end > max_end) max_end = e.end;

    const CuspidalPoint point{key.line, max_end};
    // Case2 takes precedence when a dualized m'-segment realizes the maximum
    for (const ClassEntry& e : entries)
      if (e.from_dual && e.end == max_end)
        return {point, ReductionCase::Case2, e.index, psegs[e.index]};
    for (const ClassEntry& e : entries)
      if (!e.from_dual && e.end == max_end)
        return {point, ReductionCase::Case1, e.index, msegs[e.index]};
  }
  throw InductionFailureError("select_rho_star: positive L* but no qualifying class");
}

enum class StepKind { BaseCase, Case1Removal, SwapDual, FreshCuspidalInsertion };

inline std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::BaseCase: return "BaseCase";
    case StepKind::Case1Removal: return "Case1Removal";
    case StepKind::SwapDual: return "SwapDual";
    case StepKind::FreshCuspidalInsertion: return "FreshCuspidalInsertion";
  }
  return "?";
}

struct TraceStep {
  StepKind kind = StepKind::BaseCase;
  long long lstar_before = 0;
  long long lstar_after = 0;
  std::optional<CuspidalPoint> rho_star;
  std::string detail;
  // structured payload mirroring the detail text, for replay checks
  std::optional<Segment> anchor;       // Case1Removal: the removed segment
  std::optional<Side> removal_side;    // Case1Removal: filtration side used
  std::optional<LineId> sigma;         // SwapDual / FreshCuspidalInsertion
  int sigma_degree = 0;
};

// A full run of the induction. Steps group into rounds; every round ends with
// a removal and must strictly decrease L*. A violation is recorded as an
// explicit failure marker, never looped over.
struct ProofTrace {
  Multisegment initial_m, initial_m_prime;
  long long initial_lstar = 0;
  int rounds = 0;
  std::vector<TraceStep> steps;
  bool induction_failure = false;
  std::string failure_detail;

  [[nodiscard]] bool base_reached() const {
    return !steps.empty() && steps.back().kind == StepKind::BaseCase;
  }
};

namespace detail {

inline Multisegment without_index(const Multisegment& m, std::size_t index) {
  std::vector<Segment> segs = m.segments();
  segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(index));
  return Multisegment::of(std::move(segs));
}

inline Multisegment with_point_segment(const Multisegment& m, LineId line) {
  std::vector<Segment> segs = m.segments();
  segs.emplace_back(line, Rational(0), Rational(0));
  return Multisegment::of(std::move(segs));
}

// The anchor commutes to the boundary of the product when every segment on
// the crossed side is unlinked with it; maximality makes this automatic, and
// the engine still verifies it.
inline bool commutes_to_boundary(const Multisegment& m, std::size_t index, Side side) {
  const auto& segs = m.segments();
  if (side == Side::Right) {
    for (std::size_t i = 0; i < index; ++i)
      if (linked(segs[i], segs[index])) return false;
  } else {
    for (std::size_t i = index + 1; i < segs.size(); ++i)
      if (linked(segs[i], segs[index])) return false;
  }
  return true;
}

} // namespace detail

// Mechanized run of the induction on L*. Case 1 removes the anchor from the
// active side via the right filtration and adjoins a fresh sigma (the
// Rankin-Selberg reduction; for single-point anchors the surviving layer is
// the Fourier-Jacobi one and the fresh line has degree 1). Case 2 first
// exchanges the two sides through the dual-swap, adjoining a fresh degree-2
// sigma, then removes the selected anchor via the left filtration. Fresh
// lines meet nothing, so only removals can move L*; the engine asserts the
// strict decrease after every round. N* of the source induction is
// identified with L* throughout.
inline ProofTrace proof_trace(const Multisegment& m, const Multisegment& m_prime) {
  if (m.absolute_length() != m_prime.absolute_length() + 1)
    throw ArgumentError("proof_trace: need n(m) = n(m') + 1, got " +
                        std::to_string(m.absolute_length()) + " and " +
                        std::to_string(m_prime.absolute_length()));

  ProofTrace trace;
  trace.initial_m = m;
  trace.initial_m_prime = m_prime;
  trace.initial_lstar = lstar(m, m_prime);

  Multisegment active = m;
  Multisegment passive = m_prime;
  auto& registry = LineRegistry::global();

  while (true) {
    const long long level = lstar(active, passive);
    if (level == 0) {
      TraceStep base;
      base.kind = StepKind::BaseCase;
      base.detail = "Gelfand-Graev base: Whittaker multiplicity one gives Hom "
                    "dimension 1; projectivity kills all higher Ext";
      trace.steps.push_back(std::move(base));
      return trace;
    }
    if (trace.rounds > trace.initial_lstar)
      throw InductionFailureError(
          "proof_trace: round budget exhausted at state " + active.to_string() +
          " / " + passive.to_string() + " with L* = " + std::to_string(level));
    ++trace.rounds;

    const RhoStarSelection sel = select_rho_star(active, passive);
    std::size_t anchor_index = sel.anchor_index;
    Side removal_side = Side::Right;

    if (sel.reduction == ReductionCase::Case2) {
      const LineId sigma = registry.fresh_line(2);
      const Multisegment swapped_active = detail::with_point_segment(passive, sigma);
      const Multisegment swapped_passive = active;
      TraceStep swap;
      swap.kind = StepKind::SwapDual;
      swap.lstar_before = level;
      swap.lstar_after = lstar(swapped_active, swapped_passive);
      swap.rho_star = sel.point;
      swap.sigma = sigma;
      swap.sigma_degree = 2;
      swap.detail = "dual-swap: sides exchanged, cuspidal " + registry.name(sigma) +
                    " of degree 2 adjoined to the new active side";
      trace.steps.push_back(std::move(swap));
      active = swapped_active;
      passive = swapped_passive;
      removal_side = Side::Left;
      // relocate the anchor inside the swapped active side
      anchor_index = active.segments().size();
      for (std::size_t i = 0; i < active.segments().size(); ++i)
        if (active.segments()[i] == sel.anchor) {
          anchor_index = i;
          break;
        }
      if (anchor_index == active.segments().size())
        throw InductionFailureError("proof_trace: swapped anchor vanished");
    }

    const Segment anchor = active.segments()[anchor_index];
    if (!detail::commutes_to_boundary(active, anchor_index, removal_side)) {
      trace.induction_failure = true;
      trace.failure_detail = "anchor " + anchor.to_string() +
                             " is linked across the product and cannot be commuted out";
      return trace;
    }

    const long long before_removal = lstar(active, passive);
    active = detail::without_index(active, anchor_index);
    const long long after_removal = lstar(active, passive);

    const int i_star = anchor.absolute_length();
    TraceStep removal;
    removal.kind = StepKind::Case1Removal;
    removal.lstar_before = before_removal;
    removal.lstar_after = after_removal;
    removal.rho_star = sel.point;
    removal.anchor = anchor;
    removal.removal_side = removal_side;
    removal.detail =
        std::string(removal_side == Side::Right
                        ? "segment commuted to the front and removed by the right filtration"
                        : "segment commuted to the back and removed by the left filtration") +
        ": " + anchor.to_string() + "; surviving layer k = " + std::to_string(i_star) +
        (i_star >= 2 ? " (Rankin-Selberg index " + std::to_string(i_star - 2) + ")"
                     : " (Fourier-Jacobi layer)");
    trace.steps.push_back(std::move(removal));

    const int sigma_degree = i_star >= 2 ? i_star - 1 : 1;
    const LineId sigma = registry.fresh_line(sigma_degree);
    active = detail::with_point_segment(active, sigma);
    const long long after_insertion = lstar(active, passive);
    TraceStep fresh;
    fresh.kind = StepKind::FreshCuspidalInsertion;
    fresh.lstar_before = after_removal;
    fresh.lstar_after = after_insertion;
    fresh.sigma = sigma;
    fresh.sigma_degree = sigma_degree;
    fresh.detail = "fresh cuspidal " + registry.name(sigma) + " of degree " +
                   std::to_string(sigma_degree) + " adjoined; meets no existing line";
    trace.steps.push_back(std::move(fresh));

    if (!(after_insertion < level)) {
      trace.induction_failure = true;
      trace.failure_detail = "round " + std::to_string(trace.rounds) +
                             " failed to decrease L*: " + std::to_string(level) + " -> " +
                             std::to_string(after_insertion);
      return trace;
    }
  }
}

// Replay a trace against the documented transition semantics and re-derive
// every recorded L* annotation. Catches bookkeeping drift: swaps must
// preserve the statistic, fresh lines must not move it, removals must drop
// exactly the anchor's same-line pair count, and rounds must strictly
// decrease it. Violations are data for the randomized suites.
struct TraceValidation {
  std::vector<std::string> problems;
  [[nodiscard]] bool pass() const { return problems.empty(); }
};

inline TraceValidation validate_trace(const ProofTrace& trace) {
  TraceValidation result;
  auto complain = [&](const std::string& what) { result.problems.push_back(what); };
  if (trace.induction_failure) complain("induction failure: " + trace.failure_detail);
  if (!trace.base_reached()) complain("trace does not end in the base case");

  Multisegment active = trace.initial_m;
  Multisegment passive = trace.initial_m_prime;
  if (lstar(active, passive) != trace.initial_lstar)
    complain("recorded initial L* differs from a recomputation");
  long long round_start = trace.initial_lstar;

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& step = trace.steps[i];
    const std::string at = "step " + std::to_string(i) + " (" + to_string(step.kind) + "): ";
    switch (step.kind) {
      case StepKind::BaseCase: {
        if (step.lstar_before != 0 || lstar(active, passive) != 0)
          complain(at + "base case with positive L*");
        if (i + 1 != trace.steps.size()) complain(at + "base case is not final");
        break;
      }
      case StepKind::SwapDual: {
        if (!step.sigma || step.sigma_degree != 2)
          complain(at + "missing degree-2 sigma");
        if (step.lstar_before != lstar(active, passive))
          complain(at + "lstar_before mismatch");
        Multisegment next_active =
            step.sigma ? detail::with_point_segment(passive, *step.sigma) : passive;
        passive = active;
        active = std::move(next_active);
        if (step.lstar_after != lstar(active, passive))
          complain(at + "lstar_after mismatch");
        if (step.lstar_after != step.lstar_before)
          complain(at + "dual-swap changed L*");
        break;
      }
      case StepKind::Case1Removal: {
        if (!step.anchor) {
          complain(at + "missing anchor");
          break;
        }
        if (step.lstar_before != lstar(active, passive))
          complain(at + "lstar_before mismatch");
        long long contributed = 0;
        {
          const Segment twisted = step.anchor->twisted(Rational(1, 2));
          const Multisegment dualized = dual_multisegment(passive);
          for (const Segment& t : dualized.segments())
            if (same_line_class(twisted, t)) ++contributed;
        }
        std::vector<Segment> segs = active.segments();
        const auto it = std::find(segs.begin(), segs.end(), *step.anchor);
        if (it == segs.end()) {
          complain(at + "anchor not present in the active side");
          break;
        }
        segs.erase(it);
        active = Multisegment::of(std::move(segs));
        if (step.lstar_after != lstar(active, passive))
          complain(at + "lstar_after mismatch");
        if (step.lstar_before - step.lstar_after != contributed)
          complain(at + "removal delta differs from the anchor pair count");
        break;
      }
      case StepKind::FreshCuspidalInsertion: {
        if (!step.sigma || step.sigma_degree < 1) {
          complain(at + "missing sigma");
          break;
        }
        if (step.lstar_before != lstar(active, passive))
          complain(at + "lstar_before mismatch");
        active = detail::with_point_segment(active, *step.sigma);
        if (step.lstar_after != lstar(active, passive))
          complain(at + "lstar_after mismatch");
        if (step.lstar_after != step.lstar_before)
          complain(at + "fresh line moved L*");
        if (step.lstar_after >= round_start)
          complain(at + "round did not strictly decrease L*");
        round_start = step.lstar_after;
        break;
      }
    }
  }
  return result;
}

enum class ExtMode { Branching, EqualRank };

inline std::string to_string(ExtMode mode) {
  return mode == ExtMode::Branching ? "branching" : "equal_rank";
}

// Hom/Ext profile for a pair of standard labels. In branching mode the
// profile is a one-dimensional Hom with Ext^i = 0 for every i >= 1, and the
// mechanized trace is attached as evidence. In equal rank
// the profile vanishes entirely for non-isomorphic labels and is explicitly
// not determined for isomorphic ones.
struct ExtProfile {
  int hom_dim = 0;
  int ext_vanishing_degree = 0; // all Ext^i vanish for i >= this degree
  ExtMode mode = ExtMode::Branching;
  bool determined = true; // false: outside what the source settles
  std::optional<ProofTrace> evidence;
};

inline ExtProfile ext_dims(const Multisegment& m, const Multisegment& m_prime, ExtMode mode) {
  if (mode == ExtMode::Branching) {
    ProofTrace trace = proof_trace(m, m_prime); // validates the rank gap
    if (trace.induction_failure)
      throw InductionFailureError("ext_dims: trace failed: " + trace.failure_detail);
    ExtProfile profile;
    profile.hom_dim = 1;
    profile.ext_vanishing_degree = 1;
    profile.mode = mode;
    profile.evidence = std::move(trace);
    return profile;
  }
  if (m.absolute_length() != m_prime.absolute_length())
    throw ArgumentError("ext_dims: equal-rank mode needs n(m) = n(m')");
  ExtProfile profile;
  profile.mode = mode;
  if (m == m_prime) {
    profile.determined = false;
    profile.hom_dim = -1;
    profile.ext_vanishing_degree = -1;
  }
  return profile;
}

} // namespace zelkl
