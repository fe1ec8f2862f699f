#pragma once

// Test-side replay of a ProofTrace: re-executes the documented transition
// semantics step by step and re-derives every recorded L* annotation with
// independent lstar calls. Deliberately separate from the library's own
// validate_trace so the two can cross-check each other.

#include <string>
#include <vector>

#include "zelkl/branching.hpp"

namespace zelkl::testing {

inline long long anchor_pair_count(const Segment& anchor, const Multisegment& passive) {
  const Segment twisted = anchor.twisted(Rational(1, 2));
  const Multisegment dualized = dual_multisegment(passive);
  long long count = 0;
  for (const Segment& t : dualized.segments())
    if (same_line_class(twisted, t)) ++count;
  return count;
}

struct ReplayResult {
  std::vector<std::string> problems;
  [[nodiscard]] bool pass() const { return problems.empty(); }
};

inline ReplayResult replay_trace(const ProofTrace& trace) {
  ReplayResult result;
  auto fail = [&](const std::string& what) { result.problems.push_back(what); };

  if (trace.induction_failure) fail("induction failure marker: " + trace.failure_detail);
  if (!trace.base_reached()) fail("no base case at the end");

  Multisegment active = trace.initial_m;
  Multisegment passive = trace.initial_m_prime;
  if (lstar(active, passive) != trace.initial_lstar) fail("initial L* mismatch");
  long long round_start = trace.initial_lstar;

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& step = trace.steps[i];
    const std::string at = "step " + std::to_string(i) + ": ";
    switch (step.kind) {
      case StepKind::BaseCase:
        if (step.lstar_before != 0) fail(at + "base case lstar_before != 0");
        if (lstar(active, passive) != 0) fail(at + "base case with live pairs");
        if (i + 1 != trace.steps.size()) fail(at + "base case not final");
        break;
      case StepKind::SwapDual: {
        if (!step.sigma || step.sigma_degree != 2) {
          fail(at + "swap without a degree-2 sigma");
          break;
        }
        if (step.lstar_before != lstar(active, passive)) fail(at + "lstar_before wrong");
        std::vector<Segment> segs = passive.segments();
        segs.emplace_back(*step.sigma, Rational(0), Rational(0));
        Multisegment next_active = Multisegment::of(std::move(segs));
        passive = active;
        active = std::move(next_active);
        if (step.lstar_after != lstar(active, passive)) fail(at + "lstar_after wrong");
        if (step.lstar_after != step.lstar_before) fail(at + "swap changed L*");
        break;
      }
      case StepKind::Case1Removal: {
        if (!step.anchor) {
          fail(at + "removal without anchor");
          break;
        }
        if (step.lstar_before != lstar(active, passive)) fail(at + "lstar_before wrong");
        const long long contributed = anchor_pair_count(*step.anchor, passive);
        std::vector<Segment> segs = active.segments();
        auto it = std::find(segs.begin(), segs.end(), *step.anchor);
        if (it == segs.end()) {
          fail(at + "anchor absent from active side");
          break;
        }
        segs.erase(it);
        active = Multisegment::of(std::move(segs));
        if (step.lstar_after != lstar(active, passive)) fail(at + "lstar_after wrong");
        if (step.lstar_before - step.lstar_after != contributed)
          fail(at + "removal delta != anchor pair count");
        if (contributed <= 0) fail(at + "removed anchor carried no pairs");
        break;
      }
      case StepKind::FreshCuspidalInsertion: {
        if (!step.sigma || step.sigma_degree < 1) {
          fail(at + "insertion without sigma");
          break;
        }
        if (step.lstar_before != lstar(active, passive)) fail(at + "lstar_before wrong");
        std::vector<Segment> segs = active.segments();
        segs.emplace_back(*step.sigma, Rational(0), Rational(0));
        active = Multisegment::of(std::move(segs));
        if (step.lstar_after != lstar(active, passive)) fail(at + "lstar_after wrong");
        if (step.lstar_after != step.lstar_before) fail(at + "fresh line moved L*");
        if (step.lstar_after >= round_start) fail(at + "round did not strictly decrease L*");
        round_start = step.lstar_after;
        break;
      }
    }
  }
  return result;
}

} // namespace zelkl::testing
