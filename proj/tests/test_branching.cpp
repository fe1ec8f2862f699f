#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "trace_replay.hpp"
#include "zelkl/branching.hpp"
#include "zelkl/random_instances.hpp"

using namespace zelkl;

namespace {

void replay_and_check(const ProofTrace& trace) {
  const testing::ReplayResult replay = testing::replay_trace(trace);
  for (const std::string& problem : replay.problems) {
    CAPTURE(problem);
    CHECK(false);
  }
  // the library's own validator must agree with the independent replay
  CHECK(validate_trace(trace).pass() == replay.pass());
}

} // namespace

TEST_CASE("select_rho_star worked examples") {
  const LineId rho = LineRegistry::global().intern("rho");

  const auto case1 = select_rho_star(parse_multisegment("{[1/2,3/2]@rho}"),
                                     parse_multisegment("{[0,0]@rho}"));
  CHECK(case1.reduction == ReductionCase::Case1);
  CHECK(case1.point == CuspidalPoint{rho, Rational(2)});
  CHECK(case1.anchor == parse_segment("[1/2,3/2]@rho"));

  const auto case2 = select_rho_star(parse_multisegment("{[1/2,1/2]@rho}"),
                                     parse_multisegment("{[-3,-3]@rho}"));
  CHECK(case2.reduction == ReductionCase::Case2);
  CHECK(case2.point == CuspidalPoint{rho, Rational(3)});
  CHECK(case2.anchor == parse_segment("[-3,-3]@rho"));

  CHECK_THROWS_AS(select_rho_star(parse_multisegment("{[1/2,1/2]@rho}"),
                                  parse_multisegment("{[0,0]@off_line}")),
                  ArgumentError);
}

TEST_CASE("proof_trace walkthroughs") {
  // L* = 0: base case only
  const ProofTrace base = proof_trace(parse_multisegment("{[0,0]@rho, [0,0]@base_x}"),
                                      parse_multisegment("{[0,0]@base_y}"));
  CHECK(base.initial_lstar == 0);
  REQUIRE(base.steps.size() == 1);
  CHECK(base.steps[0].kind == StepKind::BaseCase);
  CHECK(base.base_reached());
  CHECK_FALSE(base.induction_failure);

  // Case 1 then base
  const ProofTrace c1 = proof_trace(parse_multisegment("{[1/2,3/2]@rho}"),
                                    parse_multisegment("{[0,0]@rho}"));
  CHECK(c1.initial_lstar == 1);
  REQUIRE(c1.steps.size() == 3);
  CHECK(c1.steps[0].kind == StepKind::Case1Removal);
  CHECK(c1.steps[0].lstar_before == 1);
  CHECK(c1.steps[0].lstar_after == 0);
  CHECK(c1.steps[1].kind == StepKind::FreshCuspidalInsertion);
  CHECK(c1.steps[2].kind == StepKind::BaseCase);
  CHECK(c1.rounds == 1);
  replay_and_check(c1);

  // Case 2: swap, removal, base. The bare single-point pair would violate
  // the rank gap, so the active side carries a padding segment on an
  // unrelated line that cannot influence the selection.
  const ProofTrace c2 = proof_trace(parse_multisegment("{[1/2,1/2]@rho, [0,0]@pad}"),
                                    parse_multisegment("{[-3,-3]@rho}"));
  CHECK(c2.initial_lstar == 1);
  REQUIRE(c2.steps.size() == 4);
  CHECK(c2.steps[0].kind == StepKind::SwapDual);
  CHECK(c2.steps[1].kind == StepKind::Case1Removal);
  CHECK(c2.steps[1].removal_side == Side::Left);
  CHECK(c2.steps[2].kind == StepKind::FreshCuspidalInsertion);
  CHECK(c2.steps[3].kind == StepKind::BaseCase);
  replay_and_check(c2);
}

TEST_CASE("proof_trace rejects bad rank gaps") {
  CHECK_THROWS_AS(proof_trace(parse_multisegment("{[0,1]@rho, [0,0]@rho}"),
                              parse_multisegment("{[0,0]@rho}")),
                  ArgumentError);
  CHECK_THROWS_AS(proof_trace(parse_multisegment("{[0,0]@rho}"),
                              parse_multisegment("{[0,0]@rho}")),
                  ArgumentError);
}

TEST_CASE("trace is independent of input segment order") {
  const std::vector<Segment> segs = {parse_segment("[1/2,3/2]@rho"),
                                     parse_segment("[-2,-1]@rho"),
                                     parse_segment("[0,0]@gen_a")};
  std::vector<Segment> reversed(segs.rbegin(), segs.rend());
  const Multisegment mp = parse_multisegment("{[0,1]@rho, [-1,0]@rho}");
  const ProofTrace a = proof_trace(Multisegment::of(segs), mp);
  const ProofTrace b = proof_trace(Multisegment::of(reversed), mp);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].kind == b.steps[i].kind);
    CHECK(a.steps[i].lstar_before == b.steps[i].lstar_before);
    CHECK(a.steps[i].lstar_after == b.steps[i].lstar_after);
    CHECK(a.steps[i].anchor == b.steps[i].anchor);
  }
}

TEST_CASE("randomized suite: termination, strict decrease, swap preservation") {
  InstanceGenerator gen(20240817);
  int case2_seen = 0, multi_round = 0;
  for (int i = 0; i < 400; ++i) {
    const auto inst = gen.next();
    const ProofTrace trace = proof_trace(inst.m, inst.m_prime);
    CHECK_FALSE(trace.induction_failure);
    CHECK(trace.base_reached());
    CHECK(trace.rounds <= trace.initial_lstar);
    replay_and_check(trace);
    for (const TraceStep& s : trace.steps)
      if (s.kind == StepKind::SwapDual) ++case2_seen;
    if (trace.rounds > 1) ++multi_round;
  }
  // the generator must actually exercise both branches and deep inductions
  CHECK(case2_seen > 0);
  CHECK(multi_round > 0);
}

TEST_CASE("ext_dims profiles") {
  const Multisegment m = parse_multisegment("{[1/2,3/2]@rho}");
  const Multisegment mp = parse_multisegment("{[0,0]@rho}");
  const ExtProfile branching = ext_dims(m, mp, ExtMode::Branching);
  CHECK(branching.hom_dim == 1);
  CHECK(branching.ext_vanishing_degree == 1);
  CHECK(branching.determined);
  REQUIRE(branching.evidence.has_value());
  CHECK(branching.evidence->base_reached());

  const Multisegment x = parse_multisegment("{[0,1]@rho}");
  const Multisegment y = parse_multisegment("{[1,2]@rho}");
  const ExtProfile distinct = ext_dims(x, y, ExtMode::EqualRank);
  CHECK(distinct.hom_dim == 0);
  CHECK(distinct.ext_vanishing_degree == 0);
  CHECK(distinct.determined);

  const ExtProfile self = ext_dims(x, x, ExtMode::EqualRank);
  CHECK_FALSE(self.determined);

  CHECK_THROWS_AS(ext_dims(parse_multisegment("{[0,2]@rho}"), mp, ExtMode::Branching),
                  ArgumentError); // gap of 2
  CHECK_THROWS_AS(ext_dims(x, mp, ExtMode::EqualRank), ArgumentError);
}

TEST_CASE("ext_dims is order-insensitive in its inputs") {
  const std::vector<Segment> segs = {parse_segment("[-1/2,1/2]@rho"),
                                     parse_segment("[2,3]@rho")};
  std::vector<Segment> reversed(segs.rbegin(), segs.rend());
  const Multisegment mp = parse_multisegment("{[0,2]@rho}");
  const ExtProfile a = ext_dims(Multisegment::of(segs), mp, ExtMode::Branching);
  const ExtProfile b = ext_dims(Multisegment::of(reversed), mp, ExtMode::Branching);
  CHECK(a.hom_dim == b.hom_dim);
  CHECK(a.evidence->initial_lstar == b.evidence->initial_lstar);
  CHECK(a.evidence->steps.size() == b.evidence->steps.size());
}
