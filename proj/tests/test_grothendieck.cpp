#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zelkl/filtration.hpp"
#include "zelkl/grothendieck.hpp"

using namespace zelkl;

TEST_CASE("grothendieck vector basics") {
  const Multisegment m1 = parse_multisegment("{[0,1]@rho}");
  const Multisegment m2 = parse_multisegment("{[1,2]@rho}");
  GrothendieckVector v = GrothendieckVector::basis(m1);
  v.add(m2, -1);
  CHECK(v.coefficient(m1) == 1);
  CHECK(v.coefficient(m2) == -1);
  CHECK(v.coefficient_sum() == 0);
  v.add(m2, 1); // cancels to zero and is dropped
  CHECK(v.terms().size() == 1);
  CHECK((v - v).is_zero());
  CHECK_THROWS_AS(v.add(parse_multisegment("{[0,2]@rho}"), 1), ArgumentError);
}

TEST_CASE("regular block construction and members") {
  const RegularBlock block(2, {1, 0}, {3, 2});
  const Multisegment me = block.member(Permutation::parse("12"));
  CHECK(me == parse_multisegment("{[1,3]@triv, [0,2]@triv}"));
  CHECK_FALSE(is_generic(me));
  const Multisegment mw0 = block.member(Permutation::parse("21"));
  CHECK(mw0 == parse_multisegment("{[1,2]@triv, [0,3]@triv}"));
  CHECK(is_generic(mw0));
  CHECK_THROWS_AS(RegularBlock(2, {1, 0}, {2, 2}), ValidationError);
  CHECK_THROWS_AS(RegularBlock(2, {4, 0}, {5, 4}), ValidationError); // b_n = a_1
  CHECK_THROWS_AS(RegularBlock(2, {0, 1}, {3, 2}), ValidationError);
}

TEST_CASE("decompose_irreducible at n=2") {
  const RegularBlock block = RegularBlock::standard(2);
  const KLTable table = KLTable::build(2);
  const Permutation e = Permutation::identity(2);
  const Permutation w0 = Permutation::parse("21");

  const GrothendieckVector gen = decompose_irreducible(block, w0, table);
  CHECK(gen.terms().size() == 1);
  CHECK(gen.coefficient(block.member(w0)) == 1);

  const GrothendieckVector ng = decompose_irreducible(block, e, table);
  CHECK(ng.coefficient(block.member(e)) == 1);
  CHECK(ng.coefficient(block.member(w0)) == -1);
  CHECK(ng.coefficient_sum() == 0);
}

TEST_CASE("decompose has unit self-coefficient and the right support, n <= 4") {
  for (int n = 2; n <= 4; ++n) {
    const RegularBlock block = RegularBlock::standard(n);
    const KLTable table = KLTable::build(n);
    const Permutation w0 = longest_element(n);
    const auto& g = table.group();
    for (const Permutation& w : g.elements()) {
      const GrothendieckVector v = decompose_irreducible(block, w, table);
      CHECK(v.coefficient(block.member(w)) == 1);
      CHECK(v.coefficient_sum() == (w == w0 ? 1 : 0));
      // coefficient support respects the twisted Bruhat constraint
      for (const Permutation& wp : g.elements())
        if (!g.leq(*g.find(w0 * wp), *g.find(w0 * w)))
          CHECK(v.coefficient(block.member(wp)) == 0);
    }
  }
}

TEST_CASE("verify_kl_identity") {
  for (int n = 2; n <= 4; ++n) {
    const auto report = verify_kl_identity(KLTable::build(n));
    CHECK(report.pass());
    CHECK(report.checked == KLTable::build(n).group().size());
    int nontrivial = 0;
    for (const auto& rec : report.records) {
      CHECK(rec.pass());
      if (rec.expected == 1) ++nontrivial;
    }
    CHECK(nontrivial == 1); // only w0
  }
}

TEST_CASE("whittaker_dim equals genericity indicator on blocks") {
  for (int n = 2; n <= 4; ++n) {
    const RegularBlock block = RegularBlock::standard(n);
    const KLTable table = KLTable::build(n);
    const Permutation w0 = longest_element(n);
    for (const Permutation& w : table.group().elements()) {
      const long long dim = whittaker_dim(decompose_irreducible(block, w, table));
      CHECK((dim == 0 || dim == 1));
      CHECK((dim == 1) == is_generic(block.member(w)));
      CHECK((dim == 1) == (w == w0));
    }
  }
}

TEST_CASE("ep_pairing") {
  const GrothendieckVector std1 = GrothendieckVector::basis(parse_multisegment("{[0,2]@rho}"));
  const GrothendieckVector std2 = GrothendieckVector::basis(parse_multisegment("{[0,1]@rho}"));
  CHECK(ep_pairing(std1, std2) == 1);

  GrothendieckVector diff = GrothendieckVector::basis(parse_multisegment("{[0,2]@rho}"));
  diff.add(parse_multisegment("{[1,3]@rho}"), -1);
  CHECK(ep_pairing(diff, std2) == 0);

  // rank discipline: lengths must be N+1 and N unless the formal flag is set
  CHECK_THROWS_AS(ep_pairing(std2, std1), ArgumentError);
  CHECK(ep_pairing(std2, std1, false) == 1);

  // the Cor-4.2-style formal pairing of a non-generic class
  const RegularBlock block = RegularBlock::standard(2);
  const KLTable table = KLTable::build(2);
  const GrothendieckVector ng =
      decompose_irreducible(block, Permutation::identity(2), table);
  CHECK(ep_pairing(ng, GrothendieckVector::basis(parse_multisegment("{[0,2]@rho}")), false) == 0);
  // bilinearity in the zero vector
  CHECK(ep_pairing(GrothendieckVector(), std2) == 0);
}

TEST_CASE("bz_layers on a single segment, right side") {
  const Multisegment outer = parse_multisegment("{[0,1]@rho}");
  const Multisegment inner = parse_multisegment("{[5,5]@rho}");
  const auto layers = bz_layers(outer, inner, Side::Right);
  REQUIRE(layers.size() == 3);

  CHECK(layers[0].k == 0);
  CHECK(layers[0].model.to_string() == "Restriction");
  REQUIRE(layers[0].derived_terms.size() == 1);
  CHECK(layers[0].derived_terms[0] == parse_multisegment("{[1/2,3/2]@rho}"));

  CHECK(layers[1].model.to_string() == "FourierJacobi");
  CHECK(layers[1].derived_terms[0] == parse_multisegment("{[3/2,3/2]@rho}"));

  CHECK(layers[2].model.to_string() == "RankinSelberg(0)");
  REQUIRE(layers[2].derived_terms.size() == 1);
  CHECK(layers[2].derived_terms[0].empty());
  CHECK(layers[2].inner == inner);
}

TEST_CASE("bz_layers degenerate and left cases") {
  const auto empty_layers = bz_layers(Multisegment(), parse_multisegment("{[0,0]@rho}"), Side::Right);
  REQUIRE(empty_layers.size() == 1);
  CHECK(empty_layers[0].k == 0);
  CHECK(empty_layers[0].derived_terms.size() == 1);
  CHECK(empty_layers[0].derived_terms[0].empty());

  const Multisegment outer = parse_multisegment("{[0,1]@rho}");
  const auto left = bz_layers(outer, Multisegment(), Side::Left);
  REQUIRE(left.size() == 3);
  CHECK(left[0].derived_terms[0] == parse_multisegment("{[-1/2,1/2]@rho}"));
  CHECK(left[1].derived_terms[0] == parse_multisegment("{[-1/2,-1/2]@rho}"));
  CHECK(left[1].model.to_string() == "FourierJacobiDual");
  CHECK(left[2].model.to_string() == "RankinSelbergBar(0)");
}

TEST_CASE("bz_layers multisegment Leibniz expansion") {
  const Multisegment outer = parse_multisegment("{[0,1]@rho, [0,0]@ra}");
  const auto layers = bz_layers(outer, Multisegment(), Side::Right);
  REQUIRE(layers.size() == 4); // n(outer) = 3
  CHECK(layers[0].derived_terms.size() == 1);
  CHECK(layers[1].derived_terms.size() == 2); // truncate either factor once
  CHECK(layers[2].derived_terms.size() == 2);
  CHECK(layers[3].derived_terms.size() == 1);
  int total = 0;
  for (const auto& layer : layers) total += static_cast<int>(layer.derived_terms.size());
  CHECK(total == 6); // 3 x 2 truncation tuples
}

TEST_CASE("layer labels dualize across sides at the same index") {
  const Multisegment outer = parse_multisegment("{[0,2]@rho, [1,1]@rho}");
  const auto right = bz_layers(outer, Multisegment(), Side::Right);
  const auto left = bz_layers(dual_multisegment(outer), Multisegment(), Side::Left);
  REQUIRE(right.size() == left.size());
  for (std::size_t k = 0; k < right.size(); ++k) {
    auto rterms = right[k].derived_terms;
    std::vector<Multisegment> dualized;
    dualized.reserve(left[k].derived_terms.size());
    for (const auto& t : left[k].derived_terms) dualized.push_back(dual_multisegment(t));
    std::sort(rterms.begin(), rterms.end());
    std::sort(dualized.begin(), dualized.end());
    CHECK(rterms == dualized);
  }
}

TEST_CASE("layer_vanishing support criterion") {
  const Multisegment outer = parse_multisegment("{[0,1]@rho}");
  const Multisegment target = parse_multisegment("{[4,4]@rho}"); // dual support {-4}
  const auto layers = bz_layers(outer, target, Side::Right);
  const CuspidalPoint point{LineRegistry::global().intern("rho"), Rational(3, 2)};

  const auto k0 = layer_vanishing(layers[0], target, point);
  CHECK(k0.vanishes);
  REQUIRE(k0.witness.has_value());
  CHECK(*k0.witness == point);
  CHECK(layer_vanishing(layers[1], target, point).vanishes);
  // full derivative drops the line: criterion inapplicable
  CHECK_FALSE(layer_vanishing(layers[2], target, point).vanishes);

  // point present on both sides: inapplicable
  const Multisegment hit_target = parse_multisegment("{[-3/2,-3/2]@rho}"); // dual {3/2}
  CHECK_FALSE(layer_vanishing(layers[0], hit_target, point).vanishes);
}
