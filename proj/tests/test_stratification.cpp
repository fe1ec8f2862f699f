#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "zelkl/stratification.hpp"

using zelkl::bruhat_leq;
using zelkl::coset_shift;
using zelkl::enumerate_wtilde;
using zelkl::length;
using zelkl::Permutation;
using zelkl::StratumDescriptor;

TEST_CASE("coset shifts") {
  CHECK(coset_shift(2, 0) == Permutation::identity(3));
  CHECK(coset_shift(2, 1).to_string() == "132");
  // x_2 in S_4 is the cycle 2 -> 3 -> 4 -> 2
  CHECK(coset_shift(3, 2).to_string() == "1342");
  CHECK_THROWS_AS(coset_shift(2, 2), zelkl::ArgumentError);
}

TEST_CASE("n=2 strata match the hand enumeration") {
  const auto strata = enumerate_wtilde(2);
  REQUIRE(strata.size() == 4);
  std::set<std::string> elements;
  for (const auto& d : strata) elements.insert(d.element.to_string());
  CHECK(elements == std::set<std::string>{"123", "213", "132", "312"});

  // the identity stratum keeps every descending pair
  const StratumDescriptor& bottom = strata.front();
  CHECK(bottom.element == Permutation::identity(3));
  CHECK(bottom.cell_dim == 0);
  CHECK(bottom.y_pairs ==
        std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}});
}

TEST_CASE("cardinality, lemma and dimension identity, n <= 5") {
  int factorial = 1;
  for (int n = 1; n <= 5; ++n) {
    factorial *= n;
    const auto strata = enumerate_wtilde(n);
    CHECK(static_cast<int>(strata.size()) == n * factorial);
    for (const auto& d : strata) {
      CHECK(d.element(n + 1) != 1);
      CHECK(d.cell_dim == length(d.element));
      CHECK(d.cell_dim + static_cast<int>(d.y_pairs.size()) == n * (n + 1) / 2);
      // element really lies in x_k * S_n
      const Permutation shifted = coset_shift(n, d.coset_index).inverse() * d.element;
      CHECK(shifted(n + 1) == n + 1);
      for (const auto& [a, b] : d.y_pairs) {
        CHECK(a > b);
        CHECK(d.element.inverse()(a) > d.element.inverse()(b));
      }
    }
  }
}

TEST_CASE("order refines Bruhat order on cells") {
  const auto strata = enumerate_wtilde(3);
  for (std::size_t i = 0; i < strata.size(); ++i)
    for (std::size_t j = 0; j < strata.size(); ++j)
      if (bruhat_leq(strata[i].element, strata[j].element)) CHECK(i <= j);
}

TEST_CASE("ceiling") {
  CHECK_THROWS_AS(enumerate_wtilde(8), zelkl::ResourceLimitError);
  CHECK_THROWS_AS(enumerate_wtilde(3, 2), zelkl::ResourceLimitError);
}
