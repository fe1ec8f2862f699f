#pragma once

#include <utility>
#include <vector>

#include "zelkl/config.hpp"
#include "zelkl/errors.hpp"
#include "zelkl/permutation.hpp"

namespace zelkl {

// One Schubert-cell stratum of the mirabolic orbit decomposition: an element
// of W~ = S_n ⊔ x_1 S_n ⊔ ... ⊔ x_{n-1} S_n inside S_{n+1}, together with the
// cell dimension and the non-inverted descending pairs that index the formal
// power-series variables on the transverse slice.
struct StratumDescriptor {
  Permutation element;    // in S_{n+1}, element(n+1) != 1
  int coset_index = 0;    // k with element in x_k * S_n
  int cell_dim = 0;       // = length(element)
  std::vector<std::pair<int, int>> y_pairs; // (a,b): a>b and w^{-1}(a) > w^{-1}(b)
};

// x_k in S_{n+1}: the cycle n+1-k -> n+2-k -> ... -> n+1 -> n+1-k; x_0 = id.
inline Permutation coset_shift(int n, int k) {
  if (n < 1 || k < 0 || k > n - 1) throw ArgumentError("coset_shift: bad (n, k)");
  std::vector<int> images(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n + 1; ++i) {
    int v;
    if (i < n + 1 - k) v = i;
    else if (i == n + 1) v = n + 1 - k;
    else v = i + 1;
    images[static_cast<std::size_t>(i - 1)] = v;
  }
  return Permutation(std::move(images));
}

inline std::vector<std::pair<int, int>> descending_pairs_preserved(const Permutation& w) {
  std::vector<std::pair<int, int>> out;
  const Permutation winv = w.inverse();
  const int m = w.rank();
  for (int a = 2; a <= m; ++a)
    for (int b = 1; b < a; ++b)
      if (winv(a) > winv(b)) out.emplace_back(a, b);
  return out;
}

// All n * n! strata, sorted by (length, lex) of the underlying element of
// S_{n+1}, which refines the Bruhat closure order on the cells.
inline std::vector<StratumDescriptor> enumerate_wtilde(int n,
                                                       int ceiling = Limits::wtilde_ceiling) {
  if (n < 1) throw ArgumentError("enumerate_wtilde: rank must be positive");
  if (n > ceiling)
    throw ResourceLimitError("enumerate_wtilde: rank " + std::to_string(n) +
                             " above ceiling " + std::to_string(ceiling));
  std::vector<StratumDescriptor> out;
  const std::vector<Permutation> sn = enumerate_sn(n, n);
  for (int k = 0; k <= n - 1; ++k) {
    const Permutation xk = coset_shift(n, k);
    for (const Permutation& w : sn) {
      // embed w in S_{n+1} fixing n+1, then shift into the coset
      std::vector<int> images = w.images();
      images.push_back(n + 1);
      Permutation element = xk * Permutation(std::move(images));
      const int dim = length(element);
      auto pairs = descending_pairs_preserved(element);
      out.push_back(StratumDescriptor{std::move(element), k, dim, std::move(pairs)});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const StratumDescriptor& a, const StratumDescriptor& b) {
                     if (a.cell_dim != b.cell_dim) return a.cell_dim < b.cell_dim;
                     return a.element < b.element;
                   });
  return out;
}

} // namespace zelkl
