#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zelkl/errors.hpp"
#include "zelkl/segment.hpp"

namespace zelkl {

// Symbolic tag for the model applied to the inner factor of a restriction
// filtration layer. Rankin-Selberg and Fourier-Jacobi stay purely symbolic;
// only their support bookkeeping matters here.
enum class LayerModel {
  Restriction,
  FourierJacobi,
  FourierJacobiDual,
  RankinSelberg,
  RankinSelbergBar,
};

struct ModelTag {
  LayerModel model = LayerModel::Restriction;
  int rs_index = -1; // meaningful for the Rankin-Selberg tags only

  [[nodiscard]] std::string to_string() const {
    switch (model) {
      case LayerModel::Restriction: return "Restriction";
      case LayerModel::FourierJacobi: return "FourierJacobi";
      case LayerModel::FourierJacobiDual: return "FourierJacobiDual";
      case LayerModel::RankinSelberg: return "RankinSelberg(" + std::to_string(rs_index) + ")";
      case LayerModel::RankinSelbergBar:
        return "RankinSelbergBar(" + std::to_string(rs_index) + ")";
    }
    return "?";
  }

  friend bool operator==(const ModelTag&, const ModelTag&) = default;
};

inline ModelTag model_for_layer(Side side, int k) {
  if (k == 0) return {LayerModel::Restriction, -1};
  if (k == 1)
    return {side == Side::Right ? LayerModel::FourierJacobi : LayerModel::FourierJacobiDual, -1};
  return {side == Side::Right ? LayerModel::RankinSelberg : LayerModel::RankinSelbergBar, k - 2};
}

// One successive quotient of the left/right restriction filtration of
// lambda(outer) x lambda(inner): the k-th shifted derivative of the outer
// label (a Grothendieck-level formal sum over per-segment truncations)
// against the model-tagged inner label.
struct FiltrationLayer {
  Side side = Side::Right;
  int k = 0;
  std::vector<Multisegment> derived_terms; // formal sum, multiplicity by repetition
  Multisegment inner;
  ModelTag model;
};

// Layers k = 0..n(outer). The right filtration derives the outer label with
// nu^{1/2}-shifted right derivatives; the left one mirrors with nu^{-1/2}
// shifts and the barred/dual tags. Per-segment truncation tuples expand by
// the Leibniz rule; a rank k no tuple reaches (possible on degree > 1 lines)
// yields an empty formal sum.
inline std::vector<FiltrationLayer> bz_layers(const Multisegment& outer,
                                              const Multisegment& inner, Side side) {
  const auto& segs = outer.segments();
  const std::size_t r = segs.size();
  const int total = outer.absolute_length();

  std::vector<FiltrationLayer> layers;
  layers.reserve(static_cast<std::size_t>(total) + 1);
  for (int k = 0; k <= total; ++k)
    layers.push_back(FiltrationLayer{side, k, {}, inner, model_for_layer(side, k)});

  const Rational shift = side == Side::Right ? Rational(1, 2) : Rational(-1, 2);
  std::vector<int> trunc(r, 0);
  while (true) {
    int rank = 0;
    std::vector<Segment> term;
    term.reserve(r);
    for (std::size_t j = 0; j < r; ++j) {
      rank += trunc[j] * LineRegistry::global().degree(segs[j].line());
      if (auto label = derivative_segment(segs[j], side, trunc[j], false))
        term.push_back(label->twisted(shift));
    }
    layers[static_cast<std::size_t>(rank)].derived_terms.push_back(
        Multisegment::of(std::move(term)));
    // next truncation tuple, odometer order
    std::size_t j = 0;
    for (; j < r; ++j) {
      if (trunc[j] < segs[j].relative_length()) {
        ++trunc[j];
        break;
      }
      trunc[j] = 0;
    }
    if (j == r) break;
  }
  return layers;
}

struct VanishingResult {
  bool vanishes = false;
  std::optional<CuspidalPoint> witness;
};

// Support-comparison vanishing test of the Case-1 kind: the layer pairs to
// zero against lambda(target)^vee when the chosen point sits in the support
// of every term of the derived factor but not in csupp(dual(target)).
inline VanishingResult layer_vanishing(const FiltrationLayer& layer,
                                       const Multisegment& target,
                                       const CuspidalPoint& point) {
  const auto dual_support = csupp(dual_multisegment(target));
  if (csupp_contains(dual_support, point)) return {false, std::nullopt};
  for (const Multisegment& term : layer.derived_terms)
    if (!csupp_contains(csupp(term), point)) return {false, std::nullopt};
  return {true, point};
}

} // namespace zelkl
