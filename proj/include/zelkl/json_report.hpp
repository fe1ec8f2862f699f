#pragma once

#include <json.hpp>

#include "zelkl/branching.hpp"
#include "zelkl/filtration.hpp"
#include "zelkl/grothendieck.hpp"
#include "zelkl/klpoly.hpp"
#include "zelkl/stratification.hpp"

// Stable machine-readable schemas for every report the engine emits. Object
// keys serialize sorted, so a payload is byte-identical across runs with the
// same inputs.
namespace zelkl {

inline nlohmann::json polynomial_report(const IntPolynomial& p) {
  nlohmann::json coeff = nlohmann::json::array();
  for (const BigInt& c : p.coefficients()) coeff.push_back(c.to_string());
  return {{"text", p.to_string()}, {"coefficients", coeff}, {"degree", p.degree()}};
}

inline nlohmann::json kl_identity_report(const KlIdentityReport& report) {
  nlohmann::json records = nlohmann::json::array();
  for (const KlIdentityRecord& rec : report.records)
    records.push_back({{"w", rec.w.to_string()},
                       {"length", rec.length},
                       {"sum", rec.sum},
                       {"expected", rec.expected},
                       {"pass", rec.pass()}});
  nlohmann::json failures = nlohmann::json::array();
  for (const Permutation& w : report.failures) failures.push_back(w.to_string());
  return {{"n", report.rank},
          {"checked", report.checked},
          {"records", std::move(records)},
          {"failures", std::move(failures)},
          {"pass", report.pass()}};
}

inline nlohmann::json stratum_report(const StratumDescriptor& d, bool with_pairs) {
  nlohmann::json out = {{"element", d.element.to_string()},
                        {"coset", d.coset_index},
                        {"cell_dim", d.cell_dim},
                        {"y_pair_count", d.y_pairs.size()}};
  if (with_pairs) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [a, b] : d.y_pairs) pairs.push_back({a, b});
    out["y_pairs"] = std::move(pairs);
  }
  return out;
}

inline nlohmann::json vector_report(const GrothendieckVector& v) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : v.terms())
    terms.push_back({{"multisegment", m.to_string()}, {"coefficient", c}});
  return {{"terms", std::move(terms)}, {"coefficient_sum", v.coefficient_sum()}};
}

inline nlohmann::json layer_report(const FiltrationLayer& layer) {
  nlohmann::json derived = nlohmann::json::array();
  for (const Multisegment& term : layer.derived_terms) derived.push_back(term.to_string());
  return {{"k", layer.k},
          {"side", to_string(layer.side)},
          {"model", layer.model.to_string()},
          {"derived", std::move(derived)},
          {"inner", layer.inner.to_string()}};
}

inline nlohmann::json step_report(const TraceStep& step) {
  nlohmann::json out = {{"kind", to_string(step.kind)},
                        {"lstar_before", step.lstar_before},
                        {"lstar_after", step.lstar_after},
                        {"detail", step.detail}};
  out["rho_star"] = step.rho_star ? nlohmann::json(step.rho_star->to_string())
                                  : nlohmann::json(nullptr);
  out["anchor"] =
      step.anchor ? nlohmann::json(step.anchor->to_string()) : nlohmann::json(nullptr);
  out["side"] = step.removal_side ? nlohmann::json(to_string(*step.removal_side))
                                  : nlohmann::json(nullptr);
  out["sigma"] = step.sigma
                     ? nlohmann::json(LineRegistry::global().name(*step.sigma))
                     : nlohmann::json(nullptr);
  out["sigma_degree"] = step.sigma_degree;
  return out;
}

inline nlohmann::json trace_report(const ProofTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const TraceStep& step : trace.steps) steps.push_back(step_report(step));
  return {{"m", trace.initial_m.to_string()},
          {"m_prime", trace.initial_m_prime.to_string()},
          {"initial_lstar", trace.initial_lstar},
          {"rounds", trace.rounds},
          {"steps", std::move(steps)},
          {"base_reached", trace.base_reached()},
          {"induction_failure", trace.induction_failure},
          {"failure_detail", trace.failure_detail}};
}

inline nlohmann::json ext_profile_report(const ExtProfile& profile) {
  nlohmann::json out = {{"mode", to_string(profile.mode)},
                        {"determined", profile.determined}};
  if (profile.determined) {
    out["hom_dim"] = profile.hom_dim;
    out["ext_vanishing_degree"] = profile.ext_vanishing_degree;
  } else {
    out["hom_dim"] = nullptr;
    out["ext_vanishing_degree"] = nullptr;
    out["note"] = "not determined: equal-rank pair with isomorphic labels";
  }
  out["trace"] = profile.evidence ? trace_report(*profile.evidence) : nlohmann::json(nullptr);
  return out;
}

} // namespace zelkl
