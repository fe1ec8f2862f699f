#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "zelkl/branching.hpp"
#include "zelkl/filtration.hpp"
#include "zelkl/grothendieck.hpp"
#include "zelkl/json_report.hpp"
#include "zelkl/klpoly.hpp"
#include "zelkl/random_instances.hpp"
#include "zelkl/stratification.hpp"

namespace zelkl::cli {

// Exit codes: 0 all requested checks passed, 1 verification failure,
// 2 usage error, 3 resource limit exceeded.
struct CommandResult {
  int exit_code = 0;
  std::string payload;
};

namespace detail {

using nlohmann::json;

inline Side parse_side(const std::string& text) {
  if (text == "left") return Side::Left;
  if (text == "right") return Side::Right;
  throw ArgumentError("side must be 'left' or 'right'");
}

inline std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw ParseError("empty entry in integer list '" + text + "'");
    const Rational value = Rational::parse(tok);
    if (!value.is_integer())
      throw ParseError("expected an integer in '" + text + "'");
    out.push_back(value.numerator());
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

// `coeff:{...};coeff:{...}` terms of a virtual class
inline GrothendieckVector parse_vector(const std::string& text) {
  GrothendieckVector out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    const std::string term = text.substr(start, end - start);
    const std::size_t colon = term.find(':');
    if (colon == std::string::npos)
      throw ParseError("vector term '" + term + "' needs the form coeff:{...}");
    const Rational coeff = Rational::parse(term.substr(0, colon));
    if (!coeff.is_integer()) throw ParseError("vector coefficients must be integers");
    out.add(parse_multisegment(term.substr(colon + 1)), coeff.numerator());
    start = end + 1;
  }
  return out;
}

// --line name=degree and --dual name~dual[=degree] declarations
inline void declare_lines(const std::vector<std::string>& lines,
                          const std::vector<std::string>& duals) {
  auto& reg = LineRegistry::global();
  for (const std::string& decl : lines) {
    const std::size_t eq = decl.find('=');
    const std::string name = decl.substr(0, eq);
    const int degree =
        eq == std::string::npos
            ? 1
            : static_cast<int>(Rational::parse(decl.substr(eq + 1)).numerator());
    reg.intern(name, degree);
  }
  for (const std::string& decl : duals) {
    const std::size_t tilde = decl.find('~');
    if (tilde == std::string::npos)
      throw ParseError("dual declaration '" + decl + "' needs the form name~dual[=degree]");
    const std::string name = decl.substr(0, tilde);
    std::string rest = decl.substr(tilde + 1);
    int degree = 1;
    if (const std::size_t eq = rest.find('='); eq != std::string::npos) {
      degree = static_cast<int>(Rational::parse(rest.substr(eq + 1)).numerator());
      rest = rest.substr(0, eq);
    }
    reg.intern_dual_pair(name, rest, degree);
  }
}

inline std::filesystem::path cache_path(int n) {
  const char* dir = std::getenv("ZELKL_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return {};
  return std::filesystem::path(dir) / ("kl_n" + std::to_string(n) + ".cache");
}

// Load the table from the cache when present (validating every record),
// otherwise build it and persist when a cache dir is configured.
inline KLTable obtain_table(int n, int ceiling, json& info) {
  const std::filesystem::path path = cache_path(n);
  info["cache_path"] = path.empty() ? json(nullptr) : json(path.string());
  if (!path.empty() && std::filesystem::exists(path)) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open cache file " + path.string());
    KLTable table = KLTable::load(in, n, ceiling);
    info["loaded_from_cache"] = true;
    return table;
  }
  KLTable table = KLTable::build(n, ceiling);
  info["loaded_from_cache"] = false;
  if (!path.empty()) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write cache file " + path.string());
    table.save(out);
  }
  return table;
}

} // namespace detail

inline CommandResult run(const std::vector<std::string>& argv) {
  using detail::json;

  CLI::App app{"zelkl: exact segment/KL combinatorics engine"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent the JSON payload");

  json payload;
  bool verification_failed = false;

  // kl ----------------------------------------------------------------
  auto* kl_cmd = app.add_subcommand("kl", "one Kazhdan-Lusztig polynomial P_{x,w}");
  struct {
    int n = 0;
    std::string x, w;
    int ceiling = Limits::kl_table_ceiling;
  } kl_args;
  kl_cmd->add_option("--n", kl_args.n, "rank of the symmetric group")->required();
  kl_cmd->add_option("--x", kl_args.x, "lower permutation, one-line")->required();
  kl_cmd->add_option("--w", kl_args.w, "upper permutation, one-line")->required();
  kl_cmd->add_option("--ceiling", kl_args.ceiling, "rank ceiling override");
  kl_cmd->callback([&] {
    const Permutation x = Permutation::parse(kl_args.x);
    const Permutation w = Permutation::parse(kl_args.w);
    if (x.rank() != kl_args.n || w.rank() != kl_args.n)
      throw ArgumentError("permutations must have rank n");
    const IntPolynomial p = kl_polynomial(x, w, kl_args.ceiling);
    payload = {{"command", "kl"},
               {"n", kl_args.n},
               {"x", x.to_string()},
               {"w", w.to_string()},
               {"bruhat_leq", bruhat_leq(x, w)},
               {"polynomial", polynomial_report(p)},
               {"value_at_one", p.evaluate_at_one().to_string()}};
  });

  // kl-table ----------------------------------------------------------
  auto* table_cmd = app.add_subcommand("kl-table", "build or reload the full P table");
  struct {
    int n = 0;
    int ceiling = Limits::kl_table_ceiling;
    bool verify = false;
  } table_args;
  table_cmd->add_option("--n", table_args.n, "rank")->required();
  table_cmd->add_option("--ceiling", table_args.ceiling, "rank ceiling override");
  table_cmd->add_flag("--verify", table_args.verify,
                      "check the inversion identity over every pair");
  table_cmd->callback([&] {
    payload = {{"command", "kl-table"}, {"n", table_args.n}};
    const KLTable table = detail::obtain_table(table_args.n, table_args.ceiling, payload);
    payload["pairs"] = table.group().size() * table.group().size();
    payload["nonzero"] = table.stored_entries();
    payload["complete"] = table.complete();
    if (table_args.verify) {
      const auto report = verify_inversion_identity(table);
      payload["identity_checked"] = report.pairs_checked;
      payload["identity_pass"] = report.pass();
      if (!report.pass()) verification_failed = true;
    }
  });

  // verify-identity -----------------------------------------------------
  auto* verify_cmd =
      app.add_subcommand("verify-identity", "alternating sums of P_{w0 w', w0 w}(1)");
  struct {
    int n = 0;
    int ceiling = Limits::kl_table_ceiling;
  } verify_args;
  verify_cmd->add_option("--n", verify_args.n, "rank")->required();
  verify_cmd->add_option("--ceiling", verify_args.ceiling, "rank ceiling override");
  verify_cmd->callback([&] {
    json info;
    const KLTable table = detail::obtain_table(verify_args.n, verify_args.ceiling, info);
    const KlIdentityReport report = verify_kl_identity(table);
    payload = kl_identity_report(report);
    payload["command"] = "verify-identity";
    payload["cache"] = std::move(info);
    if (!report.pass()) verification_failed = true;
  });

  // decompose -----------------------------------------------------------
  auto* dec_cmd =
      app.add_subcommand("decompose", "irreducible in the standard basis of a regular block");
  struct {
    int n = 0;
    std::string w, a, b;
  } dec_args;
  dec_cmd->add_option("--n", dec_args.n, "rank")->required();
  dec_cmd->add_option("--w", dec_args.w, "block member, one-line")->required();
  dec_cmd->add_option("--a", dec_args.a, "left endpoints a_1,...,a_n (default n,...,1)");
  dec_cmd->add_option("--b", dec_args.b, "right endpoints b_1,...,b_n (default 2n,...,n+1)");
  dec_cmd->callback([&] {
    if (dec_args.a.empty() != dec_args.b.empty())
      throw ArgumentError("give both --a and --b or neither");
    const RegularBlock block =
        dec_args.a.empty() ? RegularBlock::standard(dec_args.n)
                           : RegularBlock(dec_args.n, detail::parse_int_list(dec_args.a),
                                          detail::parse_int_list(dec_args.b));
    const Permutation w = Permutation::parse(dec_args.w);
    const KLTable table = KLTable::build(dec_args.n);
    const GrothendieckVector v = decompose_irreducible(block, w, table);
    const Multisegment mw = block.member(w);
    payload = {{"command", "decompose"},
               {"n", dec_args.n},
               {"w", w.to_string()},
               {"member", mw.to_string()},
               {"generic", is_generic(mw)},
               {"vector", vector_report(v)},
               {"whittaker_dim", whittaker_dim(v)}};
  });

  // ep --------------------------------------------------------------------
  auto* ep_cmd = app.add_subcommand("ep", "Euler-Poincare pairing of two virtual classes");
  struct {
    std::string v1, v2;
    bool formal = false;
    std::vector<std::string> lines, duals;
  } ep_args;
  ep_cmd->add_option("--v1", ep_args.v1, "first class, coeff:{...};coeff:{...}")->required();
  ep_cmd->add_option("--v2", ep_args.v2, "second class")->required();
  ep_cmd->add_flag("--formal", ep_args.formal, "skip the N+1/N support-length check");
  ep_cmd->add_option("--line", ep_args.lines, "declare line name=degree");
  ep_cmd->add_option("--dual", ep_args.duals, "declare dual pair name~dual[=degree]");
  ep_cmd->callback([&] {
    detail::declare_lines(ep_args.lines, ep_args.duals);
    const GrothendieckVector v1 = detail::parse_vector(ep_args.v1);
    const GrothendieckVector v2 = detail::parse_vector(ep_args.v2);
    payload = {{"command", "ep"},
               {"value", ep_pairing(v1, v2, !ep_args.formal)},
               {"whittaker_dim_v1", whittaker_dim(v1)},
               {"whittaker_dim_v2", whittaker_dim(v2)}};
  });

  // strata ------------------------------------------------------------------
  auto* strata_cmd = app.add_subcommand("strata", "the W~ stratification report");
  struct {
    int n = 0;
    int ceiling = Limits::wtilde_ceiling;
    bool full = false;
  } strata_args;
  strata_cmd->add_option("--n", strata_args.n, "rank")->required();
  strata_cmd->add_option("--ceiling", strata_args.ceiling, "rank ceiling override");
  strata_cmd->add_flag("--full", strata_args.full, "list every descriptor");
  strata_cmd->callback([&] {
    const auto strata = enumerate_wtilde(strata_args.n, strata_args.ceiling);
    long long expected = strata_args.n;
    for (int i = 2; i <= strata_args.n; ++i) expected *= i;
    bool lemma = true, dims = true;
    for (const auto& d : strata) {
      lemma = lemma && d.element(strata_args.n + 1) != 1;
      dims = dims && d.cell_dim + static_cast<int>(d.y_pairs.size()) ==
                         strata_args.n * (strata_args.n + 1) / 2;
    }
    const bool pass = lemma && dims && static_cast<long long>(strata.size()) == expected;
    payload = {{"command", "strata"},
               {"n", strata_args.n},
               {"count", strata.size()},
               {"expected", expected},
               {"lemma_pass", lemma},
               {"dimension_identity_pass", dims},
               {"pass", pass}};
    if (strata_args.full) {
      json list = json::array();
      for (const auto& d : strata) list.push_back(stratum_report(d, true));
      payload["descriptors"] = std::move(list);
    }
    if (!pass) verification_failed = true;
  });

  // derive -------------------------------------------------------------------
  auto* derive_cmd = app.add_subcommand("derive", "truncation label of one segment");
  struct {
    std::string segment, side = "right";
    int i = 0;
    bool shifted = false;
    std::vector<std::string> lines, duals;
  } derive_args;
  derive_cmd->add_option("--segment", derive_args.segment, "[a,b]@line")->required();
  derive_cmd->add_option("--side", derive_args.side, "left or right");
  derive_cmd->add_option("--i", derive_args.i, "truncation count")->required();
  derive_cmd->add_flag("--shifted", derive_args.shifted, "apply the nu^{+-1/2} twist");
  derive_cmd->add_option("--line", derive_args.lines, "declare line name=degree");
  derive_cmd->add_option("--dual", derive_args.duals, "declare dual pair name~dual[=degree]");
  derive_cmd->callback([&] {
    detail::declare_lines(derive_args.lines, derive_args.duals);
    const Segment s = parse_segment(derive_args.segment);
    const Side side = detail::parse_side(derive_args.side);
    const auto label = derivative_segment(s, side, derive_args.i, derive_args.shifted);
    payload = {{"command", "derive"},
               {"segment", s.to_string()},
               {"side", derive_args.side},
               {"i", derive_args.i},
               {"shifted", derive_args.shifted},
               {"empty", !label.has_value()},
               {"result", label ? json(label->to_string()) : json(nullptr)}};
  });

  // layers -----------------------------------------------------------------
  auto* layers_cmd = app.add_subcommand("layers", "restriction filtration layers");
  struct {
    std::string outer, inner = "{}", side = "right";
    std::vector<std::string> lines, duals;
  } layers_args;
  layers_cmd->add_option("--outer", layers_args.outer, "derived multisegment")->required();
  layers_cmd->add_option("--inner", layers_args.inner, "model-tagged multisegment");
  layers_cmd->add_option("--side", layers_args.side, "left or right");
  layers_cmd->add_option("--line", layers_args.lines, "declare line name=degree");
  layers_cmd->add_option("--dual", layers_args.duals, "declare dual pair name~dual[=degree]");
  layers_cmd->callback([&] {
    detail::declare_lines(layers_args.lines, layers_args.duals);
    const Multisegment outer = parse_multisegment(layers_args.outer);
    const Multisegment inner = parse_multisegment(layers_args.inner);
    const auto layers = bz_layers(outer, inner, detail::parse_side(layers_args.side));
    json list = json::array();
    for (const auto& layer : layers) list.push_back(layer_report(layer));
    payload = {{"command", "layers"},
               {"outer", outer.to_string()},
               {"inner", inner.to_string()},
               {"side", layers_args.side},
               {"count", layers.size()},
               {"layers", std::move(list)}};
  });

  // trace ---------------------------------------------------------------------
  auto* trace_cmd = app.add_subcommand("trace", "mechanized induction run");
  struct {
    std::string m, m_prime;
    std::vector<std::string> lines, duals;
  } trace_args;
  trace_cmd->add_option("--m", trace_args.m, "multisegment of the larger side")->required();
  trace_cmd->add_option("--m-prime", trace_args.m_prime, "multisegment of the smaller side")
      ->required();
  trace_cmd->add_option("--line", trace_args.lines, "declare line name=degree");
  trace_cmd->add_option("--dual", trace_args.duals, "declare dual pair name~dual[=degree]");
  trace_cmd->callback([&] {
    detail::declare_lines(trace_args.lines, trace_args.duals);
    const ProofTrace trace = proof_trace(parse_multisegment(trace_args.m),
                                         parse_multisegment(trace_args.m_prime));
    payload = trace_report(trace);
    payload["command"] = "trace";
    if (trace.induction_failure) verification_failed = true;
  });

  // ext -----------------------------------------------------------------------
  auto* ext_cmd = app.add_subcommand("ext", "Hom/Ext profile of a standard pair");
  struct {
    std::string m, m_prime, mode = "branching";
    std::vector<std::string> lines, duals;
  } ext_args;
  ext_cmd->add_option("--m", ext_args.m, "first multisegment")->required();
  ext_cmd->add_option("--m-prime", ext_args.m_prime, "second multisegment")->required();
  ext_cmd->add_option("--mode", ext_args.mode, "branching or equal-rank");
  ext_cmd->add_option("--line", ext_args.lines, "declare line name=degree");
  ext_cmd->add_option("--dual", ext_args.duals, "declare dual pair name~dual[=degree]");
  ext_cmd->callback([&] {
    detail::declare_lines(ext_args.lines, ext_args.duals);
    ExtMode mode;
    if (ext_args.mode == "branching") mode = ExtMode::Branching;
    else if (ext_args.mode == "equal-rank" || ext_args.mode == "equal_rank")
      mode = ExtMode::EqualRank;
    else throw ArgumentError("mode must be 'branching' or 'equal-rank'");
    const ExtProfile profile =
        ext_dims(parse_multisegment(ext_args.m), parse_multisegment(ext_args.m_prime), mode);
    payload = ext_profile_report(profile);
    payload["command"] = "ext";
  });

  // random-traces ----------------------------------------------------------------
  auto* random_cmd = app.add_subcommand("random-traces", "seeded randomized trace suite");
  struct {
    int count = 100;
    std::uint64_t seed = 1;
  } random_args;
  random_cmd->add_option("--count", random_args.count, "number of instances");
  random_cmd->add_option("--seed", random_args.seed, "generator seed");
  random_cmd->callback([&] {
    if (random_args.count < 0) throw ArgumentError("count must be non-negative");
    InstanceGenerator gen(random_args.seed);
    int failures = 0, max_rounds = 0, swaps = 0;
    long long total_rounds = 0;
    json failed = json::array();
    for (int i = 0; i < random_args.count; ++i) {
      const auto inst = gen.next();
      const ProofTrace trace = proof_trace(inst.m, inst.m_prime);
      const TraceValidation check = validate_trace(trace);
      total_rounds += trace.rounds;
      max_rounds = std::max(max_rounds, trace.rounds);
      for (const TraceStep& s : trace.steps)
        if (s.kind == StepKind::SwapDual) ++swaps;
      if (!check.pass()) {
        ++failures;
        json problems = json::array();
        for (const auto& p : check.problems) problems.push_back(p);
        failed.push_back({{"index", i},
                          {"m", inst.m.to_string()},
                          {"m_prime", inst.m_prime.to_string()},
                          {"problems", std::move(problems)}});
      }
    }
    payload = {{"command", "random-traces"},
               {"count", random_args.count},
               {"seed", random_args.seed},
               {"failures", failures},
               {"failed_instances", std::move(failed)},
               {"max_rounds", max_rounds},
               {"total_rounds", total_rounds},
               {"swap_steps", swaps},
               {"pass", failures == 0}};
    if (failures != 0) verification_failed = true;
  });

  // dispatch ---------------------------------------------------------------
  try {
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
      sub->fallthrough();
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    for (const CLI::App* sub : app.get_subcommands())
      return {0, sub->help()};
    return {0, app.help()};
  } catch (const CLI::ParseError& e) {
    const json err = {{"error", {{"type", "usage"}, {"message", e.what()}}}};
    return {2, err.dump()};
  } catch (const ResourceLimitError& e) {
    const json err = {{"error", {{"type", "resource-limit"}, {"message", e.what()}}}};
    return {3, err.dump()};
  } catch (const InductionFailureError& e) {
    const json err = {{"error", {{"type", "induction-failure"}, {"message", e.what()}}}};
    return {1, err.dump()};
  } catch (const Error& e) {
    const json err = {{"error", {{"type", "argument"}, {"message", e.what()}}}};
    return {2, err.dump()};
  }

  return {verification_failed ? 1 : 0, pretty ? payload.dump(2) : payload.dump()};
}

} // namespace zelkl::cli
