#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "zelkl/cli.hpp"

using nlohmann::json;
using zelkl::cli::CommandResult;
using zelkl::cli::run;

namespace {
json parse_payload(const CommandResult& r) { return json::parse(r.payload); }
} // namespace

TEST_CASE("kl command") {
  const CommandResult r = run({"kl", "--n", "4", "--x", "1324", "--w", "3412"});
  CHECK(r.exit_code == 0);
  const json p = parse_payload(r);
  CHECK(p["polynomial"]["text"] == "1+q");
  CHECK(p["polynomial"]["coefficients"] == json::array({"1", "1"}));
  CHECK(p["bruhat_leq"] == true);
  CHECK(p["value_at_one"] == "2");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"kl", "--n", "4", "--x", "1324"}).exit_code == 2); // missing --w
  CHECK(run({"unknown-command"}).exit_code == 2);
  CHECK(run({"kl", "--n", "4", "--x", "nonsense", "--w", "3412"}).exit_code == 2);
  CHECK(run({}).exit_code == 2);
  CHECK(run({"ext", "--m", "{[0,1]@r}", "--m-prime", "{[0,0]@r}", "--mode", "bogus"})
            .exit_code == 2);
}

TEST_CASE("resource limits exit 3") {
  CHECK(run({"kl-table", "--n", "9"}).exit_code == 3);
  CHECK(run({"strata", "--n", "9"}).exit_code == 3);
}

TEST_CASE("verify-identity") {
  const CommandResult r = run({"verify-identity", "--n", "4"});
  CHECK(r.exit_code == 0);
  const json p = parse_payload(r);
  CHECK(p["pass"] == true);
  CHECK(p["checked"] == 24);
  int zero_sums = 0;
  for (const auto& rec : p["records"])
    if (rec["expected"] == 0 && rec["sum"] == 0) ++zero_sums;
  CHECK(zero_sums == 23);
}

TEST_CASE("strata") {
  const CommandResult r = run({"strata", "--n", "3"});
  CHECK(r.exit_code == 0);
  const json p = parse_payload(r);
  CHECK(p["count"] == 18);
  CHECK(p["lemma_pass"] == true);
  CHECK(p["pass"] == true);

  const json full = parse_payload(run({"strata", "--n", "2", "--full"}));
  CHECK(full["descriptors"].size() == 4);
}

TEST_CASE("derive") {
  const json p = parse_payload(
      run({"derive", "--segment", "[0,2]@rho", "--side", "right", "--i", "1"}));
  CHECK(p["result"] == "[1,2]@rho");
  const json full = parse_payload(
      run({"derive", "--segment", "[0,2]@rho", "--side", "right", "--i", "3"}));
  CHECK(full["empty"] == true);
  CHECK(full["result"].is_null());
  const json shifted = parse_payload(run(
      {"derive", "--segment", "[0,2]@rho", "--side", "right", "--i", "1", "--shifted"}));
  CHECK(shifted["result"] == "[3/2,5/2]@rho");
}

TEST_CASE("layers") {
  const json p = parse_payload(
      run({"layers", "--outer", "{[0,1]@rho}", "--inner", "{[5,5]@rho}"}));
  CHECK(p["count"] == 3);
  CHECK(p["layers"][0]["model"] == "Restriction");
  CHECK(p["layers"][1]["model"] == "FourierJacobi");
  CHECK(p["layers"][2]["model"] == "RankinSelberg(0)");
  CHECK(p["layers"][0]["derived"][0] == "{[1/2,3/2]@rho}");
}

TEST_CASE("trace and determinism") {
  const std::vector<std::string> args = {"trace", "--m", "{[1/2,3/2]@rho}", "--m-prime",
                                         "{[0,0]@rho}"};
  const CommandResult first = run(args);
  CHECK(first.exit_code == 0);
  const json p = parse_payload(first);
  CHECK(p["initial_lstar"] == 1);
  CHECK(p["base_reached"] == true);
  CHECK(p["steps"].size() == 3);
  CHECK(p["steps"][0]["kind"] == "Case1Removal");
  CHECK(p["steps"][0]["rho_star"] == "nu^2@rho");
}

TEST_CASE("ext branching and equal rank") {
  const json b = parse_payload(
      run({"ext", "--m", "{[1/2,3/2]@rho}", "--m-prime", "{[0,0]@rho}"}));
  CHECK(b["hom_dim"] == 1);
  CHECK(b["ext_vanishing_degree"] == 1);
  CHECK(b["determined"] == true);
  CHECK(b["trace"]["base_reached"] == true);

  const json eq = parse_payload(run({"ext", "--m", "{[0,1]@rho}", "--m-prime",
                                     "{[1,2]@rho}", "--mode", "equal-rank"}));
  CHECK(eq["hom_dim"] == 0);
  const json self = parse_payload(run({"ext", "--m", "{[0,1]@rho}", "--m-prime",
                                       "{[0,1]@rho}", "--mode", "equal-rank"}));
  CHECK(self["determined"] == false);
  CHECK(self["hom_dim"].is_null());
}

TEST_CASE("ep with the term grammar") {
  const json one = parse_payload(
      run({"ep", "--v1", "1:{[0,2]@rho}", "--v2", "1:{[0,1]@rho}"}));
  CHECK(one["value"] == 1);
  const json zero = parse_payload(run(
      {"ep", "--v1", "1:{[0,2]@rho};-1:{[1,3]@rho}", "--v2", "1:{[0,1]@rho}"}));
  CHECK(zero["value"] == 0);
  // rank discipline
  CHECK(run({"ep", "--v1", "1:{[0,1]@rho}", "--v2", "1:{[0,2]@rho}"}).exit_code == 2);
  const json formal = parse_payload(run(
      {"ep", "--v1", "1:{[0,1]@rho}", "--v2", "1:{[0,2]@rho}", "--formal"}));
  CHECK(formal["value"] == 1);
}

TEST_CASE("line declarations") {
  const json p = parse_payload(run({"derive", "--line", "deg2line=2", "--segment",
                                    "[0,1]@deg2line", "--side", "left", "--i", "2"}));
  CHECK(p["empty"] == true);
  const CommandResult dual = run({"trace", "--dual", "da~da^", "--m",
                                  "{[1/2,1/2]@da, [0,0]@pad2}", "--m-prime",
                                  "{[0,0]@da^}"});
  CHECK(dual.exit_code == 0);
  CHECK(parse_payload(dual)["initial_lstar"] == 1);
}

TEST_CASE("random-traces determinism and pass") {
  const std::vector<std::string> args = {"random-traces", "--count", "50", "--seed", "7"};
  const CommandResult a = run(args);
  CHECK(a.exit_code == 0);
  const json p = parse_payload(a);
  CHECK(p["pass"] == true);
  CHECK(p["failures"] == 0);
  CHECK(p["count"] == 50);
  CHECK(p["swap_steps"].get<int>() > 0);
}

TEST_CASE("kl-table with cache round-trip") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "zelkl_cli_cache_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  setenv("ZELKL_CACHE_DIR", dir.c_str(), 1);

  const json built = parse_payload(run({"kl-table", "--n", "3", "--verify"}));
  CHECK(built["loaded_from_cache"] == false);
  CHECK(built["identity_pass"] == true);
  CHECK(std::filesystem::exists(dir / "kl_n3.cache"));

  const json reloaded = parse_payload(run({"kl-table", "--n", "3", "--verify"}));
  CHECK(reloaded["loaded_from_cache"] == true);
  CHECK(reloaded["identity_pass"] == true);
  CHECK(reloaded["nonzero"] == built["nonzero"]);

  unsetenv("ZELKL_CACHE_DIR");
  std::filesystem::remove_all(dir);
}

TEST_CASE("pretty flag only changes whitespace") {
  const CommandResult compact = run({"kl", "--n", "3", "--x", "123", "--w", "321"});
  const CommandResult pretty = run({"--pretty", "kl", "--n", "3", "--x", "123", "--w", "321"});
  CHECK(compact.exit_code == 0);
  CHECK(pretty.exit_code == 0);
  CHECK(parse_payload(compact) == parse_payload(pretty));
  CHECK(compact.payload != pretty.payload);
}

TEST_CASE("help is available") {
  const CommandResult top = run({"--help"});
  CHECK(top.exit_code == 0);
  CHECK(top.payload.find("kl-table") != std::string::npos);
}
