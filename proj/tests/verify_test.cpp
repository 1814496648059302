#include "doctest.h"

#include <cstdlib>
#include <set>

#include "lupinch/random.hpp"
#include "lupinch/verify.hpp"

using namespace lupinch;

namespace {

RunConfig small_config() {
  RunConfig cfg;
  cfg.trials = 2000;
  cfg.n_range = {2, 8};
  cfg.m_range = {2, 4};
  return cfg;
}

const CheckResult& find_check(const VerificationSummary& s, const std::string& name) {
  for (const auto& c : s.checks)
    if (c.name == name) return c;
  FAIL("missing check " << name);
  return s.checks.front();
}

}  // namespace

TEST_CASE("mix_seed") {
  CHECK(mix_seed(42, 7) == mix_seed(42, 7));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(mix_seed(42, i));
  CHECK(seen.size() == 10000);
  CHECK(mix_seed(42, 0) != mix_seed(43, 0));
}

TEST_CASE("RunConfig validation") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = RunConfig{};
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = RunConfig{};
  cfg.n_range = {5, 4};
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = RunConfig{};
  cfg.n_range = {1, 4};
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = RunConfig{};
  cfg.m_range = {1, 1};
  CHECK_THROWS_AS(verify_lemma2(cfg), InputError);
}

TEST_CASE("default_tolerance reads the environment") {
  ::unsetenv("LUPINCH_TOL");
  CHECK(default_tolerance() == kDefaultTol);
  ::setenv("LUPINCH_TOL", "1e-8", 1);
  CHECK(default_tolerance() == 1e-8);
  ::setenv("LUPINCH_TOL", "abc", 1);
  CHECK_THROWS_AS(default_tolerance(), InputError);
  ::setenv("LUPINCH_TOL", "-1", 1);
  CHECK_THROWS_AS(default_tolerance(), InputError);
  ::unsetenv("LUPINCH_TOL");
}

TEST_CASE("verify_lemma1 passes and is reproducible") {
  const RunConfig cfg = small_config();
  std::vector<TrialRecord> records;
  const VerificationSummary s = verify_lemma1(cfg, [&](const TrialRecord& t) { records.push_back(t); });
  CHECK(s.passed());
  CHECK(s.trials_run == cfg.trials);
  REQUIRE(records.size() == cfg.trials);
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(records[i].seed == mix_seed(cfg.seed, i));
  CHECK(find_check(s, "lemma1_equality_families").pass);
  CHECK(find_check(s, "lemma1_maximizer_dominance").pass);

  const TrialRecord replay = replay_lemma1_trial(cfg, s.min_slack_seed);
  CHECK(replay.slack == s.min_slack);

  RunConfig threaded = cfg;
  threaded.threads = 3;
  CHECK(to_json(verify_lemma1(threaded)).dump() == to_json(s).dump());
  CHECK(to_json(verify_lemma1(cfg)).dump() == to_json(s).dump());
}

TEST_CASE("verify_lemma1 options") {
  RunConfig cfg = small_config();
  cfg.equality_only = true;
  cfg.k = 1;
  const VerificationSummary s = verify_lemma1(cfg);
  CHECK(s.passed());
  CHECK(s.trials_run == 0);
  REQUIRE(s.checks.size() == 1);
  CHECK(s.checks[0].details["families"] == 7 * 2 * 2);

  cfg.tol = 1e-30;
  cfg.k.reset();
  const VerificationSummary strict = verify_lemma1(cfg);
  CHECK_FALSE(strict.passed());
}

TEST_CASE("verify_lemma2 passes and is reproducible") {
  RunConfig cfg = small_config();
  cfg.include_models = true;
  const VerificationSummary s = verify_lemma2(cfg);
  CHECK(s.passed());
  for (const auto& c : s.checks) CHECK_MESSAGE(c.pass, c.name);
  CHECK(replay_lemma2_trial(cfg, s.min_slack_seed).slack == s.min_slack);

  std::set<std::string> names;
  for (const auto& c : s.checks) names.insert(c.name);
  CHECK(names.size() == s.checks.size());
  CHECK(s.checks.size() >= 4);
}

TEST_CASE("documents") {
  SUBCASE("catalog") {
    const auto doc = catalog_document(clifford_family(2, 5), kDefaultTol);
    CHECK(doc["schema"] == kSchemaVersion);
    CHECK(doc["pinching"]["sigma"].get<double>() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(doc["pinching"]["saturates"] == true);
    CHECK(doc["max_abs_simons_residual"].get<double>() <= 1e-12);
    CHECK(family_from_json(doc["family"])[0] == clifford_family(2, 5).family[0]);
    CHECK_FALSE(catalog_document(geodesic_family(2, 2), kDefaultTol).contains("lemma2_saturation"));
  }
  SUBCASE("spectrum") {
    const auto doc = spectrum_document(veronese_family(), 10.0, kDefaultTol);
    CHECK(doc["mu1"].get<double>() == doctest::Approx(-4.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(doc["gap"].get<double>()) <= 1e-12);
    CHECK(doc["multiplicities"][1] == 5);
  }
  SUBCASE("torus") {
    const int sizes[] = {16, 32};
    const auto doc = torus_document(16, 2, sizes);
    CHECK(std::abs(doc["mu1"].get<double>() + 2.0) <= 1e-12);
    CHECK(doc["convergence"].size() == 2);
  }
  SUBCASE("trial record") {
    const auto doc = to_json(TrialRecord{3, 1, 99, 1.0, 2.0, 1.0, false});
    CHECK(doc["seed"] == 99);
    CHECK(doc["slack"] == 1.0);
  }
}

TEST_CASE("render projections") {
  RunConfig cfg = small_config();
  cfg.equality_only = true;
  const auto doc = to_json(verify_lemma1(cfg));

  CHECK(nlohmann::json::parse(render(doc, OutputFormat::json)) == doc);

  const std::string csv = render(doc, OutputFormat::csv);
  CHECK(csv.rfind("name,pass,details\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + long(doc["checks"].size()));
  CHECK(csv.find("lemma1_equality_families,true,") != std::string::npos);

  const std::string pretty = render(doc, OutputFormat::pretty);
  CHECK(pretty.find("[PASS] lemma1_equality_families") != std::string::npos);

  const std::string kv = render(catalog_document(veronese_family(), kDefaultTol), OutputFormat::csv);
  CHECK(kv.rfind("key,value\n", 0) == 0);
  CHECK(kv.find("pinching.pinching,") != std::string::npos);
}
