#include <doctest.h>

#include "cohq/suite.hpp"

using namespace cohq;

TEST_CASE("config parsing and diagnostics") {
  CHECK_THROWS_AS(parse_suite_config(Json::array()), ConfigError);
  CHECK_THROWS_AS(parse_suite_config(Json{{"suite", "x"}}), ConfigError);
  CHECK_THROWS_AS(parse_suite_config(Json{{"checks", Json::array({Json{{"check", "warp"}}})}}),
                  ConfigError);
  const SuiteConfig config = parse_suite_config(
      Json{{"seed", 7}, {"checks", Json::array({Json{{"check", "heisenberg"}}})}});
  CHECK(config.seed == 7);
  REQUIRE(config.checks.size() == 1);
  CHECK(config.checks[0].name == "heisenberg#0");
}

TEST_CASE("an empty check list yields an empty passing report") {
  const Report report = run_suite(parse_suite_config(Json{{"checks", Json::array()}}));
  CHECK(report.all_passed());
  CHECK(report.checks.empty());
  CHECK(report.n_passed == 0);
}

TEST_CASE("reports are deterministic given the seed") {
  const SuiteConfig config = parse_suite_config(builtin_suite("moebius-gamma"));
  const Report a = run_suite(config);
  const Report b = run_suite(config);
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());
  // timing fields are the only permitted difference
  CHECK(report_to_json(a, true).contains("checks"));
}

TEST_CASE("every configured check appears exactly once, in order") {
  const SuiteConfig config = parse_suite_config(builtin_suite("regression"));
  const Report report = run_suite(config);
  REQUIRE(report.checks.size() == config.checks.size());
  for (std::size_t k = 0; k < config.checks.size(); ++k)
    CHECK(report.checks[k].name == config.checks[k].name);
}

TEST_CASE("the failing-adjoint suite reports a failure") {
  const Report report = run_suite(parse_suite_config(builtin_suite("failing-adjoint")));
  CHECK_FALSE(report.all_passed());
  CHECK(report.n_failed == 1);
}

TEST_CASE("builtin names are validated") {
  CHECK_THROWS_AS(builtin_suite("warp"), ConfigError);
  CHECK_FALSE(known_checks().empty());
}
