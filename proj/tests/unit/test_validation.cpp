#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "rybsign/error.hpp"
#include "rybsign/validation.hpp"

using namespace rybsign;

TEST_CASE("small batch passes every invariant family") {
  ValidationOptions o;
  o.n = 60;
  const ValidationSummary s = run_validation(o);
  CHECK(s.economies == 60);
  CHECK(s.subregion_counts[0] + s.subregion_counts[1] + s.subregion_counts[2] + s.boundary == 60);
  CHECK(s.not_strong == 0);
  CHECK(s.passed());
  for (const auto& f : s.families) {
    INFO(f.name);
    CHECK(f.checked > 0);
    CHECK(f.ok());
  }
  CHECK(s.strip.total == 60);
  const Report r = validation_report(s);
  CHECK(r.to_json()["status"] == "pass");
}

TEST_CASE("batches are deterministic in the seed") {
  ValidationOptions o;
  o.n = 20;
  o.seed = 9;
  const std::string a = validation_report(run_validation(o)).to_json().dump();
  CHECK(a == validation_report(run_validation(o)).to_json().dump());
  o.seed = 10;
  CHECK(a != validation_report(run_validation(o)).to_json().dump());
}

TEST_CASE("batch without the quadrant IV constraint") {
  ValidationOptions o;
  o.n = 40;
  o.constraints.quadrant_iv = false;
  const ValidationSummary s = run_validation(o);
  CHECK(s.not_strong > 0);
  CHECK(s.passed());
}

TEST_CASE("an empty batch is a usage error") {
  ValidationOptions o;
  o.n = 0;
  CHECK_THROWS_AS(run_validation(o), std::invalid_argument);
}

TEST_CASE("unsatisfiable constraints surface from the sampler") {
  ValidationOptions o;
  o.n = 1;
  o.constraints.form = oracle::CoefficientForm::AllSubstitutes;
  o.constraints.max_rejections = 2000;
  try {
    run_validation(o);
    FAIL("expected SamplerExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SamplerExhausted);
  }
}

TEST_CASE("a failing family fails the batch") {
  ValidationSummary s;
  InvariantFamily ok{"a", 3, 3, 1e-9, 1e-8, false, ""};
  InvariantFamily bad{"b", 3, 2, std::nullopt, std::nullopt, false, ""};
  InvariantFamily info{"c", 3, 1, std::nullopt, std::nullopt, true, ""};
  s.families = {ok, info};
  CHECK(s.passed());
  s.families.push_back(bad);
  CHECK_FALSE(s.passed());
  InvariantFamily loose{"d", 1, 1, 1e-3, 1e-8, false, ""};
  CHECK_FALSE(loose.ok());
}
