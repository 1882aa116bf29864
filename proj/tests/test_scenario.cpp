#include <doctest.h>

#include "bellfac/demos.hpp"
#include "bellfac/io.hpp"
#include "bellfac/scenario.hpp"
#include "generators.hpp"

using namespace bellfac;

TEST_CASE("every built-in demo validates cleanly") {
  for (const auto& d : demo_list()) {
    CAPTURE(d.name);
    CHECK(validate(build_demo(d.name)).ok());
  }
}

TEST_CASE("unknown demo name lists the available ones") {
  CHECK_THROWS_WITH_AS(build_demo("nope"),
                       doctest::Contains("available: counterexample"), LookupError);
}

TEST_CASE("lambda weights must sum to 1") {
  Scenario s = build_demo("deterministic-pair");
  s.lambda.points[0].weight = Rational(1, 4);  // sum becomes 3/4
  auto report = validate(s);
  REQUIRE_FALSE(report.ok());
  bool found = false;
  for (const auto& issue : report.issues)
    if (issue.message.find("sum to 3/4") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("zero-weight lambda points are rejected") {
  Scenario s = build_demo("deterministic-pair");
  s.lambda.points[0].weight = Rational(0);
  s.lambda.points[1].weight = Rational(1);
  auto report = validate(s);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issues[0].message.find("not positive") != std::string::npos);
}

TEST_CASE("inconsistent cross-context marginals are flagged") {
  // Two contexts share A1; its marginal at l0 is 1/2 in one and 1/3 in the other.
  Scenario s;
  s.name = "inconsistent";
  s.parties = {"A", "B"};
  s.lambda.points = {{"l0", Rational(1)}};
  for (auto [id, party] : {std::pair{"A1", "A"}, {"B1", "B"}, {"B2", "B"}}) {
    Measurement m;
    m.id = id;
    m.party = party;
    m.outcomes = {"+1", "-1"};
    s.measurements.push_back(std::move(m));
  }
  Context c1{"C1", {"A1", "B1"}, {}};
  c1.table["l0"] = {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  Context c2{"C2", {"A1", "B2"}, {}};
  c2.table["l0"] = {Rational(1, 6), Rational(1, 6), Rational(1, 3), Rational(1, 3)};
  s.contexts = {c1, c2};
  auto report = validate(s);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issues[0].message.find("inconsistent marginal") != std::string::npos);
}

TEST_CASE("two measurements from one party in a context are flagged") {
  Scenario s = build_demo("prbox");
  s.contexts[0].measurement_ids = {"A1", "A2"};
  CHECK_FALSE(validate(s).ok());
}

TEST_CASE("negative entries and wrong sums are flagged") {
  Scenario s = build_demo("counterexample");
  s.contexts[0].table["l0"] = {Rational(3, 4), Rational(-1, 4), Rational(0), Rational(1, 2)};
  auto report = validate(s);
  bool neg = false;
  for (const auto& issue : report.issues)
    if (issue.message.find("negative") != std::string::npos) neg = true;
  CHECK(neg);
}

TEST_CASE("marginal sums the joint over the other outcomes") {
  Scenario ce = build_demo("counterexample");
  auto m = marginal(ce, ce.contexts[0], "A", "l0");
  CHECK(m == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  Scenario dp = build_demo("deterministic-pair");
  auto md = marginal(dp, dp.contexts[0], "A", "l0");
  CHECK(md == std::vector<Rational>{Rational(1), Rational(0)});

  Scenario pr = build_demo("prbox");
  for (const auto& ctx : pr.contexts)
    for (const auto& mid : ctx.measurement_ids)
      CHECK(marginal(pr, ctx, mid, "l0") ==
            std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("marginal rejects unknown ids") {
  Scenario ce = build_demo("counterexample");
  CHECK_THROWS_AS(marginal(ce, ce.contexts[0], "Z", "l0"), LookupError);
  CHECK_THROWS_AS(marginal(ce, ce.contexts[0], "A", "l9"), LookupError);
}

TEST_CASE("marginals of random scenarios sum to 1") {
  gen::Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    Scenario s = gen::random_scenario(rng);
    REQUIRE(validate(s).ok());
    for (const auto& ctx : s.contexts) {
      for (const auto& mid : ctx.measurement_ids) {
        for (const auto& p : s.lambda.points) {
          Rational total(0);
          for (const auto& v : marginal(s, ctx, mid, p.id)) total += v;
          CHECK(total == Rational(1));
        }
      }
    }
  }
}

TEST_CASE("scenario files round-trip byte-identically") {
  for (const auto& d : demo_list()) {
    CAPTURE(d.name);
    std::string text = model_to_text(build_demo(d.name));
    Model m = model_from_text(text);
    CHECK(model_to_text(m) == text);
  }
}

TEST_CASE("absent table entries read back as exact zeros") {
  std::string text = model_to_text(build_demo("counterexample"));
  Scenario s = std::get<Scenario>(model_from_text(text));
  const auto& row = s.contexts[0].table.at("l0");
  CHECK(row[1] == Rational(0));
  CHECK(row[2] == Rational(0));
}

TEST_CASE("float probabilities in files are rejected") {
  auto j = scenario_to_json(build_demo("counterexample"));
  j["contexts"][0]["table"]["l0"]["+1,+1"] = 0.5;
  CHECK_THROWS_AS(scenario_from_json(j), FileFormatError);
}
