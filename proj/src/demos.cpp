#include "bellfac/demos.hpp"

#include <map>

namespace bellfac {

namespace {

Measurement pm(std::string id, std::string party) {
  Measurement m;
  m.id = std::move(id);
  m.party = std::move(party);
  m.outcomes = {"+1", "-1"};
  m.values = std::vector<Rational>{Rational(1), Rational(-1)};
  return m;
}

// Dense 2x2 joint in canonical order (+1,+1), (+1,-1), (-1,+1), (-1,-1).
std::vector<Rational> joint22(Rational pp, Rational pm_, Rational mp, Rational mm) {
  return {std::move(pp), std::move(pm_), std::move(mp), std::move(mm)};
}

// Correlated +/- table with expectation e: P(=) = (1+e)/4 each, P(!=) = (1-e)/4 each.
std::vector<Rational> joint_with_expectation(const Rational& e) {
  Rational q = (Rational(1) + e) / Rational(4);
  Rational r = (Rational(1) - e) / Rational(4);
  return joint22(q, r, r, q);
}

Scenario two_party_base(std::string name) {
  Scenario s;
  s.name = std::move(name);
  s.parties = {"A", "B"};
  s.lambda.points = {{"l0", Rational(1)}};
  s.measurements = {pm("A", "A"), pm("B", "B")};
  return s;
}

Scenario counterexample() {
  // One lambda point; either both outcomes +1 or both -1, with equal
  // probability. The joint 1/2 differs from the marginal product 1/4.
  Scenario s = two_party_base("counterexample");
  Context ctx;
  ctx.id = "AB";
  ctx.measurement_ids = {"A", "B"};
  ctx.table["l0"] = joint22({1, 2}, 0, 0, {1, 2});
  s.contexts = {std::move(ctx)};
  return s;
}

Scenario deterministic_pair() {
  Scenario s = two_party_base("deterministic-pair");
  s.lambda.points = {{"l0", Rational(1, 2)}, {"l1", Rational(1, 2)}};
  Context ctx;
  ctx.id = "AB";
  ctx.measurement_ids = {"A", "B"};
  ctx.table["l0"] = joint22(1, 0, 0, 0);
  ctx.table["l1"] = joint22(0, 0, 0, 1);
  s.contexts = {std::move(ctx)};
  return s;
}

Scenario product_noise() {
  // Joint built as the product of uniform marginals at every lambda.
  Scenario s = two_party_base("product-noise");
  s.lambda.points = {{"l0", Rational(1, 3)}, {"l1", Rational(2, 3)}};
  Context ctx;
  ctx.id = "AB";
  ctx.measurement_ids = {"A", "B"};
  ctx.table["l0"] = joint22({1, 4}, {1, 4}, {1, 4}, {1, 4});
  ctx.table["l1"] = joint22({1, 4}, {1, 4}, {1, 4}, {1, 4});
  s.contexts = {std::move(ctx)};
  return s;
}

Scenario four_setting_base(std::string name) {
  Scenario s;
  s.name = std::move(name);
  s.parties = {"A", "B"};
  s.lambda.points = {{"l0", Rational(1)}};
  s.measurements = {pm("A1", "A"), pm("A2", "A"), pm("B1", "B"), pm("B2", "B")};
  return s;
}

void add_context(Scenario& s, std::string id, std::string ma, std::string mb,
                 std::vector<Rational> row) {
  Context ctx;
  ctx.id = std::move(id);
  ctx.measurement_ids = {std::move(ma), std::move(mb)};
  for (const auto& p : s.lambda.points) ctx.table[p.id] = row;
  s.contexts.push_back(std::move(ctx));
}

Scenario prbox() {
  // Perfect correlation in three settings, perfect anticorrelation in the
  // fourth; all marginals 1/2. CHSH value S = 4.
  Scenario s = four_setting_base("prbox");
  auto corr = joint22({1, 2}, 0, 0, {1, 2});
  auto anti = joint22(0, {1, 2}, {1, 2}, 0);
  add_context(s, "C11", "A1", "B1", corr);
  add_context(s, "C12", "A1", "B2", corr);
  add_context(s, "C21", "A2", "B1", corr);
  add_context(s, "C22", "A2", "B2", anti);
  return s;
}

Scenario singlet_chsh() {
  // Rational stand-in for the optimal quantum correlations: each setting
  // pair has expectation +/- r with r = 70710678/10^8, a decimal
  // approximation of 1/sqrt(2). S = 4r is within 1e-6 of 2*sqrt(2).
  Scenario s = four_setting_base("singlet-chsh");
  Rational r(70710678, 100000000);
  add_context(s, "C11", "A1", "B1", joint_with_expectation(r));
  add_context(s, "C12", "A1", "B2", joint_with_expectation(r));
  add_context(s, "C21", "A2", "B1", joint_with_expectation(r));
  add_context(s, "C22", "A2", "B2", joint_with_expectation(-r));
  return s;
}

Scenario shared_noise() {
  // Joint generated by one common noise read by both parties: cells of
  // weight 1/4, 1/4, 1/2 mapped to (+1,+1), (+1,-1), (-1,-1). The common
  // noise couples the parties, and the joint is not a marginal product.
  Scenario s = two_party_base("shared-noise");
  Context ctx;
  ctx.id = "AB";
  ctx.measurement_ids = {"A", "B"};
  ctx.table["l0"] = joint22({1, 4}, {1, 4}, 0, {1, 2});
  s.contexts = {std::move(ctx)};
  return s;
}

}  // namespace

const std::vector<DemoInfo>& demo_list() {
  static const std::vector<DemoInfo> demos = {
      {"counterexample",
       "indeterministic single-lambda model where the joint 1/2 differs from the marginal "
       "product 1/4"},
      {"deterministic-pair", "two lambda points with 0/1 tables; deterministic, hence factorizable"},
      {"product-noise", "joint built as a product of uniform marginals; factorizable at lambda"},
      {"prbox", "PR-box correlations, marginals 1/2 everywhere, CHSH value S = 4"},
      {"singlet-chsh",
       "rational approximation of the maximal quantum CHSH correlations, S close to 2*sqrt(2)"},
      {"shared-noise",
       "joint generated by a common noise read by both parties; coupling breaks factorability"},
  };
  return demos;
}

Scenario build_demo(const std::string& name) {
  if (name == "counterexample") return counterexample();
  if (name == "deterministic-pair") return deterministic_pair();
  if (name == "product-noise") return product_noise();
  if (name == "prbox") return prbox();
  if (name == "singlet-chsh") return singlet_chsh();
  if (name == "shared-noise") return shared_noise();
  std::string available;
  for (const auto& d : demo_list()) available += (available.empty() ? "" : ", ") + d.name;
  throw LookupError("unknown demo '" + name + "'; available: " + available);
}

}  // namespace bellfac
