// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every comparison is exact rational equality unless a tolerance is
// stated on the line itself.
#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "bellfac/analysis.hpp"
#include "bellfac/cli.hpp"
#include "bellfac/demos.hpp"
#include "bellfac/determinize.hpp"
#include "bellfac/factorize.hpp"
#include "bellfac/io.hpp"
#include "generators.hpp"

using namespace bellfac;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, double time_limit_s,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  auto start = Clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  if (elapsed >= time_limit_s) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time limit");
  }
  std::ostringstream line;
  line << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " ["
       << elapsed << "s < " << time_limit_s << "s]";
  if (!detail.empty()) line << " -- " << detail;
  std::cout << line.str() << "\n";
  if (!ok) ++failures;
}

bool counterexample_reproduction(std::string& detail) {
  std::ostringstream out, err;
  int code = cli::run({"check", "demo:counterexample", "--format", "machine"}, out, err);
  if (code != 1) {
    detail = "expected exit 1, got " + std::to_string(code);
    return false;
  }
  auto j = ordered_json::parse(out.str());
  if (j["ch_factorizable"] != false || j["deterministic"] != false) {
    detail = "wrong verdicts";
    return false;
  }
  const auto& w = j["ch_witness"];
  if (Rational::parse(w["lhs"].get<std::string>()) != Rational(1, 2) ||
      Rational::parse(w["rhs"].get<std::string>()) != Rational(1, 4) ||
      w["lambda"] != "l0" || w["outcome"] != "+1,+1") {
    detail = "wrong witness: " + w.dump();
    return false;
  }
  return true;
}

bool deterministic_implies_factorizable(std::string& detail) {
  gen::Rng rng(20250101);
  for (int i = 0; i < 1000; ++i) {
    Scenario s = gen::random_deterministic_scenario(rng);
    if (!validate(s).ok()) {
      detail = "generator produced an invalid scenario at trial " + std::to_string(i);
      return false;
    }
    if (!is_deterministic(s).first) {
      detail = "generator produced an indeterministic scenario at trial " + std::to_string(i);
      return false;
    }
    if (!is_ch_factorizable(s).first) {
      detail = "deterministic scenario failed factorability at trial " + std::to_string(i);
      return false;
    }
  }
  return true;
}

bool determinize_suite(std::string& detail) {
  gen::Rng rng(20250202);
  for (int i = 0; i < 1000; ++i) {
    Scenario s = gen::random_scenario(rng);
    AugmentedScenario aug = determinize(s);
    if (!is_deterministic(induced_scenario(aug)).first) {
      detail = "induced model not deterministic at trial " + std::to_string(i);
      return false;
    }
    if (!is_gamma_factorizable(aug)) {
      detail = "induced model not gamma-factorizable at trial " + std::to_string(i);
      return false;
    }
    Scenario back = marginalize(aug);
    for (std::size_t c = 0; c < s.contexts.size(); ++c)
      if (back.contexts[c].table != s.contexts[c].table) {
        detail = "marginalization mismatch at trial " + std::to_string(i);
        return false;
      }
  }
  return true;
}

bool factorize_suite(std::string& detail) {
  gen::Rng rng(20250303);
  for (int i = 0; i < 1000; ++i) {
    Scenario product = gen::random_product_scenario(rng, rng.uniform(1, 2));
    auto ok = factorize_independent(product);
    const auto* fm = std::get_if<FactorizedModel>(&ok);
    if (!fm) {
      detail = "product scenario did not factorize at trial " + std::to_string(i);
      return false;
    }
    if (!verify_lemma_iii(*fm)) {
      detail = "verify_lemma_iii false at trial " + std::to_string(i);
      return false;
    }
    for (const auto& ctx : product.contexts)
      for (const auto& p : product.lambda.points)
        if (reconstruct(*fm, ctx.id, p.id) != ctx.table.at(p.id)) {
          detail = "reconstruction mismatch at trial " + std::to_string(i);
          return false;
        }
  }
  gen::Rng rng2(20250304);
  for (int i = 0; i < 1000; ++i) {
    Scenario broken = gen::perturb_non_product(rng2, gen::random_product_scenario(rng2, 1));
    auto bad = factorize_independent(broken);
    const auto* nf = std::get_if<NotFactorizable>(&bad);
    if (!nf) {
      detail = "perturbed scenario factorized at trial " + std::to_string(i);
      return false;
    }
    const auto& w = nf->witness;
    const Context& ctx = broken.context(w.context_id);
    Rational lhs = ctx.table.at(w.lambda_id)[w.outcome_rank];
    auto shape = broken.context_shape(ctx);
    auto tuple = rank_to_tuple(w.outcome_rank, shape);
    Rational rhs(1);
    for (std::size_t k = 0; k < tuple.size(); ++k)
      rhs *= marginal(broken, ctx, ctx.measurement_ids[k], w.lambda_id)[tuple[k]];
    if (lhs != w.lhs || rhs != w.rhs || lhs == rhs) {
      detail = "witness does not re-evaluate at trial " + std::to_string(i);
      return false;
    }
  }
  return true;
}

bool shared_noise_demo(std::string& detail) {
  Scenario ce = build_demo("counterexample");
  AugmentedScenario shared = build_shared_noise(ce);
  if (!shared.shared_noise) {
    detail = "model not flagged shared";
    return false;
  }
  Scenario back = marginalize(shared);
  if (back.contexts[0].table != ce.contexts[0].table) {
    detail = "lambda-level table changed";
    return false;
  }
  auto [fac, w] = is_ch_factorizable(back);
  if (fac || !w || w->lhs == w->rhs) {
    detail = "factorability verdict wrong";
    return false;
  }
  return true;
}

bool bell_bound(std::string& detail) {
  gen::Rng rng(20250505);
  for (int i = 0; i < 500; ++i) {
    Scenario s = gen::random_product_scenario(rng, /*per_party=*/2, /*pm_values=*/true);
    if (!is_ch_factorizable(s).first) {
      detail = "product scenario not factorizable at trial " + std::to_string(i);
      return false;
    }
    // every valid CHSH pattern among the four contexts
    std::array<std::size_t, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end());
    int patterns = 0;
    do {
      std::array<std::string, 4> ids;
      for (std::size_t k = 0; k < 4; ++k) ids[k] = s.contexts[idx[k]].id;
      Rational value;
      try {
        value = chsh(s, ids);
      } catch (const LookupError&) {
        continue;
      }
      ++patterns;
      if (Rational::abs(value) > Rational(2)) {
        detail = "|S| = " + value.str() + " > 2 at trial " + std::to_string(i);
        return false;
      }
    } while (std::next_permutation(idx.begin(), idx.end()));
    if (patterns == 0) {
      detail = "no valid CHSH pattern found at trial " + std::to_string(i);
      return false;
    }
  }
  if (chsh(build_demo("prbox"), {"C11", "C12", "C21", "C22"}) != Rational(4)) {
    detail = "prbox S != 4";
    return false;
  }
  Rational s = chsh(build_demo("singlet-chsh"), {"C11", "C12", "C21", "C22"});
  if (Rational::abs(s - Rational(28284271, 10000000)) > Rational(1, 1000000)) {
    detail = "singlet-chsh S = " + s.str() + " not within 1e-6 of 2.8284271";
    return false;
  }
  return true;
}

bool file_round_trip(std::string& detail) {
  for (const auto& d : demo_list()) {
    std::string text = model_to_text(build_demo(d.name));
    if (model_to_text(model_from_text(text)) != text) {
      detail = "demo " + d.name + " did not round-trip";
      return false;
    }
  }
  gen::Rng rng(20250707);
  for (int i = 0; i < 100; ++i) {
    Scenario s = gen::random_scenario(rng);
    std::string text = model_to_text(s);
    if (model_to_text(model_from_text(text)) != text) {
      detail = "random scenario did not round-trip at trial " + std::to_string(i);
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "counterexample reproduction: witness 1/2 vs 1/4 at l0, (+1,+1)", 1.0,
            counterexample_reproduction);
  criterion(2, "1000 random deterministic scenarios are CH-factorizable", 10.0,
            deterministic_implies_factorizable);
  criterion(3, "1000 random scenarios: determinize is deterministic, gamma-factorizable, "
               "and marginalizes back exactly", 60.0, determinize_suite);
  criterion(4, "1000 product scenarios factorize and reconstruct; 1000 perturbed ones "
               "fail with sound witnesses", 60.0, factorize_suite);
  criterion(5, "shared noise reproduces the counterexample table, still non-factorizable", 1.0,
            shared_noise_demo);
  criterion(6, "Bell bound |S| <= 2 on 500 factorizable scenarios; prbox S = 4; "
               "singlet-chsh within 1e-6 of 2.8284271", 30.0, bell_bound);
  criterion(7, "byte-identical file round trip for all demos and 100 random scenarios", 10.0,
            file_round_trip);
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
