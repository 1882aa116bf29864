#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bellfac/analysis.hpp"
#include "bellfac/determinize.hpp"
#include "bellfac/scenario.hpp"

namespace bellfac {

/// A scenario realized by per-party noises, mutually independent and
/// independent of lambda, with deterministic per-measurement responses.
/// The joint density over (lambda, noises) is the product of the marginals
/// by construction; no coupled density exists anywhere in this type.
struct FactorizedModel {
  Scenario base;
  std::map<std::string, NoisePartition> xi;        // party -> noise
  std::map<std::string, ResponseTable> responses;  // measurement-id -> responses
};

struct NotFactorizable {
  FactorabilityWitness witness;
};

/// Decides lambda-factorizability and constructs the per-party noises when
/// it holds. Factorability of the joint into marginal products is necessary,
/// so a product violation is returned as the witness; otherwise each party's
/// noise is built by cumulative-breakpoint refinement over that party's
/// measurement marginals and the reconstruction is verified exactly.
std::variant<FactorizedModel, NotFactorizable> factorize_independent(const Scenario& s);

/// Rebuilds one per-lambda joint table from the factorized model by the
/// exact finite sum over noise-cell combinations, weighted by the product of
/// cell weights. Returned dense, in canonical tuple order; sums to 1.
std::vector<Rational> reconstruct(const FactorizedModel& fm, const std::string& context_id,
                                  const std::string& lambda_id);

/// Checks that the reconstructed tables satisfy the marginal-product
/// identity for every context, lambda, and outcome tuple.
bool verify_lemma_iii(const FactorizedModel& fm);

/// The coupled special case: both parties read the same determinizing noise.
/// Identical to determinize's output but flagged shared; marginalizing
/// recovers the input tables, so non-factorizable inputs stay
/// non-factorizable at lambda.
AugmentedScenario build_shared_noise(const Scenario& s);

}  // namespace bellfac
