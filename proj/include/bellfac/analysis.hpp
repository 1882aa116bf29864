#pragma once

#include <array>
#include <optional>
#include <string>

#include "bellfac/scenario.hpp"

namespace bellfac {

/// A table entry strictly between 0 and 1, exhibiting indeterminism.
struct DeterminismWitness {
  std::string context_id;
  std::string lambda_id;
  std::size_t outcome_rank = 0;
  std::string outcome_label;
  Rational p;
};

/// An outcome tuple where the joint differs from the product of marginals.
struct FactorabilityWitness {
  std::string context_id;
  std::string lambda_id;
  std::size_t outcome_rank = 0;
  std::string outcome_label;
  Rational lhs;  // joint probability
  Rational rhs;  // product of single-measurement marginals
};

struct AnalysisReport {
  std::optional<bool> deterministic;
  std::optional<DeterminismWitness> determinism_witness;
  std::optional<bool> ch_factorizable;
  std::optional<FactorabilityWitness> ch_witness;
};

/// Determinism check: every conditional table entry is exactly 0 or 1.
/// Precondition: valid scenario. On failure returns the first witness in
/// canonical enumeration order (context, lambda, tuple rank).
std::pair<bool, std::optional<DeterminismWitness>> is_deterministic(const Scenario& s);

/// Factorability check: for every context, lambda, and outcome tuple, the
/// joint equals the product of the per-measurement marginals exactly.
/// Contexts with more than two parties are checked as the full product.
std::pair<bool, std::optional<FactorabilityWitness>> is_ch_factorizable(const Scenario& s);

AnalysisReport analyze(const Scenario& s, bool determinism = true, bool factorability = true);

/// Exact expectation value sum_lambda rho(lambda) sum_t v(t) P(t|lambda),
/// where v is the product of the outcome values along the tuple.
/// Requires outcome values on every measurement of the context.
Rational correlation(const Scenario& s, const std::string& context_id);

/// Exact S = E(c11) + E(c12) + E(c21) - E(c22). The four contexts must share
/// measurements in the standard pattern (a1,b1), (a1,b2), (a2,b1), (a2,b2).
Rational chsh(const Scenario& s, const std::array<std::string, 4>& context_ids);

}  // namespace bellfac
