#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bellfac/scenario.hpp"

namespace bellfac {

/// Finite partition of [0,1) into half-open cells with rational breakpoints.
/// The state space of the determinizing noise or of one party's noise.
struct NoisePartition {
  std::vector<Rational> breakpoints;  // strictly increasing, 0 first, 1 last

  std::size_t cell_count() const { return breakpoints.empty() ? 0 : breakpoints.size() - 1; }
  Rational cell_weight(std::size_t j) const { return breakpoints[j + 1] - breakpoints[j]; }
};

/// Deterministic response map (lambda, noise cell) -> outcome. The stored
/// value is a joint-tuple rank when the table belongs to a context and an
/// outcome index when it belongs to a single measurement.
struct ResponseTable {
  std::map<std::string, std::vector<std::size_t>> rows;  // lambda-id -> per-cell outcome
};

/// A scenario together with one determinizing noise shared by every lambda
/// point, and per-context deterministic responses whose pushforward of cell
/// weights reproduces the base tables exactly.
struct AugmentedScenario {
  Scenario base;
  NoisePartition noise;
  bool shared_noise = false;  // set by the coupled ximu construction
  std::map<std::string, ResponseTable> responses;  // context-id -> responses
};

/// Maps each cell of a refined partition to the index of the outcome whose
/// cumulative interval contains it. The partition must refine the cumulative
/// breakpoints of the probability vector. Zero-probability outcomes occupy
/// zero-width intervals and are never hit.
std::vector<std::size_t> response_cells(const NoisePartition& noise,
                                        const std::vector<Rational>& probabilities);

/// Builds the determinizing noise by cumulative-breakpoint refinement: per
/// lambda, outcomes are stacked in canonical order along [0,1); the noise
/// partition is the union of every cumulative breakpoint over all lambda
/// points (and contexts), so one partition serves the whole model.
/// With a context id, only that context is determinized and kept in the base.
AugmentedScenario determinize(const Scenario& s,
                              const std::optional<std::string>& context_id = std::nullopt);

/// Sums cell weights per outcome tuple; exact inverse of determinize on
/// tables.
Scenario marginalize(const AugmentedScenario& aug);

/// The induced model over gamma = (lambda, cell) pairs: lambda weights
/// multiply cell weights, and every table entry is 0 or 1.
Scenario induced_scenario(const AugmentedScenario& aug);

/// Factorability of the induced gamma model, checked per context.
bool is_gamma_factorizable(const AugmentedScenario& aug);

}  // namespace bellfac
