#pragma once

#include <optional>
#include <vector>

#include "fairdiv/instance.hpp"
#include "fairdiv/strategy.hpp"

namespace fairdiv {

/// Tie-breaking perturbation: a strict valuation v' consistent with v, with
/// v(T) <= v'(T) <= v(T) + eps/3 for every bundle T (+ 2*eps/3 when the
/// single-zero-good fix applies). Best responses under v stay best responses
/// under v'.
struct PerturbationResult {
  std::vector<Rational> v_prime;
  Rational epsilon;           // smallest positive pairwise value gap, 1 if none
  GoodSet modified_goods;     // goods without a unique value
  std::optional<int> zero_fixed_good;
};

/// The perturbation is parameterized by the bundle `agent` receives under
/// Round-Robin(profile).
PerturbationResult perturb_to_strict(const Instance& inst, int agent,
                                     const BidProfile& profile);

/// Demote the element at position x to sit right after position y (0-based,
/// x < y), preserving all other relative order.
Ranking partial_slide(const Ranking& r, int x, int y);

/// The m+1 available-good sets of a Round-Robin run, from all goods down to
/// the empty set.
struct HistoryTrace {
  std::vector<GoodSet> sets;
};

HistoryTrace history_trace(const BidProfile& profile);

/// Output of the truthful-equivalent construction: a valuation v1* whose
/// truthful bid reproduces the allocation of the given profile, values the
/// first agent's bundle exactly as v1 does, and agrees with v1 off it.
struct VStarResult {
  std::vector<Rational> v1_star;
  BidVector b1_star;
  Allocation allocation;
  int rounds = 0;
};

/// Runs the round-by-round rewrite (last round first). Requires a strict v1
/// and a first-agent bid that verifies as a best response. Every internal
/// invariant is asserted; a violation raises ConstructionError with the
/// offending round rather than returning a wrong answer.
VStarResult construct_truthful_equivalent(const Instance& inst,
                                          const BidProfile& profile,
                                          const Budgets& budgets = {});

}  // namespace fairdiv
