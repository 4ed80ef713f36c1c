#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/fairness.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/mechanisms.hpp"

namespace fairdiv {

/// One ranking per agent: Round-Robin's outcome-equivalent strategy space.
struct RankingProfile {
  std::vector<Ranking> rankings;
  int agents() const { return static_cast<int>(rankings.size()); }
};

/// Enumeration limits. Exceeding one raises BudgetError instead of running
/// an open-ended search.
struct Budgets {
  int best_response_max_goods = 8;         // m! candidate rankings
  long long enumerate_max_profiles = 20000;  // (m!)^n ranking profiles
  int mcc_max_goods = 12;                  // 2^m ordered partitions
  MmsBudget mms;
};

struct BestResponse {
  Ranking ranking;
  Rational value;
  long long enumerated = 0;
};

/// Brute-force best response of `agent` over all m! rankings against fixed
/// opponent rankings (the agent's own entry in `profile` is ignored).
/// Ties go to the lexicographically smallest ranking.
BestResponse rr_best_response(const Instance& inst, int agent,
                              const RankingProfile& profile,
                              const Budgets& budgets = {});

struct DeviationWitness {
  int agent = -1;
  std::optional<Ranking> ranking;  // a Round-Robin deviation
  std::optional<BidVector> bid;    // a Mod-Cut&Choose deviation
  Rational value_before;
  Rational value_after;
};

/// A profile together with exhaustive-deviation evidence for or against it
/// being a pure Nash equilibrium. A witness, when present, re-checks by
/// re-simulating the mechanism with the deviating strategy.
struct EquilibriumCertificate {
  std::string mechanism;  // "round-robin" | "mod-cut-and-choose"
  bool is_pne = false;
  long long deviations_checked = 0;
  std::optional<DeviationWitness> witness;
  Allocation allocation;
  std::optional<RankingProfile> rankings;  // round-robin profiles
  std::optional<BidProfile> bids;          // mod-cut&choose profiles
};

/// PNE test over the ranking reduction: no agent may have a ranking
/// deviation strictly increasing her true value.
EquilibriumCertificate rr_is_pne(const Instance& inst,
                                 const RankingProfile& profile,
                                 const Budgets& budgets = {});

/// All PNE over the (m!)^n ranking-profile space, in profile order.
std::vector<EquilibriumCertificate> rr_enumerate_pne(const Instance& inst,
                                                     const Budgets& budgets = {});

/// The bid with which agent 1 forces the cut phase to produce {X1, X2}
/// (as an unordered pair). (X1, X2) must partition the m goods.
BidVector mcc_canonical_bid(const GoodSet& x1, const GoodSet& x2, int m);

/// Canonical bid realizing a maximin witness partition of agent 1,
/// together with mu_1.
std::pair<BidVector, Rational> mcc_mu1_bid(const Instance& inst,
                                           const Budgets& budgets = {});

/// PNE test for Mod-Cut&Choose. Agent-1 deviations run over every ordered
/// partition realized through mcc_canonical_bid; agent-2 deviations are the
/// reachable bundle choices on the fixed cut.
EquilibriumCertificate mcc_verify_pne(const Instance& inst, const BidVector& b1,
                                      const BidVector& b2,
                                      const Budgets& budgets = {});

struct MccPneConstruction {
  BidVector b1, b2;
  EquilibriumCertificate certificate;
};

/// Constructive PNE: agent 2 bids truthfully; agent 1 forces the partition
/// maximizing her value of the bundle agent 2's choice leaves her (ties to
/// the lexicographically smallest partition). The certificate verifies.
MccPneConstruction mcc_construct_pne(const Instance& inst,
                                     const Budgets& budgets = {});

}  // namespace fairdiv
