#pragma once

#include <utility>
#include <vector>

#include "fairdiv/instance.hpp"

namespace fairdiv {

/// One pick of the Round-Robin mechanism: in round `round` (1-based),
/// `agent` takes `good` out of the goods still `available` at that moment.
struct PickStep {
  int round;
  int agent;
  int good;
  GoodSet available;
};

struct PickTrace {
  std::vector<PickStep> steps;  // exactly one step per good
};

struct RoundRobinResult {
  Allocation allocation;
  PickTrace trace;
};

/// Round-Robin draft over ceil(m/n) rounds. In each round the agents act in
/// `order` (identity when empty); the active agent takes the available good
/// maximizing her bid, ties to the lowest good index. Agents make no pick
/// once every good is gone.
RoundRobinResult round_robin(const BidProfile& profile,
                             const std::vector<int>& order = {});

/// One insertion of the cut phase, for checking the balance invariant.
struct CutStep {
  int good;
  int side;  // 1 or 2
  Rational sum1_before, sum2_before;
};

/// Splits the goods into two bundles greedily: goods in decreasing order of
/// b1 (ties by index), each joining the currently b1-lighter bundle, ties in
/// favor of the first bundle.
std::pair<GoodSet, GoodSet> cut_phase(const BidVector& b1,
                                      std::vector<CutStep>* steps = nullptr);

struct CutResult {
  GoodSet e1, e2;
  int chosen;  // 1 or 2: the bundle taken by agent 2
};

struct MccResult {
  Allocation allocation;  // bundles[0] for agent 1, bundles[1] for agent 2
  CutResult cut;
};

/// Cut-and-choose for two agents: agent 1's bid cuts, agent 2 receives her
/// b2-maximal bundle (ties in favor of the first), agent 1 keeps the rest.
MccResult mod_cut_and_choose(const BidVector& b1, const BidVector& b2);

}  // namespace fairdiv
