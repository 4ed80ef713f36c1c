#include "fairdiv/mechanisms.hpp"

#include <algorithm>
#include <numeric>

#include "fairdiv/errors.hpp"

namespace fairdiv {

RoundRobinResult round_robin(const BidProfile& profile,
                             const std::vector<int>& order) {
  profile.validate();
  const int n = profile.agents();
  const int m = profile.goods();
  if (n < 1) throw UsageError("round_robin needs at least one agent");

  std::vector<int> seq = order;
  if (seq.empty()) {
    seq.resize(n);
    std::iota(seq.begin(), seq.end(), 0);
  }
  {
    if (static_cast<int>(seq.size()) != n)
      throw UsageError("agent order length does not match agent count");
    std::vector<bool> seen(n, false);
    for (int a : seq) {
      if (a < 0 || a >= n || seen[a])
        throw UsageError("agent order is not a permutation");
      seen[a] = true;
    }
  }

  RoundRobinResult res;
  res.allocation.bundles.assign(n, {});
  std::vector<bool> available(m, true);
  int remaining = m;
  const int rounds = m == 0 ? 0 : (m + n - 1) / n;

  for (int r = 1; r <= rounds && remaining > 0; ++r) {
    for (int idx = 0; idx < n && remaining > 0; ++idx) {
      const int agent = seq[idx];
      const BidVector& bids = profile.rows[agent];
      int pick = -1;
      for (int g = 0; g < m; ++g) {
        if (!available[g]) continue;
        if (pick == -1 || bids[g] > bids[pick]) pick = g;  // ties keep lower index
      }
      GoodSet avail;
      for (int g = 0; g < m; ++g)
        if (available[g]) avail.push_back(g);
      res.trace.steps.push_back({r, agent, pick, std::move(avail)});
      res.allocation.bundles[agent].push_back(pick);
      available[pick] = false;
      --remaining;
    }
  }
  for (GoodSet& bundle : res.allocation.bundles)
    std::sort(bundle.begin(), bundle.end());
  return res;
}

std::pair<GoodSet, GoodSet> cut_phase(const BidVector& b1,
                                      std::vector<CutStep>* steps) {
  for (const Rational& b : b1)
    if (b.sign() < 0) throw UsageError("negative bid");
  Ranking order = induced_ranking(b1);
  GoodSet e1, e2;
  Rational sum1, sum2;
  for (int good : order.order) {
    const int side = sum1 <= sum2 ? 1 : 2;  // ties in favor of E1
    if (steps) steps->push_back({good, side, sum1, sum2});
    if (side == 1) {
      e1.push_back(good);
      sum1 += b1[good];
    } else {
      e2.push_back(good);
      sum2 += b1[good];
    }
  }
  std::sort(e1.begin(), e1.end());
  std::sort(e2.begin(), e2.end());
  return {std::move(e1), std::move(e2)};
}

MccResult mod_cut_and_choose(const BidVector& b1, const BidVector& b2) {
  if (b1.size() != b2.size())
    throw UsageError("bid vectors disagree on the number of goods");
  for (const Rational& b : b2)
    if (b.sign() < 0) throw UsageError("negative bid");

  MccResult res;
  auto [e1, e2] = cut_phase(b1);
  Rational v1, v2;
  for (int g : e1) v1 += b2[g];
  for (int g : e2) v2 += b2[g];
  res.cut.chosen = v2 > v1 ? 2 : 1;  // ties in favor of E1
  res.cut.e1 = std::move(e1);
  res.cut.e2 = std::move(e2);
  const GoodSet& taken = res.cut.chosen == 1 ? res.cut.e1 : res.cut.e2;
  const GoodSet& left = res.cut.chosen == 1 ? res.cut.e2 : res.cut.e1;
  res.allocation.bundles = {left, taken};
  return res;
}

}  // namespace fairdiv
