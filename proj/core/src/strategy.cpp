#include "fairdiv/strategy.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

long long factorial(int m) {
  long long f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

/// Round-Robin on rankings with identity agent order; bundles as bitmasks.
std::vector<std::uint32_t> rr_masks(const std::vector<const std::vector<int>*>& orders,
                                    int m) {
  const int n = static_cast<int>(orders.size());
  std::vector<std::uint32_t> bundles(n, 0);
  std::uint32_t available = m == 0 ? 0 : (m >= 32 ? ~0u : (1u << m) - 1);
  std::vector<int> ptr(n, 0);
  int remaining = m;
  while (remaining > 0) {
    for (int i = 0; i < n && remaining > 0; ++i) {
      const std::vector<int>& ord = *orders[i];
      int& p = ptr[i];
      while (!(available & (1u << ord[p]))) ++p;
      bundles[i] |= 1u << ord[p];
      available &= ~(1u << ord[p]);
      --remaining;
    }
  }
  return bundles;
}

Rational value_of_mask(const Instance& inst, int agent, std::uint32_t mask) {
  Rational sum;
  for (int g = 0; g < inst.m; ++g)
    if (mask & (1u << g)) sum += inst.values[agent][g];
  return sum;
}

void validate_profile(const Instance& inst, const RankingProfile& profile) {
  if (profile.agents() != inst.n)
    throw UsageError("ranking profile size does not match agent count");
  for (const Ranking& r : profile.rankings) r.validate(inst.m);
}

Allocation allocation_from_masks(const std::vector<std::uint32_t>& masks, int m) {
  Allocation alloc;
  for (std::uint32_t mask : masks) alloc.bundles.push_back(goodset_from_mask(mask, m));
  return alloc;
}

}  // namespace

BestResponse rr_best_response(const Instance& inst, int agent,
                              const RankingProfile& profile,
                              const Budgets& budgets) {
  validate_profile(inst, profile);
  if (agent < 0 || agent >= inst.n) throw UsageError("agent index out of range");
  if (inst.m > budgets.best_response_max_goods)
    throw BudgetError("best response over " + std::to_string(inst.m) +
                      " goods exceeds the budget of " +
                      std::to_string(budgets.best_response_max_goods));

  std::vector<const std::vector<int>*> orders(inst.n);
  for (int i = 0; i < inst.n; ++i) orders[i] = &profile.rankings[i].order;

  std::vector<int> perm(inst.m);
  std::iota(perm.begin(), perm.end(), 0);
  orders[agent] = &perm;

  BestResponse best;
  bool have = false;
  do {
    ++best.enumerated;
    const auto masks = rr_masks(orders, inst.m);
    Rational value = value_of_mask(inst, agent, masks[agent]);
    if (!have || value > best.value) {
      have = true;
      best.value = std::move(value);
      best.ranking.order = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

EquilibriumCertificate rr_is_pne(const Instance& inst,
                                 const RankingProfile& profile,
                                 const Budgets& budgets) {
  validate_profile(inst, profile);
  if (inst.m > budgets.best_response_max_goods)
    throw BudgetError("PNE check over " + std::to_string(inst.m) +
                      " goods exceeds the budget of " +
                      std::to_string(budgets.best_response_max_goods));

  std::vector<const std::vector<int>*> orders(inst.n);
  for (int i = 0; i < inst.n; ++i) orders[i] = &profile.rankings[i].order;
  const auto masks = rr_masks(orders, inst.m);

  EquilibriumCertificate cert;
  cert.mechanism = "round-robin";
  cert.rankings = profile;
  cert.allocation = allocation_from_masks(masks, inst.m);

  std::vector<Rational> current(inst.n);
  for (int i = 0; i < inst.n; ++i) current[i] = value_of_mask(inst, i, masks[i]);

  for (int i = 0; i < inst.n; ++i) {
    std::vector<int> perm(inst.m);
    std::iota(perm.begin(), perm.end(), 0);
    auto saved = orders[i];
    orders[i] = &perm;
    do {
      ++cert.deviations_checked;
      const auto dev = rr_masks(orders, inst.m);
      Rational value = value_of_mask(inst, i, dev[i]);
      if (value > current[i]) {
        cert.is_pne = false;
        cert.witness = DeviationWitness{i, Ranking{perm}, std::nullopt,
                                        current[i], std::move(value)};
        return cert;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    orders[i] = saved;
  }
  cert.is_pne = true;
  return cert;
}

std::vector<EquilibriumCertificate> rr_enumerate_pne(const Instance& inst,
                                                     const Budgets& budgets) {
  const int n = inst.n;
  const int m = inst.m;
  const long long fact = factorial(m);
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > budgets.enumerate_max_profiles / fact + 1) {
      total = budgets.enumerate_max_profiles + 1;
      break;
    }
    total *= fact;
  }
  if (total > budgets.enumerate_max_profiles)
    throw BudgetError("(m!)^n = " + std::to_string(fact) + "^" +
                      std::to_string(n) + " ranking profiles exceed the budget of " +
                      std::to_string(budgets.enumerate_max_profiles));

  // All rankings in lexicographic order.
  std::vector<std::vector<int>> perms;
  perms.reserve(fact);
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Exact comparisons reduce to integer ranks of the 2^m bundle values.
  const std::uint32_t nmasks = 1u << m;
  std::vector<std::vector<std::int32_t>> rank(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> val(nmasks);
    for (std::uint32_t mask = 1; mask < nmasks; ++mask) {
      const int low = std::countr_zero(mask);
      val[mask] = val[mask ^ (1u << low)] + inst.values[i][low];
    }
    std::vector<Rational> sorted = val;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    rank[i].resize(nmasks);
    for (std::uint32_t mask = 0; mask < nmasks; ++mask)
      rank[i][mask] = static_cast<std::int32_t>(
          std::lower_bound(sorted.begin(), sorted.end(), val[mask]) -
          sorted.begin());
  }

  // Profile index digits: agent 0 most significant.
  std::vector<long long> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * fact;

  std::vector<std::int32_t> own(total * n);
  std::vector<const std::vector<int>*> orders(n);
  std::vector<long long> digits(n, 0);
  for (long long idx = 0; idx < total; ++idx) {
    long long rest = idx;
    for (int i = 0; i < n; ++i) {
      digits[i] = rest / stride[i];
      rest %= stride[i];
      orders[i] = &perms[digits[i]];
    }
    const auto masks = rr_masks(orders, m);
    for (int i = 0; i < n; ++i) own[idx * n + i] = rank[i][masks[i]];
  }

  std::vector<EquilibriumCertificate> out;
  for (long long idx = 0; idx < total; ++idx) {
    bool pne = true;
    for (int i = 0; i < n && pne; ++i) {
      const long long digit = (idx / stride[i]) % fact;
      const long long base = idx - digit * stride[i];
      const std::int32_t cur = own[idx * n + i];
      for (long long d = 0; d < fact; ++d)
        if (own[(base + d * stride[i]) * n + i] > cur) {
          pne = false;
          break;
        }
    }
    if (!pne) continue;

    EquilibriumCertificate cert;
    cert.mechanism = "round-robin";
    cert.is_pne = true;
    cert.deviations_checked = static_cast<long long>(n) * fact;
    RankingProfile profile;
    long long rest = idx;
    for (int i = 0; i < n; ++i) {
      profile.rankings.push_back(Ranking{perms[rest / stride[i]]});
      rest %= stride[i];
      orders[i] = &profile.rankings.back().order;
    }
    for (int i = 0; i < n; ++i) orders[i] = &profile.rankings[i].order;
    cert.allocation = allocation_from_masks(rr_masks(orders, m), m);
    cert.rankings = std::move(profile);
    out.push_back(std::move(cert));
  }
  return out;
}

BidVector mcc_canonical_bid(const GoodSet& x1, const GoodSet& x2, int m) {
  GoodSet a = sorted_goodset(x1), b = sorted_goodset(x2);
  {
    std::vector<int> seen(m, 0);
    for (int g : a) {
      if (g < 0 || g >= m) throw UsageError("partition names an unknown good");
      ++seen[g];
    }
    for (int g : b) {
      if (g < 0 || g >= m) throw UsageError("partition names an unknown good");
      ++seen[g];
    }
    for (int g = 0; g < m; ++g)
      if (seen[g] != 1) throw UsageError("(X1, X2) is not a partition of the goods");
  }

  BidVector bid(m, Rational(0));
  if (m == 0 || a.empty() || b.empty()) return bid;  // one side holds everything

  if (a.size() == 1 || b.size() == 1) {
    const GoodSet& single = a.size() == 1 ? a : b;
    bid.assign(m, Rational(1, m - 1));
    bid[single[0]] = Rational(1);
    return bid;
  }

  // Both sides have at least two goods; X1 plays the role of the k-side.
  const int q = static_cast<int>(b.size());
  const Rational eps(1, 2 * q);
  for (int g : b) bid[g] = (Rational(1) + eps) / Rational(q);
  for (int g : a) bid[g] = eps / Rational(static_cast<int>(a.size()) - 1);
  bid[a[0]] = Rational(1);
  return bid;
}

std::pair<BidVector, Rational> mcc_mu1_bid(const Instance& inst,
                                           const Budgets& budgets) {
  if (inst.n != 2) throw UsageError("mod-cut&choose needs exactly two agents");
  MmsCertificate cert = mms_full(inst, 0, budgets.mms);
  BidVector bid = mcc_canonical_bid(cert.witness_partition[0],
                                    cert.witness_partition[1], inst.m);
  return {std::move(bid), cert.value};
}

namespace {

/// Ordered partitions in lexicographic order of their side vectors: code c
/// read MSB-first assigns good g to X1 (bit 0) or X2 (bit 1).
std::pair<GoodSet, GoodSet> partition_from_code(std::uint32_t c, int m) {
  GoodSet x1, x2;
  for (int g = 0; g < m; ++g) {
    if (c & (1u << (m - 1 - g)))
      x2.push_back(g);
    else
      x1.push_back(g);
  }
  return {std::move(x1), std::move(x2)};
}

}  // namespace

EquilibriumCertificate mcc_verify_pne(const Instance& inst, const BidVector& b1,
                                      const BidVector& b2,
                                      const Budgets& budgets) {
  if (inst.n != 2) throw UsageError("mod-cut&choose needs exactly two agents");
  if (static_cast<int>(b1.size()) != inst.m || static_cast<int>(b2.size()) != inst.m)
    throw UsageError("bid vector length does not match good count");
  if (inst.m > budgets.mcc_max_goods)
    throw BudgetError("2^" + std::to_string(inst.m) +
                      " partition deviations exceed the budget of 2^" +
                      std::to_string(budgets.mcc_max_goods));

  const MccResult current = mod_cut_and_choose(b1, b2);
  const Rational val1 = value_of(inst, 0, current.allocation.bundles[0]);
  const Rational val2 = value_of(inst, 1, current.allocation.bundles[1]);

  EquilibriumCertificate cert;
  cert.mechanism = "mod-cut-and-choose";
  cert.bids = BidProfile{{b1, b2}};
  cert.allocation = current.allocation;

  // Agent 1: every ordered partition, realized through the canonical bid.
  const std::uint32_t codes = 1u << inst.m;
  for (std::uint32_t c = 0; c < codes; ++c) {
    ++cert.deviations_checked;
    auto [x1, x2] = partition_from_code(c, inst.m);
    BidVector dev = mcc_canonical_bid(x1, x2, inst.m);
    const MccResult r = mod_cut_and_choose(dev, b2);
    Rational v = value_of(inst, 0, r.allocation.bundles[0]);
    if (v > val1) {
      cert.is_pne = false;
      cert.witness =
          DeviationWitness{0, std::nullopt, std::move(dev), val1, std::move(v)};
      return cert;
    }
  }

  // Agent 2: her bid only matters through the choice on the fixed cut.
  std::vector<const GoodSet*> targets{&current.cut.e1};
  if (!current.cut.e2.empty()) targets.push_back(&current.cut.e2);
  for (const GoodSet* target : targets) {
    ++cert.deviations_checked;
    Rational v = value_of(inst, 1, *target);
    if (v > val2) {
      BidVector dev(inst.m, Rational(0));
      for (int g : *target) dev[g] = Rational(1);
      cert.is_pne = false;
      cert.witness =
          DeviationWitness{1, std::nullopt, std::move(dev), val2, std::move(v)};
      return cert;
    }
  }

  cert.is_pne = true;
  return cert;
}

MccPneConstruction mcc_construct_pne(const Instance& inst, const Budgets& budgets) {
  if (inst.n != 2) throw UsageError("mod-cut&choose needs exactly two agents");
  if (inst.m > budgets.mcc_max_goods)
    throw BudgetError("2^" + std::to_string(inst.m) +
                      " partitions exceed the budget of 2^" +
                      std::to_string(budgets.mcc_max_goods));

  MccPneConstruction out;
  out.b2 = inst.truthful_bid(1);

  bool have = false;
  Rational best;
  const std::uint32_t codes = 1u << inst.m;
  for (std::uint32_t c = 0; c < codes; ++c) {
    auto [x1, x2] = partition_from_code(c, inst.m);
    BidVector bid = mcc_canonical_bid(x1, x2, inst.m);
    const MccResult r = mod_cut_and_choose(bid, out.b2);
    Rational v = value_of(inst, 0, r.allocation.bundles[0]);
    if (!have || v > best) {
      have = true;
      best = std::move(v);
      out.b1 = std::move(bid);
    }
  }

  out.certificate = mcc_verify_pne(inst, out.b1, out.b2, budgets);
  if (!out.certificate.is_pne)
    throw Error("constructed mod-cut&choose profile failed PNE verification");
  return out;
}

}  // namespace fairdiv
