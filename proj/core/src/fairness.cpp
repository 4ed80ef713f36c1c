#include "fairdiv/fairness.hpp"

#include <algorithm>
#include <functional>

#include "fairdiv/errors.hpp"

namespace fairdiv {

std::string notion_name(Notion n) {
  switch (n) {
    case Notion::EF: return "ef";
    case Notion::PROP: return "prop";
    case Notion::EF1: return "ef1";
    case Notion::EFX: return "efx";
  }
  return "?";
}

FairnessReport is_ef(const Instance& inst, const Allocation& alloc) {
  validate_allocation(inst, alloc);
  FairnessReport rep{Notion::EF, true, std::nullopt};
  for (int i = 0; i < inst.n && rep.holds; ++i) {
    const Rational own = value_of(inst, i, alloc.bundles[i]);
    for (int j = 0; j < inst.n; ++j) {
      if (j == i) continue;
      const Rational other = value_of(inst, i, alloc.bundles[j]);
      if (own < other) {
        rep.holds = false;
        rep.witness = FairnessWitness{i, j, std::nullopt, own, other};
        break;
      }
    }
  }
  return rep;
}

FairnessReport is_prop(const Instance& inst, const Allocation& alloc) {
  validate_allocation(inst, alloc);
  FairnessReport rep{Notion::PROP, true, std::nullopt};
  for (int i = 0; i < inst.n; ++i) {
    const Rational own = value_of(inst, i, alloc.bundles[i]);
    const Rational share = inst.total(i) / Rational(inst.n);
    if (own < share) {
      rep.holds = false;
      rep.witness = FairnessWitness{i, std::nullopt, std::nullopt, own, share};
      break;
    }
  }
  return rep;
}

FairnessReport is_ef1(const Instance& inst, const Allocation& alloc) {
  validate_allocation(inst, alloc);
  FairnessReport rep{Notion::EF1, true, std::nullopt};
  for (int i = 0; i < inst.n && rep.holds; ++i) {
    const Rational own = value_of(inst, i, alloc.bundles[i]);
    for (int j = 0; j < inst.n; ++j) {
      if (j == i || alloc.bundles[j].empty()) continue;
      const Rational other = value_of(inst, i, alloc.bundles[j]);
      int best = alloc.bundles[j][0];
      for (int g : alloc.bundles[j])
        if (inst.value(i, g) > inst.value(i, best)) best = g;
      if (own < other - inst.value(i, best)) {
        rep.holds = false;
        rep.witness =
            FairnessWitness{i, j, best, own, other - inst.value(i, best)};
        break;
      }
    }
  }
  return rep;
}

namespace {

/// EFX violation of agent i against bundle j, if any: the first positively
/// valued good whose removal still leaves envy.
std::optional<FairnessWitness> efx_violation(const Instance& inst,
                                             const Allocation& alloc, int i,
                                             int j) {
  const Rational own = value_of(inst, i, alloc.bundles[i]);
  const Rational other = value_of(inst, i, alloc.bundles[j]);
  for (int g : alloc.bundles[j]) {
    if (inst.value(i, g).sign() <= 0) continue;
    if (own < other - inst.value(i, g))
      return FairnessWitness{i, j, g, own, other - inst.value(i, g)};
  }
  return std::nullopt;
}

}  // namespace

FairnessReport is_efx(const Instance& inst, const Allocation& alloc) {
  validate_allocation(inst, alloc);
  FairnessReport rep{Notion::EFX, true, std::nullopt};
  for (int i = 0; i < inst.n && rep.holds; ++i)
    for (int j = 0; j < inst.n; ++j) {
      if (j == i || alloc.bundles[j].empty()) continue;
      if (auto w = efx_violation(inst, alloc, i, j)) {
        rep.holds = false;
        rep.witness = w;
        break;
      }
    }
  return rep;
}

bool ef_holds_for_agent(const Instance& inst, const Allocation& alloc, int agent) {
  validate_allocation(inst, alloc);
  const Rational own = value_of(inst, agent, alloc.bundles[agent]);
  for (int j = 0; j < inst.n; ++j)
    if (j != agent && own < value_of(inst, agent, alloc.bundles[j])) return false;
  return true;
}

bool efx_holds_for_agent(const Instance& inst, const Allocation& alloc, int agent) {
  validate_allocation(inst, alloc);
  for (int j = 0; j < inst.n; ++j) {
    if (j == agent || alloc.bundles[j].empty()) continue;
    if (efx_violation(inst, alloc, agent, j)) return false;
  }
  return true;
}

namespace {

/// Half-space enumeration for two parts: the anchor element stays on the
/// first side, the rest branch. Keeps the first partition attaining the max.
void mms_two_parts(const Instance& inst, int agent, const GoodSet& subset,
                   MmsCertificate& best) {
  const int k = static_cast<int>(subset.size());
  GoodSet side_a{subset[0]}, side_b;
  Rational sum_a = inst.value(agent, subset[0]), sum_b;
  bool has_best = false;

  std::function<void(int)> walk = [&](int idx) {
    if (idx == k) {
      const Rational low = min(sum_a, sum_b);
      if (!has_best || low > best.value) {
        has_best = true;
        best.value = low;
        best.witness_partition = {side_a, side_b};
      }
      return;
    }
    const int g = subset[idx];
    side_b.push_back(g);
    sum_b += inst.value(agent, g);
    walk(idx + 1);
    sum_b -= inst.value(agent, g);
    side_b.pop_back();

    side_a.push_back(g);
    sum_a += inst.value(agent, g);
    walk(idx + 1);
    sum_a -= inst.value(agent, g);
    side_a.pop_back();
  };
  walk(1);
  for (GoodSet& part : best.witness_partition)
    std::sort(part.begin(), part.end());
}

/// Set partitions of `subset` into at most n_parts unordered blocks,
/// enumerated by restricted growth strings; shorter partitions are padded
/// with empty bundles.
void mms_general(const Instance& inst, int agent, const GoodSet& subset,
                 int n_parts, MmsCertificate& best) {
  const int k = static_cast<int>(subset.size());
  std::vector<GoodSet> blocks;
  std::vector<Rational> sums;
  bool has_best = false;

  std::function<void(int)> walk = [&](int idx) {
    if (idx == k) {
      Rational low = static_cast<int>(blocks.size()) < n_parts
                         ? Rational(0)
                         : sums[0];
      for (const Rational& s : sums) low = min(low, s);
      if (!has_best || low > best.value) {
        has_best = true;
        best.value = low;
        best.witness_partition = blocks;
        best.witness_partition.resize(n_parts);
      }
      return;
    }
    const int g = subset[idx];
    const int used = static_cast<int>(blocks.size());
    for (int b = 0; b < used; ++b) {
      blocks[b].push_back(g);
      sums[b] += inst.value(agent, g);
      walk(idx + 1);
      sums[b] -= inst.value(agent, g);
      blocks[b].pop_back();
    }
    if (used < n_parts) {
      blocks.push_back({g});
      sums.push_back(inst.value(agent, g));
      walk(idx + 1);
      blocks.pop_back();
      sums.pop_back();
    }
  };

  if (k == 0) {
    best.value = Rational(0);
    best.witness_partition.assign(n_parts, {});
    return;
  }
  walk(0);
  for (GoodSet& part : best.witness_partition)
    std::sort(part.begin(), part.end());
}

}  // namespace

MmsCertificate mms(const Instance& inst, int agent, int n_parts,
                   const GoodSet& subset, const MmsBudget& budget) {
  if (agent < 0 || agent >= inst.n) throw UsageError("agent index out of range");
  if (n_parts < 1) throw UsageError("n_parts must be at least 1");
  GoodSet s = sorted_goodset(subset);
  for (int g : s)
    if (g < 0 || g >= inst.m) throw UsageError("good index out of range");

  MmsCertificate cert;
  cert.agent = agent;
  cert.n_parts = n_parts;

  if (n_parts == 1) {
    cert.value = value_of(inst, agent, s);
    cert.witness_partition = {s};
    return cert;
  }
  if (s.empty() || n_parts > static_cast<int>(s.size())) {
    // Some bundle is necessarily empty, so the maximin value is 0.
    cert.value = Rational(0);
    cert.witness_partition.assign(n_parts, {});
    for (size_t i = 0; i < s.size(); ++i) cert.witness_partition[i] = {s[i]};
    return cert;
  }
  if (n_parts == 2) {
    if (static_cast<int>(s.size()) > budget.two_parts_max_goods)
      throw BudgetError("mms: " + std::to_string(s.size()) +
                        " goods exceed the two-part budget of " +
                        std::to_string(budget.two_parts_max_goods));
    mms_two_parts(inst, agent, s, cert);
    return cert;
  }
  if (static_cast<int>(s.size()) > budget.general_max_goods)
    throw BudgetError("mms: " + std::to_string(s.size()) +
                      " goods exceed the general budget of " +
                      std::to_string(budget.general_max_goods));
  mms_general(inst, agent, s, n_parts, cert);
  return cert;
}

MmsCertificate mms_full(const Instance& inst, int agent, const MmsBudget& budget) {
  GoodSet all(inst.m);
  for (int g = 0; g < inst.m; ++g) all[g] = g;
  return mms(inst, agent, inst.n, all, budget);
}

AlphaMmsReport is_alpha_mms(const Instance& inst, const Allocation& alloc,
                            const Rational& alpha, const MmsBudget& budget) {
  validate_allocation(inst, alloc);
  AlphaMmsReport rep;
  rep.alpha = alpha;
  for (int i = 0; i < inst.n; ++i) {
    AlphaMmsAgent a;
    a.value = value_of(inst, i, alloc.bundles[i]);
    a.mms_value = mms_full(inst, i, budget).value;
    a.ok = a.value >= alpha * a.mms_value;
    rep.holds = rep.holds && a.ok;
    rep.agents.push_back(std::move(a));
  }
  return rep;
}

}  // namespace fairdiv
