#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairdiv/instance.hpp"

namespace fairdiv {

enum class Notion { EF, PROP, EF1, EFX };
std::string notion_name(Notion n);

/// Minimal counterexample for a failed fairness check: `agent` envies
/// `envied` (for PROP, envied is absent and other_value is the 1/n share).
/// For EF1 the good is one whose removal still leaves envy; for EFX it is a
/// positively valued good witnessing the violation.
struct FairnessWitness {
  int agent = -1;
  std::optional<int> envied;
  std::optional<int> good;
  Rational own_value;
  Rational other_value;
};

struct FairnessReport {
  Notion notion;
  bool holds = true;
  std::optional<FairnessWitness> witness;  // present iff !holds
};

FairnessReport is_ef(const Instance& inst, const Allocation& alloc);
FairnessReport is_prop(const Instance& inst, const Allocation& alloc);
FairnessReport is_ef1(const Instance& inst, const Allocation& alloc);
FairnessReport is_efx(const Instance& inst, const Allocation& alloc);

/// Per-agent views of the pairwise notions (agent `i` compares her bundle
/// against every other bundle under her own valuation).
bool ef_holds_for_agent(const Instance& inst, const Allocation& alloc, int agent);
bool efx_holds_for_agent(const Instance& inst, const Allocation& alloc, int agent);

/// Enumeration limits for the exact maximin-share computation. Two-part
/// splits enumerate half-spaces (2^(|S|-1)); the general case enumerates set
/// partitions into at most n_parts blocks.
struct MmsBudget {
  int two_parts_max_goods = 20;
  int general_max_goods = 12;
};

struct MmsCertificate {
  int agent = 0;
  int n_parts = 1;
  Rational value;
  std::vector<GoodSet> witness_partition;  // n_parts bundles, possibly empty
};

/// Exact mu_i(n_parts, S) with a witness partition attaining it.
MmsCertificate mms(const Instance& inst, int agent, int n_parts,
                   const GoodSet& subset, const MmsBudget& budget = {});

/// mu_i(n, M) for the instance's own agent count.
MmsCertificate mms_full(const Instance& inst, int agent,
                        const MmsBudget& budget = {});

struct AlphaMmsAgent {
  Rational value;      // v_i(A_i)
  Rational mms_value;  // mu_i
  bool ok = true;
};

struct AlphaMmsReport {
  Rational alpha;
  bool holds = true;
  std::vector<AlphaMmsAgent> agents;
};

/// Exact test of v_i(A_i) >= alpha * mu_i for every agent.
AlphaMmsReport is_alpha_mms(const Instance& inst, const Allocation& alloc,
                            const Rational& alpha, const MmsBudget& budget = {});

}  // namespace fairdiv
