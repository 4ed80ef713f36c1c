#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

/// A bundle of goods: sorted, duplicate-free 0-based good indices.
using GoodSet = std::vector<int>;

GoodSet goodset_from_mask(std::uint32_t mask, int m);
std::uint32_t mask_from_goodset(const GoodSet& s);
bool goodset_contains(const GoodSet& s, int good);
GoodSet sorted_goodset(GoodSet s);  // sorts and rejects duplicates

/// One agent's reported per-good values.
using BidVector = std::vector<Rational>;

/// Reported bids, one row per agent. Rows must share a common length.
struct BidProfile {
  std::vector<BidVector> rows;

  int agents() const { return static_cast<int>(rows.size()); }
  int goods() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
  void validate() const;  // rectangular, non-negative entries
};

/// Strict preference order over goods, most-preferred first.
struct Ranking {
  std::vector<int> order;

  int goods() const { return static_cast<int>(order.size()); }
  /// position[g] = rank of good g (0 = most preferred)
  std::vector<int> positions() const;
  void validate(int m) const;
};

/// A fair-division instance: n agents, m goods, exact non-negative values.
struct Instance {
  int n = 0;
  int m = 0;
  std::vector<std::vector<Rational>> values;  // n rows of m entries
  std::vector<std::string> good_names;        // defaults to g1..gm

  static Instance create(std::vector<std::vector<Rational>> values,
                         std::vector<std::string> names = {});

  const Rational& value(int agent, int good) const;
  Rational total(int agent) const;
  BidVector truthful_bid(int agent) const { return values.at(agent); }
  BidProfile truthful_profile() const;
  /// True if no agent values two goods exactly the same.
  bool strict_values() const;

  bool operator==(const Instance&) const = default;
};

/// Ordered partition of all goods into n (possibly empty) bundles.
struct Allocation {
  std::vector<GoodSet> bundles;

  int agents() const { return static_cast<int>(bundles.size()); }
  bool operator==(const Allocation&) const = default;
};

/// Throws UsageError unless `alloc` is a complete allocation for `inst`.
void validate_allocation(const Instance& inst, const Allocation& alloc);

/// Sum of agent's values over a bundle; the empty bundle is worth 0.
Rational value_of(const Instance& inst, int agent, const GoodSet& bundle);

/// Goods sorted by bid descending; equal bids ordered by ascending index.
Ranking induced_ranking(const BidVector& bids);

/// The bid vector (m, m-1, ..., 1) permuted to induce exactly `r`.
BidVector bid_from_ranking(const Ranking& r);

}  // namespace fairdiv
