#include "fairdiv/instance.hpp"

#include <algorithm>
#include <numeric>

#include "fairdiv/errors.hpp"

namespace fairdiv {

GoodSet goodset_from_mask(std::uint32_t mask, int m) {
  GoodSet out;
  for (int g = 0; g < m; ++g)
    if (mask & (1u << g)) out.push_back(g);
  return out;
}

std::uint32_t mask_from_goodset(const GoodSet& s) {
  std::uint32_t mask = 0;
  for (int g : s) mask |= (1u << g);
  return mask;
}

bool goodset_contains(const GoodSet& s, int good) {
  return std::binary_search(s.begin(), s.end(), good);
}

GoodSet sorted_goodset(GoodSet s) {
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw UsageError("good set contains a duplicate index");
  return s;
}

void BidProfile::validate() const {
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != goods())
      throw UsageError("bid profile is not rectangular");
    for (const Rational& b : rows[i])
      if (b.sign() < 0) throw UsageError("negative bid");
  }
}

std::vector<int> Ranking::positions() const {
  std::vector<int> pos(order.size());
  for (size_t p = 0; p < order.size(); ++p) pos[order[p]] = static_cast<int>(p);
  return pos;
}

void Ranking::validate(int m) const {
  if (static_cast<int>(order.size()) != m)
    throw UsageError("ranking length does not match good count");
  std::vector<bool> seen(m, false);
  for (int g : order) {
    if (g < 0 || g >= m || seen[g]) throw UsageError("ranking is not a permutation");
    seen[g] = true;
  }
}

Instance Instance::create(std::vector<std::vector<Rational>> values,
                          std::vector<std::string> names) {
  Instance inst;
  inst.n = static_cast<int>(values.size());
  if (inst.n < 1) throw UsageError("instance needs at least one agent");
  inst.m = static_cast<int>(values[0].size());
  for (const auto& row : values) {
    if (static_cast<int>(row.size()) != inst.m)
      throw UsageError("valuation matrix is not rectangular");
    for (const Rational& v : row)
      if (v.sign() < 0) throw UsageError("negative valuation");
  }
  inst.values = std::move(values);
  if (names.empty()) {
    for (int g = 0; g < inst.m; ++g) names.push_back("g" + std::to_string(g + 1));
  } else if (static_cast<int>(names.size()) != inst.m) {
    throw UsageError("good name count does not match good count");
  }
  inst.good_names = std::move(names);
  return inst;
}

const Rational& Instance::value(int agent, int good) const {
  if (agent < 0 || agent >= n) throw UsageError("agent index out of range");
  if (good < 0 || good >= m) throw UsageError("good index out of range");
  return values[agent][good];
}

Rational Instance::total(int agent) const {
  if (agent < 0 || agent >= n) throw UsageError("agent index out of range");
  Rational sum;
  for (const Rational& v : values[agent]) sum += v;
  return sum;
}

BidProfile Instance::truthful_profile() const {
  BidProfile p;
  p.rows = values;
  return p;
}

bool Instance::strict_values() const {
  for (int i = 0; i < n; ++i) {
    auto row = values[i];
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end()) return false;
  }
  return true;
}

void validate_allocation(const Instance& inst, const Allocation& alloc) {
  if (alloc.agents() != inst.n)
    throw UsageError("allocation bundle count does not match agent count");
  std::vector<int> seen(inst.m, 0);
  for (const GoodSet& bundle : alloc.bundles)
    for (int g : bundle) {
      if (g < 0 || g >= inst.m) throw UsageError("allocation names an unknown good");
      ++seen[g];
    }
  for (int g = 0; g < inst.m; ++g) {
    if (seen[g] == 0) throw UsageError("allocation is incomplete: good " +
                                       inst.good_names[g] + " unassigned");
    if (seen[g] > 1) throw UsageError("allocation assigns good " +
                                      inst.good_names[g] + " twice");
  }
}

Rational value_of(const Instance& inst, int agent, const GoodSet& bundle) {
  if (agent < 0 || agent >= inst.n) throw UsageError("agent index out of range");
  Rational sum;
  for (int g : bundle) {
    if (g < 0 || g >= inst.m) throw UsageError("good index out of range");
    sum += inst.values[agent][g];
  }
  return sum;
}

Ranking induced_ranking(const BidVector& bids) {
  Ranking r;
  r.order.resize(bids.size());
  std::iota(r.order.begin(), r.order.end(), 0);
  std::sort(r.order.begin(), r.order.end(), [&](int a, int b) {
    if (bids[a] != bids[b]) return bids[a] > bids[b];
    return a < b;
  });
  return r;
}

BidVector bid_from_ranking(const Ranking& r) {
  const int m = r.goods();
  BidVector b(m);
  for (int p = 0; p < m; ++p) b[r.order[p]] = Rational(m - p);
  return b;
}

}  // namespace fairdiv
