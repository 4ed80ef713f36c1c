#include <algorithm>

#include "doctest.h"
#include "fairdiv/errors.hpp"
#include "fairdiv/harness.hpp"
#include "fairdiv/mechanisms.hpp"

using namespace fairdiv;

namespace {

BidProfile profile_of(std::vector<std::vector<long long>> rows) {
  BidProfile p;
  for (auto& row : rows) {
    BidVector b;
    for (long long v : row) b.emplace_back(v);
    p.rows.push_back(std::move(b));
  }
  return p;
}

}  // namespace

TEST_CASE("round robin on the two-agent, three-good example") {
  // truthful bids
  const auto truthful = round_robin(profile_of({{6, 5, 4}, {4, 6, 5}}));
  CHECK(truthful.allocation.bundles[0] == GoodSet{0, 2});
  CHECK(truthful.allocation.bundles[1] == GoodSet{1});
  REQUIRE(truthful.trace.steps.size() == 3);
  CHECK(truthful.trace.steps[0].good == 0);
  CHECK(truthful.trace.steps[1].good == 1);
  CHECK(truthful.trace.steps[2].good == 2);
  CHECK(truthful.trace.steps[2].round == 2);
  CHECK(truthful.trace.steps[2].agent == 0);

  // agent 1 overbids on b
  const auto manipulated = round_robin(profile_of({{5, 6, 4}, {4, 6, 5}}));
  CHECK(manipulated.allocation.bundles[0] == GoodSet{0, 1});
  CHECK(manipulated.allocation.bundles[1] == GoodSet{2});
}

TEST_CASE("round robin corner cases") {
  const auto single = round_robin(profile_of({{3, 1, 2}}));
  CHECK(single.allocation.bundles[0] == GoodSet{0, 1, 2});

  const auto zeros = round_robin(profile_of({{0, 0, 0, 0}, {0, 0, 0, 0}}));
  CHECK(zeros.allocation.bundles[0] == GoodSet{0, 2});
  CHECK(zeros.allocation.bundles[1] == GoodSet{1, 3});

  const auto empty = round_robin(BidProfile{{{}, {}}});
  CHECK(empty.allocation.bundles == std::vector<GoodSet>{{}, {}});
  CHECK(empty.trace.steps.empty());
}

TEST_CASE("round robin honors the agent order") {
  const auto swapped = round_robin(profile_of({{6, 5, 4}, {4, 6, 5}}), {1, 0});
  CHECK(swapped.allocation.bundles[0] == GoodSet{0});
  CHECK(swapped.allocation.bundles[1] == GoodSet{1, 2});
  CHECK_THROWS_AS(round_robin(profile_of({{1}, {1}}), {0, 0}), UsageError);
  CHECK_THROWS_AS(round_robin(profile_of({{1}, {1}}), {0}), UsageError);
}

TEST_CASE("round robin trace is well-formed and bundles are balanced") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng.range(1, 4));
    const int m = static_cast<int>(rng.range(0, 7));
    BidProfile p;
    for (int i = 0; i < n; ++i) {
      BidVector b;
      for (int g = 0; g < m; ++g) b.emplace_back(rng.range(0, 6));
      p.rows.push_back(std::move(b));
    }
    const auto res = round_robin(p);
    CHECK(static_cast<int>(res.trace.steps.size()) == m);
    for (size_t s = 0; s < res.trace.steps.size(); ++s) {
      CHECK(static_cast<int>(res.trace.steps[s].available.size()) ==
            m - static_cast<int>(s));
      CHECK(goodset_contains(res.trace.steps[s].available,
                             res.trace.steps[s].good));
    }
    int assigned = 0;
    for (const GoodSet& b : res.allocation.bundles) {
      const int size = static_cast<int>(b.size());
      CHECK((size == m / n || size == (m + n - 1) / n));
      assigned += size;
    }
    CHECK(assigned == m);
  }
}

TEST_CASE("round robin depends on bids only through induced rankings") {
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng.range(2, 3));
    const int m = static_cast<int>(rng.range(1, 6));
    BidProfile p;
    for (int i = 0; i < n; ++i) {
      BidVector b;
      for (int g = 0; g < m; ++g) b.emplace_back(rng.range(0, 5));
      p.rows.push_back(std::move(b));
    }
    // positive rescaling of one row keeps every ranking, hence the outcome
    BidProfile scaled = p;
    const int agent = static_cast<int>(rng.range(0, n - 1));
    const Rational c(rng.range(1, 9), rng.range(1, 9));
    for (Rational& b : scaled.rows[agent]) b *= c;
    CHECK(round_robin(scaled).allocation == round_robin(p).allocation);

    // the canonical bid of the induced ranking has the same outcome
    BidProfile canonical = p;
    for (int i = 0; i < n; ++i)
      canonical.rows[i] = bid_from_ranking(induced_ranking(p.rows[i]));
    CHECK(round_robin(canonical).allocation == round_robin(p).allocation);
  }
}

TEST_CASE("round robin is deterministic") {
  const BidProfile p = profile_of({{2, 2, 1, 5}, {0, 1, 1, 1}});
  const auto a = round_robin(p);
  const auto b = round_robin(p);
  REQUIRE(a.trace.steps.size() == b.trace.steps.size());
  for (size_t s = 0; s < a.trace.steps.size(); ++s) {
    CHECK(a.trace.steps[s].good == b.trace.steps[s].good);
    CHECK(a.trace.steps[s].agent == b.trace.steps[s].agent);
  }
}

TEST_CASE("cut phase examples") {
  const auto all_zero = cut_phase({Rational(0), Rational(0), Rational(0)});
  CHECK(all_zero.first == GoodSet{0, 1, 2});
  CHECK(all_zero.second == GoodSet{});

  const auto singleton = cut_phase({Rational(1), Rational(1, 2), Rational(1, 2)});
  CHECK(singleton.first == GoodSet{0});
  CHECK(singleton.second == GoodSet{1, 2});

  const auto pairs = cut_phase(
      {Rational(1), Rational(1, 2), Rational(3, 4), Rational(3, 4)});
  CHECK(pairs.first == GoodSet{0, 1});
  CHECK(pairs.second == GoodSet{2, 3});
}

TEST_CASE("cut phase keeps the receiving bundle weakly minimal") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = static_cast<int>(rng.range(0, 9));
    BidVector b;
    for (int g = 0; g < m; ++g) b.emplace_back(rng.range(0, 6), rng.range(1, 4));
    std::vector<CutStep> steps;
    const auto [e1, e2] = cut_phase(b, &steps);
    CHECK(static_cast<int>(steps.size()) == m);
    for (const CutStep& s : steps) {
      if (s.side == 1) CHECK(s.sum1_before <= s.sum2_before);
      else CHECK(s.sum2_before < s.sum1_before);
    }
    GoodSet all = e1;
    all.insert(all.end(), e2.begin(), e2.end());
    std::sort(all.begin(), all.end());
    CHECK(static_cast<int>(all.size()) == m);
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  }
}

TEST_CASE("mod cut and choose") {
  // identical valuations 1.2, 1, 1, 0.1; agent 1 cuts {h1,h4} | {h2,h3}
  const BidVector cut_bid{Rational(1), Rational(5, 8), Rational(5, 8),
                          Rational(1, 4)};
  const BidVector truthful{Rational(6, 5), Rational(1), Rational(1),
                           Rational(1, 10)};
  const MccResult res = mod_cut_and_choose(cut_bid, truthful);
  CHECK(res.cut.e1 == GoodSet{0, 3});
  CHECK(res.cut.e2 == GoodSet{1, 2});
  CHECK(res.cut.chosen == 2);
  CHECK(res.allocation.bundles[0] == GoodSet{0, 3});
  CHECK(res.allocation.bundles[1] == GoodSet{1, 2});

  // an all-zero cut bid sends everything to E1 and agent 2 takes it
  const BidVector zeros(4, Rational(0));
  const MccResult grab = mod_cut_and_choose(zeros, truthful);
  CHECK(grab.cut.chosen == 1);
  CHECK(grab.allocation.bundles[0] == GoodSet{});
  CHECK(grab.allocation.bundles[1] == GoodSet{0, 1, 2, 3});

  // ... even when she bids zero herself (ties favor E1)
  const MccResult tie = mod_cut_and_choose(zeros, zeros);
  CHECK(tie.cut.chosen == 1);
  CHECK(tie.allocation.bundles[1] == GoodSet{0, 1, 2, 3});

  const MccResult one = mod_cut_and_choose({Rational(1)}, {Rational(1)});
  CHECK(one.allocation.bundles[1] == GoodSet{0});
  CHECK(one.allocation.bundles[0] == GoodSet{});

  CHECK_THROWS_AS(mod_cut_and_choose({Rational(1)}, {}), UsageError);
}

TEST_CASE("both mechanisms output complete allocations") {
  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = static_cast<int>(rng.range(0, 8));
    BidVector b1, b2;
    for (int g = 0; g < m; ++g) {
      b1.emplace_back(rng.range(0, 9));
      b2.emplace_back(rng.range(0, 9));
    }
    const MccResult res = mod_cut_and_choose(b1, b2);
    GoodSet all = res.allocation.bundles[0];
    all.insert(all.end(), res.allocation.bundles[1].begin(),
               res.allocation.bundles[1].end());
    std::sort(all.begin(), all.end());
    GoodSet expect(m);
    for (int g = 0; g < m; ++g) expect[g] = g;
    CHECK(all == expect);
  }
}
