#include <algorithm>

#include "doctest.h"
#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/harness.hpp"
#include "fairdiv/strategy.hpp"

using namespace fairdiv;

namespace {

Instance section3_instance() {
  return Instance::create({{Rational(6), Rational(5), Rational(4)},
                           {Rational(4), Rational(6), Rational(5)}},
                          {"a", "b", "c"});
}

Instance vstar_instance() {
  std::vector<Rational> row{Rational(6, 5), Rational(1), Rational(1),
                            Rational(1, 10)};
  return Instance::create({row, row});
}

RankingProfile truthful_rankings(const Instance& inst) {
  RankingProfile p;
  for (int i = 0; i < inst.n; ++i)
    p.rankings.push_back(induced_ranking(inst.truthful_bid(i)));
  return p;
}

}  // namespace

TEST_CASE("best response on the worked example") {
  const Instance inst = section3_instance();
  const BestResponse br = rr_best_response(inst, 0, truthful_rankings(inst));
  CHECK(br.value == Rational(11));
  CHECK(br.ranking.order == std::vector<int>{1, 0, 2});
  CHECK(br.enumerated == 6);
}

TEST_CASE("best response corner cases") {
  const Instance solo = Instance::create({{Rational(2), Rational(7)}});
  RankingProfile p;
  p.rankings.push_back(induced_ranking(solo.truthful_bid(0)));
  const BestResponse br = rr_best_response(solo, 0, p);
  CHECK(br.value == Rational(9));  // a single agent takes everything

  const Instance two =
      Instance::create({{Rational(3), Rational(1)}, {Rational(1), Rational(3)}});
  const BestResponse first = rr_best_response(two, 0, truthful_rankings(two));
  CHECK(first.value == Rational(3));
  CHECK(first.ranking.order == std::vector<int>{0, 1});

  GenConfig gc;
  gc.agents = 2;
  gc.goods = 9;
  Rng rng(3);
  const Instance big = gen_instance(gc, rng);
  CHECK_THROWS_AS(rr_best_response(big, 0, truthful_rankings(big)), BudgetError);
}

TEST_CASE("the truthful profile of the worked example is not a PNE") {
  const Instance inst = section3_instance();
  const EquilibriumCertificate cert = rr_is_pne(inst, truthful_rankings(inst));
  CHECK_FALSE(cert.is_pne);
  REQUIRE(cert.witness.has_value());
  CHECK(cert.witness->agent == 0);
  CHECK(cert.witness->ranking->order == std::vector<int>{1, 0, 2});
  CHECK(cert.witness->value_before == Rational(10));
  CHECK(cert.witness->value_after == Rational(11));

  // the witness re-simulates to a strict improvement
  RankingProfile deviated = truthful_rankings(inst);
  deviated.rankings[0] = *cert.witness->ranking;
  const EquilibriumCertificate dev = rr_is_pne(inst, deviated);
  CHECK(value_of(inst, 0, dev.allocation.bundles[0]) ==
        cert.witness->value_after);
}

TEST_CASE("trivial PNE cases") {
  const Instance solo = Instance::create({{Rational(2), Rational(7), Rational(1)}});
  CHECK(rr_is_pne(solo, truthful_rankings(solo)).is_pne);

  Rng rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    GenConfig gc;
    gc.agents = 2;
    gc.goods = 2;
    const Instance inst = gen_instance(gc, rng);
    CHECK(rr_is_pne(inst, truthful_rankings(inst)).is_pne);
  }

  const Instance zeros = Instance::create(
      {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}});
  RankingProfile odd;
  odd.rankings = {Ranking{{1, 0}}, Ranking{{0, 1}}};
  const EquilibriumCertificate cert = rr_is_pne(zeros, odd);
  CHECK(cert.is_pne);
  CHECK(cert.deviations_checked == 4);  // n * m!
}

TEST_CASE("PNE enumeration on the worked example") {
  const Instance inst = section3_instance();
  const auto certs = rr_enumerate_pne(inst);
  CHECK_FALSE(certs.empty());

  // agent 1 playing (b,a,c) against a truthful agent 2 is an equilibrium
  const std::vector<int> manipulated{1, 0, 2};
  const std::vector<int> truthful2{1, 2, 0};
  bool found = false;
  for (const auto& cert : certs) {
    CHECK(cert.is_pne);
    CHECK(cert.deviations_checked == 2 * 6);
    CHECK(is_ef1(inst, cert.allocation).holds);
    if (cert.rankings->rankings[0].order == manipulated &&
        cert.rankings->rankings[1].order == truthful2)
      found = true;
  }
  CHECK(found);

  // enumeration agrees with rr_is_pne pointwise on a small profile sample
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    RankingProfile p;
    p.rankings = {rng.ranking(3), rng.ranking(3)};
    const bool listed =
        std::any_of(certs.begin(), certs.end(), [&](const auto& c) {
          return c.rankings->rankings[0].order == p.rankings[0].order &&
                 c.rankings->rankings[1].order == p.rankings[1].order;
        });
    CHECK(listed == rr_is_pne(inst, p).is_pne);
  }
}

TEST_CASE("PNE enumeration budget") {
  GenConfig gc;
  gc.agents = 2;
  gc.goods = 6;
  Rng rng(5);
  const Instance big = gen_instance(gc, rng);
  CHECK_THROWS_AS(rr_enumerate_pne(big), BudgetError);
  Budgets loose;
  loose.enumerate_max_profiles = 600000;
  CHECK_NOTHROW(rr_enumerate_pne(Instance::create({{Rational(1), Rational(2)}}),
                                 loose));
}

TEST_CASE("canonical partition bids") {
  const BidVector single = mcc_canonical_bid({0}, {1, 2}, 3);
  CHECK(single == BidVector{Rational(1), Rational(1, 2), Rational(1, 2)});
  const auto cut_single = cut_phase(single);
  CHECK(cut_single.first == GoodSet{0});
  CHECK(cut_single.second == GoodSet{1, 2});

  const BidVector everything = mcc_canonical_bid({0, 1, 2}, {}, 3);
  CHECK(everything == BidVector(3, Rational(0)));
  const auto cut_everything = cut_phase(everything);
  CHECK(cut_everything.first == GoodSet{0, 1, 2});

  // sides of two goods each: eps = 1/4
  const BidVector pairs = mcc_canonical_bid({0, 1}, {2, 3}, 4);
  CHECK(pairs ==
        BidVector{Rational(1), Rational(1, 4), Rational(5, 8), Rational(5, 8)});
  const auto cut_pairs = cut_phase(pairs);
  CHECK(cut_pairs.first == GoodSet{0, 1});
  CHECK(cut_pairs.second == GoodSet{2, 3});

  CHECK_THROWS_AS(mcc_canonical_bid({0}, {0, 1}, 2), UsageError);
  CHECK_THROWS_AS(mcc_canonical_bid({0}, {2}, 2), UsageError);
}

TEST_CASE("canonical bids realize every partition up to twelve goods") {
  for (int m = 0; m <= 12; ++m) {
    for (std::uint32_t c = 0; c < (1u << m); ++c) {
      GoodSet x1, x2;
      for (int g = 0; g < m; ++g) (c & (1u << g) ? x2 : x1).push_back(g);
      const auto [e1, e2] = cut_phase(mcc_canonical_bid(x1, x2, m));
      const bool match = (e1 == x1 && e2 == x2) || (e1 == x2 && e2 == x1);
      REQUIRE(match);
    }
  }
}

TEST_CASE("mu1 bids") {
  const Instance inst = vstar_instance();
  const auto [bid, mu] = mcc_mu1_bid(inst);
  CHECK(mu == Rational(13, 10));
  const auto [e1, e2] = cut_phase(bid);
  CHECK(min(value_of(inst, 0, e1), value_of(inst, 0, e2)) == mu);

  const Instance one = Instance::create({{Rational(5)}, {Rational(2)}});
  CHECK(mcc_mu1_bid(one).second == Rational(0));

  const Instance twin =
      Instance::create({{Rational(1), Rational(1)}, {Rational(3), Rational(4)}});
  const auto [tbid, tmu] = mcc_mu1_bid(twin);
  CHECK(tmu == Rational(1));
  const auto tcut = cut_phase(tbid);
  CHECK(tcut.first.size() == 1);
  CHECK(tcut.second.size() == 1);
}

TEST_CASE("mod cut and choose PNE verification") {
  const Instance inst = vstar_instance();

  // a zero cut bid hands everything to agent 2; the mu1 deviation improves
  const EquilibriumCertificate bad = mcc_verify_pne(
      inst, BidVector(4, Rational(0)), inst.truthful_bid(1));
  CHECK_FALSE(bad.is_pne);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->agent == 0);
  CHECK(bad.witness->value_before == Rational(0));
  CHECK(bad.witness->value_after > Rational(0));
  {
    // the witness bid re-simulates to the claimed value
    const MccResult replay = mod_cut_and_choose(*bad.witness->bid,
                                                inst.truthful_bid(1));
    CHECK(value_of(inst, 0, replay.allocation.bundles[0]) ==
          bad.witness->value_after);
    // and the mu1 bid is such a deviation: it guarantees at least mu1
    const auto [mu_bid, mu] = mcc_mu1_bid(inst);
    const MccResult via_mu = mod_cut_and_choose(mu_bid, inst.truthful_bid(1));
    CHECK(value_of(inst, 0, via_mu.allocation.bundles[0]) >= mu);
    CHECK(mu == Rational(13, 10));
  }

  // all-zero values make every profile an equilibrium
  const Instance zeros = Instance::create(
      {{Rational(0), Rational(0), Rational(0)}, {Rational(0), Rational(0), Rational(0)}});
  const EquilibriumCertificate all_zero = mcc_verify_pne(
      zeros, {Rational(1), Rational(0), Rational(2)},
      {Rational(3), Rational(1), Rational(0)});
  CHECK(all_zero.is_pne);
  CHECK(all_zero.deviations_checked > 8);
}

TEST_CASE("constructed mod cut and choose PNE") {
  const Instance inst = vstar_instance();
  const MccPneConstruction c = mcc_construct_pne(inst);
  CHECK(c.certificate.is_pne);
  CHECK(c.b2 == inst.truthful_bid(1));
  CHECK(c.certificate.allocation.bundles[0] == GoodSet{0, 3});
  CHECK(c.certificate.allocation.bundles[1] == GoodSet{1, 2});
  CHECK(value_of(inst, 0, c.certificate.allocation.bundles[0]) ==
        Rational(13, 10));

  // one good: agent 2 takes it whenever she values it; ties also go to her
  const Instance one = Instance::create({{Rational(5)}, {Rational(2)}});
  const MccPneConstruction single = mcc_construct_pne(one);
  CHECK(single.certificate.is_pne);
  CHECK(single.certificate.allocation.bundles[1] == GoodSet{0});
  const Instance indifferent = Instance::create({{Rational(5)}, {Rational(0)}});
  const MccPneConstruction tie = mcc_construct_pne(indifferent);
  CHECK(tie.certificate.is_pne);
  CHECK(tie.certificate.allocation.bundles[1] == GoodSet{0});
}

TEST_CASE("random constructed PNE are MMS and EFX") {
  Rng rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    GenConfig gc;
    gc.agents = 2;
    gc.goods = 5;
    const Instance inst = gen_instance(gc, rng);
    const MccPneConstruction c = mcc_construct_pne(inst);
    CHECK(c.certificate.is_pne);
    CHECK(is_alpha_mms(inst, c.certificate.allocation, Rational(1)).holds);
    CHECK(is_efx(inst, c.certificate.allocation).holds);
  }
}

TEST_CASE("every negative certificate carries a replayable witness") {
  Rng rng(79);
  int negatives = 0;
  for (int trial = 0; trial < 60; ++trial) {
    GenConfig gc;
    gc.agents = 2;
    gc.goods = 4;
    const Instance inst = gen_instance(gc, rng);
    BidVector b1, b2;
    for (int g = 0; g < 4; ++g) {
      b1.emplace_back(rng.range(0, 5));
      b2.emplace_back(rng.range(0, 5));
    }
    const EquilibriumCertificate cert = mcc_verify_pne(inst, b1, b2);
    if (cert.is_pne) continue;
    ++negatives;
    REQUIRE(cert.witness.has_value());
    const int agent = cert.witness->agent;
    const MccResult replay = agent == 0 ? mod_cut_and_choose(*cert.witness->bid, b2)
                                        : mod_cut_and_choose(b1, *cert.witness->bid);
    CHECK(value_of(inst, agent, replay.allocation.bundles[agent]) ==
          cert.witness->value_after);
    CHECK(cert.witness->value_after > cert.witness->value_before);
  }
  CHECK(negatives > 0);
}

TEST_CASE("round robin PNE enumeration is sound for sampled bid profiles") {
  // equal induced rankings mean equal outcomes, so searching rankings is
  // exhaustive over the bid continuum
  Rng rng(83);
  for (int trial = 0; trial < 50; ++trial) {
    GenConfig gc;
    gc.agents = 2;
    gc.goods = 4;
    const Instance inst = gen_instance(gc, rng);
    BidVector noisy;
    for (int g = 0; g < 4; ++g)
      noisy.emplace_back(rng.range(0, 4), rng.range(1, 3));
    BidProfile p1{{noisy, inst.truthful_bid(1)}};
    BidProfile p2{{bid_from_ranking(induced_ranking(noisy)), inst.truthful_bid(1)}};
    CHECK(round_robin(p1).allocation == round_robin(p2).allocation);
  }
}
