#include "fairdiv/harness.hpp"

#include <chrono>
#include <bit>
#include <numeric>

#include "fairdiv/constructions.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/json_io.hpp"
#include "fairdiv/mechanisms.hpp"

namespace fairdiv {

using nlohmann::json;

Ranking Rng::ranking(int m) {
  Ranking r;
  r.order.resize(m);
  std::iota(r.order.begin(), r.order.end(), 0);
  for (int i = m - 1; i > 0; --i)
    std::swap(r.order[i], r.order[range(0, i)]);
  return r;
}

Instance gen_instance(const GenConfig& c, Rng& rng) {
  if (c.agents < 1 || c.goods < 0) throw UsageError("invalid instance dimensions");
  if (c.value_lo < 0 || c.value_lo > c.value_hi)
    throw UsageError("invalid value range");
  const long long span = c.value_hi - c.value_lo + 1;
  if (c.strict && span < c.goods)
    throw UsageError("value range too small to draw strict rows");

  std::vector<std::vector<Rational>> rows;
  for (int i = 0; i < c.agents; ++i) {
    std::vector<long long> raw(c.goods);
    for (int attempt = 0;; ++attempt) {
      if (attempt > 100000) throw Error("strict row rejection sampling stalled");
      for (int g = 0; g < c.goods; ++g) raw[g] = rng.range(c.value_lo, c.value_hi);
      if (!c.strict) break;
      std::vector<long long> sorted = raw;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) break;
    }
    if (c.force_ties && c.goods >= 2) {
      const int a = static_cast<int>(rng.range(0, c.goods - 1));
      int b = static_cast<int>(rng.range(0, c.goods - 2));
      if (b >= a) ++b;
      raw[b] = raw[a];
    }
    std::vector<Rational> row;
    row.reserve(c.goods);
    for (long long v : raw) row.emplace_back(v);
    rows.push_back(std::move(row));
  }
  return Instance::create(std::move(rows));
}

std::vector<Instance> gen_instances(const GenConfig& config) {
  Rng rng(config.seed);
  std::vector<Instance> out;
  out.reserve(config.count);
  for (int i = 0; i < config.count; ++i) out.push_back(gen_instance(config, rng));
  return out;
}

namespace {

struct Outcome {
  std::string status = "pass";
  std::string message;
  json counterexample;
};

Outcome pass(std::string message = "") { return {"pass", std::move(message), {}}; }
Outcome fail(std::string message, json dump) {
  return {"fail", std::move(message), std::move(dump)};
}
Outcome skip(std::string message) { return {"skip", std::move(message), {}}; }

json dump_instance(const Instance& inst) {
  return json::parse(serialize_instance(inst));
}

// ---- Round-Robin theorems -------------------------------------------------

Outcome check_t31(const Instance& inst, const Budgets& budgets) {
  try {
    const auto certs = rr_enumerate_pne(inst, budgets);
    if (certs.empty())
      return fail("no pure Nash equilibrium found",
                  json{{"instance", dump_instance(inst)}});
    for (const auto& cert : certs) {
      const FairnessReport rep = is_ef1(inst, cert.allocation);
      if (!rep.holds)
        return fail("PNE allocation is not EF1",
                    json{{"instance", dump_instance(inst)},
                         {"certificate", to_json(cert)},
                         {"report", to_json(rep)}});
    }
    return pass(std::to_string(certs.size()) + " PNE, all EF1");
  } catch (const BudgetError& e) {
    return skip(e.what());
  }
}

Outcome check_t33(const Instance& inst, const Budgets& budgets) {
  try {
    const auto certs = rr_enumerate_pne(inst, budgets);
    if (certs.empty())
      return fail("no pure Nash equilibrium found",
                  json{{"instance", dump_instance(inst)}});
    for (const auto& cert : certs)
      if (!ef_holds_for_agent(inst, cert.allocation, 0))
        return fail("first picker envies a bundle at a PNE",
                    json{{"instance", dump_instance(inst)},
                         {"certificate", to_json(cert)}});
    return pass(std::to_string(certs.size()) + " PNE, first picker always EF");
  } catch (const BudgetError& e) {
    return skip(e.what());
  }
}

Outcome check_ta2(const Instance& inst, const Budgets& budgets) {
  try {
    const auto certs = rr_enumerate_pne(inst, budgets);
    if (certs.empty())
      return fail("no PNE on an instance with ties",
                  json{{"instance", dump_instance(inst)}});

    const BidProfile truthful = inst.truthful_profile();
    std::vector<std::vector<Rational>> rows;
    for (int i = 0; i < inst.n; ++i)
      rows.push_back(perturb_to_strict(inst, i, truthful).v_prime);
    const Instance strictified = Instance::create(std::move(rows), inst.good_names);

    const auto strict_certs = rr_enumerate_pne(strictified, budgets);
    if (strict_certs.empty())
      return fail("no PNE under the perturbed valuations",
                  json{{"instance", dump_instance(inst)},
                       {"perturbed", dump_instance(strictified)}});
    const auto back = rr_is_pne(inst, *strict_certs[0].rankings, budgets);
    if (!back.is_pne)
      return fail("perturbed-instance PNE does not re-verify on the original",
                  json{{"instance", dump_instance(inst)},
                       {"perturbed", dump_instance(strictified)},
                       {"certificate", to_json(back)}});
    return pass(std::to_string(certs.size()) + " PNE; perturbation transfer ok");
  } catch (const BudgetError& e) {
    return skip(e.what());
  }
}

Outcome check_l36(int n, int m, Rng& rng) {
  RankingProfile profile;
  for (int i = 0; i < n; ++i) profile.rankings.push_back(rng.ranking(m));
  const int agent = static_cast<int>(rng.range(0, n - 1));
  const int x = static_cast<int>(rng.range(0, m - 2));
  const int y = static_cast<int>(rng.range(x + 1, m - 1));

  BidProfile bids;
  for (const Ranking& r : profile.rankings)
    bids.rows.push_back(bid_from_ranking(r));
  BidProfile slid = bids;
  slid.rows[agent] =
      bid_from_ranking(partial_slide(profile.rankings[agent], x, y));

  const HistoryTrace a = history_trace(bids);
  const HistoryTrace b = history_trace(slid);
  for (size_t t = 0; t < a.sets.size(); ++t) {
    int only_a = 0, only_b = 0;
    for (int g : a.sets[t])
      if (!goodset_contains(b.sets[t], g)) ++only_a;
    for (int g : b.sets[t])
      if (!goodset_contains(a.sets[t], g)) ++only_b;
    if (only_a > 1 || only_b > 1 || only_a != only_b) {
      json dump{{"agent", agent}, {"x", x}, {"y", y}, {"t", t}};
      json arr = json::array();
      for (const Ranking& r : profile.rankings) arr.push_back(r.order);
      dump["rankings"] = arr;
      return fail("history traces differ by more than one good", dump);
    }
  }
  return pass();
}

Outcome check_l34(const Instance& inst, Rng& rng, const Budgets& budgets) {
  RankingProfile profile;
  Ranking identity;
  identity.order.resize(inst.m);
  std::iota(identity.order.begin(), identity.order.end(), 0);
  profile.rankings.push_back(identity);  // replaced by the best response
  for (int i = 1; i < inst.n; ++i) profile.rankings.push_back(rng.ranking(inst.m));

  json setup{{"instance", dump_instance(inst)}};
  {
    json arr = json::array();
    for (const Ranking& r : profile.rankings) arr.push_back(r.order);
    setup["opponent_rankings"] = arr;
  }
  try {
    const BestResponse br = rr_best_response(inst, 0, profile, budgets);
    BidProfile bids;
    bids.rows.push_back(bid_from_ranking(br.ranking));
    for (int i = 1; i < inst.n; ++i)
      bids.rows.push_back(bid_from_ranking(profile.rankings[i]));

    const VStarResult res = construct_truthful_equivalent(inst, bids, budgets);

    BidProfile star = bids;
    star.rows[0] = res.b1_star;
    const Allocation original = round_robin(bids).allocation;
    const Allocation replayed = round_robin(star).allocation;
    if (original != res.allocation || replayed != res.allocation)
      return fail("truthful-equivalent bid changed the allocation", setup);
    if (value_of(inst, 0, res.allocation.bundles[0]) !=
        [&] {
          Rational s;
          for (int g : res.allocation.bundles[0]) s += res.v1_star[g];
          return s;
        }())
      return fail("v1*(A1) differs from v1(A1)", setup);
    for (int g = 0; g < inst.m; ++g)
      if (!goodset_contains(res.allocation.bundles[0], g) &&
          res.v1_star[g] != inst.values[0][g])
        return fail("v1* differs from v1 off the bundle", setup);
    // Played truthfully, v1* sees the allocation as envy-free.
    Rational own;
    for (int g : res.allocation.bundles[0]) own += res.v1_star[g];
    for (int j = 1; j < inst.n; ++j) {
      Rational other;
      for (int g : res.allocation.bundles[j]) other += res.v1_star[g];
      if (own < other)
        return fail("v1* is not envy-free for the first picker", setup);
    }
    return pass();
  } catch (const ConstructionError& e) {
    setup["error"] = e.what();
    return fail(std::string("construction failed: ") + e.what(), setup);
  } catch (const BudgetError& e) {
    return skip(e.what());
  }
}

// ---- Mod-Cut&Choose theorems ----------------------------------------------

std::pair<GoodSet, GoodSet> partition_from_bits(std::uint32_t c, int m) {
  GoodSet x1, x2;
  for (int g = 0; g < m; ++g) {
    if (c & (1u << g))
      x2.push_back(g);
    else
      x1.push_back(g);
  }
  return {x1, x2};
}

Outcome check_l42(int m) {
  for (std::uint32_t c = 0; c < (1u << m); ++c) {
    const auto [x1, x2] = partition_from_bits(c, m);
    const BidVector bid = mcc_canonical_bid(x1, x2, m);
    const auto [e1, e2] = cut_phase(bid);
    const bool match = (e1 == x1 && e2 == x2) || (e1 == x2 && e2 == x1);
    if (!match) {
      json arr = json::array();
      for (const Rational& b : bid) arr.push_back(rational_to_json(b));
      return fail("canonical bid does not realize the partition",
                  json{{"m", m}, {"x1", x1}, {"x2", x2}, {"bid", arr}});
    }
  }
  return pass("all " + std::to_string(1u << m) + " partitions of " +
              std::to_string(m) + " goods realized");
}

Outcome check_t43(const Instance& inst, const Budgets& budgets) {
  try {
    const MccPneConstruction c = mcc_construct_pne(inst, budgets);
    if (!c.certificate.is_pne)
      return fail("constructed profile is not a PNE",
                  json{{"instance", dump_instance(inst)},
                       {"certificate", to_json(c.certificate)}});
    const AlphaMmsReport mms_rep =
        is_alpha_mms(inst, c.certificate.allocation, Rational(1), budgets.mms);
    if (!mms_rep.holds)
      return fail("PNE allocation is not MMS",
                  json{{"instance", dump_instance(inst)},
                       {"certificate", to_json(c.certificate)},
                       {"report", to_json(mms_rep)}});
    const FairnessReport efx_rep = is_efx(inst, c.certificate.allocation);
    if (!efx_rep.holds)
      return fail("PNE allocation is not EFX",
                  json{{"instance", dump_instance(inst)},
                       {"certificate", to_json(c.certificate)},
                       {"report", to_json(efx_rep)}});
    return pass();
  } catch (const BudgetError& e) {
    return skip(e.what());
  }
}

/// Random bid profiles that happen to verify as PNE must be MMS and EFX.
Outcome random_pne_phase(Rng& rng, const Budgets& budgets, long long target,
                         json& extra) {
  long long tried = 0, found = 0;
  const long long cap = 500000;
  while (found < target && tried < cap) {
    ++tried;
    GenConfig gc;
    gc.agents = 2;
    gc.goods = 2 + static_cast<int>(tried % 4);
    const Instance inst = gen_instance(gc, rng);
    const int m = inst.m;
    const auto [x1, x2] =
        partition_from_bits(static_cast<std::uint32_t>(rng.range(0, (1 << m) - 1)), m);
    const BidVector b1 = mcc_canonical_bid(x1, x2, m);
    BidVector b2;
    if (tried % 2 == 0) {
      b2 = inst.truthful_bid(1);
    } else {
      for (int g = 0; g < m; ++g) b2.emplace_back(rng.range(0, 9));
    }
    const EquilibriumCertificate cert = mcc_verify_pne(inst, b1, b2, budgets);
    if (!cert.is_pne) continue;
    ++found;
    const AlphaMmsReport mms_rep =
        is_alpha_mms(inst, cert.allocation, Rational(1), budgets.mms);
    const FairnessReport efx_rep = is_efx(inst, cert.allocation);
    if (!mms_rep.holds || !efx_rep.holds) {
      extra["random_profiles_tried"] = tried;
      extra["random_pne_found"] = found;
      return fail("random PNE violates MMS or EFX",
                  json{{"instance", dump_instance(inst)},
                       {"certificate", to_json(cert)},
                       {"mms", to_json(mms_rep)},
                       {"efx", to_json(efx_rep)}});
    }
  }
  extra["random_profiles_tried"] = tried;
  extra["random_pne_found"] = found;
  if (found < target)
    return fail("found only " + std::to_string(found) + " random PNE of " +
                    std::to_string(target),
                json{});
  return pass(std::to_string(found) + " random PNE verified, all MMS+EFX");
}

Outcome check_mcc46(const Instance& inst, Rng& rng, const Budgets& budgets) {
  try {
    const MccPneConstruction c = mcc_construct_pne(inst, budgets);
    AlphaMmsReport rep =
        is_alpha_mms(inst, c.certificate.allocation, Rational(1), budgets.mms);
    if (!rep.holds)
      return fail("constructed PNE is not an exact-MMS allocation",
                  json{{"instance", dump_instance(inst)},
                       {"certificate", to_json(c.certificate)},
                       {"report", to_json(rep)}});
    // A few random profiles; any that verifies must be exact MMS too.
    for (int s = 0; s < 5; ++s) {
      const auto [x1, x2] = partition_from_bits(
          static_cast<std::uint32_t>(rng.range(0, (1 << inst.m) - 1)), inst.m);
      const BidVector b1 = mcc_canonical_bid(x1, x2, inst.m);
      BidVector b2;
      if (s % 2 == 0) {
        b2 = inst.truthful_bid(1);
      } else {
        for (int g = 0; g < inst.m; ++g) b2.emplace_back(rng.range(0, 9));
      }
      const EquilibriumCertificate cert = mcc_verify_pne(inst, b1, b2, budgets);
      if (!cert.is_pne) continue;
      rep = is_alpha_mms(inst, cert.allocation, Rational(1), budgets.mms);
      if (!rep.holds)
        return fail("verified PNE is not an exact-MMS allocation",
                    json{{"instance", dump_instance(inst)},
                         {"certificate", to_json(cert)},
                         {"report", to_json(rep)}});
    }
    return pass();
  } catch (const BudgetError& e) {
    return skip(e.what());
  }
}

// ---- Exhaustive small-instance sweeps --------------------------------------

/// Bundle sums for all 2^m subsets of one valuation row.
std::vector<Rational> subset_sums(const std::vector<Rational>& row) {
  const int m = static_cast<int>(row.size());
  std::vector<Rational> sums(std::size_t(1) << m);
  for (std::uint32_t mask = 1; mask < sums.size(); ++mask) {
    const int low = std::countr_zero(mask);
    sums[mask] = sums[mask ^ (1u << low)] + row[low];
  }
  return sums;
}

/// mu(2, M) from a subset-sum table: best min over half-space splits.
Rational mu2_from_sums(const std::vector<Rational>& sums, int m) {
  const std::uint32_t full = (1u << m) - 1;
  if (m == 0) return Rational(0);
  Rational best;  // the all-on-one-side split gives min 0
  for (std::uint32_t half = 0; half < (1u << (m - 1)); ++half) {
    const std::uint32_t mask = (half << 1) | 1u;  // good 0 anchored
    const Rational low = min(sums[mask], sums[full ^ mask]);
    if (low > best) best = low;
  }
  return best;
}

/// EFX check of `mine` against `theirs` under one row, on bitmask bundles.
bool efx_mask_view(const std::vector<Rational>& row,
                   const std::vector<Rational>& sums, std::uint32_t mine,
                   std::uint32_t theirs) {
  for (int g = 0; g < static_cast<int>(row.size()); ++g) {
    if (!(theirs & (1u << g)) || row[g].sign() <= 0) continue;
    if (sums[mine] < sums[theirs] - row[g]) return false;
  }
  return true;
}

/// Odometer over rows in {0..hi}^digits; returns false after the last one.
bool advance(std::vector<long long>& digits, long long hi) {
  for (size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < hi) {
      ++digits[i];
      std::fill(digits.begin(), digits.begin() + i, 0);
      return true;
    }
  }
  return false;
}

Instance instance_from_digits(const std::vector<long long>& digits, int m) {
  std::vector<std::vector<Rational>> rows(2);
  for (int g = 0; g < m; ++g) rows[0].emplace_back(digits[g]);
  for (int g = 0; g < m; ++g) rows[1].emplace_back(digits[m + g]);
  return Instance::create(std::move(rows));
}

Outcome sweep_t26(int m, long long hi) {
  std::vector<long long> digits(2 * m, 0);
  long long instances = 0, mms_allocs = 0;
  const std::uint32_t full = (1u << m) - 1;
  do {
    ++instances;
    const Instance inst = instance_from_digits(digits, m);
    const auto s1 = subset_sums(inst.values[0]);
    const auto s2 = subset_sums(inst.values[1]);
    const Rational mu1 = mu2_from_sums(s1, m);
    const Rational mu2 = mu2_from_sums(s2, m);
    for (std::uint32_t a1 = 0; a1 <= full; ++a1) {
      const std::uint32_t a2 = full ^ a1;
      if (s1[a1] < mu1 || s2[a2] < mu2) continue;  // not an MMS allocation
      ++mms_allocs;
      if (!efx_mask_view(inst.values[0], s1, a1, a2) ||
          !efx_mask_view(inst.values[1], s2, a2, a1)) {
        Allocation alloc{{goodset_from_mask(a1, m), goodset_from_mask(a2, m)}};
        return fail("MMS allocation is not EFX",
                    json{{"instance", dump_instance(inst)},
                         {"allocation", to_json(alloc)}});
      }
    }
  } while (advance(digits, hi));
  return pass(std::to_string(instances) + " instances, " +
              std::to_string(mms_allocs) + " MMS allocations, all EFX");
}

Outcome sweep_t27(int m, long long hi) {
  std::vector<long long> digits(2 * m, 0);
  long long instances = 0, efx_allocs = 0;
  const std::uint32_t full = (1u << m) - 1;
  do {
    ++instances;
    const Instance inst = instance_from_digits(digits, m);
    const auto s1 = subset_sums(inst.values[0]);
    const auto s2 = subset_sums(inst.values[1]);
    const Rational mu1 = mu2_from_sums(s1, m);
    const Rational mu2 = mu2_from_sums(s2, m);
    for (std::uint32_t a1 = 0; a1 <= full; ++a1) {
      const std::uint32_t a2 = full ^ a1;
      if (!efx_mask_view(inst.values[0], s1, a1, a2) ||
          !efx_mask_view(inst.values[1], s2, a2, a1))
        continue;
      ++efx_allocs;
      // 2/3-MMS, exactly: 3 * v_i(A_i) >= 2 * mu_i
      if (Rational(3) * s1[a1] < Rational(2) * mu1 ||
          Rational(3) * s2[a2] < Rational(2) * mu2) {
        Allocation alloc{{goodset_from_mask(a1, m), goodset_from_mask(a2, m)}};
        return fail("EFX allocation is below 2/3-MMS",
                    json{{"instance", dump_instance(inst)},
                         {"allocation", to_json(alloc)}});
      }
    }
  } while (advance(digits, hi));
  return pass(std::to_string(instances) + " instances, " +
              std::to_string(efx_allocs) + " EFX allocations, all 2/3-MMS");
}

/// Tightness direction: an EFX allocation at m=4 with MMS ratio <= 2/3+1/10.
Outcome tightness_exhibit() {
  const Instance inst = Instance::create(
      {{Rational(2), Rational(2), Rational(1), Rational(1)},
       {Rational(2), Rational(2), Rational(1), Rational(1)}});
  const Allocation alloc{{GoodSet{2, 3}, GoodSet{0, 1}}};
  const FairnessReport efx = is_efx(inst, alloc);
  const MmsCertificate mu = mms_full(inst, 0);
  const Rational own = value_of(inst, 0, alloc.bundles[0]);
  // own / mu <= 2/3 + 1/10 = 23/30, exactly: 30*own <= 23*mu
  const bool tight = Rational(30) * own <= Rational(23) * mu.value;
  if (!efx.holds || !tight)
    return fail("tightness exhibit failed",
                json{{"instance", dump_instance(inst)},
                     {"allocation", to_json(alloc)},
                     {"efx", to_json(efx)},
                     {"mms", to_json(mu)}});
  return pass("EFX allocation with MMS ratio " + own.str() + "/" +
              mu.value.str());
}

Outcome sweep_l45() {
  const int m = 4;
  const long long hi = 3;
  std::vector<long long> digits(m, 0);
  long long instances = 0, efx_views = 0;
  const std::uint32_t full = (1u << m) - 1;
  do {
    if (std::count(digits.begin(), digits.end(), 0) == 0) continue;
    ++instances;  // agent 1 values at most three goods positively
    std::vector<std::vector<Rational>> rows(2);
    for (int g = 0; g < m; ++g) rows[0].emplace_back(digits[g]);
    rows[1].assign(m, Rational(0));
    const Instance inst = Instance::create(std::move(rows));
    const auto s1 = subset_sums(inst.values[0]);
    const Rational mu1 = mu2_from_sums(s1, m);
    for (std::uint32_t a1 = 0; a1 <= full; ++a1) {
      if (!efx_mask_view(inst.values[0], s1, a1, full ^ a1)) continue;
      ++efx_views;
      if (s1[a1] < mu1) {
        Allocation alloc{
            {goodset_from_mask(a1, m), goodset_from_mask(full ^ a1, m)}};
        return fail("EFX-from-her-view allocation below the maximin share",
                    json{{"instance", dump_instance(inst)},
                         {"allocation", to_json(alloc)}});
      }
    }
  } while (advance(digits, hi));
  return pass(std::to_string(instances) + " instances, " +
              std::to_string(efx_views) + " EFX views, all at least mu");
}

}  // namespace

std::vector<std::string> known_theorems() {
  return {"T2.6", "T2.7", "T3.1", "T3.3", "T4.3",
          "TA.2", "L3.4", "L3.6", "L4.2", "L4.5", "MCC4.6"};
}

ExperimentConfig default_experiment(const std::string& theorem,
                                    std::uint64_t seed, int count_override) {
  ExperimentConfig c;
  c.theorem = theorem;
  c.seed = seed;
  if (theorem == "T3.1") {
    c.families = {{2, 3, 200}, {2, 4, 200}, {2, 5, 200}, {3, 4, 50}};
  } else if (theorem == "T3.3") {
    c.families = {{2, 3, 60}, {2, 4, 60}, {3, 3, 50}, {3, 4, 50}};
  } else if (theorem == "TA.2") {
    c.families = {{2, 3, 40}, {2, 4, 40}, {3, 4, 30}};
    c.force_ties = true;
  } else if (theorem == "T4.3") {
    c.families = {{2, 4, 75}, {2, 5, 75}, {2, 6, 75}, {2, 7, 40}, {2, 8, 40}};
  } else if (theorem == "L3.4") {
    c.families = {{2, 4, 25}, {2, 5, 25}, {3, 4, 25}, {3, 5, 25}};
    c.strict = true;
  } else if (theorem == "L3.6") {
    c.families = {{2, 4, 250}, {2, 6, 250}, {3, 5, 250}, {3, 6, 250}};
  } else if (theorem == "L4.2") {
    c.families = {{2, 10, 1}};
  } else if (theorem == "MCC4.6") {
    c.families = {{2, 4, 200}};
  } else if (theorem == "T2.6" || theorem == "T2.7" || theorem == "L4.5") {
    c.families = {};  // exhaustive sweeps with pinned grids
  } else {
    throw UsageError("unknown theorem id \"" + theorem + "\"");
  }
  if (count_override > 0)
    for (Family& f : c.families) f.count = count_override;
  return c;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.theorem = config.theorem;
  rep.seed = config.seed;
  rep.extra = json::object();
  Rng rng(config.seed);

  auto add = [&](Outcome o) {
    InstanceVerdict v;
    v.index = static_cast<long long>(rep.verdicts.size());
    v.status = o.status;
    v.message = std::move(o.message);
    v.counterexample = std::move(o.counterexample);
    if (v.status == "pass") ++rep.passed;
    else if (v.status == "fail") ++rep.failed;
    else ++rep.skipped;
    rep.verdicts.push_back(std::move(v));
  };

  GenConfig gc;
  gc.value_lo = config.value_lo;
  gc.value_hi = config.value_hi;
  gc.strict = config.strict;
  gc.force_ties = config.force_ties;

  const std::string& id = config.theorem;
  if (id == "T3.1" || id == "T3.3" || id == "TA.2" || id == "T4.3" ||
      id == "L3.4" || id == "MCC4.6") {
    for (const Family& f : config.families) {
      gc.agents = f.agents;
      gc.goods = f.goods;
      for (int i = 0; i < f.count; ++i) {
        const Instance inst = gen_instance(gc, rng);
        if (id == "T3.1") add(check_t31(inst, config.budgets));
        else if (id == "T3.3") add(check_t33(inst, config.budgets));
        else if (id == "TA.2") add(check_ta2(inst, config.budgets));
        else if (id == "T4.3") add(check_t43(inst, config.budgets));
        else if (id == "L3.4") add(check_l34(inst, rng, config.budgets));
        else add(check_mcc46(inst, rng, config.budgets));
      }
    }
    if (id == "T4.3")
      add(random_pne_phase(rng, config.budgets, 1000, rep.extra));
  } else if (id == "L3.6") {
    for (const Family& f : config.families)
      for (int i = 0; i < f.count; ++i) add(check_l36(f.agents, f.goods, rng));
  } else if (id == "L4.2") {
    for (const Family& f : config.families)
      for (int m = 0; m <= f.goods; ++m) add(check_l42(m));
  } else if (id == "T2.6") {
    add(sweep_t26(2, 3));
    add(sweep_t26(3, 3));
    add(sweep_t26(4, 2));
    add(sweep_t26(5, 2));
  } else if (id == "T2.7") {
    add(sweep_t27(2, 3));
    add(sweep_t27(3, 3));
    add(sweep_t27(4, 2));
    add(sweep_t27(5, 2));
    add(tightness_exhibit());
  } else if (id == "L4.5") {
    add(sweep_l45());
  } else {
    throw UsageError("unknown theorem id \"" + config.theorem + "\"");
  }

  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rep;
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  json verdicts = json::array();
  for (const InstanceVerdict& v : report.verdicts) {
    json j{{"index", v.index}, {"status", v.status}, {"message", v.message}};
    if (v.status == "fail" && !v.counterexample.is_null())
      j["counterexample"] = v.counterexample;
    verdicts.push_back(std::move(j));
  }
  return json{{"theorem", report.theorem}, {"seed", report.seed},
              {"passed", report.passed},   {"failed", report.failed},
              {"skipped", report.skipped}, {"extra", report.extra},
              {"verdicts", verdicts}};
}

std::string report_to_csv(const ExperimentReport& report) {
  std::string out = "index,status,message\n";
  for (const InstanceVerdict& v : report.verdicts) {
    std::string msg = v.message;
    for (char& ch : msg)
      if (ch == ',' || ch == '\n') ch = ';';
    out += std::to_string(v.index) + "," + v.status + "," + msg + "\n";
  }
  return out;
}

}  // namespace fairdiv
