#include "fairdiv/constructions.hpp"

#include <algorithm>

#include "fairdiv/errors.hpp"
#include "fairdiv/mechanisms.hpp"

namespace fairdiv {

PerturbationResult perturb_to_strict(const Instance& inst, int agent,
                                     const BidProfile& profile) {
  if (agent < 0 || agent >= inst.n) throw UsageError("agent index out of range");
  profile.validate();
  if (profile.agents() != inst.n ||
      (inst.m > 0 && profile.goods() != inst.m))
    throw UsageError("bid profile dimensions do not match the instance");

  const std::vector<Rational>& v = inst.values[agent];
  const int m = inst.m;

  PerturbationResult res;
  res.v_prime = v;
  res.epsilon = Rational(1);
  bool have_eps = false;
  for (int g = 0; g < m; ++g)
    for (int h = g + 1; h < m; ++h) {
      if (v[g] == v[h]) continue;
      const Rational d = (v[g] - v[h]).abs();
      if (!have_eps || d < res.epsilon) {
        res.epsilon = d;
        have_eps = true;
      }
    }

  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h)
      if (h != g && v[h] == v[g]) {
        res.modified_goods.push_back(g);
        break;
      }
  if (res.modified_goods.empty()) return res;  // already strict

  const GoodSet mine = round_robin(profile).allocation.bundles[agent];
  const Rational big(static_cast<long long>(m));
  const Rational denom_in = Rational(3) * big * big;
  const Rational denom_out = Rational(6) * big * big * big * big * big;
  for (int g : res.modified_goods) {
    const Rational j(g + 1);  // goods are named g_1..g_m in the formula
    if (goodset_contains(mine, g))
      res.v_prime[g] += j * res.epsilon / denom_in;
    else
      res.v_prime[g] += j * res.epsilon / denom_out;
  }

  int zeros = 0, zero_good = -1;
  for (int g = 0; g < m; ++g)
    if (res.v_prime[g].is_zero()) {
      ++zeros;
      zero_good = g;
    }
  if (zeros == 1) {
    res.v_prime[zero_good] = res.epsilon / Rational(3);
    res.zero_fixed_good = zero_good;
  }
  return res;
}

Ranking partial_slide(const Ranking& r, int x, int y) {
  const int m = r.goods();
  if (x < 0 || y >= m || x >= y)
    throw UsageError("partial slide needs positions x < y within the ranking");
  Ranking out = r;
  std::rotate(out.order.begin() + x, out.order.begin() + x + 1,
              out.order.begin() + y + 1);
  return out;
}

HistoryTrace history_trace(const BidProfile& profile) {
  const RoundRobinResult run = round_robin(profile);
  const int m = profile.goods();
  HistoryTrace trace;
  GoodSet current(m);
  for (int g = 0; g < m; ++g) current[g] = g;
  trace.sets.push_back(current);
  for (const PickStep& step : run.trace.steps) {
    current.erase(std::find(current.begin(), current.end(), step.good));
    trace.sets.push_back(current);
  }
  return trace;
}

namespace {

std::vector<int> picks_of_agent0(const RoundRobinResult& run, int rounds) {
  std::vector<int> pick(rounds + 1, -1);  // 1-based round index
  for (const PickStep& s : run.trace.steps)
    if (s.agent == 0) pick[s.round] = s.good;
  for (int r = 1; r <= rounds; ++r)
    if (pick[r] < 0) throw Error("internal: first agent missed a round");
  return pick;
}

const GoodSet& avail_at_round(const RoundRobinResult& run, int round) {
  for (const PickStep& s : run.trace.steps)
    if (s.round == round) return s.available;
  throw Error("internal: no pick recorded for round " + std::to_string(round));
}

bool same_picks(const RoundRobinResult& a, const RoundRobinResult& b) {
  if (a.trace.steps.size() != b.trace.steps.size()) return false;
  for (size_t i = 0; i < a.trace.steps.size(); ++i) {
    const PickStep &x = a.trace.steps[i], &y = b.trace.steps[i];
    if (x.round != y.round || x.agent != y.agent || x.good != y.good)
      return false;
  }
  return true;
}

Rational min_positive_gap(const std::vector<Rational>& val) {
  Rational gap;
  bool have = false;
  for (size_t g = 0; g < val.size(); ++g)
    for (size_t h = g + 1; h < val.size(); ++h) {
      if (val[g] == val[h]) continue;
      const Rational d = (val[g] - val[h]).abs();
      if (!have || d < gap) {
        gap = d;
        have = true;
      }
    }
  return have ? gap : Rational(1);
}

using TiePairs = std::vector<std::pair<int, int>>;

std::vector<std::pair<int, int>> duplicate_pairs(const std::vector<Rational>& xs) {
  std::vector<std::pair<int, int>> out;
  for (size_t g = 0; g < xs.size(); ++g)
    for (size_t h = g + 1; h < xs.size(); ++h)
      if (xs[g] == xs[h]) out.emplace_back(static_cast<int>(g), static_cast<int>(h));
  return out;
}

bool whitelisted(const TiePairs& whitelist, int g, int h) {
  for (const auto& [a, b] : whitelist)
    if ((a == g && b == h) || (a == h && b == g)) return true;
  return false;
}

}  // namespace

VStarResult construct_truthful_equivalent(const Instance& inst,
                                          const BidProfile& profile,
                                          const Budgets& budgets) {
  profile.validate();
  if (profile.agents() != inst.n ||
      (inst.m > 0 && profile.goods() != inst.m))
    throw UsageError("bid profile dimensions do not match the instance");
  {
    std::vector<Rational> row = inst.values[0];
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end())
      throw UsageError(
          "agent 1's valuation must induce a strict ranking; "
          "apply perturb_to_strict first");
  }

  const int m = inst.m;
  const int n = inst.n;

  RankingProfile rp;
  for (const BidVector& row : profile.rows)
    rp.rankings.push_back(induced_ranking(row));
  const BestResponse best = rr_best_response(inst, 0, rp, budgets);

  // The construction only reads b1 through its ranking; the canonical bid
  // keeps every interval below nonempty and every scale factor positive.
  BidProfile base = profile;
  base.rows[0] = bid_from_ranking(rp.rankings[0]);

  const RoundRobinResult target = round_robin(base);
  {
    const RoundRobinResult orig = round_robin(profile);
    if (orig.allocation != target.allocation)
      throw Error("internal: bid normalization changed the allocation");
  }
  const Rational reached = value_of(inst, 0, target.allocation.bundles[0]);
  if (reached < best.value)
    throw UsageError("b1 is not a best response: value " + reached.str() +
                     " but " + best.value.str() + " is achievable");

  VStarResult out;
  out.allocation = target.allocation;
  if (m == 0) return out;

  const int k = (m + n - 1) / n;
  out.rounds = k;
  const std::vector<int> pick = picks_of_agent0(target, k);
  const std::vector<int> pos0 = rp.rankings[0].positions();
  const GoodSet& bundle0 = target.allocation.bundles[0];

  std::vector<Rational> val = inst.values[0];
  BidVector bid = base.rows[0];
  TiePairs tie_whitelist;

  auto run_with = [&](const BidVector& b) {
    BidProfile p = base;
    p.rows[0] = b;
    return round_robin(p);
  };
  auto val_argmax = [&](const GoodSet& goods) {
    int arg = goods[0];
    for (int g : goods)
      if (val[g] > val[arg]) arg = g;
    return arg;
  };

  for (int r = k; r >= 1; --r) {
    const RoundRobinResult run = run_with(bid);
    if (!same_picks(run, target))
      throw ConstructionError(r, "intermediate bid no longer reproduces the run");

    const int pivot = pick[r];
    const int lambda_r = val_argmax(avail_at_round(run, r));
    if (r == k && val[pivot] != val[lambda_r])
      throw ConstructionError(
          k, "final-round pick is not the most valuable available good");

    // Move up every good ranked below the pivot but worth more than the
    // round optimum: such goods are gone before this round starts, so
    // parking them right below the pivot's predecessor changes nothing.
    Ranking rank_cur = induced_ranking(bid);
    std::vector<int> pos_cur = rank_cur.positions();
    std::vector<int> moved;
    for (int g = 0; g < m; ++g)
      if (pos_cur[g] > pos_cur[pivot] && val[g] > val[lambda_r])
        moved.push_back(g);
    std::sort(moved.begin(), moved.end(),
              [&](int a, int b) { return pos_cur[a] < pos_cur[b]; });
    if (!moved.empty()) {
      const Rational lo = bid[pivot];
      const Rational hi = pos_cur[pivot] == 0
                              ? lo + Rational(1)
                              : bid[rank_cur.order[pos_cur[pivot] - 1]];
      const Rational width = hi - lo;
      if (width.sign() <= 0)
        throw ConstructionError(r, "empty interval for moved-up bids");
      const int t = static_cast<int>(moved.size());
      for (int j = 0; j < t; ++j)
        bid[moved[j]] = hi - width * Rational(j + 1) / Rational(t + 1);
      if (!same_picks(run_with(bid), target))
        throw ConstructionError(r, "move-up step changed the run");
    }

    const Ranking rank_a = induced_ranking(bid);
    const std::vector<int> pos_a = rank_a.positions();

    if (val[pivot] == val[lambda_r]) {
      // The pick already is a round optimum: rewrite everything from the
      // pivot down to its true value, rescale the prefix above it.
      const Rational target_bid = val[pivot];
      const Rational old_bid = bid[pivot];
      BidVector nb = bid;
      for (int g = 0; g < m; ++g) {
        if (pos_a[g] >= pos_a[pivot]) {
          nb[g] = val[g];
        } else if (target_bid.sign() > 0) {
          nb[g] = bid[g] * target_bid / old_bid;
        } else if (!(bid[g] > target_bid)) {
          throw ConstructionError(r, "prefix bid fell below the pivot value");
        }
      }
      bid = std::move(nb);
    } else {
      // The pick is not the round optimum; value must flow from the later
      // picks into the pivot without disturbing any future round.
      const Rational delta = min_positive_gap(val);

      // Per later round i: the margin between its optimum and the best good
      // the mechanism could offer agent 1 instead (her next pick, the best
      // good lost to others, or nothing at all in a lone last round).
      std::vector<Rational> bounds, margins;
      std::vector<int> bound_src;
      Rational margin_sum;
      for (int i = r + 1; i <= k; ++i) {
        const GoodSet& avail_i = avail_at_round(run, i);
        const int lam_i = val_argmax(avail_i);
        if (val[lam_i] != val[pick[i]])
          throw ConstructionError(
              r, "later-round pick is not value-maximal in round " +
                     std::to_string(i));
        Rational bound(0);
        int src = -1;
        if (i < k) {
          bound = val[pick[i + 1]];
          src = pick[i + 1];
        } else {
          for (int g : avail_i)  // second-best available in the last round
            if (g != pick[k] && (src < 0 || val[g] > bound)) {
              bound = val[g];
              src = g;
            }
        }
        for (const PickStep& s : run.trace.steps)
          if (s.round == i && s.agent != 0 && (src < 0 || val[s.good] > bound)) {
            bound = val[s.good];
            src = s.good;
          }
        const Rational margin = val[pick[i]] - bound;
        if (margin.sign() < 0)
          throw ConstructionError(r, "negative transfer margin in round " +
                                         std::to_string(i));
        bounds.push_back(bound);
        margins.push_back(margin);
        bound_src.push_back(src);
        margin_sum += margin;
      }

      const Rational gap = val[lambda_r] - val[pivot];
      const Rational eps = margin_sum - gap;
      if (eps.sign() < 0)
        throw ConstructionError(
            r, "transfer margins fall short of the gap (b1 does not verify "
               "as a best response here)");

      const Rational pivot_bar =
          val[lambda_r] + delta / Rational(2) + max(eps, Rational(0));
      const Rational factor = pivot_bar / bid[pivot];
      BidVector bb = bid;
      for (int g = 0; g < m; ++g) {
        if (pos_a[g] > pos_a[pivot])
          bb[g] = val[g];
        else
          bb[g] = bid[g] * factor;
      }
      if (!same_picks(run_with(bb), target))
        throw ConstructionError(r, "pre-transfer rebid changed the run");

      // Transfer rate alpha in (0,1): the pivot ends at
      // val[lambda_r] + eps - alpha*margin_sum and each later pick at
      // bound_i + alpha*margin_i. The pivot must dominate every other good
      // still available in this round; goods agent 1 takes later drop below
      // their old values, so even eps = 0 (a value-greedy deviation tying
      // the best response exactly) leaves room when the round optimum is
      // itself one of her later picks. When it is not, the only way out is
      // the degenerate alpha = 0 transfer: the pivot lands exactly on the
      // optimum's value and wins by lexicographic tie-breaking.
      Rational alpha_hi(1);
      {
        std::vector<char> later(m, 0);
        for (int i = r + 1; i <= k; ++i) later[pick[i]] = 1;
        for (int g : avail_at_round(run, r)) {
          if (g == pivot || later[g]) continue;
          alpha_hi = min(alpha_hi, (val[lambda_r] + eps - val[g]) / margin_sum);
        }
        for (int i = r + 1; i <= k; ++i)
          alpha_hi = min(alpha_hi,
                         (val[lambda_r] + eps - bounds[i - r - 1]) /
                             (margin_sum + margins[i - r - 1]));
      }

      // Movers whose landing spot does not depend on alpha can only create
      // forced, acceptable ties; a collision touching an alpha-dependent
      // mover is retried away with a different rate.
      std::vector<char> fixed_mover(m, 0), var_mover(m, 0);
      for (int i = r + 1; i <= k; ++i)
        (margins[i - r - 1].is_zero() ? fixed_mover : var_mover)[pick[i]] = 1;

      std::vector<Rational> nv;
      TiePairs forced;
      if (alpha_hi.sign() > 0) {
        var_mover[pivot] = 1;
        Rational alpha = eps.sign() > 0
                             ? (eps - min(eps, delta) / Rational(3)) / margin_sum
                             : alpha_hi / Rational(2);
        if (!(alpha.sign() > 0 && alpha < alpha_hi)) alpha = alpha_hi / Rational(2);
        bool ok = false;
        for (int tries = 0; tries <= m * m && !ok; ++tries) {
          nv = val;
          for (int i = r + 1; i <= k; ++i)
            nv[pick[i]] = bounds[i - r - 1] + alpha * margins[i - r - 1];
          nv[pivot] = val[lambda_r] + (eps - alpha * margin_sum);
          forced.clear();
          ok = true;
          for (const auto& [g, h] : duplicate_pairs(nv)) {
            if (whitelisted(tie_whitelist, g, h)) continue;
            if (var_mover[g] || var_mover[h]) {
              ok = false;
              break;
            }
            if (fixed_mover[g] || fixed_mover[h])
              forced.emplace_back(g, h);
            else
              throw ConstructionError(r, "stationary values collided");
          }
          if (!ok) alpha = (alpha + alpha_hi) / Rational(2);
        }
        if (!ok)
          throw ConstructionError(r, "no collision-free transfer rate found");
      } else {
        // Degenerate transfer: the optimum sits outside the bundle and the
        // margins only just cover the gap, so alpha = 0 is forced and every
        // mover lands exactly on its bound.
        if (eps.sign() != 0)
          throw ConstructionError(
              r, "no feasible transfer rate (eps = " + eps.str() + ")");
        fixed_mover[pivot] = 1;
        nv = val;
        for (int i = r + 1; i <= k; ++i)
          nv[pick[i]] = bounds[i - r - 1];
        nv[pivot] = val[lambda_r];
        for (const auto& [g, h] : duplicate_pairs(nv)) {
          if (whitelisted(tie_whitelist, g, h)) continue;
          if (fixed_mover[g] || fixed_mover[h] || var_mover[g] || var_mover[h])
            forced.emplace_back(g, h);
          else
            throw ConstructionError(r, "stationary values collided");
        }
      }
      for (const auto& p : forced) tie_whitelist.push_back(p);
      val = std::move(nv);

      const Ranking rank_b = induced_ranking(bb);
      const std::vector<int> pos_b = rank_b.positions();
      BidVector nb = std::move(bb);
      for (int g = 0; g < m; ++g)
        if (pos_b[g] >= pos_b[pivot]) nb[g] = val[g];
      bid = std::move(nb);
    }

    // Round invariants. A failure here is a verification failure.
    if (!same_picks(run_with(bid), target))
      throw ConstructionError(r, "round rewrite changed the run");
    {
      Rational now, orig;
      for (int g : bundle0) {
        now += val[g];
        orig += inst.values[0][g];
      }
      if (now != orig)
        throw ConstructionError(r, "property (i): bundle value drifted");
    }
    for (int g = 0; g < m; ++g)
      if (!goodset_contains(bundle0, g) && val[g] != inst.values[0][g])
        throw ConstructionError(r, "property (ii): off-bundle value changed");
    {
      const Ranking rank_r = induced_ranking(bid);
      const std::vector<int> pos_r = rank_r.positions();
      for (int g = 0; g < m; ++g)
        if (pos_r[g] >= pos_r[pivot] && bid[g] != val[g])
          throw ConstructionError(r, "property (iii): not truthful from here");
      if (r >= 2) {
        const int limit = pos0[pick[r - 1]];
        for (int p = 0; p <= limit; ++p)
          if (rank_r.order[p] != rp.rankings[0].order[p])
            throw ConstructionError(r, "property (iv): ranking prefix changed");
      }
    }
    // (v), weakened to tolerate the exact ties the degenerate transfers
    // deliberately introduced; everything else must stay pairwise distinct.
    for (const auto& [g, h] : duplicate_pairs(val))
      if (!whitelisted(tie_whitelist, g, h))
        throw ConstructionError(r, "property (v): unexpected duplicate values");
  }

  for (int g = 0; g < m; ++g)
    if (bid[g] != val[g])
      throw ConstructionError(1, "final bid is not the truthful bid of v1*");

  out.v1_star = std::move(val);
  out.b1_star = std::move(bid);
  return out;
}

}  // namespace fairdiv
