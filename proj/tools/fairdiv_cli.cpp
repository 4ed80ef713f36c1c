// fairdiv: exact-arithmetic laboratory for allocation mechanisms, fairness
// certificates, and pure Nash equilibria of Round-Robin and Mod-Cut&Choose.
//
// Machine-readable JSON goes to stdout, diagnostics to stderr.
// Exit codes: 0 ok, 1 theorem violation / failed construction, 2 bad input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fairdiv/constructions.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/harness.hpp"
#include "fairdiv/json_io.hpp"
#include "fairdiv/mechanisms.hpp"
#include "fairdiv/strategy.hpp"

namespace {

using fairdiv::Allocation;
using fairdiv::BidProfile;
using fairdiv::Instance;
using fairdiv::Ranking;
using fairdiv::RankingProfile;
using fairdiv::Rational;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fairdiv::ParseError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load_instance(const std::string& path) {
  return fairdiv::parse_instance(slurp(path));
}

BidProfile load_bids(const std::string& path, const Instance& inst) {
  BidProfile p = fairdiv::parse_bid_profile(slurp(path));
  if (p.agents() != inst.n || (inst.m > 0 && p.goods() != inst.m))
    throw fairdiv::UsageError("bid profile dimensions do not match the instance");
  return p;
}

RankingProfile rankings_for(const Instance& inst, const std::string& rankings_path,
                            const std::string& bids_path) {
  RankingProfile p;
  if (!rankings_path.empty()) {
    for (Ranking& r : fairdiv::parse_rankings(slurp(rankings_path))) {
      r.validate(inst.m);
      p.rankings.push_back(std::move(r));
    }
  } else if (!bids_path.empty()) {
    for (const auto& row : load_bids(bids_path, inst).rows)
      p.rankings.push_back(fairdiv::induced_ranking(row));
  } else {
    throw fairdiv::UsageError("provide --rankings or --bids");
  }
  if (p.agents() != inst.n)
    throw fairdiv::UsageError("ranking count does not match agent count");
  return p;
}

std::vector<int> parse_order(const std::string& text, int n) {
  if (text.empty()) return {};
  std::vector<int> order;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    order.push_back(std::stoi(tok) - 1);  // agents are numbered from 1
  if (static_cast<int>(order.size()) != n)
    throw fairdiv::UsageError("--order must list every agent exactly once");
  return order;
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

struct BudgetFlags {
  long long profiles = 0;
  int br_goods = 0;
  int mcc_goods = 0;
  int mms_two = 0;
  int mms_general = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--budget-profiles", profiles,
                    "Max ranking profiles for PNE enumeration");
    cmd->add_option("--budget-br-goods", br_goods,
                    "Max goods for m! best-response search");
    cmd->add_option("--budget-mcc-goods", mcc_goods,
                    "Max goods for 2^m partition search");
    cmd->add_option("--budget-mms-two", mms_two,
                    "Max goods for two-part maximin enumeration");
    cmd->add_option("--budget-mms-general", mms_general,
                    "Max goods for general maximin enumeration");
  }
  fairdiv::Budgets resolve() const {
    fairdiv::Budgets b;
    if (profiles > 0) b.enumerate_max_profiles = profiles;
    if (br_goods > 0) b.best_response_max_goods = br_goods;
    if (mcc_goods > 0) b.mcc_max_goods = mcc_goods;
    if (mms_two > 0) b.mms.two_parts_max_goods = mms_two;
    if (mms_general > 0) b.mms.general_max_goods = mms_general;
    return b;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fairdiv: allocation mechanisms, fairness certificates, and pure Nash "
      "equilibria with exact rational arithmetic"};
  app.require_subcommand(1);

  // --- gen -------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate seeded instances (JSON lines)");
  fairdiv::GenConfig gen_cfg;
  gen->add_option("--agents", gen_cfg.agents, "Agent count")->default_val(2);
  gen->add_option("--goods", gen_cfg.goods, "Good count")->default_val(4);
  gen->add_option("--lo", gen_cfg.value_lo, "Smallest value")->default_val(0);
  gen->add_option("--hi", gen_cfg.value_hi, "Largest value")->default_val(9);
  gen->add_option("--count", gen_cfg.count, "Instances to emit")->default_val(1);
  gen->add_option("--seed", gen_cfg.seed, "RNG seed")->default_val(0);
  gen->add_flag("--strict", gen_cfg.strict, "No agent values two goods equally");
  gen->add_flag("--ties", gen_cfg.force_ties, "Plant a tie for every agent");

  // --- allocate ----------------------------------------------------------
  auto* allocate = app.add_subcommand("allocate", "Run a mechanism on bids");
  std::string alloc_mechanism, alloc_instance, alloc_bids, alloc_order;
  bool alloc_trace = false;
  allocate->add_option("--mechanism", alloc_mechanism, "round-robin | mcc")
      ->required();
  allocate->add_option("--instance", alloc_instance, "Instance file")->required();
  allocate->add_option("--bids", alloc_bids, "Bid profile file")->required();
  allocate->add_option("--order", alloc_order,
                       "Agent priority, e.g. 1,2 (round-robin only)");
  allocate->add_flag("--trace", alloc_trace, "Include the execution trace");

  // --- fairness ----------------------------------------------------------
  auto* fairness = app.add_subcommand("fairness", "Fairness report for an allocation");
  std::string fair_instance, fair_alloc, fair_notions = "ef,prop,ef1,efx";
  std::string fair_alpha = "1";
  fairness->add_option("--instance", fair_instance)->required();
  fairness->add_option("--allocation", fair_alloc)->required();
  fairness->add_option("--notions", fair_notions,
                       "Comma list of ef,prop,ef1,efx,mms");
  fairness->add_option("--alpha", fair_alpha, "Factor for the mms notion (p/q)");
  BudgetFlags fair_budgets;
  fair_budgets.attach(fairness);

  // --- mms ---------------------------------------------------------------
  auto* mms_cmd = app.add_subcommand("mms", "Exact maximin share with witness");
  std::string mms_instance, mms_subset;
  int mms_agent = 1, mms_parts = 0;
  mms_cmd->add_option("--instance", mms_instance)->required();
  mms_cmd->add_option("--agent", mms_agent, "Agent (1-based)")->required();
  mms_cmd->add_option("--parts", mms_parts, "Bundle count (default: agent count)");
  mms_cmd->add_option("--subset", mms_subset,
                      "Comma list of good indices (default: all)");
  BudgetFlags mms_budgets;
  mms_budgets.attach(mms_cmd);

  // --- best-response -------------------------------------------------------
  auto* br_cmd = app.add_subcommand("best-response",
                                    "Brute-force best response (round-robin)");
  std::string br_mechanism = "round-robin", br_instance, br_rankings, br_bids;
  int br_agent = 1;
  br_cmd->add_option("--mechanism", br_mechanism, "round-robin");
  br_cmd->add_option("--instance", br_instance)->required();
  br_cmd->add_option("--agent", br_agent, "Agent (1-based)")->required();
  br_cmd->add_option("--rankings", br_rankings, "Opponent rankings file");
  br_cmd->add_option("--bids", br_bids, "Opponent bids file");
  BudgetFlags br_budgets;
  br_budgets.attach(br_cmd);

  // --- verify-pne ----------------------------------------------------------
  auto* verify = app.add_subcommand("verify-pne", "Certify a profile as PNE or not");
  std::string ver_mechanism, ver_instance, ver_rankings, ver_bids;
  verify->add_option("--mechanism", ver_mechanism, "round-robin | mcc")->required();
  verify->add_option("--instance", ver_instance)->required();
  verify->add_option("--rankings", ver_rankings, "Ranking profile file (round-robin)");
  verify->add_option("--bids", ver_bids, "Bid profile file");
  BudgetFlags ver_budgets;
  ver_budgets.attach(verify);

  // --- find-pne --------------------------------------------------------------
  auto* find = app.add_subcommand("find-pne",
                                  "Enumerate all round-robin PNE profiles");
  std::string find_mechanism = "round-robin", find_instance;
  find->add_option("--mechanism", find_mechanism, "round-robin");
  find->add_option("--instance", find_instance)->required();
  BudgetFlags find_budgets;
  find_budgets.attach(find);

  // --- construct-pne ----------------------------------------------------------
  auto* construct = app.add_subcommand("construct-pne",
                                       "Construct a verified mcc PNE");
  std::string cons_mechanism = "mcc", cons_instance;
  construct->add_option("--mechanism", cons_mechanism, "mcc");
  construct->add_option("--instance", cons_instance)->required();
  BudgetFlags cons_budgets;
  cons_budgets.attach(construct);

  // --- perturb ------------------------------------------------------------
  auto* perturb = app.add_subcommand("perturb",
                                     "Strictness-preserving tie perturbation");
  std::string per_instance, per_bids;
  int per_agent = 1;
  perturb->add_option("--instance", per_instance)->required();
  perturb->add_option("--agent", per_agent, "Agent (1-based)")->required();
  perturb->add_option("--bids", per_bids, "Bid profile file")->required();

  // --- vstar ---------------------------------------------------------------
  auto* vstar = app.add_subcommand(
      "vstar", "Truthful-equivalent valuation for the first picker");
  std::string vs_instance, vs_bids;
  vstar->add_option("--instance", vs_instance)->required();
  vstar->add_option("--bids", vs_bids, "Bid profile file")->required();
  BudgetFlags vs_budgets;
  vs_budgets.attach(vstar);

  // --- verify-theorem ---------------------------------------------------------
  auto* theorem = app.add_subcommand("verify-theorem",
                                     "Run a batch theorem verification");
  std::string th_id;
  std::uint64_t th_seed = 0;
  int th_count = 0;
  bool th_csv = false;
  std::string ids;
  for (const std::string& t : fairdiv::known_theorems()) ids += t + " ";
  theorem->add_option("id", th_id, "One of: " + ids)->required();
  theorem->add_option("--seed", th_seed, "RNG seed")->default_val(0);
  theorem->add_option("--count", th_count, "Instances per family (0 = pinned)");
  theorem->add_flag("--csv", th_csv, "Emit a CSV summary instead of JSON");
  BudgetFlags th_budgets;
  th_budgets.attach(theorem);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0, bad usage exits 2
  }

  try {
    if (*gen) {
      fairdiv::Rng rng(gen_cfg.seed);
      for (int i = 0; i < gen_cfg.count; ++i) {
        const Instance inst = fairdiv::gen_instance(gen_cfg, rng);
        std::cout << nlohmann::json::parse(fairdiv::serialize_instance(inst))
                         .dump()
                  << "\n";
      }
    } else if (*allocate) {
      const Instance inst = load_instance(alloc_instance);
      const BidProfile bids = load_bids(alloc_bids, inst);
      if (alloc_mechanism == "round-robin") {
        const auto res =
            fairdiv::round_robin(bids, parse_order(alloc_order, inst.n));
        nlohmann::json j = fairdiv::to_json(res.allocation);
        if (alloc_trace) j["trace"] = fairdiv::to_json(res.trace);
        emit(j);
      } else if (alloc_mechanism == "mcc") {
        if (inst.n != 2)
          throw fairdiv::UsageError("mcc needs exactly two agents");
        const auto res = fairdiv::mod_cut_and_choose(bids.rows[0], bids.rows[1]);
        nlohmann::json j = fairdiv::to_json(res.allocation);
        if (alloc_trace) j["cut"] = fairdiv::to_json(res.cut);
        emit(j);
      } else {
        throw fairdiv::UsageError("unknown mechanism \"" + alloc_mechanism +
                                  "\" (round-robin | mcc)");
      }
    } else if (*fairness) {
      const Instance inst = load_instance(fair_instance);
      const Allocation alloc = fairdiv::parse_allocation(slurp(fair_alloc));
      const fairdiv::Budgets budgets = fair_budgets.resolve();
      nlohmann::json notions = nlohmann::json::object();
      std::stringstream ss(fair_notions);
      std::string notion;
      while (std::getline(ss, notion, ',')) {
        if (notion == "ef") notions["ef"] = to_json(fairdiv::is_ef(inst, alloc));
        else if (notion == "prop") notions["prop"] = to_json(fairdiv::is_prop(inst, alloc));
        else if (notion == "ef1") notions["ef1"] = to_json(fairdiv::is_ef1(inst, alloc));
        else if (notion == "efx") notions["efx"] = to_json(fairdiv::is_efx(inst, alloc));
        else if (notion == "mms")
          notions["mms"] = to_json(fairdiv::is_alpha_mms(
              inst, alloc, Rational::parse(fair_alpha), budgets.mms));
        else
          throw fairdiv::UsageError("unknown notion \"" + notion + "\"");
      }
      emit(nlohmann::json{{"notions", notions}});
    } else if (*mms_cmd) {
      const Instance inst = load_instance(mms_instance);
      fairdiv::GoodSet subset;
      if (mms_subset.empty()) {
        for (int g = 0; g < inst.m; ++g) subset.push_back(g);
      } else {
        std::stringstream ss(mms_subset);
        std::string tok;
        while (std::getline(ss, tok, ',')) subset.push_back(std::stoi(tok));
      }
      const int parts = mms_parts > 0 ? mms_parts : inst.n;
      emit(to_json(fairdiv::mms(inst, mms_agent - 1, parts, subset,
                                mms_budgets.resolve().mms)));
    } else if (*br_cmd) {
      if (br_mechanism != "round-robin")
        throw fairdiv::UsageError(
            "best-response supports only round-robin (see construct-pne for mcc)");
      const Instance inst = load_instance(br_instance);
      const RankingProfile profile = rankings_for(inst, br_rankings, br_bids);
      emit(to_json(fairdiv::rr_best_response(inst, br_agent - 1, profile,
                                             br_budgets.resolve())));
    } else if (*verify) {
      const Instance inst = load_instance(ver_instance);
      if (ver_mechanism == "round-robin") {
        const RankingProfile profile = rankings_for(inst, ver_rankings, ver_bids);
        emit(to_json(fairdiv::rr_is_pne(inst, profile, ver_budgets.resolve())));
      } else if (ver_mechanism == "mcc") {
        if (ver_bids.empty())
          throw fairdiv::UsageError("mcc verification needs --bids");
        const BidProfile bids = load_bids(ver_bids, inst);
        if (inst.n != 2)
          throw fairdiv::UsageError("mcc needs exactly two agents");
        emit(to_json(fairdiv::mcc_verify_pne(inst, bids.rows[0], bids.rows[1],
                                             ver_budgets.resolve())));
      } else {
        throw fairdiv::UsageError("unknown mechanism \"" + ver_mechanism + "\"");
      }
    } else if (*find) {
      if (find_mechanism != "round-robin")
        throw fairdiv::UsageError(
            "find-pne enumerates round-robin profiles; use construct-pne for mcc");
      const Instance inst = load_instance(find_instance);
      const auto certs = fairdiv::rr_enumerate_pne(inst, find_budgets.resolve());
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& cert : certs) arr.push_back(to_json(cert));
      emit(nlohmann::json{{"count", certs.size()}, {"equilibria", arr}});
    } else if (*construct) {
      if (cons_mechanism != "mcc")
        throw fairdiv::UsageError(
            "construct-pne builds mcc equilibria; use find-pne for round-robin");
      const Instance inst = load_instance(cons_instance);
      const auto res = fairdiv::mcc_construct_pne(inst, cons_budgets.resolve());
      nlohmann::json bids = nlohmann::json::array();
      bids.push_back(nlohmann::json::array());
      bids.push_back(nlohmann::json::array());
      for (const Rational& b : res.b1) bids[0].push_back(fairdiv::rational_to_json(b));
      for (const Rational& b : res.b2) bids[1].push_back(fairdiv::rational_to_json(b));
      emit(nlohmann::json{{"bids", bids},
                          {"certificate", to_json(res.certificate)}});
    } else if (*perturb) {
      const Instance inst = load_instance(per_instance);
      const BidProfile bids = load_bids(per_bids, inst);
      emit(to_json(fairdiv::perturb_to_strict(inst, per_agent - 1, bids)));
    } else if (*vstar) {
      const Instance inst = load_instance(vs_instance);
      const BidProfile bids = load_bids(vs_bids, inst);
      emit(to_json(fairdiv::construct_truthful_equivalent(inst, bids,
                                                          vs_budgets.resolve())));
    } else if (*theorem) {
      fairdiv::ExperimentConfig cfg =
          fairdiv::default_experiment(th_id, th_seed, th_count);
      cfg.budgets = th_budgets.resolve();
      const fairdiv::ExperimentReport rep = fairdiv::run_experiment(cfg);
      if (th_csv) std::cout << fairdiv::report_to_csv(rep);
      else emit(fairdiv::report_to_json(rep));
      std::cerr << "theorem " << rep.theorem << ": " << rep.passed << " passed, "
                << rep.failed << " failed, " << rep.skipped << " skipped in "
                << rep.wall_seconds << "s\n";
      if (rep.failed > 0) return 1;
    }
  } catch (const fairdiv::ConstructionError& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return 1;
  } catch (const fairdiv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
