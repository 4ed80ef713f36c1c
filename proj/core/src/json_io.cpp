#include "fairdiv/json_io.hpp"

#include <limits>

#include "fairdiv/errors.hpp"

namespace fairdiv {

using nlohmann::json;

json rational_to_json(const Rational& r) {
  if (r.is_integer()) {
    const BigInt num = r.numerator();
    if (num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max())
      return static_cast<std::int64_t>(num);
  }
  return r.str();
}

Rational rational_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number())
    throw ParseError(path + ": non-integer JSON numbers are inexact; " +
                     "write the value as a string like \"1.2\" or \"6/5\"");
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  throw ParseError(path + ": expected an integer or a rational string");
}

namespace {

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::vector<Rational>> parse_matrix(const json& j,
                                                const std::string& key) {
  if (!j.contains(key)) throw ParseError("missing field \"" + key + "\"");
  const json& rows = j.at(key);
  if (!rows.is_array() || rows.empty())
    throw ParseError(key + ": expected a non-empty array of rows");
  std::vector<std::vector<Rational>> out;
  for (size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    const std::string rp = key + "[" + std::to_string(i) + "]";
    if (!row.is_array()) throw ParseError(rp + ": expected an array");
    std::vector<Rational> r;
    for (size_t g = 0; g < row.size(); ++g) {
      const std::string ep = rp + "[" + std::to_string(g) + "]";
      Rational v = rational_from_json(row[g], ep);
      if (v.sign() < 0) throw ParseError(ep + ": negative value " + v.str());
      r.push_back(std::move(v));
    }
    if (!out.empty() && r.size() != out[0].size())
      throw ParseError(rp + ": row length differs from previous rows");
    out.push_back(std::move(r));
  }
  return out;
}

json matrix_to_json(const std::vector<std::vector<Rational>>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (const Rational& v : row) r.push_back(rational_to_json(v));
    out.push_back(std::move(r));
  }
  return out;
}

json goodset_to_json(const GoodSet& s) {
  json out = json::array();
  for (int g : s) out.push_back(g);
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

Instance parse_instance(const std::string& text) {
  const json j = parse_document(text);
  if (!j.contains("agents")) throw ParseError("missing field \"agents\"");
  if (!j.at("agents").is_number_integer() || j.at("agents").get<int>() < 1)
    throw ParseError("agents: expected a positive integer");
  const int n = j.at("agents").get<int>();

  auto values = parse_matrix(j, "valuations");
  if (static_cast<int>(values.size()) != n)
    throw ParseError("valuations: expected " + std::to_string(n) + " rows, got " +
                     std::to_string(values.size()));
  const int m = static_cast<int>(values[0].size());

  std::vector<std::string> names;
  if (j.contains("goods")) {
    const json& goods = j.at("goods");
    if (!goods.is_array()) throw ParseError("goods: expected an array of names");
    for (const auto& g : goods) {
      if (!g.is_string()) throw ParseError("goods: names must be strings");
      names.push_back(g.get<std::string>());
    }
    if (static_cast<int>(names.size()) != m)
      throw ParseError("goods: expected " + std::to_string(m) + " names, got " +
                       std::to_string(names.size()));
  }
  try {
    return Instance::create(std::move(values), std::move(names));
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_instance(const Instance& inst) {
  json j;
  j["agents"] = inst.n;
  j["goods"] = inst.good_names;
  j["valuations"] = matrix_to_json(inst.values);
  return dump(j);
}

BidProfile parse_bid_profile(const std::string& text) {
  const json j = parse_document(text);
  BidProfile profile;
  profile.rows = parse_matrix(j, "bids");
  return profile;
}

std::string serialize_bid_profile(const BidProfile& profile) {
  json j;
  j["bids"] = matrix_to_json(profile.rows);
  return dump(j);
}

Allocation parse_allocation(const std::string& text) {
  const json j = parse_document(text);
  if (!j.contains("bundles")) throw ParseError("missing field \"bundles\"");
  const json& bundles = j.at("bundles");
  if (!bundles.is_array()) throw ParseError("bundles: expected an array");
  Allocation alloc;
  for (size_t i = 0; i < bundles.size(); ++i) {
    const std::string bp = "bundles[" + std::to_string(i) + "]";
    if (!bundles[i].is_array()) throw ParseError(bp + ": expected an array");
    GoodSet s;
    for (const auto& g : bundles[i]) {
      if (!g.is_number_integer())
        throw ParseError(bp + ": good indices must be integers");
      s.push_back(g.get<int>());
    }
    try {
      alloc.bundles.push_back(sorted_goodset(std::move(s)));
    } catch (const UsageError& e) {
      throw ParseError(bp + ": " + e.what());
    }
  }
  return alloc;
}

std::string serialize_allocation(const Allocation& alloc) {
  return dump(to_json(alloc));
}

std::vector<Ranking> parse_rankings(const std::string& text) {
  const json j = parse_document(text);
  if (!j.contains("rankings")) throw ParseError("missing field \"rankings\"");
  const json& arr = j.at("rankings");
  if (!arr.is_array()) throw ParseError("rankings: expected an array");
  std::vector<Ranking> out;
  for (size_t i = 0; i < arr.size(); ++i) {
    const std::string rp = "rankings[" + std::to_string(i) + "]";
    if (!arr[i].is_array()) throw ParseError(rp + ": expected an array");
    Ranking r;
    for (const auto& g : arr[i]) {
      if (!g.is_number_integer())
        throw ParseError(rp + ": good indices must be integers");
      r.order.push_back(g.get<int>());
    }
    try {
      r.validate(static_cast<int>(r.order.size()));
    } catch (const UsageError& e) {
      throw ParseError(rp + ": " + e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string serialize_rankings(const std::vector<Ranking>& rankings) {
  json arr = json::array();
  for (const Ranking& r : rankings) arr.push_back(r.order);
  json j;
  j["rankings"] = arr;
  return dump(j);
}

json to_json(const Allocation& alloc) {
  json bundles = json::array();
  for (const GoodSet& b : alloc.bundles) bundles.push_back(goodset_to_json(b));
  return json{{"bundles", bundles}};
}

json to_json(const PickTrace& trace) {
  json steps = json::array();
  for (const PickStep& s : trace.steps)
    steps.push_back(json{{"round", s.round},
                         {"agent", s.agent},
                         {"good", s.good},
                         {"available", goodset_to_json(s.available)}});
  return json{{"steps", steps}};
}

json to_json(const CutResult& cut) {
  return json{{"E1", goodset_to_json(cut.e1)},
              {"E2", goodset_to_json(cut.e2)},
              {"chosen", cut.chosen}};
}

json to_json(const FairnessReport& report) {
  json j{{"notion", notion_name(report.notion)}, {"holds", report.holds}};
  if (report.witness) {
    json w{{"agent", report.witness->agent},
           {"own_value", rational_to_json(report.witness->own_value)},
           {"other_value", rational_to_json(report.witness->other_value)}};
    if (report.witness->envied) w["envied"] = *report.witness->envied;
    if (report.witness->good) w["good"] = *report.witness->good;
    j["witness"] = w;
  }
  return j;
}

json to_json(const MmsCertificate& cert) {
  json parts = json::array();
  for (const GoodSet& p : cert.witness_partition)
    parts.push_back(goodset_to_json(p));
  return json{{"agent", cert.agent},
              {"parts", cert.n_parts},
              {"value", rational_to_json(cert.value)},
              {"witness_partition", parts}};
}

json to_json(const AlphaMmsReport& report) {
  json agents = json::array();
  for (const AlphaMmsAgent& a : report.agents)
    agents.push_back(json{{"value", rational_to_json(a.value)},
                          {"mms", rational_to_json(a.mms_value)},
                          {"ok", a.ok}});
  return json{{"alpha", rational_to_json(report.alpha)},
              {"holds", report.holds},
              {"agents", agents}};
}

json to_json(const EquilibriumCertificate& cert) {
  json j{{"mechanism", cert.mechanism},
         {"is_pne", cert.is_pne},
         {"deviations_checked", cert.deviations_checked},
         {"allocation", to_json(cert.allocation)}};
  if (cert.rankings) {
    json arr = json::array();
    for (const Ranking& r : cert.rankings->rankings) arr.push_back(r.order);
    j["rankings"] = arr;
  }
  if (cert.bids) j["bids"] = matrix_to_json(cert.bids->rows);
  if (cert.witness) {
    json w{{"agent", cert.witness->agent},
           {"value_before", rational_to_json(cert.witness->value_before)},
           {"value_after", rational_to_json(cert.witness->value_after)}};
    if (cert.witness->ranking) w["ranking"] = cert.witness->ranking->order;
    if (cert.witness->bid) {
      json arr = json::array();
      for (const Rational& b : *cert.witness->bid)
        arr.push_back(rational_to_json(b));
      w["bid"] = arr;
    }
    j["witness"] = w;
  }
  return j;
}

json to_json(const BestResponse& br) {
  return json{{"ranking", br.ranking.order},
              {"value", rational_to_json(br.value)},
              {"enumerated", br.enumerated}};
}

json to_json(const PerturbationResult& res) {
  json v = json::array();
  for (const Rational& x : res.v_prime) v.push_back(rational_to_json(x));
  json j{{"v_prime", v},
         {"epsilon", rational_to_json(res.epsilon)},
         {"modified_goods", goodset_to_json(res.modified_goods)}};
  if (res.zero_fixed_good) j["zero_fixed_good"] = *res.zero_fixed_good;
  return j;
}

json to_json(const HistoryTrace& trace) {
  json sets = json::array();
  for (const GoodSet& s : trace.sets) sets.push_back(goodset_to_json(s));
  return json{{"available_sets", sets}};
}

json to_json(const VStarResult& res) {
  json v = json::array();
  for (const Rational& x : res.v1_star) v.push_back(rational_to_json(x));
  json b = json::array();
  for (const Rational& x : res.b1_star) b.push_back(rational_to_json(x));
  return json{{"v1_star", v},
              {"b1_star", b},
              {"allocation", to_json(res.allocation)},
              {"rounds", res.rounds}};
}

}  // namespace fairdiv
