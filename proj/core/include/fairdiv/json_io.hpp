#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "fairdiv/constructions.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/mechanisms.hpp"
#include "fairdiv/strategy.hpp"

namespace fairdiv {

/// Integral rationals become JSON integers, everything else a "p/q" string.
nlohmann::json rational_to_json(const Rational& r);

/// Accepts JSON integers and the string forms "p/q" and exact decimals.
/// Non-integral JSON numbers are rejected (they are not exact); `path`
/// names the offending field in error messages.
Rational rational_from_json(const nlohmann::json& j, const std::string& path);

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

BidProfile parse_bid_profile(const std::string& text);
std::string serialize_bid_profile(const BidProfile& profile);

Allocation parse_allocation(const std::string& text);
std::string serialize_allocation(const Allocation& alloc);

std::vector<Ranking> parse_rankings(const std::string& text);
std::string serialize_rankings(const std::vector<Ranking>& rankings);

nlohmann::json to_json(const Allocation& alloc);
nlohmann::json to_json(const PickTrace& trace);
nlohmann::json to_json(const CutResult& cut);
nlohmann::json to_json(const FairnessReport& report);
nlohmann::json to_json(const MmsCertificate& cert);
nlohmann::json to_json(const AlphaMmsReport& report);
nlohmann::json to_json(const EquilibriumCertificate& cert);
nlohmann::json to_json(const BestResponse& br);
nlohmann::json to_json(const PerturbationResult& res);
nlohmann::json to_json(const HistoryTrace& trace);
nlohmann::json to_json(const VStarResult& res);

}  // namespace fairdiv
