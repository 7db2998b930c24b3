#include "condphoton/serialization.hpp"

#include "condphoton/errors.hpp"

namespace condphoton {

nlohmann::json to_json(const PhotonNumberDistribution& p) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : p.params()) params[key] = value;
  return {{"kind", p.kind()},
          {"params", params},
          {"cutoff", p.cutoff()},
          {"tail_bound", p.tail_bound()},
          {"probs", std::vector<double>(p.probs().begin(), p.probs().end())}};
}

PhotonNumberDistribution distribution_from_json(const nlohmann::json& j) {
  try {
    auto probs = j.at("probs").get<std::vector<double>>();
    if (j.contains("cutoff") && j.at("cutoff").get<std::size_t>() + 1 != probs.size()) {
      throw DomainError("distribution JSON: cutoff does not match probs length");
    }
    std::map<std::string, double> params;
    if (j.contains("params")) params = j.at("params").get<std::map<std::string, double>>();
    return {std::move(probs), j.value("tail_bound", 0.0), j.value("kind", "custom"),
            std::move(params)};
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("distribution JSON: ") + e.what());
  }
}

nlohmann::json to_json(const OutcomeRecord& record, bool with_posterior) {
  nlohmann::json j = {{"probability", record.probability},
                      {"mean", record.mean},
                      {"second_factorial", record.second_factorial}};
  if (with_posterior) j["posterior"] = to_json(record.posterior);
  return j;
}

nlohmann::json to_json(const OutcomeStatistics& stats) {
  return {{"probability", stats.probability},
          {"mean", stats.mean},
          {"second_factorial", stats.second_factorial}};
}

}  // namespace condphoton
