#pragma once

#include <nlohmann/json.hpp>

#include "condphoton/states.hpp"
#include "condphoton/subtract.hpp"

namespace condphoton {

/// {"kind", "params", "cutoff", "tail_bound", "probs"}
nlohmann::json to_json(const PhotonNumberDistribution& p);

/// Inverse of to_json. Throws DomainError on malformed input.
PhotonNumberDistribution distribution_from_json(const nlohmann::json& j);

/// {"probability", "mean", "second_factorial"} plus "posterior" when
/// `with_posterior` is set.
nlohmann::json to_json(const OutcomeRecord& record, bool with_posterior);

nlohmann::json to_json(const OutcomeStatistics& stats);

}  // namespace condphoton
