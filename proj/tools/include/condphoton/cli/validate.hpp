#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace condphoton::cli {

enum class Profile { standard, strict };

Profile parse_profile(const std::string& text);

struct CheckResult {
  std::string name;
  double deviation = 0.0;
  double threshold = 0.0;
  std::size_t cases = 0;
  std::string worst_case;
  bool passed() const { return deviation <= threshold; }
};

/// Runs every library invariant. The strict profile divides the numeric
/// tolerances by 10; ordering checks are unaffected.
std::vector<CheckResult> run_validate(Profile profile);

nlohmann::json validation_report(Profile profile, const std::vector<CheckResult>& checks);

}  // namespace condphoton::cli
