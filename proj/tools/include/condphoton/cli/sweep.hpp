#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "condphoton/cli/config.hpp"
#include "condphoton/subtract.hpp"

namespace condphoton::cli {

struct Row {
  double n0 = 0.0;
  double scaled = 0.0;  // n0 * R or n0 * r
  Model model = Model::exact;
  std::string detector;
  std::optional<OutcomeStatistics> stats;  // empty for impossible outcomes
};

/// Rows for one n0: models in config order, detectors within each model.
std::vector<Row> evaluate_point(const SweepConfig& cfg, double n0);

/// Grid-major rows; points run concurrently, output order is fixed.
std::vector<Row> run_sweep(const SweepConfig& cfg);

void write_csv(std::ostream& out, const std::vector<Row>& rows);

/// n0 where |<n>_exact - <n>_A| = |<n>_exact - <n>_E|, interpolated in log n0.
struct Crossover {
  std::string detector;
  double n0 = 0.0;
  double scaled = 0.0;
};
std::vector<Crossover> find_crossovers(const std::vector<Row>& rows);

nlohmann::json sweep_json(const SweepConfig& cfg, const std::vector<Row>& rows);

/// Full outcome records at the state's own n0. Posteriors up to 4096 entries
/// are included.
nlohmann::json point_json(const SweepConfig& cfg);

/// Shortest round-trip decimal form.
std::string format_double(double value);

}  // namespace condphoton::cli
