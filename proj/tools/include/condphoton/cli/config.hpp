#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "condphoton/detectors.hpp"
#include "condphoton/states.hpp"

namespace condphoton::cli {

/// Bad flags, unparseable values or an inconsistent sweep definition.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Process { subtract, add, sequential };
enum class Model { exact, A, E };
enum class Format { csv, json };

/// A detector column of the sweep. `sequential` is k single-photon clicks in
/// succession (subtraction only).
struct DetectorChoice {
  enum class Kind { resolving, nonresolving, sequential };
  Kind kind = Kind::nonresolving;
  unsigned k = 1;

  /// "r:K", "n:K" or "s:K"
  std::string label() const;
  DetectorModel model() const;
  bool operator==(const DetectorChoice&) const = default;
};

struct SweepConfig {
  Process process = Process::subtract;
  FieldStateSpec state = FieldStateSpec::thermal(1.0);
  std::vector<DetectorChoice> detectors{{DetectorChoice::Kind::nonresolving, 1}};
  double parameter = 1e-2;  // R for subtraction, lambda for addition
  std::vector<double> grid;  // n0 values
  std::vector<Model> models{Model::exact, Model::A, Model::E};
  Format format = Format::csv;
  std::string output_path;  // empty: stdout
  double epsilon = kDefaultEpsilon;
  unsigned threads = 0;  // 0: hardware concurrency, capped at 4

  /// R, or r = sinh^2(lambda) for addition.
  double scale() const;
  /// Throws ConfigError. Single-point evaluations skip the grid and state
  /// family checks.
  void validate(bool sweep = true) const;
};

std::string to_string(Process p);
std::string to_string(Model m);
Process parse_process(const std::string& text);
Format parse_format(const std::string& text);

/// coherent:N0 | thermal:N0 | mixed:NC,NT | fock:M
FieldStateSpec parse_state(const std::string& text);
std::string describe_state(const FieldStateSpec& spec);

/// Each item is "r:K", "n:K" or "s:K"; items may also be comma lists.
std::vector<DetectorChoice> parse_detectors(const std::vector<std::string>& items);
/// "exact,A,E"
std::vector<Model> parse_models(const std::string& text);
/// "MIN,MAX,POINTS", log-spaced n0 values.
std::vector<double> parse_grid(const std::string& text);

std::vector<double> log_grid(double lo, double hi, std::size_t points);
/// 60 log-spaced n0 values with n0 * scale spanning [1e-3, 1e2].
std::vector<double> default_grid(double scale);

/// fig1 .. fig4
SweepConfig preset(const std::string& name);

/// The state family of `base` rescaled to mean photon number n0 (mixed light
/// keeps n_c / n_t).
FieldStateSpec state_at(const FieldStateSpec& base, double n0);

}  // namespace condphoton::cli
