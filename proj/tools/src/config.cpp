#include "condphoton/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "condphoton/errors.hpp"

namespace condphoton::cli {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_real(const std::string& text, const std::string& what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError("invalid " + what + ": '" + text + "'");
  }
  return value;
}

unsigned long parse_count(const std::string& text, const std::string& what) {
  unsigned long value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid " + what + ": '" + text + "'");
  }
  return value;
}

SweepConfig mixed_preset(double ratio) {
  SweepConfig cfg;
  cfg.process = Process::subtract;
  // n_c = ratio * n_t at n0 = 1
  cfg.state = FieldStateSpec::mixed_light(ratio / (1.0 + ratio), 1.0 / (1.0 + ratio));
  cfg.detectors = {{DetectorChoice::Kind::nonresolving, 1},
                   {DetectorChoice::Kind::resolving, 1}};
  cfg.parameter = 1e-2;
  return cfg;
}

}  // namespace

std::string DetectorChoice::label() const {
  const char* prefix = kind == Kind::resolving ? "r:" : kind == Kind::nonresolving ? "n:" : "s:";
  return prefix + std::to_string(k);
}

DetectorModel DetectorChoice::model() const {
  return kind == Kind::resolving ? DetectorModel::resolving(k)
                                 : DetectorModel::nonresolving(k);
}

double SweepConfig::scale() const {
  if (process == Process::add) {
    const double s = std::sinh(parameter);
    return s * s;
  }
  return parameter;
}

void SweepConfig::validate(bool sweep) const {
  if (sweep && grid.size() < 2) throw ConfigError("grid needs at least 2 points");
  for (std::size_t i = 0; sweep && i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw ConfigError("grid values must be finite and > 0");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw ConfigError("grid must be strictly increasing");
    }
  }
  if (process == Process::add) {
    if (!(parameter > 0.0) || !std::isfinite(parameter)) {
      throw ConfigError("gain must be > 0");
    }
  } else if (!(parameter > 0.0 && parameter < 1.0)) {
    throw ConfigError("reflectivity must lie in (0, 1)");
  }
  if (detectors.empty()) throw ConfigError("at least one detector is required");
  for (const auto& d : detectors) {
    if (d.k == 0) throw ConfigError("detector threshold k must be >= 1");
    if (process == Process::add && d.kind == DetectorChoice::Kind::sequential) {
      throw ConfigError("sequential detection applies to subtraction only");
    }
  }
  if (models.empty()) throw ConfigError("at least one model is required");
  if (sweep && (state.kind == StateKind::fock || state.kind == StateKind::custom)) {
    throw ConfigError("sweeps over n0 need a coherent, thermal or mixed state");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
}

std::string to_string(Process p) {
  switch (p) {
    case Process::subtract: return "subtract";
    case Process::add: return "add";
    case Process::sequential: return "sequential";
  }
  return "?";
}

std::string to_string(Model m) {
  switch (m) {
    case Model::exact: return "exact";
    case Model::A: return "A";
    case Model::E: return "E";
  }
  return "?";
}

Process parse_process(const std::string& text) {
  if (text == "subtract") return Process::subtract;
  if (text == "add") return Process::add;
  if (text == "sequential") return Process::sequential;
  throw ConfigError("unknown process '" + text + "'");
}

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw ConfigError("unknown format '" + text + "'");
}

FieldStateSpec parse_state(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("state must look like kind:value, got '" + text + "'");
  }
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  FieldStateSpec spec;
  try {
    if (kind == "coherent") {
      spec = FieldStateSpec::coherent(parse_real(rest, "n0"));
    } else if (kind == "thermal") {
      spec = FieldStateSpec::thermal(parse_real(rest, "n0"));
    } else if (kind == "mixed") {
      const auto parts = split(rest, ',');
      if (parts.size() != 2) throw ConfigError("mixed state needs NC,NT");
      spec = FieldStateSpec::mixed_light(parse_real(parts[0], "n_c"),
                                         parse_real(parts[1], "n_t"));
    } else if (kind == "fock") {
      spec = FieldStateSpec::fock(static_cast<unsigned>(parse_count(rest, "photon number")));
    } else {
      throw ConfigError("unknown state kind '" + kind + "'");
    }
    spec.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

std::string describe_state(const FieldStateSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  switch (spec.kind) {
    case StateKind::coherent: out << "coherent:" << spec.n0; break;
    case StateKind::thermal: out << "thermal:" << spec.n0; break;
    case StateKind::mixed_light: out << "mixed:" << spec.n_c << ',' << spec.n_t; break;
    case StateKind::fock: out << "fock:" << spec.m; break;
    case StateKind::custom: out << "custom"; break;
  }
  return out.str();
}

std::vector<DetectorChoice> parse_detectors(const std::vector<std::string>& items) {
  std::vector<DetectorChoice> out;
  for (const auto& item : items) {
    for (const auto& part : split(item, ',')) {
      if (part.size() < 3 || part[1] != ':') {
        throw ConfigError("detector must look like r:K, n:K or s:K, got '" + part + "'");
      }
      DetectorChoice d;
      switch (part[0]) {
        case 'r': d.kind = DetectorChoice::Kind::resolving; break;
        case 'n': d.kind = DetectorChoice::Kind::nonresolving; break;
        case 's': d.kind = DetectorChoice::Kind::sequential; break;
        default: throw ConfigError("unknown detector flavor in '" + part + "'");
      }
      d.k = static_cast<unsigned>(parse_count(part.substr(2), "detector threshold"));
      if (d.k == 0) throw ConfigError("detector threshold k must be >= 1");
      out.push_back(d);
    }
  }
  return out;
}

std::vector<Model> parse_models(const std::string& text) {
  std::vector<Model> out;
  for (const auto& part : split(text, ',')) {
    if (part == "exact") {
      out.push_back(Model::exact);
    } else if (part == "A") {
      out.push_back(Model::A);
    } else if (part == "E") {
      out.push_back(Model::E);
    } else {
      throw ConfigError("unknown model '" + part + "'");
    }
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (points < 2) throw ConfigError("grid needs at least 2 points");
  if (!(lo > 0.0 && hi > lo)) throw ConfigError("grid needs 0 < MIN < MAX");
  std::vector<double> grid(points);
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = std::exp(a + step * static_cast<double>(i));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> parse_grid(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw ConfigError("grid must look like MIN,MAX,POINTS");
  return log_grid(parse_real(parts[0], "grid minimum"), parse_real(parts[1], "grid maximum"),
                  parse_count(parts[2], "grid points"));
}

std::vector<double> default_grid(double scale) {
  return log_grid(1e-3 / scale, 1e2 / scale, 60);
}

SweepConfig preset(const std::string& name) {
  SweepConfig cfg;
  if (name == "fig1") {
    cfg = mixed_preset(0.25);
  } else if (name == "fig2") {
    cfg = mixed_preset(10.0);
  } else if (name == "fig3") {
    cfg.process = Process::subtract;
    cfg.state = FieldStateSpec::thermal(1.0);
    cfg.detectors = {{DetectorChoice::Kind::sequential, 2},
                     {DetectorChoice::Kind::nonresolving, 2},
                     {DetectorChoice::Kind::resolving, 2}};
    cfg.parameter = 1e-2;
  } else if (name == "fig4") {
    cfg.process = Process::add;
    cfg.state = FieldStateSpec::thermal(1.0);
    cfg.detectors = {{DetectorChoice::Kind::nonresolving, 1},
                     {DetectorChoice::Kind::resolving, 1}};
    cfg.parameter = 1e-2;
  } else {
    throw ConfigError("unknown preset '" + name + "' (fig1, fig2, fig3, fig4)");
  }
  cfg.grid = default_grid(cfg.scale());
  return cfg;
}

FieldStateSpec state_at(const FieldStateSpec& base, double n0) {
  switch (base.kind) {
    case StateKind::coherent: return FieldStateSpec::coherent(n0);
    case StateKind::thermal: return FieldStateSpec::thermal(n0);
    case StateKind::mixed_light: {
      const double total = base.n_c + base.n_t;
      return FieldStateSpec::mixed_light(n0 * base.n_c / total, n0 * base.n_t / total);
    }
    default: throw ConfigError("state kind cannot be rescaled to a new n0");
  }
}

}  // namespace condphoton::cli
