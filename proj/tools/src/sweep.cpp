#include "condphoton/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <thread>

#include "condphoton/add.hpp"
#include "condphoton/errors.hpp"
#include "condphoton/serialization.hpp"

namespace condphoton::cli {
namespace {

constexpr std::size_t kMaxThreads = 4;
constexpr std::size_t kPosteriorLimit = 4096;

bool is_sequential(const SweepConfig& cfg, const DetectorChoice& d) {
  return cfg.process == Process::sequential || d.kind == DetectorChoice::Kind::sequential;
}

OutcomeStatistics statistics(const SweepConfig& cfg, const PhotonNumberDistribution& p,
                             Model model, const DetectorChoice& d) {
  if (cfg.process == Process::add) {
    const auto pdc = PdcParams::from_lambda(cfg.parameter);
    switch (model) {
      case Model::exact: return add_exact_statistics(p, pdc, d.model());
      case Model::A: return add_model_A_statistics(p, pdc, d.k);
      case Model::E: return add_model_E_statistics(p, d.k);
    }
  }
  const auto bs = BeamSplitterParams::from_reflectivity(cfg.parameter);
  switch (model) {
    case Model::exact:
      if (is_sequential(cfg, d)) return statistics_of(subtract_sequential(p, bs, d.k));
      return subtract_exact_statistics(p, bs, d.model());
    case Model::A: return subtract_model_A_statistics(p, bs, d.k);
    case Model::E: return subtract_model_E_statistics(p, d.k);
  }
  return {};
}

OutcomeRecord record(const SweepConfig& cfg, const PhotonNumberDistribution& p, Model model,
                     const DetectorChoice& d) {
  if (cfg.process == Process::add) {
    const auto pdc = PdcParams::from_lambda(cfg.parameter);
    switch (model) {
      case Model::exact: return add_exact(p, pdc, d.model());
      case Model::A: return add_model_A(p, pdc, d.k);
      case Model::E: return add_model_E(p, d.k);
    }
  }
  const auto bs = BeamSplitterParams::from_reflectivity(cfg.parameter);
  switch (model) {
    case Model::exact:
      if (is_sequential(cfg, d)) return subtract_sequential(p, bs, d.k);
      return subtract_exact(p, bs, d.model());
    case Model::A: return subtract_model_A(p, bs, d.k);
    case Model::E: return subtract_model_E(p, d.k);
  }
  throw ConfigError("unknown model");
}

std::string detector_label(const SweepConfig& cfg, const DetectorChoice& d) {
  if (cfg.process == Process::sequential) {
    return DetectorChoice{DetectorChoice::Kind::sequential, d.k}.label();
  }
  return d.label();
}

nlohmann::json number_or_null(const Row& row, double value) {
  return row.stats ? nlohmann::json(value) : nlohmann::json(nullptr);
}

nlohmann::json parameter_json(const SweepConfig& cfg) {
  if (cfg.process == Process::add) {
    return {{"lambda", cfg.parameter}, {"r", cfg.scale()}};
  }
  return {{"R", cfg.parameter}};
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::vector<Row> evaluate_point(const SweepConfig& cfg, double n0) {
  const auto p = make_distribution(state_at(cfg.state, n0), cfg.epsilon);
  const double scaled = n0 * cfg.scale();
  std::vector<Row> rows;
  for (Model model : cfg.models) {
    for (const auto& d : cfg.detectors) {
      Row row{n0, scaled, model, detector_label(cfg, d), std::nullopt};
      try {
        row.stats = statistics(cfg, p, model, d);
      } catch (const ImpossibleOutcome&) {
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<Row> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::size_t points = cfg.grid.size();
  std::vector<std::vector<Row>> slots(points);
  std::vector<std::exception_ptr> errors(points);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < points; i = next++) {
      try {
        slots[i] = evaluate_point(cfg, cfg.grid[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t threads = cfg.threads;
  if (threads == 0) {
    threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, kMaxThreads);
  }
  threads = std::min(threads, points);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<Row> rows;
  for (std::size_t i = 0; i < points; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    for (auto& row : slots[i]) rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<Row>& rows) {
  out << "n0,n0_times_R_or_r,P,mean_n,mean_n_over_n0,second_factorial,"
         "second_factorial_over_n0sq,model,detector\n";
  for (const auto& row : rows) {
    out << format_double(row.n0) << ',' << format_double(row.scaled) << ',';
    if (row.stats) {
      const auto& s = *row.stats;
      out << format_double(s.probability) << ',' << format_double(s.mean) << ','
          << format_double(s.mean / row.n0) << ',' << format_double(s.second_factorial) << ','
          << format_double(s.second_factorial / (row.n0 * row.n0));
    } else {
      out << "0,,,,";
    }
    out << ',' << to_string(row.model) << ',' << row.detector << '\n';
  }
}

std::vector<Crossover> find_crossovers(const std::vector<Row>& rows) {
  struct Sample {
    double n0, scaled, gap;
  };
  std::vector<std::string> detectors;
  for (const auto& row : rows) {
    if (std::find(detectors.begin(), detectors.end(), row.detector) == detectors.end()) {
      detectors.push_back(row.detector);
    }
  }
  auto mean_at = [&](double n0, Model m, const std::string& det) -> const Row* {
    for (const auto& row : rows) {
      if (row.n0 == n0 && row.model == m && row.detector == det && row.stats) return &row;
    }
    return nullptr;
  };

  std::vector<Crossover> out;
  for (const auto& det : detectors) {
    std::vector<Sample> samples;
    for (const auto& row : rows) {
      if (row.detector != det || row.model != Model::exact || !row.stats) continue;
      const Row* a = mean_at(row.n0, Model::A, det);
      const Row* e = mean_at(row.n0, Model::E, det);
      if (!a || !e) continue;
      const double ex = row.stats->mean;
      samples.push_back({row.n0, row.scaled,
                         std::abs(ex - a->stats->mean) - std::abs(ex - e->stats->mean)});
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
      const auto& lo = samples[i - 1];
      const auto& hi = samples[i];
      if (lo.gap == 0.0 || (lo.gap < 0.0) != (hi.gap < 0.0)) {
        const double w = lo.gap == hi.gap ? 0.0 : lo.gap / (lo.gap - hi.gap);
        const double log_n0 = std::log(lo.n0) + w * (std::log(hi.n0) - std::log(lo.n0));
        const double n0 = std::exp(log_n0);
        out.push_back({det, n0, n0 * (lo.scaled / lo.n0)});
        break;
      }
    }
  }
  return out;
}

nlohmann::json sweep_json(const SweepConfig& cfg, const std::vector<Row>& rows) {
  nlohmann::json j;
  j["process"] = to_string(cfg.process);
  j["state"] = describe_state(cfg.state);
  j["parameter"] = parameter_json(cfg);
  j["epsilon"] = cfg.epsilon;
  auto& out_rows = j["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    const OutcomeStatistics s = row.stats.value_or(OutcomeStatistics{});
    out_rows.push_back({{"n0", row.n0},
                        {"n0_times_R_or_r", row.scaled},
                        {"P", row.stats ? s.probability : 0.0},
                        {"mean_n", number_or_null(row, s.mean)},
                        {"mean_n_over_n0", number_or_null(row, s.mean / row.n0)},
                        {"second_factorial", number_or_null(row, s.second_factorial)},
                        {"second_factorial_over_n0sq",
                         number_or_null(row, s.second_factorial / (row.n0 * row.n0))},
                        {"model", to_string(row.model)},
                        {"detector", row.detector}});
  }
  auto& cross = j["crossovers"] = nlohmann::json::array();
  for (const auto& c : find_crossovers(rows)) {
    cross.push_back({{"detector", c.detector}, {"n0", c.n0}, {"n0_times_R_or_r", c.scaled}});
  }
  return j;
}

nlohmann::json point_json(const SweepConfig& cfg) {
  cfg.validate(false);
  const auto p = make_distribution(cfg.state, cfg.epsilon);
  nlohmann::json j;
  j["process"] = to_string(cfg.process);
  j["state"] = describe_state(cfg.state);
  j["parameter"] = parameter_json(cfg);
  j["epsilon"] = cfg.epsilon;
  auto& results = j["results"] = nlohmann::json::array();
  for (Model model : cfg.models) {
    for (const auto& d : cfg.detectors) {
      nlohmann::json entry = {{"model", to_string(model)}, {"detector", detector_label(cfg, d)}};
      try {
        const auto rec = record(cfg, p, model, d);
        entry.update(to_json(rec, rec.posterior.size() <= kPosteriorLimit));
      } catch (const ImpossibleOutcome& e) {
        entry["probability"] = 0.0;
        entry["impossible"] = true;
      }
      results.push_back(std::move(entry));
    }
  }
  return j;
}

}  // namespace condphoton::cli
