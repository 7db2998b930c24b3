#include "condphoton/cli/validate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "condphoton/add.hpp"
#include "condphoton/cli/config.hpp"
#include "condphoton/errors.hpp"
#include "condphoton/oracle.hpp"
#include "condphoton/subtract.hpp"

namespace condphoton::cli {
namespace {

// Closed forms are compared against generic sums over inputs truncated this
// finely, so truncation stays far below the comparison tolerance even for
// P ~ (n0 R)^3.
constexpr double kFineEpsilon = 1e-30;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double rel3(const OutcomeStatistics& a, const OutcomeStatistics& b) {
  return std::max({rel(a.probability, b.probability), rel(a.mean, b.mean),
                   rel(a.second_factorial, b.second_factorial)});
}

double rel3(const ClosedFormOutcome& a, const OutcomeRecord& b) {
  return std::max({rel(a.probability, b.probability), rel(a.mean, b.mean),
                   rel(a.second_factorial, b.second_factorial)});
}

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

class Check {
 public:
  Check(std::string name, double scale) : name_(std::move(name)), scale_(scale) {}

  void record(const std::string& label, double deviation, double threshold) {
    threshold *= scale_;
    ++cases_;
    const double ratio = std::isnan(deviation) ? INFINITY : deviation / threshold;
    if (cases_ == 1 || ratio > worst_ratio_) {
      worst_ratio_ = ratio;
      result_.deviation = std::isnan(deviation) ? INFINITY : deviation;
      result_.threshold = threshold;
      result_.worst_case = label;
    }
  }

  // Pass/fail checks that do not scale with the profile.
  void require(const std::string& label, bool ok) {
    const double s = scale_;
    scale_ = 1.0;
    record(label, ok ? 0.0 : 1.0, 0.5);
    scale_ = s;
  }

  CheckResult result() const {
    CheckResult r = result_;
    r.name = name_;
    r.cases = cases_;
    return r;
  }

 private:
  std::string name_;
  double scale_;
  std::size_t cases_ = 0;
  double worst_ratio_ = 0.0;
  CheckResult result_;
};

struct NamedState {
  std::string label;
  FieldStateSpec spec;
};

std::vector<NamedState> test_states() {
  return {{"thermal:1", FieldStateSpec::thermal(1.0)},
          {"coherent:2", FieldStateSpec::coherent(2.0)},
          {"mixed:0.5,0.5", FieldStateSpec::mixed_light(0.5, 0.5)},
          {"fock:3", FieldStateSpec::fock(3)}};
}

double max_entry_rel(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    if (x == y) continue;
    worst = std::max(worst, std::abs(x - y) / std::max(std::abs(x), std::abs(y)));
  }
  return worst;
}

double max_abs_diff(const std::vector<double>& a, std::span<const double> b) {
  double worst = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    worst = std::max(worst, std::abs(x - y));
  }
  return worst;
}

std::vector<double> theta_or_zero(const std::function<OutcomeRecord()>& f) {
  try {
    return f().theta_vector;
  } catch (const ImpossibleOutcome&) {
    return {};
  }
}

void add_partitions(std::vector<CheckResult>& out, double scale) {
  Check sub("subtract.resolving_partition", scale);
  Check add("add.resolving_partition", scale);
  for (const auto& st : test_states()) {
    const auto p = make_distribution(st.spec);
    for (double R : {0.01, 0.25}) {
      const auto bs = BeamSplitterParams::from_reflectivity(R);
      double total = 0.0;
      for (unsigned j = 0; j <= p.cutoff(); ++j) {
        const auto b = subtract_branch(p.probs(), bs, j);
        for (double v : b) total += v;
      }
      sub.record(st.label + " R=" + fmt(R), std::abs(total + p.tail_bound() - 1.0), 1e-10);
    }
    for (double lambda : {0.05, 0.2}) {
      const auto pdc = PdcParams::from_lambda(lambda);
      double total = 0.0;
      for (unsigned j = 0;; ++j) {
        const auto b = add_branch(p.probs(), pdc, j);
        double s = 0.0;
        for (double v : b) s += v;
        total += s;
        if (s < 1e-18 && j > 5) break;
      }
      add.record(st.label + " lambda=" + fmt(lambda),
                 std::abs(total + p.tail_bound() - 1.0), 1e-10);
    }
  }
  out.push_back(sub.result());
  out.push_back(add.result());
}

void add_decompositions(std::vector<CheckResult>& out, double scale) {
  Check sub("subtract.nonresolving_decomposition", scale);
  Check add("add.nonresolving_decomposition", scale);
  for (const auto& st : test_states()) {
    const auto p = make_distribution(st.spec);
    const auto bs = BeamSplitterParams::from_reflectivity(0.1);
    const auto pdc = PdcParams::from_lambda(0.1);
    for (unsigned k = 1; k <= 2; ++k) {
      const auto label = st.label + " k=" + std::to_string(k);
      const auto nd = theta_or_zero(
          [&] { return subtract_exact(p, bs, DetectorModel::nonresolving(k)); });
      std::vector<double> summed;
      for (unsigned j = k; j <= p.cutoff(); ++j) {
        const auto b = subtract_branch(p.probs(), bs, j);
        summed.resize(std::max(summed.size(), b.size()), 0.0);
        for (std::size_t n = 0; n < b.size(); ++n) summed[n] += b[n];
      }
      sub.record(label, max_entry_rel(nd, summed), 1e-12);

      const auto nda = add_exact(p, pdc, DetectorModel::nonresolving(k)).theta_vector;
      std::vector<double> summed_a;
      for (unsigned j = k; j < nda.size(); ++j) {
        const auto b = add_branch(p.probs(), pdc, j);
        summed_a.resize(std::max(summed_a.size(), b.size()), 0.0);
        for (std::size_t n = 0; n < b.size(); ++n) summed_a[n] += b[n];
      }
      // The nonresolving output is trimmed where entries fall below 1e-14 of
      // the total; compare over its support.
      summed_a.resize(nda.size());
      add.record(label, max_entry_rel(nda, summed_a), 1e-12);
    }
  }
  out.push_back(sub.result());
  out.push_back(add.result());
}

void add_subtract_limits(std::vector<CheckResult>& out, double scale) {
  Check quantum("subtract.quantum_limit", scale);
  for (const auto& family : {FieldStateSpec::thermal(1.0), FieldStateSpec::coherent(1.0),
                             FieldStateSpec::mixed_light(0.5, 0.5)}) {
    for (double R : {1e-3, 1e-4}) {
      for (double x : {1e-3, 1e-4}) {
        const auto spec = state_at(family, x / R);
        const auto p = make_distribution(spec);
        const auto bs = BeamSplitterParams::from_reflectivity(R);
        for (unsigned k = 1; k <= 2; ++k) {
          const auto a = subtract_model_A_statistics(p, bs, k);
          for (auto d : {DetectorModel::resolving(k), DetectorModel::nonresolving(k)}) {
            quantum.record(to_string(spec.kind) + " R=" + fmt(R) + " n0R=" + fmt(x) + " " +
                               d.to_string(),
                           rel3(statistics_of(subtract_exact(p, bs, d)), a), 5.0 * x);
          }
        }
      }
    }
  }
  out.push_back(quantum.result());

  Check classical("subtract.classical_limit", scale);
  const double R = 1e-2;
  const auto bs = BeamSplitterParams::from_reflectivity(R);
  for (const auto& family : {FieldStateSpec::thermal(1.0), FieldStateSpec::mixed_light(0.2, 0.8),
                             FieldStateSpec::mixed_light(10.0 / 11.0, 1.0 / 11.0)}) {
    const auto spec = state_at(family, 1e2 / R);
    const auto p = make_distribution(spec);
    const auto e = subtract_model_E_statistics(p, 1);
    const auto ex = subtract_exact_statistics(p, bs, DetectorModel::nonresolving(1));
    classical.record(describe_state(spec), rel(ex.mean, bs.T() * e.mean), 0.05);
  }
  out.push_back(classical.result());
}

void add_subtract_closed_forms(std::vector<CheckResult>& out, double scale) {
  Check cf("subtract.closed_form", scale);
  Check seq("subtract.sequential_closed_form", scale);
  Check coh("subtract.coherent_invariance", scale);
  for (double n0 : {0.1, 1.0, 10.0, 100.0}) {
    for (double R : {1e-3, 1e-2, 1e-1}) {
      const auto bs = BeamSplitterParams::from_reflectivity(R);
      std::vector<NamedState> states = {
          {"coherent", FieldStateSpec::coherent(n0)},
          {"thermal", FieldStateSpec::thermal(n0)},
          {"mixed 1/4", FieldStateSpec::mixed_light(0.2 * n0, 0.8 * n0)},
          {"mixed 10", FieldStateSpec::mixed_light(n0 * 10.0 / 11.0, n0 / 11.0)}};
      for (const auto& st : states) {
        const auto p = make_distribution(st.spec, kFineEpsilon);
        for (unsigned k = 1; k <= 3; ++k) {
          for (auto d : {DetectorModel::resolving(k), DetectorModel::nonresolving(k)}) {
            if (st.spec.kind == StateKind::mixed_light && !d.is_resolving() && k > 1) continue;
            const auto label = st.label + " n0=" + fmt(n0) + " R=" + fmt(R) + " " + d.to_string();
            const auto ex = subtract_exact(p, bs, d);
            cf.record(label, rel3(closed_form_subtraction(st.spec, bs, d, kFineEpsilon), ex),
                      1e-8);
            if (st.spec.kind == StateKind::coherent) {
              const auto poisson = coherent_distribution(n0 * bs.T(), kFineEpsilon);
              double worst = 0.0;
              for (std::size_t n = 0; n < ex.posterior.size(); ++n) {
                worst = std::max(worst, std::abs(ex.posterior[n] - poisson[n]));
              }
              coh.record(label, worst, 1e-10);
            }
          }
        }
        if (st.spec.kind != StateKind::mixed_light) {
          seq.record(st.label + " n0=" + fmt(n0) + " R=" + fmt(R),
                     rel3(closed_form_sequential(st.spec, bs, 2, kFineEpsilon),
                          subtract_sequential(p, bs, 2)),
                     1e-8);
        }
      }
    }
  }
  out.push_back(cf.result());
  out.push_back(seq.result());
  out.push_back(coh.result());

  Check order("subtract.sequential_ordering", scale);
  const double R = 1e-2;
  const auto bs = BeamSplitterParams::from_reflectivity(R);
  for (double x : {3.0, 10.0, 30.0}) {
    const auto p = thermal_distribution(x / R);
    const auto nd = subtract_exact_statistics(p, bs, DetectorModel::nonresolving(2));
    const auto rd = subtract_exact_statistics(p, bs, DetectorModel::resolving(2));
    const auto s2 = statistics_of(subtract_sequential(p, bs, 2));
    order.require("mean n0R=" + fmt(x), nd.mean > s2.mean && s2.mean > rd.mean);
  }
  for (double x : {0.01, 0.1, 1.0, 10.0}) {
    const auto p = thermal_distribution(x / R);
    const auto nd = subtract_exact_statistics(p, bs, DetectorModel::nonresolving(2));
    const auto rd = subtract_exact_statistics(p, bs, DetectorModel::resolving(2));
    const auto s2 = statistics_of(subtract_sequential(p, bs, 2));
    order.require("P n0R=" + fmt(x), s2.probability > rd.probability &&
                                         s2.probability > nd.probability);
  }
  out.push_back(order.result());
}

void add_addition_checks(std::vector<CheckResult>& out, double scale) {
  Check quantum("add.quantum_limit", scale);
  for (const auto& family : {FieldStateSpec::thermal(1.0), FieldStateSpec::coherent(1.0),
                             FieldStateSpec::mixed_light(0.5, 0.5)}) {
    for (double lambda : {std::asinh(std::sqrt(1e-3)), std::asinh(std::sqrt(1e-4))}) {
      const auto pdc = PdcParams::from_lambda(lambda);
      for (double x : {1e-3, 1e-4}) {
        const auto spec = state_at(family, x / pdc.r());
        const auto p = make_distribution(spec);
        const auto a = add_model_A_statistics(p, pdc, 1);
        for (auto d : {DetectorModel::resolving(1), DetectorModel::nonresolving(1)}) {
          quantum.record(to_string(spec.kind) + " r=" + fmt(pdc.r()) + " n0r=" + fmt(x) + " " +
                             d.to_string(),
                         rel3(statistics_of(add_exact(p, pdc, d)), a),
                         5.0 * std::max(x, pdc.r()));
        }
      }
    }
  }
  out.push_back(quantum.result());

  const auto pdc = PdcParams::from_lambda(1e-2);
  Check classical("add.classical_limit", scale);
  {
    const double n0 = 1e2 / pdc.r();
    const auto p = thermal_distribution(n0);
    const auto ex = add_exact_statistics(p, pdc, DetectorModel::nonresolving(1));
    classical.record("thermal n0r=100", rel(ex.mean, n0 + 1.0), 0.05);
  }
  out.push_back(classical.result());

  Check ratio("add.thermal_A_over_E", scale);
  Check coherent("add.coherent_A_vs_E", scale);
  for (double n0 : {10.0, 100.0, 1000.0}) {
    const auto p = thermal_distribution(n0);
    const double q = add_model_A_statistics(p, pdc, 1).mean / add_model_E_statistics(p, 1).mean;
    ratio.require("n0=" + fmt(n0) + " ratio=" + fmt(q), q >= 1.8 && q <= 2.05);
  }
  for (double n0 : {100.0, 1000.0}) {
    const auto p = coherent_distribution(n0);
    const double gap = std::abs(add_model_A_statistics(p, pdc, 1).mean -
                                add_model_E_statistics(p, 1).mean) / n0;
    coherent.record("n0=" + fmt(n0), gap, 0.02);
  }
  out.push_back(ratio.result());
  out.push_back(coherent.result());

  Check cf("add.closed_form", scale);
  Check range("add.laguerre_range_flagged", scale);
  for (double n0 : {0.1, 1.0, 10.0, 100.0}) {
    const auto thermal = thermal_distribution(n0, kFineEpsilon);
    for (auto d : {DetectorModel::resolving(1), DetectorModel::nonresolving(1)}) {
      cf.record("thermal n0=" + fmt(n0) + " " + d.to_string(),
                rel3(closed_form_addition(FieldStateSpec::thermal(n0), pdc, d, kFineEpsilon),
                     add_exact(thermal, pdc, d)),
                1e-8);
    }
    const auto d = DetectorModel::nonresolving(1);
    try {
      const auto c = closed_form_addition(FieldStateSpec::coherent(n0), pdc, d, kFineEpsilon);
      cf.record("coherent n0=" + fmt(n0) + " n:1",
                rel3(c, add_exact(coherent_distribution(n0, kFineEpsilon), pdc, d)), 1e-8);
    } catch (const RangeError&) {
      range.require("coherent n0=" + fmt(n0) + " raised a range error", n0 >= 100.0);
    }
  }
  out.push_back(cf.result());
  out.push_back(range.result());
}

double min_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void add_oracle_checks(std::vector<CheckResult>& out, double scale) {
  Check sub("oracle.subtract_factorization", scale);
  Check add("oracle.add_factorization", scale);
  Check psd("oracle.positivity", scale);
  Check diag("oracle.diagonal_sufficiency", scale);
  constexpr std::size_t dim = 25;

  std::vector<std::pair<std::string, SingleModeDensityMatrix>> inputs;
  std::vector<PhotonNumberDistribution> diagonals;
  for (unsigned m = 0; m <= 3; ++m) {
    diagonals.push_back(fock_distribution(m));
    inputs.emplace_back("fock:" + std::to_string(m), diagonal_density_matrix(diagonals.back(), dim));
  }
  diagonals.push_back(thermal_distribution(0.5));
  inputs.emplace_back("thermal:0.5", diagonal_density_matrix(diagonals.back(), dim));
  diagonals.push_back(coherent_distribution(1.0));
  inputs.emplace_back("coherent:1", coherent_density_matrix(1.0, dim));
  diagonals.push_back(mixed_light_distribution(0.5, 0.5));
  inputs.emplace_back("mixed:0.5,0.5", diagonal_density_matrix(diagonals.back(), dim));

  std::vector<DetectorModel> detectors = {DetectorModel::resolving(1), DetectorModel::resolving(2),
                                          DetectorModel::nonresolving(1),
                                          DetectorModel::nonresolving(2)};
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    const auto& [label, rho] = inputs[s];
    std::vector<double> truncated(diagonals[s].probs().begin(), diagonals[s].probs().end());
    truncated.resize(std::min(truncated.size(), dim));
    const PhotonNumberDistribution p(truncated, 0.0);
    for (double R : {0.01, 0.1, 0.25}) {
      const auto bs = BeamSplitterParams::from_reflectivity(R);
      for (const auto& d : detectors) {
        const auto o = oracle_subtract(rho, bs, d);
        const auto theta = theta_or_zero([&] { return subtract_exact(p, bs, d); });
        const auto case_label = label + " R=" + fmt(R) + " " + d.to_string();
        sub.record(case_label, max_abs_diff(o.rho_out.diagonal(), theta), 1e-9);
        psd.record(case_label, std::max(0.0, -min_eigenvalue(o.rho_out.entries)), 1e-9);
      }
    }
    for (double lambda : {0.05, 0.1}) {
      const auto pdc = PdcParams::from_lambda(lambda);
      for (const auto& d : detectors) {
        const auto o = oracle_add(rho, pdc, d);
        const auto theta = add_exact(p, pdc, d).theta_vector;
        const auto case_label = label + " lambda=" + fmt(lambda) + " " + d.to_string();
        add.record(case_label, max_abs_diff(o.rho_out.diagonal(), theta), 1e-8);
        psd.record(case_label, std::max(0.0, -min_eigenvalue(o.rho_out.entries)), 1e-9);
      }
    }
  }

  // Coherent input against its dephased (Poisson-diagonal) counterpart.
  const auto coherent = coherent_density_matrix(1.0, dim);
  SingleModeDensityMatrix dephased{coherent.entries.diagonal().asDiagonal()};
  for (const auto& d : detectors) {
    const auto bs = BeamSplitterParams::from_reflectivity(0.1);
    const auto a = oracle_subtract(coherent, bs, d);
    const auto b = oracle_subtract(dephased, bs, d);
    double worst = std::abs(a.probability - b.probability);
    worst = std::max(worst, max_abs_diff(a.rho_out.diagonal(), b.rho_out.diagonal()));
    diag.record("subtract " + d.to_string(), worst, 1e-10);
  }
  out.push_back(sub.result());
  out.push_back(add.result());
  out.push_back(psd.result());
  out.push_back(diag.result());
}

}  // namespace

Profile parse_profile(const std::string& text) {
  if (text == "default") return Profile::standard;
  if (text == "strict") return Profile::strict;
  throw ConfigError("unknown profile '" + text + "' (default, strict)");
}

std::vector<CheckResult> run_validate(Profile profile) {
  const double scale = profile == Profile::strict ? 0.1 : 1.0;
  std::vector<CheckResult> out;
  add_partitions(out, scale);
  add_decompositions(out, scale);
  add_subtract_limits(out, scale);
  add_subtract_closed_forms(out, scale);
  add_addition_checks(out, scale);
  add_oracle_checks(out, scale);
  return out;
}

nlohmann::json validation_report(Profile profile, const std::vector<CheckResult>& checks) {
  nlohmann::json j;
  j["profile"] = profile == Profile::strict ? "strict" : "default";
  bool all = true;
  auto& arr = j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    all = all && c.passed();
    arr.push_back({{"name", c.name},
                   {"passed", c.passed()},
                   {"deviation", c.deviation},
                   {"threshold", c.threshold},
                   {"cases", c.cases},
                   {"worst_case", c.worst_case}});
  }
  j["passed"] = all;
  return j;
}

}  // namespace condphoton::cli
