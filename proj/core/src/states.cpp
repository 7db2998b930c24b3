#include "condphoton/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "condphoton/errors.hpp"
#include "condphoton/numerics.hpp"

namespace condphoton {
namespace {

constexpr std::size_t kMixedLightCeiling = 1'000'000;
constexpr double kMassResolution = 1e-15;

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("epsilon must lie in (0, 1)");
  }
}

// ln(n0 / (n0 + 1)) without cancellation at either end.
double log_thermal_ratio(double n0) {
  return n0 < 1.0 ? std::log(n0) - std::log1p(n0) : std::log1p(-1.0 / (n0 + 1.0));
}

double log_poisson_chernoff(double n0, double a) {
  // ln of e^{-n0} (e n0 / a)^a, valid for a > n0.
  return -n0 + a - a * std::log(a / n0);
}

}  // namespace

PhotonNumberDistribution::PhotonNumberDistribution(
    std::vector<double> probs, double tail_bound, std::string kind,
    std::map<std::string, double> params)
    : probs_(std::move(probs)),
      tail_bound_(tail_bound),
      kind_(std::move(kind)),
      params_(std::move(params)) {
  if (probs_.empty()) {
    throw DomainError("a photon-number distribution needs at least p_0");
  }
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw DomainError("photon-number probabilities must be finite and >= 0");
    }
  }
  if (!(tail_bound_ >= 0.0) || !std::isfinite(tail_bound_)) {
    throw DomainError("tail bound must be finite and >= 0");
  }
}

double PhotonNumberDistribution::total() const {
  return compensated_sum(probs_);
}

FieldStateSpec FieldStateSpec::coherent(double n0) {
  FieldStateSpec s;
  s.kind = StateKind::coherent;
  s.n0 = n0;
  return s;
}

FieldStateSpec FieldStateSpec::thermal(double n0) {
  FieldStateSpec s;
  s.kind = StateKind::thermal;
  s.n0 = n0;
  return s;
}

FieldStateSpec FieldStateSpec::mixed_light(double n_c, double n_t) {
  FieldStateSpec s;
  s.kind = StateKind::mixed_light;
  s.n_c = n_c;
  s.n_t = n_t;
  s.n0 = n_c + n_t;
  return s;
}

FieldStateSpec FieldStateSpec::fock(unsigned m) {
  FieldStateSpec s;
  s.kind = StateKind::fock;
  s.m = m;
  s.n0 = m;
  return s;
}

FieldStateSpec FieldStateSpec::custom(std::vector<double> probs) {
  FieldStateSpec s;
  s.kind = StateKind::custom;
  s.custom_probs = std::move(probs);
  return s;
}

void FieldStateSpec::validate() const {
  switch (kind) {
    case StateKind::coherent:
    case StateKind::thermal:
      if (!(n0 >= 0.0)) throw DomainError("n0 must be >= 0");
      if (custom_probs) throw DomainError("custom_probs set on a named state");
      break;
    case StateKind::mixed_light:
      if (!(n_c >= 0.0)) throw DomainError("n_c must be >= 0");
      if (!(n_t > 0.0)) throw DomainError("n_t must be > 0");
      if (std::fabs(n0 - (n_c + n_t)) > 1e-12 * std::max(1.0, n0)) {
        throw DomainError("mixed light requires n0 = n_c + n_t");
      }
      if (custom_probs) throw DomainError("custom_probs set on a named state");
      break;
    case StateKind::fock:
      if (custom_probs) throw DomainError("custom_probs set on a named state");
      break;
    case StateKind::custom:
      if (!custom_probs || custom_probs->empty()) {
        throw DomainError("custom state requires a probability vector");
      }
      break;
  }
}

std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::coherent: return "coherent";
    case StateKind::thermal: return "thermal";
    case StateKind::mixed_light: return "mixed_light";
    case StateKind::fock: return "fock";
    case StateKind::custom: return "custom";
  }
  return "custom";
}

StateKind state_kind_from_string(const std::string& name) {
  if (name == "coherent") return StateKind::coherent;
  if (name == "thermal") return StateKind::thermal;
  if (name == "mixed_light" || name == "mixed") return StateKind::mixed_light;
  if (name == "fock") return StateKind::fock;
  if (name == "custom") return StateKind::custom;
  throw DomainError("unknown state kind '" + name + "'");
}

std::size_t thermal_cutoff(double n0, double epsilon) {
  check_epsilon(epsilon);
  if (n0 < 0.0) throw DomainError("thermal state requires n0 >= 0");
  if (n0 == 0.0) return 0;
  const double log_q = log_thermal_ratio(n0);
  const double log_eps = std::log(epsilon);
  // Geometric tail q^{N+1} <= eps.
  double n = std::ceil(log_eps / log_q) - 1.0;
  if (n < 0.0) n = 0.0;
  // Tail contribution to the mean, q^{N+1} (N + 1 + n0), within 5 eps (1 + n0).
  const double mean_budget = std::log(5.0 * epsilon * (1.0 + n0));
  while ((n + 1.0) * log_q + std::log(n + 1.0 + n0) > mean_budget) n += 1.0;
  return static_cast<std::size_t>(n);
}

std::size_t poisson_cutoff(double n0, double epsilon) {
  check_epsilon(epsilon);
  if (n0 < 0.0) throw DomainError("coherent state requires n0 >= 0");
  if (n0 == 0.0) return 0;
  const double log_eps = std::log(epsilon);
  double a = std::floor(n0) + 1.0;
  while (log_poisson_chernoff(n0, a) > log_eps) a += 1.0;
  return static_cast<std::size_t>(a);
}

PhotonNumberDistribution thermal_distribution(double n0, double epsilon) {
  check_epsilon(epsilon);
  if (!(n0 >= 0.0)) throw DomainError("thermal state requires n0 >= 0");
  std::map<std::string, double> params{{"n0", n0}};
  if (n0 == 0.0) return {{1.0}, 0.0, "thermal", std::move(params)};

  const std::size_t cutoff = thermal_cutoff(n0, epsilon);
  const double log_q = log_thermal_ratio(n0);
  const double log_norm = std::log1p(n0);
  std::vector<double> probs(cutoff + 1);
  for (std::size_t n = 0; n <= cutoff; ++n) {
    probs[n] = std::exp(static_cast<double>(n) * log_q - log_norm);
  }
  const double tail = std::exp(static_cast<double>(cutoff + 1) * log_q);
  return {std::move(probs), tail, "thermal", std::move(params)};
}

PhotonNumberDistribution coherent_distribution(double n0, double epsilon) {
  check_epsilon(epsilon);
  if (!(n0 >= 0.0)) throw DomainError("coherent state requires n0 >= 0");
  std::map<std::string, double> params{{"n0", n0}};
  if (n0 == 0.0) return {{1.0}, 0.0, "coherent", std::move(params)};

  // Ratios p_{n+1} / p_n = n0 / (n + 1) from the mode outward, normalised
  // over the retained terms plus the upper tail.
  const std::size_t cutoff = poisson_cutoff(n0, epsilon);
  const auto mode = static_cast<std::size_t>(std::floor(n0));
  std::vector<double> weights(cutoff + 1, 0.0);
  weights[mode] = 1.0;
  for (std::size_t n = mode; n > 0 && weights[n] > 0.0; --n) {
    weights[n - 1] = weights[n] * (static_cast<double>(n) / n0);
  }
  for (std::size_t n = mode; n < cutoff; ++n) {
    weights[n + 1] = weights[n] * (n0 / static_cast<double>(n + 1));
  }
  // Terms beyond the cutoff (> n0) decrease monotonically.
  CompensatedSum tail;
  double term = weights[cutoff];
  for (std::size_t n = cutoff + 1;; ++n) {
    term *= n0 / static_cast<double>(n);
    tail += term;
    if (term <= 1e-30 * tail.value() || term == 0.0) break;
  }
  CompensatedSum total;
  for (double w : weights) total += w;
  total += tail.value();
  const double norm = total.value();
  for (double& w : weights) w /= norm;
  return {std::move(weights), std::min(tail.value() / norm, epsilon), "coherent",
          std::move(params)};
}

PhotonNumberDistribution mixed_light_distribution(double n_c, double n_t,
                                                  double epsilon) {
  check_epsilon(epsilon);
  if (!(n_t > 0.0)) throw DomainError("mixed light requires n_t > 0");
  if (!(n_c >= 0.0)) throw DomainError("mixed light requires n_c >= 0");

  // s_n = q^n L_n(x) with q = n_t / (1 + n_t) and x = -n_c / (n_t (1 + n_t)),
  // kept in [1e-200, 1e200] by a running log scale.
  const double q = n_t / (1.0 + n_t);
  const double a = n_c / ((1.0 + n_t) * (1.0 + n_t));  // -q x
  const double log_prefactor = -n_c / (1.0 + n_t) - std::log1p(n_t);
  const double n0 = n_c + n_t;

  std::vector<double> probs;
  CompensatedSum mass;
  double s_prev = 0.0;
  double s_cur = 1.0;
  double log_scale = 0.0;
  double p_prev = 0.0;
  double tail = 0.0;
  for (std::size_t n = 0;; ++n) {
    if (n >= kMixedLightCeiling) {
      throw RangeError("mixed light distribution did not reach 1 - epsilon "
                       "within 10^6 terms");
    }
    if (n == 1) {
      s_prev = s_cur;
      s_cur = q + a;
    } else if (n > 1) {
      const double m = static_cast<double>(n - 1);
      const double next = ((q * (2.0 * m + 1.0) + a) * s_cur - m * q * q * s_prev) / (m + 1.0);
      s_prev = s_cur;
      s_cur = next;
    }
    if (!std::isfinite(s_cur) || !(s_cur > 0.0)) {
      throw RangeError("mixed light: Laguerre factor out of range at n = " +
                       std::to_string(n));
    }
    if (s_cur > 1e200 || s_cur < 1e-200) {
      log_scale += std::log(s_cur);
      s_prev /= s_cur;
      s_cur = 1.0;
    }
    const double p = std::exp(log_prefactor + log_scale + std::log(s_cur));
    probs.push_back(p);
    mass += p;
    // 1 - mass only resolves epsilon above double rounding.
    if (epsilon >= kMassResolution && 1.0 - mass.value() <= epsilon) {
      tail = std::clamp(1.0 - mass.value(), 0.0, epsilon);
      break;
    }
    // Poisson convolved with geometric is log-concave, so once p_n / p_{n-1}
    // drops below 1 the rest is bounded by a geometric series.
    if (p_prev > 0.0 && static_cast<double>(n) > n0) {
      const double ratio = p / p_prev;
      if (ratio < 1.0) {
        const double bound = p * ratio / (1.0 - ratio);
        if (bound <= epsilon) {
          tail = bound;
          break;
        }
      }
    }
    p_prev = p;
  }
  return {std::move(probs), tail, "mixed_light",
          {{"n0", n0}, {"n_c", n_c}, {"n_t", n_t}}};
}

PhotonNumberDistribution fock_distribution(unsigned m) {
  std::vector<double> probs(static_cast<std::size_t>(m) + 1, 0.0);
  probs[m] = 1.0;
  return {std::move(probs), 0.0, "fock", {{"m", static_cast<double>(m)}}};
}

PhotonNumberDistribution custom_distribution(std::vector<double> probs) {
  PhotonNumberDistribution tmp(probs, 0.0);
  const double tail = std::max(0.0, 1.0 - tmp.total());
  return {std::move(probs), tail, "custom", {}};
}

PhotonNumberDistribution make_distribution(const FieldStateSpec& spec,
                                           double epsilon) {
  spec.validate();
  switch (spec.kind) {
    case StateKind::coherent: return coherent_distribution(spec.n0, epsilon);
    case StateKind::thermal: return thermal_distribution(spec.n0, epsilon);
    case StateKind::mixed_light:
      return mixed_light_distribution(spec.n_c, spec.n_t, epsilon);
    case StateKind::fock: return fock_distribution(spec.m);
    case StateKind::custom: return custom_distribution(*spec.custom_probs);
  }
  throw DomainError("unknown state kind");
}

}  // namespace condphoton
