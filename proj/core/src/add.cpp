#include "condphoton/add.hpp"

#include <cmath>

#include "condphoton/errors.hpp"
#include "condphoton/numerics.hpp"
#include "kernels.hpp"

namespace condphoton {
namespace {

constexpr double kImpossibleThreshold = 1e-300;
constexpr double kComplementFloor = 1e-3;

void require_k(unsigned k) {
  if (k == 0) throw DomainError("photon count k must be >= 1");
}

OutcomeStatistics finish(const detail::Moments& m, const char* label) {
  if (!(m.total >= kImpossibleThreshold)) {
    throw ImpossibleOutcome(std::string(label) + ": outcome has zero probability",
                            std::max(m.total, 0.0));
  }
  return {m.total, m.first / m.total, m.second / m.total};
}

}  // namespace

PdcParams::PdcParams(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("down-conversion gain must be a finite value > 0");
  }
  const double s = std::sinh(lambda);
  const double c = std::cosh(lambda);
  r_ = s * s;
  t_ = 1.0 / (c * c);
  log_r_ = 2.0 * std::log(s);
  log_t_ = -2.0 * std::log(c);
  if (!(r_ > 0.0 && t_ > 0.0 && std::isfinite(r_))) {
    throw DomainError("down-conversion gain out of representable range");
  }
}

PdcParams PdcParams::from_lambda(double lambda) { return PdcParams(lambda); }

std::vector<double> add_branch(std::span<const double> p, const PdcParams& pdc,
                               unsigned j) {
  return detail::amplification_exact_l(p, pdc.log_r(), pdc.log_t(), j);
}

OutcomeRecord add_exact(const PhotonNumberDistribution& p, const PdcParams& pdc,
                        const DetectorModel& d) {
  const std::string label = "add_exact(" + d.to_string() + ")";
  if (d.is_resolving()) {
    return make_outcome(add_branch(p.probs(), pdc, d.k()), p.tail_bound(), label);
  }
  auto tail = detail::amplification_at_least(p.probs(), pdc.log_r(), pdc.log_t(), d.k());
  return make_outcome(std::move(tail.theta), p.tail_bound() + tail.dropped_mass,
                      label);
}

OutcomeStatistics add_exact_statistics(const PhotonNumberDistribution& p,
                                       const PdcParams& pdc, const DetectorModel& d) {
  if (d.is_resolving()) {
    return finish(
        detail::amplification_exact_l_moments(p.probs(), pdc.log_r(), pdc.log_t(), d.k()),
        "add_exact_statistics");
  }

  // Input m becomes m + l with l negative-binomial(m + 1, rt), so over all
  // idler outcomes E[n] = m + (m+1) r and
  // E[n(n-1)] = m(m-1) + 2 m (m+1) r + (m+1)(m+2) r^2.
  const auto probs = p.probs();
  const double r = pdc.r();
  CompensatedSum total, first, second;
  for (std::size_t m = 0; m < probs.size(); ++m) {
    const double w = probs[m];
    if (w == 0.0) continue;
    const double dm = static_cast<double>(m);
    total += w;
    first += w * (dm + (dm + 1.0) * r);
    second += w * (dm * (dm - 1.0) + 2.0 * dm * (dm + 1.0) * r +
                   (dm + 1.0) * (dm + 2.0) * r * r);
  }
  const double in_total = total.value();
  const double in_first = first.value();
  const double in_second = second.value();
  for (unsigned j = 0; j < d.k(); ++j) {
    const auto branch =
        detail::amplification_exact_l_moments(probs, pdc.log_r(), pdc.log_t(), j);
    total += -branch.total;
    first += -branch.first;
    second += -branch.second;
  }
  detail::Moments m{total.value(), first.value(), second.value()};
  if (m.total < kComplementFloor * in_total || m.first < kComplementFloor * in_first ||
      m.second < kComplementFloor * in_second) {
    return statistics_of(add_exact(p, pdc, d));
  }
  return finish(m, "add_exact_statistics");
}

OutcomeRecord add_model_A(const PhotonNumberDistribution& p, const PdcParams& pdc,
                          unsigned k) {
  require_k(k);
  const auto probs = p.probs();
  std::vector<double> theta(probs.size() + k, 0.0);
  const double k_log_r = k * pdc.log_r();
  for (std::size_t m = 0; m < probs.size(); ++m) {
    if (probs[m] == 0.0) continue;
    // (r^k / k!) n! / (n-k)! with n = m + k
    theta[m + k] =
        detail::binomial_term(m + k, k, k_log_r, probs[m]);
  }
  return make_outcome(std::move(theta), p.tail_bound(), "add_model_A");
}

OutcomeStatistics add_model_A_statistics(const PhotonNumberDistribution& p,
                                         const PdcParams& pdc, unsigned k) {
  require_k(k);
  const auto probs = p.probs();
  const double k_log_r = k * pdc.log_r();
  detail::MomentAccumulator acc;
  for (std::size_t m = 0; m < probs.size(); ++m) {
    if (probs[m] == 0.0) continue;
    acc.add(m + k,
            detail::binomial_term(m + k, k, k_log_r, probs[m]));
  }
  return finish(acc.moments(), "add_model_A");
}

OutcomeStatistics add_model_E_statistics(const PhotonNumberDistribution& p, unsigned k) {
  require_k(k);
  const auto probs = p.probs();
  detail::MomentAccumulator acc;
  for (std::size_t m = 0; m < probs.size(); ++m) acc.add(m + k, probs[m]);
  return finish(acc.moments(), "add_model_E");
}

OutcomeRecord add_model_E(const PhotonNumberDistribution& p, unsigned k) {
  require_k(k);
  const auto probs = p.probs();
  std::vector<double> theta(probs.size() + k, 0.0);
  std::copy(probs.begin(), probs.end(), theta.begin() + k);
  return make_outcome(std::move(theta), p.tail_bound(), "add_model_E");
}

}  // namespace condphoton
