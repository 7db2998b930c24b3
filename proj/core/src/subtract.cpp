#include "condphoton/subtract.hpp"

#include <cmath>
#include <numbers>

#include "condphoton/errors.hpp"
#include "condphoton/numerics.hpp"
#include "kernels.hpp"

namespace condphoton {
namespace {

constexpr double kImpossibleThreshold = 1e-300;
// Complement sums that lose more than this relative precision are redone
// with the full transform.
constexpr double kComplementFloor = 1e-3;

void require_k(unsigned k) {
  if (k == 0) throw DomainError("photon count k must be >= 1");
}

OutcomeStatistics from_moments(const detail::Moments& m, const char* label) {
  if (!(m.total >= kImpossibleThreshold)) {
    throw ImpossibleOutcome(std::string(label) + ": outcome has zero probability",
                            std::max(m.total, 0.0));
  }
  return {m.total, m.first / m.total, m.second / m.total};
}

}  // namespace

BeamSplitterParams::BeamSplitterParams(double theta) : theta_(theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2)) {
    throw DomainError("beam-splitter angle must lie in (0, pi/2)");
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  reflectivity_ = s * s;
  transmittivity_ = c * c;
  log_reflectivity_ = 2.0 * std::log(s);
  log_transmittivity_ = 2.0 * std::log(c);
  if (!(reflectivity_ > 0.0 && reflectivity_ < 1.0 && transmittivity_ > 0.0)) {
    throw DomainError("reflectivity must lie strictly inside (0, 1)");
  }
}

BeamSplitterParams BeamSplitterParams::from_theta(double theta) {
  return BeamSplitterParams(theta);
}

BeamSplitterParams BeamSplitterParams::from_reflectivity(double reflectivity) {
  if (!(reflectivity > 0.0 && reflectivity < 1.0)) {
    throw DomainError("reflectivity must lie strictly inside (0, 1)");
  }
  return BeamSplitterParams(std::asin(std::sqrt(reflectivity)));
}

FactorialMoments factorial_moments(const PhotonNumberDistribution& p) {
  const auto m = detail::raw_moments(p.probs());
  return {m.first, m.second};
}

OutcomeRecord make_outcome(std::vector<double> theta, double input_tail,
                           const std::string& label) {
  const auto m = detail::raw_moments(theta);
  if (!(m.total >= kImpossibleThreshold)) {
    throw ImpossibleOutcome(label + ": outcome has zero probability",
                            std::max(m.total, 0.0));
  }
  std::vector<double> post(theta.size());
  for (std::size_t n = 0; n < theta.size(); ++n) post[n] = theta[n] / m.total;
  PhotonNumberDistribution posterior(std::move(post), input_tail / m.total,
                                     "posterior");
  const auto fm = factorial_moments(posterior);
  return {std::move(theta), m.total, std::move(posterior), fm.mean,
          fm.second_factorial};
}

OutcomeStatistics statistics_of(const OutcomeRecord& record) {
  return {record.probability, record.mean, record.second_factorial};
}

std::vector<double> subtract_branch(std::span<const double> p,
                                    const BeamSplitterParams& bs, unsigned j) {
  return detail::thinning_exact_l(p, bs.log_R(), bs.log_T(), j);
}

OutcomeRecord subtract_exact(const PhotonNumberDistribution& p,
                             const BeamSplitterParams& bs, const DetectorModel& d) {
  std::vector<double> theta =
      d.is_resolving()
          ? detail::thinning_exact_l(p.probs(), bs.log_R(), bs.log_T(), d.k())
          : detail::thinning_at_least(p.probs(), bs.log_R(), bs.log_T(), d.k());
  return make_outcome(std::move(theta), p.tail_bound(),
                      "subtract_exact(" + d.to_string() + ")");
}

OutcomeStatistics subtract_exact_statistics(const PhotonNumberDistribution& p,
                                            const BeamSplitterParams& bs,
                                            const DetectorModel& d) {
  if (d.is_resolving()) {
    return from_moments(
        detail::thinning_exact_l_moments(p.probs(), bs.log_R(), bs.log_T(), d.k()),
        "subtract_exact_statistics");
  }

  // Every input photon is transmitted with probability T, so summed over all
  // detector outcomes: sum Theta = sum p, sum n Theta = T <m>,
  // sum n(n-1) Theta = T^2 <m(m-1)>.
  const auto in = detail::raw_moments(p.probs());
  const double t = bs.T();
  CompensatedSum total, first, second;
  total += in.total;
  first += t * in.first;
  second += t * t * in.second;
  for (unsigned j = 0; j < d.k(); ++j) {
    const auto branch =
        detail::thinning_exact_l_moments(p.probs(), bs.log_R(), bs.log_T(), j);
    total += -branch.total;
    first += -branch.first;
    second += -branch.second;
  }
  detail::Moments m{total.value(), first.value(), second.value()};
  if (m.total < kComplementFloor * in.total || m.first < kComplementFloor * t * in.first ||
      m.second < kComplementFloor * t * t * in.second) {
    return statistics_of(subtract_exact(p, bs, d));
  }
  return from_moments(m, "subtract_exact_statistics");
}

OutcomeRecord subtract_model_A(const PhotonNumberDistribution& p,
                               const BeamSplitterParams& bs, unsigned k) {
  require_k(k);
  const auto probs = p.probs();
  std::vector<double> theta;
  if (probs.size() > k) {
    theta.assign(probs.size() - k, 0.0);
    const double k_log_r = k * bs.log_R();
    for (std::size_t n = 0; n < theta.size(); ++n) {
      const double w = probs[n + k];
      if (w == 0.0) continue;
      // (R^k / k!) (n+k)! / n! = R^k C(n+k, k)
      theta[n] = detail::binomial_term(n + k, k, k_log_r, w);
    }
  }
  return make_outcome(std::move(theta), p.tail_bound(), "subtract_model_A");
}

OutcomeStatistics subtract_model_A_statistics(const PhotonNumberDistribution& p,
                                              const BeamSplitterParams& bs, unsigned k) {
  require_k(k);
  const auto probs = p.probs();
  const double k_log_r = k * bs.log_R();
  detail::MomentAccumulator acc;
  for (std::size_t n = 0; n + k < probs.size(); ++n) {
    const double w = probs[n + k];
    if (w == 0.0) continue;
    acc.add(n, detail::binomial_term(n + k, k, k_log_r, w));
  }
  return from_moments(acc.moments(), "subtract_model_A");
}

OutcomeStatistics subtract_model_E_statistics(const PhotonNumberDistribution& p,
                                              unsigned k) {
  require_k(k);
  const auto probs = p.probs();
  detail::MomentAccumulator acc;
  for (std::size_t n = 0; n + k < probs.size(); ++n) acc.add(n, probs[n + k]);
  return from_moments(acc.moments(), "subtract_model_E");
}

OutcomeRecord subtract_model_E(const PhotonNumberDistribution& p, unsigned k) {
  require_k(k);
  const auto probs = p.probs();
  std::vector<double> theta;
  if (probs.size() > k) theta.assign(probs.begin() + k, probs.end());
  return make_outcome(std::move(theta), p.tail_bound(), "subtract_model_E");
}

OutcomeRecord subtract_sequential(const PhotonNumberDistribution& p,
                                  const BeamSplitterParams& bs, unsigned k) {
  require_k(k);
  std::vector<double> theta(p.probs().begin(), p.probs().end());
  for (unsigned i = 0; i < k; ++i) {
    theta = detail::thinning_at_least(theta, bs.log_R(), bs.log_T(), 1);
    if (theta.empty()) break;
  }
  return make_outcome(std::move(theta), p.tail_bound(),
                      "subtract_sequential(" + std::to_string(k) + ")");
}

}  // namespace condphoton
