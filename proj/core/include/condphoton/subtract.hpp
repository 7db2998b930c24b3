#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "condphoton/detectors.hpp"
#include "condphoton/states.hpp"

namespace condphoton {

/// Beam splitter with reflectivity R = sin^2(theta), transmittivity
/// T = cos^2(theta), theta in (0, pi/2).
class BeamSplitterParams {
 public:
  static BeamSplitterParams from_theta(double theta);
  static BeamSplitterParams from_reflectivity(double reflectivity);

  double theta() const { return theta_; }
  double R() const { return reflectivity_; }
  double T() const { return transmittivity_; }
  double log_R() const { return log_reflectivity_; }
  double log_T() const { return log_transmittivity_; }

 private:
  explicit BeamSplitterParams(double theta);

  double theta_;
  double reflectivity_;
  double transmittivity_;
  double log_reflectivity_;
  double log_transmittivity_;
};

struct FactorialMoments {
  double mean = 0.0;
  double second_factorial = 0.0;
};

/// <n> and <n(n-1)> of a normalised distribution.
FactorialMoments factorial_moments(const PhotonNumberDistribution& p);

/// Result of one conditional map: the unnormalised Theta vector, the event
/// probability P = sum Theta, and the post-selected distribution Theta / P.
struct OutcomeRecord {
  std::vector<double> theta_vector;
  double probability = 0.0;
  PhotonNumberDistribution posterior;
  double mean = 0.0;
  double second_factorial = 0.0;
};

/// Builds an OutcomeRecord from a Theta vector. Throws ImpossibleOutcome when
/// sum Theta < 1e-300. The posterior tail bound is input_tail / P.
OutcomeRecord make_outcome(std::vector<double> theta, double input_tail,
                           const std::string& label);

/// Just the scalar summary of an outcome.
struct OutcomeStatistics {
  double probability = 0.0;
  double mean = 0.0;
  double second_factorial = 0.0;
};

OutcomeStatistics statistics_of(const OutcomeRecord& record);

/// Exact photon subtraction: Theta_n = sum_{l>=k} Upsilon_l C(n+l,n) T^n R^l p_{n+l}.
OutcomeRecord subtract_exact(const PhotonNumberDistribution& p,
                             const BeamSplitterParams& bs, const DetectorModel& d);

/// Same probability and moments as subtract_exact, computed in O(N) without
/// materialising Theta. Nonresolving detectors use the complement
/// "all outcomes minus resolving 0..k-1"; when that cancels more than three
/// digits the full transform is used instead.
OutcomeStatistics subtract_exact_statistics(const PhotonNumberDistribution& p,
                                            const BeamSplitterParams& bs,
                                            const DetectorModel& d);

/// Generalised A-model, (R^k / k!) a^k rho a^{dagger k}. P is unbounded.
OutcomeRecord subtract_model_A(const PhotonNumberDistribution& p,
                               const BeamSplitterParams& bs, unsigned k);

/// Generalised E-model: E_- shifts |n> to |n-1>, so Theta_n = p_{n+k}.
OutcomeRecord subtract_model_E(const PhotonNumberDistribution& p, unsigned k);

/// Probability and moments of the A and E models without materialising Theta.
OutcomeStatistics subtract_model_A_statistics(const PhotonNumberDistribution& p,
                                              const BeamSplitterParams& bs, unsigned k);
OutcomeStatistics subtract_model_E_statistics(const PhotonNumberDistribution& p,
                                              unsigned k);

/// k one-by-one clicks of a single-photon detector: the unnormalised
/// nonresolving-1 map applied k times.
OutcomeRecord subtract_sequential(const PhotonNumberDistribution& p,
                                  const BeamSplitterParams& bs, unsigned k);

/// Theta for exactly j reflected photons, j = 0 allowed (the no-click
/// branch). Intended for partition checks; never fails.
std::vector<double> subtract_branch(std::span<const double> p,
                                    const BeamSplitterParams& bs, unsigned j);

/// Closed-form results. `posterior` is present only where a closed form for
/// the post-selected distribution exists (not for mixed light).
struct ClosedFormOutcome {
  double probability = 0.0;
  double mean = 0.0;
  double second_factorial = 0.0;
  std::optional<PhotonNumberDistribution> posterior;
};

/// Coherent (any detector, any k), thermal (any detector, any k) and mixed
/// light (resolving any k, nonresolving k = 1). The posterior is tabulated up
/// to the cutoff the generic path would use for the same epsilon.
ClosedFormOutcome closed_form_subtraction(const FieldStateSpec& spec,
                                          const BeamSplitterParams& bs,
                                          const DetectorModel& d,
                                          double epsilon = kDefaultEpsilon);

/// Two sequential single-photon clicks (k = 2) for coherent and thermal light.
ClosedFormOutcome closed_form_sequential(const FieldStateSpec& spec,
                                         const BeamSplitterParams& bs, unsigned k,
                                         double epsilon = kDefaultEpsilon);

}  // namespace condphoton
