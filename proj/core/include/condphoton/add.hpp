#pragma once

#include <span>
#include <vector>

#include "condphoton/detectors.hpp"
#include "condphoton/states.hpp"
#include "condphoton/subtract.hpp"

namespace condphoton {

/// Parametric down-conversion with gain lambda > 0:
/// r = sinh^2(lambda), t = 1 / cosh^2(lambda).
class PdcParams {
 public:
  static PdcParams from_lambda(double lambda);

  double lambda() const { return lambda_; }
  double r() const { return r_; }
  double t() const { return t_; }
  double log_r() const { return log_r_; }
  double log_t() const { return log_t_; }

 private:
  explicit PdcParams(double lambda);

  double lambda_;
  double r_;
  double t_;
  double log_r_;
  double log_t_;
};

/// Exact photon addition: Theta_n = sum_{l>=k} Upsilon_l C(n,l) t^{n+1} r^l p_{n-l}.
/// Nonresolving outcomes extend past the input cutoff (see
/// detail::amplification_at_least); the discarded mass joins the tail bound.
OutcomeRecord add_exact(const PhotonNumberDistribution& p, const PdcParams& pdc,
                        const DetectorModel& d);

/// O(N) probability and moments of add_exact. Nonresolving detectors use the
/// complement over all idler outcomes, falling back to the full transform
/// when the difference cancels.
OutcomeStatistics add_exact_statistics(const PhotonNumberDistribution& p,
                                       const PdcParams& pdc, const DetectorModel& d);

/// A+ model, (r^k / k!) a^{dagger k} rho a^k.
OutcomeRecord add_model_A(const PhotonNumberDistribution& p, const PdcParams& pdc,
                          unsigned k);

/// E+ model: exact shift, Theta_n = p_{n-k}.
OutcomeRecord add_model_E(const PhotonNumberDistribution& p, unsigned k);

OutcomeStatistics add_model_A_statistics(const PhotonNumberDistribution& p,
                                         const PdcParams& pdc, unsigned k);
OutcomeStatistics add_model_E_statistics(const PhotonNumberDistribution& p, unsigned k);

/// Theta for exactly j idler photons, j = 0 allowed.
std::vector<double> add_branch(std::span<const double> p, const PdcParams& pdc,
                               unsigned j);

/// Closed forms for k = 1: thermal with either detector flavor, coherent with
/// a nonresolving detector. Throws UnsupportedCombination otherwise and
/// RangeError when the coherent posterior needs an unrepresentable Laguerre
/// value.
ClosedFormOutcome closed_form_addition(const FieldStateSpec& spec,
                                       const PdcParams& pdc, const DetectorModel& d,
                                       double epsilon = kDefaultEpsilon);

}  // namespace condphoton
