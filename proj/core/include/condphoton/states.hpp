#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace condphoton {

inline constexpr double kDefaultEpsilon = 1e-12;

/// Truncated photon-number distribution p_0 ... p_N.
///
/// `tail_bound` bounds the probability mass above the cutoff N. Instances are
/// immutable; every map in the library returns a new distribution.
class PhotonNumberDistribution {
 public:
  PhotonNumberDistribution(std::vector<double> probs, double tail_bound,
                           std::string kind = "custom",
                           std::map<std::string, double> params = {});

  std::span<const double> probs() const { return probs_; }
  std::size_t cutoff() const { return probs_.size() - 1; }
  std::size_t size() const { return probs_.size(); }
  double tail_bound() const { return tail_bound_; }
  const std::string& kind() const { return kind_; }
  const std::map<std::string, double>& params() const { return params_; }

  /// p_n, or 0 above the cutoff.
  double operator[](std::size_t n) const {
    return n < probs_.size() ? probs_[n] : 0.0;
  }

  /// Compensated sum of the stored entries.
  double total() const;

 private:
  std::vector<double> probs_;
  double tail_bound_;
  std::string kind_;
  std::map<std::string, double> params_;
};

enum class StateKind { coherent, thermal, mixed_light, fock, custom };

/// Parameter bundle naming one of the supported input states.
struct FieldStateSpec {
  StateKind kind = StateKind::thermal;
  double n0 = 0.0;   // coherent, thermal; n_c + n_t for mixed light
  double n_c = 0.0;  // mixed light
  double n_t = 0.0;  // mixed light
  unsigned m = 0;    // fock
  std::optional<std::vector<double>> custom_probs;

  static FieldStateSpec coherent(double n0);
  static FieldStateSpec thermal(double n0);
  static FieldStateSpec mixed_light(double n_c, double n_t);
  static FieldStateSpec fock(unsigned m);
  static FieldStateSpec custom(std::vector<double> probs);

  /// Throws DomainError when the fields are inconsistent with `kind`.
  void validate() const;
};

std::string to_string(StateKind kind);
StateKind state_kind_from_string(const std::string& name);

PhotonNumberDistribution thermal_distribution(double n0,
                                              double epsilon = kDefaultEpsilon);
PhotonNumberDistribution coherent_distribution(double n0,
                                               double epsilon = kDefaultEpsilon);
PhotonNumberDistribution mixed_light_distribution(
    double n_c, double n_t, double epsilon = kDefaultEpsilon);
PhotonNumberDistribution fock_distribution(unsigned m);
PhotonNumberDistribution custom_distribution(std::vector<double> probs);

PhotonNumberDistribution make_distribution(const FieldStateSpec& spec,
                                           double epsilon = kDefaultEpsilon);

/// Cutoff N for which the thermal tail (n0/(n0+1))^{N+1} <= epsilon and the
/// truncated mean is within a few epsilon of n0.
std::size_t thermal_cutoff(double n0, double epsilon);

/// Cutoff N whose Chernoff bound on P(X >= N) for Poisson(n0) is <= epsilon.
std::size_t poisson_cutoff(double n0, double epsilon);

}  // namespace condphoton
