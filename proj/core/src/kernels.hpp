#pragma once

// Distribution-level Theta transforms shared by the subtraction and addition
// modules. All functions take raw weight vectors so that they can be chained
// without renormalisation (sequential detection).

#include <cstddef>
#include <span>
#include <vector>

#include "condphoton/numerics.hpp"

namespace condphoton::detail {

struct Moments {
  double total = 0.0;
  double first = 0.0;   // sum n w_n
  double second = 0.0;  // sum n (n - 1) w_n
};

Moments raw_moments(std::span<const double> weights);

/// ln C(n + l, l), exact product for small l and table / log-gamma otherwise.
double log_binomial_fast(std::size_t n_plus_l, std::size_t l);

/// C(n + l, l) e^{log_factor} p, one exponential for small l and log space
/// near underflow.
double binomial_term(std::size_t n_plus_l, std::size_t l, double log_factor, double p);

/// Beam-splitter transform with exactly `l` reflected photons:
/// out_n = C(n + l, n) T^n R^l w_{n + l}, n = 0 .. N - l.
std::vector<double> thinning_exact_l(std::span<const double> w, double log_r,
                                     double log_t, std::size_t l);

/// Beam-splitter transform summed over l >= l_min reflected photons.
std::vector<double> thinning_at_least(std::span<const double> w, double log_r,
                                      double log_t, std::size_t l_min);

/// Moments of thinning_exact_l without materialising the vector.
Moments thinning_exact_l_moments(std::span<const double> w, double log_r,
                                 double log_t, std::size_t l);

/// Down-conversion transform with exactly `l` idler photons:
/// out_n = C(n, l) t^{n+1} r^l w_{n - l}, n = 0 .. N + l.
std::vector<double> amplification_exact_l(std::span<const double> w,
                                          double log_r, double log_t,
                                          std::size_t l);

/// Moments of amplification_exact_l without materialising the vector.
Moments amplification_exact_l_moments(std::span<const double> w, double log_r,
                                      double log_t, std::size_t l);

struct AmplifiedTail {
  std::vector<double> theta;
  double dropped_mass = 0.0;
};

/// Down-conversion transform summed over l >= l_min idler photons. The output
/// grows beyond the input cutoff until entries fall below 1e-14 of the total
/// (at most 10^4 extra entries); the mass discarded beyond that is reported.
AmplifiedTail amplification_at_least(std::span<const double> w, double log_r,
                                     double log_t, std::size_t l_min);

}  // namespace condphoton::detail

namespace condphoton::detail {

/// Accumulates sum Theta_n, sum n Theta_n, sum n(n-1) Theta_n one entry at a
/// time, in the same order make_outcome would see them.
class MomentAccumulator {
 public:
  void add(std::size_t n, double theta) {
    if (theta == 0.0) return;
    const double dn = static_cast<double>(n);
    total_ += theta;
    first_ += dn * theta;
    second_ += dn * (dn - 1.0) * theta;
  }
  Moments moments() const { return {total_.value(), first_.value(), second_.value()}; }

 private:
  CompensatedSum total_, first_, second_;
};

}  // namespace condphoton::detail
