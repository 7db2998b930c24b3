#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace condphoton {

/// Non-negative real stored by its natural logarithm.
struct LogReal {
  double log_magnitude = 0.0;
  bool is_zero = false;

  static LogReal zero() { return {0.0, true}; }
  static LogReal from_log(double log_value) { return {log_value, false}; }
  static LogReal from_value(double value);

  double value() const { return is_zero ? 0.0 : std::exp(log_magnitude); }

  friend LogReal operator*(LogReal a, LogReal b) {
    if (a.is_zero || b.is_zero) return zero();
    return from_log(a.log_magnitude + b.log_magnitude);
  }
};

/// ln(n!). Table lookup for n < 2048, log-gamma above.
double log_factorial(std::uint64_t n);

/// ln C(n, k); zero when k > n.
LogReal log_binomial(std::uint64_t n, std::uint64_t k);

/// Laguerre polynomial L_n(x) by the three-term recurrence.
/// Throws RangeError if any iterate is not finite.
double laguerre(unsigned n, double x);

/// L_0(x) ... L_{n_max}(x) from a single pass of the recurrence.
std::vector<double> laguerre_sequence(unsigned n_max, double x);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values);

}  // namespace condphoton
