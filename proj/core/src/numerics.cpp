#include "condphoton/numerics.hpp"

#include <array>
#include <limits>
#include <string>

#include "condphoton/errors.hpp"

namespace condphoton {
namespace {

constexpr std::size_t kFactorialTableSize = 2048;

// Kept in extended precision so that differences of large entries
// (log binomials) stay accurate to ~1 ulp after rounding to double.
struct LogFactorialTable {
  std::array<long double, kFactorialTableSize> entries{};

  LogFactorialTable() {
    long double sum = 0.0L;
    long double comp = 0.0L;
    entries[0] = 0.0L;
    for (std::size_t i = 1; i < kFactorialTableSize; ++i) {
      const long double x = std::log(static_cast<long double>(i));
      const long double t = sum + x;
      comp += (sum - t) + x;
      sum = t;
      entries[i] = sum + comp;
    }
  }
};

const LogFactorialTable& factorial_table() {
  static const LogFactorialTable table;
  return table;
}

long double log_factorial_ext(std::uint64_t n) {
  if (n < kFactorialTableSize) return factorial_table().entries[n];
  return std::lgamma(static_cast<long double>(n) + 1.0L);
}

}  // namespace

LogReal LogReal::from_value(double value) {
  if (value < 0.0) throw DomainError("LogReal cannot hold a negative value");
  if (value == 0.0) return zero();
  return from_log(std::log(value));
}

double log_factorial(std::uint64_t n) {
  return static_cast<double>(log_factorial_ext(n));
}

LogReal log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return LogReal::zero();
  if (k == 0 || k == n) return LogReal::from_log(0.0);
  const long double v =
      log_factorial_ext(n) - log_factorial_ext(k) - log_factorial_ext(n - k);
  return LogReal::from_log(static_cast<double>(v));
}

double laguerre(unsigned n, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 - x;
  for (unsigned m = 1; m < n; ++m) {
    const double next = ((2.0 * m + 1.0 - x) * cur - m * prev) / (m + 1.0);
    prev = cur;
    cur = next;
    if (!std::isfinite(cur)) {
      throw RangeError("laguerre: L_" + std::to_string(m + 1) + "(" +
                       std::to_string(x) + ") overflows double precision");
    }
  }
  if (!std::isfinite(cur)) {
    throw RangeError("laguerre: L_1(" + std::to_string(x) + ") is not finite");
  }
  return cur;
}

std::vector<double> laguerre_sequence(unsigned n_max, double x) {
  std::vector<double> values(static_cast<std::size_t>(n_max) + 1);
  values[0] = 1.0;
  if (n_max == 0) return values;
  values[1] = 1.0 - x;
  for (unsigned m = 1; m < n_max; ++m) {
    values[m + 1] =
        ((2.0 * m + 1.0 - x) * values[m] - m * values[m - 1]) / (m + 1.0);
    if (!std::isfinite(values[m + 1])) {
      throw RangeError("laguerre: L_" + std::to_string(m + 1) + "(" +
                       std::to_string(x) + ") overflows double precision");
    }
  }
  return values;
}

double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc += v;
  return acc.value();
}

}  // namespace condphoton
