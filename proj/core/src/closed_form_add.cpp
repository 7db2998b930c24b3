// Closed-form single-photon addition for coherent and thermal light.
// Subtractive brackets are rewritten with expm1 where the literal difference
// cancels for small r.

#include <cmath>
#include <string>

#include "condphoton/add.hpp"
#include "condphoton/errors.hpp"
#include "condphoton/numerics.hpp"

namespace condphoton {
namespace {

constexpr std::size_t kMaxGrowth = 10000;
constexpr double kTrimRatio = 1e-14;

// Tabulates f(n) for n = 0 .. input_cutoff and then keeps going while the
// values stay above kTrimRatio, mirroring the growth rule of add_exact.
template <typename F>
PhotonNumberDistribution tabulate(std::size_t input_cutoff, bool grow, F&& f) {
  std::vector<double> probs;
  const std::size_t last = input_cutoff + (grow ? kMaxGrowth : 1);
  for (std::size_t n = 0; n <= last; ++n) {
    const double v = f(n);
    if (n > input_cutoff && v < kTrimRatio) break;
    probs.push_back(v);
  }
  return {std::move(probs), 0.0, "posterior"};
}

ClosedFormOutcome thermal_addition(double n0, const PdcParams& pdc,
                                   const DetectorModel& d, double epsilon) {
  const double r = pdc.r();
  const double t = pdc.t();
  const double g = 1.0 + n0 * r * t;
  const std::size_t cutoff = thermal_cutoff(n0, epsilon);
  ClosedFormOutcome out;

  if (d.is_resolving()) {
    const double P = r * t * t * (1.0 + n0) / (g * g);
    out.probability = P;
    out.mean = (n0 * (1.0 + t) + 1.0) / g;
    out.second_factorial = 2.0 * t * (n0 * n0 * (2.0 + t) + 2.0 * n0) / (g * g);
    if (n0 == 0.0) {
      out.posterior = PhotonNumberDistribution({0.0, 1.0}, 0.0, "posterior");
      return out;
    }
    // (1 + n0 r t)^2 / (t n0) * n (n0 t)^n / (1 + n0)^{n+1}
    const double log_head = 2.0 * std::log(g) - std::log(t * n0);
    const double log_n0t = std::log(n0 * t);
    const double log_1p_n0 = std::log1p(n0);
    out.posterior = tabulate(cutoff, false, [&](std::size_t n) {
      if (n == 0) return 0.0;
      const double dn = static_cast<double>(n);
      return std::exp(log_head + std::log(dn) + dn * log_n0t - (dn + 1.0) * log_1p_n0);
    });
    return out;
  }

  const double P = r * t * (1.0 + n0) / g;
  const double q = t / g;
  out.probability = P;
  out.mean = (n0 / t + r - n0 * q * q) / P;
  out.second_factorial =
      2.0 * ((n0 / t + r) * (n0 / t + r) - n0 * n0 * q * q * q) / P;
  // t [(rt + n0)^n - (n0 t)^n] / (1 + n0)^{n+1} / P
  //   = t (n0 t)^n expm1(n ln(1 + r (1 + n0) / n0)) / (1 + n0)^{n+1} / P
  const double log_1p_n0 = std::log1p(n0);
  const double log_pref = std::log(t) - std::log(P);
  if (n0 == 0.0) {
    const double log_rt = std::log(r * t);
    out.posterior = tabulate(cutoff, true, [&](std::size_t n) {
      return n == 0 ? 0.0 : std::exp(log_pref + static_cast<double>(n) * log_rt);
    });
    return out;
  }
  const double log_n0t = std::log(n0 * t);
  const double log_ratio = std::log1p(r * (1.0 + n0) / n0);
  out.posterior = tabulate(cutoff, true, [&](std::size_t n) {
    if (n == 0) return 0.0;
    const double dn = static_cast<double>(n);
    return std::exp(log_pref + dn * log_n0t - (dn + 1.0) * log_1p_n0) *
           std::expm1(dn * log_ratio);
  });
  return out;
}

ClosedFormOutcome coherent_addition(double n0, const PdcParams& pdc,
                                    const DetectorModel& d, double epsilon) {
  if (d.is_resolving()) {
    throw UnsupportedCombination(
        "closed-form coherent addition exists only for the nonresolving detector");
  }
  const double r = pdc.r();
  const double t = pdc.t();
  const double e = std::exp(-r * t * n0);
  ClosedFormOutcome out;
  // 1 - t e^{-r t n0}, with 1 - t = r t
  const double P = r * t - t * std::expm1(-r * t * n0);
  out.probability = P;
  out.mean = (n0 * (1.0 + r) + r - n0 * t * t * e) / P;
  out.second_factorial =
      (n0 * n0 / (t * t) + 4.0 * r * n0 / t + 2.0 * r * r - n0 * n0 * t * t * t * e) / P;

  // t e^{-n0} [(rt)^n L_n(-n0/r) - (n0 t)^n / n!] / P
  const double x = -n0 / r;
  const double log_pref = std::log(t) - n0 - std::log(P);
  const double log_rt = std::log(r * t);
  const double log_n0t = n0 > 0.0 ? std::log(n0 * t) : 0.0;
  double l_prev = 1.0;
  double l_cur = 1.0;
  out.posterior = tabulate(poisson_cutoff(n0, epsilon), true, [&](std::size_t n) {
    if (n == 1) {
      l_prev = 1.0;
      l_cur = 1.0 - x;
    } else if (n >= 2) {
      const double m = static_cast<double>(n - 1);
      const double next = ((2.0 * m + 1.0 - x) * l_cur - m * l_prev) / (m + 1.0);
      l_prev = l_cur;
      l_cur = next;
    }
    if (!std::isfinite(l_cur)) {
      throw RangeError("laguerre: L_" + std::to_string(n) + "(" + std::to_string(x) +
                       ") overflows double precision");
    }
    const double dn = static_cast<double>(n);
    const double log_a = dn * log_rt + std::log(l_cur);
    if (n0 == 0.0) {
      return n == 0 ? 0.0 : std::exp(log_pref + log_a);
    }
    const double log_b = dn * log_n0t - log_factorial(n);
    // A - B = A (1 - B/A); the bracket is a sum of non-negative terms.
    return std::exp(log_pref + log_a) * -std::expm1(std::min(log_b - log_a, 0.0));
  });
  return out;
}

}  // namespace

ClosedFormOutcome closed_form_addition(const FieldStateSpec& spec,
                                       const PdcParams& pdc, const DetectorModel& d,
                                       double epsilon) {
  spec.validate();
  if (d.k() != 1) {
    throw UnsupportedCombination("closed-form addition exists only for k = 1");
  }
  switch (spec.kind) {
    case StateKind::thermal: return thermal_addition(spec.n0, pdc, d, epsilon);
    case StateKind::coherent: return coherent_addition(spec.n0, pdc, d, epsilon);
    default:
      throw UnsupportedCombination(
          "closed-form addition covers coherent and thermal light only");
  }
}

}  // namespace condphoton
