// Closed-form photon-subtraction results for coherent, thermal and mixed
// light, plus two-click sequential detection.
//
// Expressions are the printed ones, rearranged only where the literal form
// cancels catastrophically for small n0 R:
//   1 - e^{-x} sum_{l<k} x^l / l!         -> regularised lower gamma P(k, x)
//   (1-a)^{-(n+1)} - sum_{l<k} C(n+l,l) a^l -> (1-a)^{-(n+1)} I_a(k, n+1)
//   e^y - 1                               -> expm1(y)

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "condphoton/errors.hpp"
#include "condphoton/numerics.hpp"
#include "condphoton/subtract.hpp"

namespace condphoton {
namespace {

std::size_t posterior_cutoff(std::size_t input_cutoff, unsigned k) {
  return input_cutoff >= k ? input_cutoff - k : 0;
}

PhotonNumberDistribution poisson_posterior(double mean, std::size_t cutoff) {
  std::vector<double> probs(cutoff + 1, 0.0);
  if (mean == 0.0) {
    probs[0] = 1.0;
  } else {
    const double log_mean = std::log(mean);
    for (std::size_t n = 0; n <= cutoff; ++n) {
      probs[n] = std::exp(-mean + static_cast<double>(n) * log_mean - log_factorial(n));
    }
  }
  return {std::move(probs), 0.0, "posterior"};
}

ClosedFormOutcome coherent_subtraction(double n0, const BeamSplitterParams& bs,
                                       const DetectorModel& d, double epsilon) {
  const double x = n0 * bs.R();
  const unsigned k = d.k();
  ClosedFormOutcome out;
  if (d.is_resolving()) {
    out.probability =
        n0 == 0.0 ? 0.0 : std::exp(-x + k * std::log(x) - log_factorial(k));
  } else {
    out.probability = n0 == 0.0 ? 0.0 : boost::math::gamma_p(static_cast<double>(k), x);
  }
  out.mean = n0 * bs.T();
  out.second_factorial = n0 * n0 * bs.T() * bs.T();
  out.posterior = poisson_posterior(
      n0 * bs.T(), posterior_cutoff(poisson_cutoff(n0, epsilon), k));
  return out;
}

ClosedFormOutcome thermal_subtraction(double n0, const BeamSplitterParams& bs,
                                      const DetectorModel& d, double epsilon) {
  const double R = bs.R();
  const double T = bs.T();
  const double x = n0 * R;
  const double k = d.k();
  const double v = d.is_resolving() ? 0.0 : 1.0;

  ClosedFormOutcome out;
  out.probability = std::pow(x, k) / std::pow(1.0 + x, k + 1.0 - v);
  out.mean = n0 * T * (1.0 + k + v * x) / (1.0 + x);
  out.second_factorial = n0 * n0 * T * T *
                         ((1.0 + k) * (2.0 + k) + 2.0 * v * x * (2.0 + k + x)) /
                         ((1.0 + x) * (1.0 + x));

  const std::size_t cutoff = posterior_cutoff(thermal_cutoff(n0, epsilon), d.k());
  std::vector<double> probs(cutoff + 1, 0.0);
  if (n0 > 0.0) {
    const double log_n0t = std::log(n0 * T);
    if (d.is_resolving()) {
      // C(n+k, n) ((1 + n0 R)/(1 + n0))^{k+1} (n0 T / (1 + n0))^n
      const double log_head = (k + 1.0) * (std::log1p(x) - std::log1p(n0));
      for (std::size_t n = 0; n <= cutoff; ++n) {
        probs[n] = std::exp(log_binomial(n + d.k(), n).log_magnitude + log_head +
                            static_cast<double>(n) * (log_n0t - std::log1p(n0)));
      }
    } else {
      // ((1 + n0 R)/(n0 R))^k (n0 T)^n / (1 + n0 T)^{n+1} I_a(k, n+1),
      // a = n0 R / (1 + n0)
      const double a = x / (1.0 + n0);
      const double log_head = k * (std::log1p(x) - std::log(x));
      const double log_1p_n0t = std::log1p(n0 * T);
      for (std::size_t n = 0; n <= cutoff; ++n) {
        const double dn = static_cast<double>(n);
        const double tail = boost::math::ibeta(k, dn + 1.0, a);
        probs[n] = tail == 0.0 ? 0.0
                               : std::exp(log_head + dn * log_n0t -
                                          (dn + 1.0) * log_1p_n0t + std::log(tail));
      }
    }
  }
  out.posterior = PhotonNumberDistribution(std::move(probs), 0.0, "posterior");
  return out;
}

ClosedFormOutcome mixed_light_subtraction(double n_c, double n_t,
                                          const BeamSplitterParams& bs,
                                          const DetectorModel& d) {
  const double R = bs.R();
  const double T = bs.T();
  const double n0 = n_c + n_t;
  const double u = R * n_t;
  const double x = R * n_c / (1.0 + u);

  ClosedFormOutcome out;
  if (!d.is_resolving()) {
    if (d.k() != 1) {
      throw UnsupportedCombination(
          "closed-form mixed light with a nonresolving detector exists only "
          "for k = 1");
    }
    const double e = std::exp(-x);
    // 1 - e^{-x} / (1 + R n_t)
    const double p = (u - std::expm1(-x)) / (1.0 + u);
    out.probability = p;
    out.mean = T * (n0 - e * (n0 + R * n_t * n_t) / std::pow(1.0 + u, 3)) / p;
    out.second_factorial =
        T * T *
        (n0 * n0 + n_t * (n0 + n_c) -
         e * (n0 * n0 + 2.0 * n_c * n_t +
              n_t * n_t * (1.0 + 4.0 * R * n0 + 2.0 * R * R * n_t * n_t)) /
             std::pow(1.0 + u, 5)) /
        p;
    return out;
  }

  const unsigned k = d.k();
  const double y = -n_c / (n_t * (1.0 + u));
  const double z = 1.0 + 2.0 * k - y;
  const auto lag = laguerre_sequence(k, y);
  const double lk = lag[k];
  const double lk1 = lag[k - 1];
  const double lk2 = k >= 2 ? lag[k - 2] : 0.0;
  const double scale = n_t * T / (1.0 + u);

  out.probability =
      std::exp(-x + k * std::log(u) - (k + 1.0) * std::log1p(u)) * lk;
  out.mean = scale * (z - k * lk1 / lk);
  out.second_factorial =
      scale * scale *
      (z * (1.0 + z) - y - 2.0 * k * z * lk1 / lk + k * (k - 1.0) * lk2 / lk);
  return out;
}

}  // namespace

ClosedFormOutcome closed_form_subtraction(const FieldStateSpec& spec,
                                          const BeamSplitterParams& bs,
                                          const DetectorModel& d, double epsilon) {
  spec.validate();
  switch (spec.kind) {
    case StateKind::coherent: return coherent_subtraction(spec.n0, bs, d, epsilon);
    case StateKind::thermal: return thermal_subtraction(spec.n0, bs, d, epsilon);
    case StateKind::mixed_light:
      return mixed_light_subtraction(spec.n_c, spec.n_t, bs, d);
    default:
      throw UnsupportedCombination(
          "closed-form subtraction covers coherent, thermal and mixed light only");
  }
}

ClosedFormOutcome closed_form_sequential(const FieldStateSpec& spec,
                                         const BeamSplitterParams& bs, unsigned k,
                                         double epsilon) {
  spec.validate();
  if (k != 2) {
    throw UnsupportedCombination("closed-form sequential detection covers k = 2");
  }
  const double n0 = spec.n0;
  const double R = bs.R();
  const double T = bs.T();
  const double x = n0 * R;
  ClosedFormOutcome out;

  if (spec.kind == StateKind::coherent) {
    out.probability = std::exp(-x * (1.0 + T)) * std::expm1(x * T) * std::expm1(x);
    out.mean = n0 * T * T;
    out.second_factorial = n0 * n0 * std::pow(T, 4);
    out.posterior = poisson_posterior(
        n0 * T * T, posterior_cutoff(poisson_cutoff(n0, epsilon), k));
    return out;
  }
  if (spec.kind != StateKind::thermal) {
    throw UnsupportedCombination(
        "closed-form sequential detection covers coherent and thermal light");
  }

  // g_m = [1 - (1+x)^{-m}] - (1+xT)^{-m} [1 - ((1+xT)/(1+x+xT))^m]
  auto g = [&](double m) {
    const double a = -std::expm1(-m * std::log1p(x));
    const double b = std::exp(-m * std::log1p(x * T)) *
                     -std::expm1(m * (std::log1p(x * T) - std::log1p(x + x * T)));
    return a - b;
  };
  const double g1 = g(1.0);
  out.probability = g1;
  out.mean = n0 * T * T * g(2.0) / g1;
  out.second_factorial = 2.0 * n0 * n0 * std::pow(T, 4) * g(3.0) / g1;

  // (n0 T^2)^n [a1^{-(n+1)} - a2^{-(n+1)} - a3^{-(n+1)} + a4^{-(n+1)}] / g1,
  // a1 = 1 + n0 T^2, a2 = 1 + n0 T, a3 = 1 + n0 (1 - R T), a4 = 1 + n0,
  // grouped as two first differences to limit cancellation.
  const std::size_t cutoff = posterior_cutoff(thermal_cutoff(n0, epsilon), k);
  std::vector<double> probs(cutoff + 1, 0.0);
  if (n0 > 0.0) {
    const double la1 = std::log1p(n0 * T * T);
    const double la2 = std::log1p(n0 * T);
    const double la3 = std::log1p(n0 * (1.0 - R * T));
    const double la4 = std::log1p(n0);
    const double log_base = std::log(n0 * T * T);
    for (std::size_t n = 0; n <= cutoff; ++n) {
      const double e = static_cast<double>(n) + 1.0;
      const double lead = static_cast<double>(n) * log_base;
      // a1 < a2 and a3 < a4, so both differences are positive
      const double d12 = -std::exp(lead - e * la1) * std::expm1(-e * (la2 - la1));
      const double d34 = -std::exp(lead - e * la3) * std::expm1(-e * (la4 - la3));
      probs[n] = std::max(d12 - d34, 0.0) / g1;
    }
  }
  out.posterior = PhotonNumberDistribution(std::move(probs), 0.0, "posterior");
  return out;
}

}  // namespace condphoton
