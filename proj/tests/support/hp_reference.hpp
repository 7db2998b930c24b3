#pragma once

// Independent high-precision references built on Boost.Multiprecision. They
// evaluate the defining sums term by term, with no windowing, log space or
// recurrences shared with the library.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <span>
#include <vector>

#include "condphoton/detectors.hpp"

namespace hp {

namespace mp = boost::multiprecision;
using Real = mp::cpp_bin_float_50;
using Int = mp::cpp_int;
using Rational = mp::cpp_rational;

inline Int factorial(unsigned n) {
  Int f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

inline double log_of(const Int& v) { return static_cast<double>(mp::log(Real(v))); }

inline double to_double(const Real& v) { return static_cast<double>(v); }

/// sum_k C(n,k) (-x)^k / k!, exactly.
inline Rational laguerre_exact(unsigned n, const Rational& x) {
  Rational sum = 0;
  Rational power = 1;
  for (unsigned k = 0; k <= n; ++k) {
    sum += Rational(binomial(n, k)) * power / Rational(factorial(k));
    power *= -x;
  }
  return sum;
}

inline Real laguerre_series(unsigned n, const Real& x) {
  Real sum = 0;
  Real power = 1;
  for (unsigned k = 0; k <= n; ++k) {
    sum += Real(binomial(n, k)) * power / Real(factorial(k));
    power *= -x;
  }
  return sum;
}

inline std::vector<Real> thermal(const Real& n0, std::size_t size) {
  std::vector<Real> p(size);
  for (std::size_t n = 0; n < size; ++n) {
    p[n] = mp::pow(n0, n) / mp::pow(n0 + 1, n + 1);
  }
  return p;
}

inline std::vector<Real> poisson(const Real& n0, std::size_t size) {
  std::vector<Real> p(size);
  for (std::size_t n = 0; n < size; ++n) {
    p[n] = mp::exp(-n0) * mp::pow(n0, n) / Real(factorial(static_cast<unsigned>(n)));
  }
  return p;
}

/// Superposition of coherent (n_c) and thermal (n_t) light.
inline std::vector<Real> lachs(const Real& n_c, const Real& n_t, std::size_t size) {
  std::vector<Real> p(size);
  const Real x = -n_c / (n_t * (1 + n_t));
  for (std::size_t n = 0; n < size; ++n) {
    p[n] = mp::exp(-n_c / (1 + n_t)) * mp::pow(n_t, n) / mp::pow(n_t + 1, n + 1) *
           laguerre_series(static_cast<unsigned>(n), x);
  }
  return p;
}

/// Theta_n = sum_{l} Upsilon_l C(n+l, n) T^n R^l p_{n+l} with R = sin^2(theta).
inline std::vector<Real> subtract_theta(const std::vector<Real>& p, double theta,
                                        const condphoton::DetectorModel& d) {
  const Real s = mp::sin(Real(theta));
  const Real R = s * s;
  const Real T = 1 - R;
  const std::size_t size = p.size();
  std::vector<Real> out(size, Real(0));
  for (std::size_t n = 0; n < size; ++n) {
    for (std::size_t l = 0; n + l < size; ++l) {
      if (!d.upsilon(static_cast<unsigned>(l))) continue;
      out[n] += Real(binomial(static_cast<unsigned>(n + l), static_cast<unsigned>(n))) *
                mp::pow(T, n) * mp::pow(R, l) * p[n + l];
    }
  }
  return out;
}

/// Theta_n = sum_l Upsilon_l C(n, l) t^{n+1} r^l p_{n-l}, r = sinh^2, t = cosh^-2.
inline std::vector<Real> add_theta(const std::vector<Real>& p, double lambda,
                                   const condphoton::DetectorModel& d,
                                   std::size_t out_size) {
  const Real sh = mp::sinh(Real(lambda));
  const Real ch = mp::cosh(Real(lambda));
  const Real r = sh * sh;
  const Real t = 1 / (ch * ch);
  std::vector<Real> out(out_size, Real(0));
  for (std::size_t n = 0; n < out_size; ++n) {
    for (std::size_t l = 0; l <= n; ++l) {
      if (n - l >= p.size() || !d.upsilon(static_cast<unsigned>(l))) continue;
      out[n] += Real(binomial(static_cast<unsigned>(n), static_cast<unsigned>(l))) *
                mp::pow(t, n + 1) * mp::pow(r, l) * p[n - l];
    }
  }
  return out;
}

struct Stats {
  Real probability = 0;
  Real mean = 0;
  Real second_factorial = 0;
};

inline Stats statistics(const std::vector<Real>& theta) {
  Stats s;
  Real first = 0;
  Real second = 0;
  for (std::size_t n = 0; n < theta.size(); ++n) {
    s.probability += theta[n];
    first += Real(n) * theta[n];
    second += Real(n) * Real(n == 0 ? 0 : n - 1) * theta[n];
  }
  s.mean = first / s.probability;
  s.second_factorial = second / s.probability;
  return s;
}

inline std::vector<Real> widen(std::span<const double> p) {
  return std::vector<Real>(p.begin(), p.end());
}

}  // namespace hp
