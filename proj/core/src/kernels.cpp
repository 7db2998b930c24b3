#include "kernels.hpp"

#include <algorithm>
#include <cmath>

#include "condphoton/numerics.hpp"

namespace condphoton::detail {
namespace {

constexpr std::size_t kAmplificationCeiling = 10'000;
constexpr double kAmplificationTrim = 1e-14;

// Per-entry compensated accumulator for scatter-style sums.
class CompensatedVector {
 public:
  explicit CompensatedVector(std::size_t n) : sum_(n, 0.0), comp_(n, 0.0) {}

  void add(std::size_t i, double x) {
    const double s = sum_[i];
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) {
      comp_[i] += (s - t) + x;
    } else {
      comp_[i] += (x - t) + s;
    }
    sum_[i] = t;
  }

  std::vector<double> finish() && {
    for (std::size_t i = 0; i < sum_.size(); ++i) sum_[i] += comp_[i];
    return std::move(sum_);
  }

 private:
  std::vector<double> sum_;
  std::vector<double> comp_;
};

}  // namespace

Moments raw_moments(std::span<const double> weights) {
  CompensatedSum total, first, second;
  for (std::size_t n = 0; n < weights.size(); ++n) {
    const double w = weights[n];
    if (w == 0.0) continue;
    const double dn = static_cast<double>(n);
    total += w;
    first += dn * w;
    second += dn * (dn - 1.0) * w;
  }
  return {total.value(), first.value(), second.value()};
}

namespace {

constexpr std::size_t kSmallBinomial = 8;
constexpr double kDirectExpFloor = -700.0;

// (n + l)! / (n! l!) as a product of at most 8 factors below 2^53 each.
double small_binomial(std::size_t n_plus_l, std::size_t small) {
  double num = 1.0;
  double den = 1.0;
  for (std::size_t i = 1; i <= small; ++i) {
    num *= static_cast<double>(n_plus_l - small + i);
    den *= static_cast<double>(i);
  }
  return num / den;
}

}  // namespace

double log_binomial_fast(std::size_t n_plus_l, std::size_t l) {
  if (l > n_plus_l) return -INFINITY;
  const std::size_t small = std::min(l, n_plus_l - l);
  if (small == 0) return 0.0;
  if (small <= kSmallBinomial) return std::log(small_binomial(n_plus_l, small));
  return log_binomial(n_plus_l, small).log_magnitude;
}

double binomial_term(std::size_t n_plus_l, std::size_t l, double log_factor, double p) {
  const std::size_t small = std::min(l, n_plus_l - l);
  if (small <= kSmallBinomial && log_factor > kDirectExpFloor) {
    return p * small_binomial(n_plus_l, small) * std::exp(log_factor);
  }
  return std::exp(log_binomial_fast(n_plus_l, l) + log_factor + std::log(p));
}

template <class Sink>
void visit_thinning_exact_l(std::span<const double> w, double log_r, double log_t,
                            std::size_t l, Sink&& sink) {
  const std::size_t out_size = w.size() - l;
  const double l_log_r = static_cast<double>(l) * log_r;
  for (std::size_t n = 0; n < out_size; ++n) {
    const double p = w[n + l];
    if (p == 0.0) continue;
    sink(n, binomial_term(n + l, l, static_cast<double>(n) * log_t + l_log_r, p));
  }
}

std::vector<double> thinning_exact_l(std::span<const double> w, double log_r,
                                     double log_t, std::size_t l) {
  if (w.size() <= l) return {};
  std::vector<double> out(w.size() - l, 0.0);
  visit_thinning_exact_l(w, log_r, log_t, l,
                         [&](std::size_t n, double theta) { out[n] = theta; });
  return out;
}

Moments thinning_exact_l_moments(std::span<const double> w, double log_r,
                                 double log_t, std::size_t l) {
  if (w.size() <= l) return {};
  MomentAccumulator acc;
  visit_thinning_exact_l(w, log_r, log_t, l,
                         [&](std::size_t n, double theta) { acc.add(n, theta); });
  return acc.moments();
}

std::vector<double> thinning_at_least(std::span<const double> w, double log_r,
                                      double log_t, std::size_t l_min) {
  if (w.size() <= l_min) return {};
  const std::size_t out_size = w.size() - l_min;
  CompensatedVector acc(out_size);
  const double ratio_up = std::exp(log_r - log_t);  // R / T
  const double r = std::exp(log_r);

  // Each input m spreads over n = m - l with binomial weight b(l; m, R).
  for (std::size_t m = l_min; m < w.size(); ++m) {
    const double p = w[m];
    if (p == 0.0) continue;
    const double dm = static_cast<double>(m);
    std::size_t mode = static_cast<std::size_t>(std::floor((dm + 1.0) * r));
    mode = std::min(mode, m);
    const std::size_t anchor = std::max(mode, l_min);
    const double log_anchor = log_binomial_fast(m, anchor) +
                              static_cast<double>(anchor) * log_r +
                              static_cast<double>(m - anchor) * log_t;
    const double anchor_weight = std::exp(log_anchor);

    // Each l lands on its own output n = m - l, so the walk order within one
    // input does not affect the per-entry summation order (increasing m).
    // Both walks start from the anchor and stop once a term underflows.
    double b = anchor_weight;
    for (std::size_t l = anchor;; --l) {
      const double term = p * b;
      if (term == 0.0 && l < anchor) break;
      acc.add(m - l, term);
      if (l == l_min) break;
      b *= static_cast<double>(l) / (static_cast<double>(m - l + 1) * ratio_up);
    }
    b = anchor_weight;
    for (std::size_t l = anchor; l < m;) {
      b *= static_cast<double>(m - l) / static_cast<double>(l + 1) * ratio_up;
      ++l;
      const double term = p * b;
      if (term == 0.0) break;
      acc.add(m - l, term);
    }
  }
  return std::move(acc).finish();
}

template <class Sink>
void visit_amplification_exact_l(std::span<const double> w, double log_r, double log_t,
                                 std::size_t l, Sink&& sink) {
  const std::size_t out_size = w.size() + l;
  const double l_log_r = static_cast<double>(l) * log_r;
  for (std::size_t n = l; n < out_size; ++n) {
    const double p = w[n - l];
    if (p == 0.0) continue;
    sink(n, binomial_term(n, l, static_cast<double>(n + 1) * log_t + l_log_r, p));
  }
}

std::vector<double> amplification_exact_l(std::span<const double> w,
                                          double log_r, double log_t,
                                          std::size_t l) {
  std::vector<double> out(w.size() + l, 0.0);
  visit_amplification_exact_l(w, log_r, log_t, l,
                              [&](std::size_t n, double theta) { out[n] = theta; });
  return out;
}

Moments amplification_exact_l_moments(std::span<const double> w, double log_r,
                                      double log_t, std::size_t l) {
  MomentAccumulator acc;
  visit_amplification_exact_l(w, log_r, log_t, l,
                              [&](std::size_t n, double theta) { acc.add(n, theta); });
  return acc.moments();
}

AmplifiedTail amplification_at_least(std::span<const double> w, double log_r,
                                     double log_t, std::size_t l_min) {
  const std::size_t cap = w.size() + kAmplificationCeiling;
  CompensatedVector acc(cap);
  const double log_q = log_r + log_t;  // q = r t = 1 - t
  const double q = std::exp(log_q);
  const double r = std::exp(log_r);

  // Input m feeds n = m + l with negative-binomial weight
  // g(l; m) = C(m + l, l) t^{m+1} q^l, which sums to one over l >= 0.
  for (std::size_t m = 0; m < w.size(); ++m) {
    const double p = w[m];
    if (p == 0.0) continue;
    const double dm = static_cast<double>(m);
    const std::size_t mode = static_cast<std::size_t>(std::floor(dm * r));
    const std::size_t anchor = std::max(mode, l_min);
    auto log_weight = [&](std::size_t l) {
      return log_binomial_fast(m + l, l) + (dm + 1.0) * log_t +
             static_cast<double>(l) * log_q;
    };
    const double anchor_weight = std::exp(log_weight(anchor));

    double g = anchor_weight;
    for (std::size_t l = anchor; m + l < cap;) {
      const double term = p * g;
      if (term == 0.0 && l > anchor) break;
      acc.add(m + l, term);
      g *= static_cast<double>(m + l + 1) / static_cast<double>(l + 1) * q;
      ++l;
    }
    g = anchor_weight;
    for (std::size_t l = anchor; l > l_min;) {
      g *= static_cast<double>(l) / (static_cast<double>(m + l) * q);
      --l;
      const double term = p * g;
      if (term == 0.0) break;
      acc.add(m + l, term);
    }
  }

  std::vector<double> theta = std::move(acc).finish();
  const double total = compensated_sum(theta);
  std::size_t last = w.size() - 1;
  for (std::size_t n = theta.size(); n-- > w.size();) {
    if (theta[n] >= kAmplificationTrim * total) {
      last = n;
      break;
    }
  }
  CompensatedSum dropped;
  for (std::size_t n = last + 1; n < theta.size(); ++n) dropped += theta[n];
  theta.resize(last + 1);
  return {std::move(theta), dropped.value()};
}

}  // namespace condphoton::detail
