#include <gtest/gtest.h>

#include <cmath>

#include "condphoton/states.hpp"
#include "condphoton/subtract.hpp"
#include "property.hpp"

using namespace condphoton;

namespace {

struct BuildCase {
  prop::StateCase state;
  double epsilon;
  std::string label;
};

BuildCase random_build(prop::Rng& rng) {
  auto state = prop::any_state(rng, 1e-2, 500.0);
  const double eps = rng.log_uniform(1e-15, 1e-6);
  return {state, eps, state.label + " eps=" + prop::fmt(eps)};
}

}  // namespace

TEST(StatesProperties, DistributionInvariants) {
  prop::check("distribution_invariants", random_build, [](const BuildCase& c) {
    const auto p = make_distribution(c.state.spec, c.epsilon);
    for (double v : p.probs()) {
      if (!(v >= 0.0)) return ::testing::AssertionFailure() << "negative entry " << v;
    }
    const double norm = p.total() + p.tail_bound();
    if (std::abs(norm - 1.0) > 1e-12) {
      return ::testing::AssertionFailure() << "sum + tail = " << norm;
    }
    if (p.tail_bound() > c.epsilon) {
      return ::testing::AssertionFailure() << "tail " << p.tail_bound() << " > eps";
    }
    return ::testing::AssertionSuccess();
  });
}

TEST(StatesProperties, ThermalAndCoherentReproduceMean) {
  prop::check(
      "mean_reproduction",
      [](prop::Rng& rng) {
        const double n0 = rng.log_uniform(1e-3, 1e4);
        auto state = rng.coin() ? prop::thermal_case(n0) : prop::coherent_case(n0);
        const double eps = rng.log_uniform(1e-15, 1e-6);
        return BuildCase{state, eps, state.label + " eps=" + prop::fmt(eps)};
      },
      [](const BuildCase& c) {
        const auto p = make_distribution(c.state.spec, c.epsilon);
        const double n0 = c.state.spec.n0;
        const double err = std::abs(factorial_moments(p).mean - n0);
        if (err <= 10.0 * c.epsilon * (1.0 + n0)) return ::testing::AssertionSuccess();
        return ::testing::AssertionFailure() << "|<n> - n0| = " << err;
      });
}

TEST(StatesProperties, MixedLightLimits) {
  prop::check(
      "mixed_light_limits",
      [](prop::Rng& rng) {
        const double n = rng.log_uniform(1e-2, 50.0);
        return prop::StateCase{FieldStateSpec::thermal(n), "n=" + prop::fmt(n)};
      },
      [](const prop::StateCase& c) {
        const double n = c.spec.n0;
        const auto mixed = mixed_light_distribution(0.0, n);
        const auto thermal = thermal_distribution(n);
        for (std::size_t i = 0; i < std::max(mixed.size(), thermal.size()); ++i) {
          if (std::abs(mixed[i] - thermal[i]) > 1e-12) {
            return ::testing::AssertionFailure() << "n_c = 0 differs from thermal at " << i;
          }
        }
        const auto near_coherent = mixed_light_distribution(n, 1e-6);
        const auto coherent = coherent_distribution(n);
        for (std::size_t i = 0; i < std::max(near_coherent.size(), coherent.size()); ++i) {
          if (std::abs(near_coherent[i] - coherent[i]) > 1e-4) {
            return ::testing::AssertionFailure() << "n_t = 1e-6 differs from coherent at " << i;
          }
        }
        return ::testing::AssertionSuccess();
      },
      60);
}
