#include <gtest/gtest.h>

#include <cmath>

#include "condphoton/add.hpp"
#include "condphoton/errors.hpp"
#include "hp_reference.hpp"

using namespace condphoton;

TEST(Pdc, Parameterisation) {
  for (double lambda : {1e-3, 1e-2, 0.1, 0.7}) {
    const auto pdc = PdcParams::from_lambda(lambda);
    EXPECT_NEAR(pdc.t() * (1.0 + pdc.r()), 1.0, 1e-15);
    EXPECT_GT(pdc.t(), 0.0);
    EXPECT_LE(pdc.t(), 1.0);
    EXPECT_NEAR(std::exp(pdc.log_r()) / pdc.r(), 1.0, 1e-14);
  }
  EXPECT_THROW(PdcParams::from_lambda(0.0), DomainError);
  EXPECT_THROW(PdcParams::from_lambda(-0.1), DomainError);
}

TEST(AddExact, VacuumResolvingGivesSinglePhoton) {
  const auto pdc = PdcParams::from_lambda(0.05);
  const auto rec = add_exact(fock_distribution(0), pdc, DetectorModel::resolving(1));
  EXPECT_NEAR(rec.probability, pdc.t() * pdc.t() * pdc.r(), 1e-18);
  EXPECT_NEAR(rec.posterior[1], 1.0, 1e-15);
  EXPECT_EQ(rec.posterior[0], 0.0);
  EXPECT_NEAR(rec.mean, 1.0, 1e-15);
}

TEST(AddExact, VacuumNonresolvingIsGeometric) {
  const auto pdc = PdcParams::from_lambda(0.3);
  const auto rec = add_exact(fock_distribution(0), pdc, DetectorModel::nonresolving(1));
  const double t = pdc.t();
  const double r = pdc.r();
  for (std::size_t n = 1; n < rec.theta_vector.size(); ++n) {
    EXPECT_NEAR(rec.theta_vector[n] / (std::pow(t, n + 1) * std::pow(r, n)), 1.0, 1e-12) << n;
  }
  EXPECT_NEAR(rec.probability / (t * t * r / (1.0 - t * r)), 1.0, 1e-12);
}

TEST(AddExact, ThermalNonresolvingProbability) {
  const auto pdc = PdcParams::from_lambda(0.1);
  for (double n0 : {0.5, 2.0, 20.0}) {
    const auto rec = add_exact(thermal_distribution(n0, 1e-15), pdc, DetectorModel::nonresolving(1));
    const double r = pdc.r();
    const double t = pdc.t();
    EXPECT_NEAR(rec.probability / (r * t * (1.0 + n0) / (1.0 + n0 * r * t)), 1.0, 1e-11) << n0;
  }
}

TEST(AddExact, ThetaMatchesHighPrecisionSum) {
  const auto pdc = PdcParams::from_lambda(0.15);
  const std::vector<PhotonNumberDistribution> states = {
      thermal_distribution(1.5), coherent_distribution(2.0), mixed_light_distribution(0.8, 0.6),
      fock_distribution(4)};
  for (const auto& p : states) {
    const auto wide = hp::widen(p.probs());
    for (auto d : {DetectorModel::resolving(1), DetectorModel::resolving(2),
                   DetectorModel::nonresolving(1), DetectorModel::nonresolving(2)}) {
      const auto rec = add_exact(p, pdc, d);
      const auto ref = hp::add_theta(wide, pdc.lambda(), d, rec.theta_vector.size());
      double worst = 0.0;
      for (std::size_t n = 0; n < ref.size(); ++n) {
        const double r = hp::to_double(ref[n]);
        worst = std::max(worst, std::abs(rec.theta_vector[n] - r) /
                                    std::max(std::abs(r), 1e-14 * rec.probability));
      }
      EXPECT_LE(worst, 1e-12) << p.kind() << " " << d.to_string();
    }
  }
}

TEST(AddExact, NonresolvingOutputGrowsPastInputCutoff) {
  const auto pdc = PdcParams::from_lambda(0.2);
  const auto p = fock_distribution(3);
  const auto rec = add_exact(p, pdc, DetectorModel::nonresolving(1));
  EXPECT_GT(rec.theta_vector.size(), p.size());
  EXPECT_LT(rec.theta_vector.back(), 1e-14 * rec.probability * 10.0);
  EXPECT_LE(rec.probability, 1.0 + 1e-12);
}

TEST(AddExact, StatisticsPathMatchesRecord) {
  const auto pdc = PdcParams::from_lambda(0.05);
  for (const auto& p : {thermal_distribution(30.0), coherent_distribution(12.0),
                        mixed_light_distribution(5.0, 5.0)}) {
    for (auto d : {DetectorModel::resolving(1), DetectorModel::resolving(2),
                   DetectorModel::nonresolving(1), DetectorModel::nonresolving(2)}) {
      const auto a = statistics_of(add_exact(p, pdc, d));
      const auto b = add_exact_statistics(p, pdc, d);
      EXPECT_NEAR(b.probability / a.probability, 1.0, 1e-10) << p.kind() << d.to_string();
      EXPECT_NEAR(b.mean / a.mean, 1.0, 1e-10);
      EXPECT_NEAR(b.second_factorial / a.second_factorial, 1.0, 1e-10);
    }
  }
}

TEST(AddModelA, ThermalConstants) {
  const auto pdc = PdcParams::from_lambda(1e-2);
  for (double n0 : {0.1, 1.0, 10.0}) {
    const auto rec = add_model_A(thermal_distribution(n0, 1e-15), pdc, 1);
    EXPECT_NEAR(rec.probability / (pdc.r() * (n0 + 1.0)), 1.0, 1e-10) << n0;
    EXPECT_NEAR(rec.mean / n0 / (2.0 + 1.0 / n0), 1.0, 1e-10) << n0;
  }
}

TEST(AddModelA, CoherentSecondMoment) {
  const auto pdc = PdcParams::from_lambda(1e-2);
  for (double n0 : {0.5, 3.0, 40.0}) {
    const auto rec = add_model_A(coherent_distribution(n0, 1e-15), pdc, 1);
    EXPECT_NEAR(rec.second_factorial / (n0 * n0) / (1.0 + 4.0 / n0), 1.0, 1e-10) << n0;
  }
}

TEST(AddModelA, StatisticsMatchRecord) {
  const auto pdc = PdcParams::from_lambda(0.03);
  const auto p = coherent_distribution(9.0);
  for (unsigned k = 1; k <= 3; ++k) {
    const auto a = statistics_of(add_model_A(p, pdc, k));
    const auto b = add_model_A_statistics(p, pdc, k);
    EXPECT_NEAR(b.probability / a.probability, 1.0, 1e-12);
    EXPECT_NEAR(b.mean / a.mean, 1.0, 1e-12);
  }
}

TEST(AddModelE, Examples) {
  const auto vac = add_model_E(fock_distribution(0), 1);
  EXPECT_EQ(vac.probability, 1.0);
  EXPECT_EQ(vac.posterior[1], 1.0);
  for (double n0 : {0.1, 1.0, 10.0}) {
    const auto rec = add_model_E(thermal_distribution(n0, 1e-15), 1);
    EXPECT_NEAR(rec.probability, 1.0, 1e-12);
    EXPECT_NEAR(rec.mean / (n0 + 1.0), 1.0, 1e-10);
    EXPECT_NEAR(rec.second_factorial / (n0 * n0) / (2.0 + 2.0 / n0), 1.0, 1e-10);
  }
  for (unsigned k = 1; k <= 3; ++k) {
    EXPECT_NEAR(add_model_E_statistics(thermal_distribution(4.0, 1e-15), k).mean, 4.0 + k, 1e-10);
  }
}

TEST(AddBranch, ZeroIdlerPhotonsDampsByTPower) {
  const auto pdc = PdcParams::from_lambda(0.1);
  const auto b = add_branch(fock_distribution(3).probs(), pdc, 0);
  ASSERT_EQ(b.size(), 4u);
  EXPECT_NEAR(b[3], std::pow(pdc.t(), 4), 1e-15);
}
