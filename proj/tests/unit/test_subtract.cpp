#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "condphoton/errors.hpp"
#include "condphoton/subtract.hpp"
#include "hp_reference.hpp"

using namespace condphoton;

namespace {

double max_rel_entry(const std::vector<double>& got, const std::vector<hp::Real>& ref,
                     double floor) {
  double worst = 0.0;
  for (std::size_t n = 0; n < ref.size(); ++n) {
    const double r = hp::to_double(ref[n]);
    const double g = n < got.size() ? got[n] : 0.0;
    worst = std::max(worst, std::abs(g - r) / std::max(std::abs(r), floor));
  }
  return worst;
}

}  // namespace

TEST(BeamSplitter, Parameterisation) {
  const auto bs = BeamSplitterParams::from_reflectivity(0.3);
  EXPECT_NEAR(bs.R(), 0.3, 1e-15);
  EXPECT_NEAR(bs.R() + bs.T(), 1.0, 1e-15);
  EXPECT_NEAR(std::exp(bs.log_R()), bs.R(), 1e-16);
  const auto half = BeamSplitterParams::from_theta(std::numbers::pi / 4);
  EXPECT_NEAR(half.R(), 0.5, 1e-15);
  EXPECT_THROW(BeamSplitterParams::from_reflectivity(0.0), DomainError);
  EXPECT_THROW(BeamSplitterParams::from_reflectivity(1.0), DomainError);
  EXPECT_THROW(BeamSplitterParams::from_theta(2.0), DomainError);
}

TEST(SubtractExact, SinglePhotonResolving) {
  for (double R : {0.01, 0.3, 0.9}) {
    const auto bs = BeamSplitterParams::from_reflectivity(R);
    const auto rec = subtract_exact(fock_distribution(1), bs, DetectorModel::resolving(1));
    ASSERT_EQ(rec.theta_vector.size(), 1u);
    EXPECT_NEAR(rec.theta_vector[0], bs.R(), 1e-16);
    EXPECT_NEAR(rec.probability, bs.R(), 1e-16);
    EXPECT_NEAR(rec.posterior[0], 1.0, 1e-15);
    EXPECT_EQ(rec.mean, 0.0);
  }
}

TEST(SubtractExact, VacuumIsImpossible) {
  const auto bs = BeamSplitterParams::from_reflectivity(0.1);
  try {
    subtract_exact(fock_distribution(0), bs, DetectorModel::nonresolving(1));
    FAIL() << "expected ImpossibleOutcome";
  } catch (const ImpossibleOutcome& e) {
    EXPECT_EQ(e.probability(), 0.0);
  }
  EXPECT_THROW(subtract_exact_statistics(fock_distribution(0), bs, DetectorModel::resolving(1)),
               ImpossibleOutcome);
}

TEST(SubtractExact, ThermalResolvingProbability) {
  const auto bs = BeamSplitterParams::from_reflectivity(0.01);
  const auto p = thermal_distribution(1.0, 1e-14);
  const auto rec = subtract_exact(p, bs, DetectorModel::resolving(1));
  const auto ref = hp::statistics(hp::subtract_theta(hp::thermal(hp::Real(1), p.size()),
                                                     bs.theta(), DetectorModel::resolving(1)));
  EXPECT_NEAR(rec.probability, hp::to_double(ref.probability), 1e-16);
  EXPECT_NEAR(rec.probability, 0.01 / (1.01 * 1.01), 1e-13);
  EXPECT_NEAR(rec.probability, 9.803e-3, 5e-7);
}

TEST(SubtractExact, ThetaMatchesHighPrecisionSum) {
  const auto bs = BeamSplitterParams::from_reflectivity(0.2);
  const std::vector<PhotonNumberDistribution> states = {
      thermal_distribution(2.0), coherent_distribution(3.0), mixed_light_distribution(1.0, 0.7),
      fock_distribution(6)};
  for (const auto& p : states) {
    const auto wide = hp::widen(p.probs());
    for (auto d : {DetectorModel::resolving(1), DetectorModel::resolving(3),
                   DetectorModel::nonresolving(1), DetectorModel::nonresolving(2)}) {
      const auto rec = subtract_exact(p, bs, d);
      const auto ref = hp::subtract_theta(wide, bs.theta(), d);
      EXPECT_LE(max_rel_entry(rec.theta_vector, ref, 1e-14 * rec.probability), 1e-12)
          << p.kind() << " " << d.to_string();
      const auto s = hp::statistics(ref);
      EXPECT_NEAR(rec.mean / hp::to_double(s.mean), 1.0, 1e-12);
      EXPECT_NEAR(rec.second_factorial / hp::to_double(s.second_factorial), 1.0, 1e-12);
    }
  }
}

TEST(SubtractExact, RecordInvariants) {
  const auto bs = BeamSplitterParams::from_reflectivity(0.4);
  const auto rec = subtract_exact(thermal_distribution(5.0), bs, DetectorModel::nonresolving(2));
  double sum = 0.0;
  for (double v : rec.theta_vector) sum += v;
  EXPECT_NEAR(rec.probability / sum, 1.0, 1e-12);
  EXPECT_NEAR(rec.posterior.total(), 1.0, 1e-12);
  EXPECT_LE(rec.probability, 1.0 + 1e-12);
  EXPECT_EQ(rec.posterior.size(), thermal_distribution(5.0).size() - 2);
}

TEST(SubtractExact, StatisticsPathMatchesRecord) {
  const auto bs = BeamSplitterParams::from_reflectivity(0.05);
  for (const auto& p : {thermal_distribution(40.0), coherent_distribution(25.0),
                        mixed_light_distribution(3.0, 12.0)}) {
    for (auto d : {DetectorModel::resolving(1), DetectorModel::resolving(2),
                   DetectorModel::nonresolving(1), DetectorModel::nonresolving(3)}) {
      const auto a = statistics_of(subtract_exact(p, bs, d));
      const auto b = subtract_exact_statistics(p, bs, d);
      EXPECT_NEAR(b.probability / a.probability, 1.0, 1e-10) << p.kind() << d.to_string();
      EXPECT_NEAR(b.mean / a.mean, 1.0, 1e-10);
      EXPECT_NEAR(b.second_factorial / a.second_factorial, 1.0, 1e-10);
    }
  }
}

TEST(SubtractModelA, ThermalMeanDoubles) {
  const auto bs = BeamSplitterParams::from_reflectivity(0.01);
  for (double n0 : {0.1, 1.0, 10.0}) {
    const auto rec = subtract_model_A(thermal_distribution(n0, 1e-15), bs, 1);
    EXPECT_NEAR(rec.mean / (2.0 * n0), 1.0, 1e-10) << n0;
  }
}

TEST(SubtractModelA, CoherentIsEigenstate) {
  const auto bs = BeamSplitterParams::from_reflectivity(0.1);
  const auto p = coherent_distribution(2.5);
  const auto rec = subtract_model_A(p, bs, 1);
  for (std::size_t n = 0; n < rec.posterior.size(); ++n) {
    EXPECT_NEAR(rec.posterior[n], p[n], 1e-12) << n;
  }
}

TEST(SubtractModelA, ProbabilityReachesOne) {
  const auto bs = BeamSplitterParams::from_reflectivity(0.5);
  const auto p = thermal_distribution(2.0, 1e-15);
  const auto rec = subtract_model_A(p, bs, 1);
  EXPECT_NEAR(rec.probability, bs.R() * factorial_moments(p).mean, 1e-12);
  EXPECT_NEAR(rec.probability, 1.0, 1e-12);
  EXPECT_GT(subtract_model_A(thermal_distribution(4.0), bs, 1).probability, 1.0);
}

TEST(SubtractModelA, StatisticsMatchRecord) {
  const auto bs = BeamSplitterParams::from_reflectivity(0.02);
  const auto p = mixed_light_distribution(4.0, 2.0);
  for (unsigned k = 1; k <= 3; ++k) {
    const auto a = statistics_of(subtract_model_A(p, bs, k));
    const auto b = subtract_model_A_statistics(p, bs, k);
    EXPECT_NEAR(b.probability / a.probability, 1.0, 1e-12);
    EXPECT_NEAR(b.mean / a.mean, 1.0, 1e-12);
    EXPECT_NEAR(b.second_factorial / a.second_factorial, 1.0, 1e-12);
  }
}

TEST(SubtractModelE, Examples) {
  for (double n0 : {0.1, 1.0, 10.0}) {
    EXPECT_NEAR(subtract_model_E(thermal_distribution(n0, 1e-15), 1).mean / n0, 1.0, 1e-10);
  }
  const auto shifted = subtract_model_E(fock_distribution(3), 2);
  EXPECT_EQ(shifted.probability, 1.0);
  EXPECT_EQ(shifted.posterior[1], 1.0);
  EXPECT_EQ(shifted.mean, 1.0);
  EXPECT_NEAR(subtract_model_E(thermal_distribution(1.0), 1).probability, 0.5, 1e-12);
  EXPECT_THROW(subtract_model_E(fock_distribution(1), 2), ImpossibleOutcome);
}

TEST(SubtractSequential, SingleClickEqualsNonresolving) {
  const auto bs = BeamSplitterParams::from_reflectivity(0.1);
  const auto p = mixed_light_distribution(1.0, 2.0);
  const auto a = subtract_sequential(p, bs, 1);
  const auto b = subtract_exact(p, bs, DetectorModel::nonresolving(1));
  ASSERT_EQ(a.theta_vector.size(), b.theta_vector.size());
  for (std::size_t n = 0; n < a.theta_vector.size(); ++n) {
    EXPECT_EQ(a.theta_vector[n], b.theta_vector[n]);
  }
}

TEST(SubtractSequential, CoherentTwoClicks) {
  const double n0 = 3.0;
  const auto bs = BeamSplitterParams::from_reflectivity(0.1);
  const auto rec = subtract_sequential(coherent_distribution(n0, 1e-16), bs, 2);
  const double x = n0 * bs.R();
  const double expected =
      std::exp(-x * (1.0 + bs.T())) * std::expm1(x * bs.T()) * std::expm1(x);
  EXPECT_NEAR(rec.probability / expected, 1.0, 1e-10);
  const auto poisson = coherent_distribution(n0 * bs.T() * bs.T(), 1e-16);
  for (std::size_t n = 0; n < rec.posterior.size(); ++n) {
    EXPECT_NEAR(rec.posterior[n], poisson[n], 1e-12) << n;
  }
}

TEST(SubtractSequential, ThermalTwoClicksAgainstTwoPassComposition) {
  const auto bs = BeamSplitterParams::from_reflectivity(0.01);
  const auto p = thermal_distribution(1.0, 1e-16);
  const auto rec = subtract_sequential(p, bs, 2);
  const auto once = hp::subtract_theta(hp::thermal(hp::Real(1), p.size()), bs.theta(),
                                       DetectorModel::nonresolving(1));
  const auto twice = hp::subtract_theta(once, bs.theta(), DetectorModel::nonresolving(1));
  const auto ref = hp::statistics(twice);
  EXPECT_NEAR(rec.probability / hp::to_double(ref.probability), 1.0, 1e-12);
  EXPECT_NEAR(rec.mean / hp::to_double(ref.mean), 1.0, 1e-12);
  const auto cf = closed_form_sequential(FieldStateSpec::thermal(1.0), bs, 2, 1e-16);
  EXPECT_NEAR(cf.probability / hp::to_double(ref.probability), 1.0, 1e-10);
}

TEST(FactorialMoments, Examples) {
  const auto vac = factorial_moments(fock_distribution(0));
  EXPECT_EQ(vac.mean, 0.0);
  EXPECT_EQ(vac.second_factorial, 0.0);
  const auto three = factorial_moments(fock_distribution(3));
  EXPECT_EQ(three.mean, 3.0);
  EXPECT_EQ(three.second_factorial, 6.0);
  const auto th = factorial_moments(thermal_distribution(2.0, 1e-15));
  EXPECT_NEAR(th.mean, 2.0, 1e-12);
  EXPECT_NEAR(th.second_factorial, 8.0, 1e-11);
}

TEST(SubtractBranch, NoClickBranchIsBinomialThinning) {
  const auto bs = BeamSplitterParams::from_reflectivity(0.25);
  const auto b = subtract_branch(fock_distribution(2).probs(), bs, 0);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_NEAR(b[2], bs.T() * bs.T(), 1e-16);
  EXPECT_EQ(b[0], 0.0);
  EXPECT_TRUE(subtract_branch(fock_distribution(2).probs(), bs, 5).empty());
}
