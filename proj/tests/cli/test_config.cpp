#include <gtest/gtest.h>

#include <cmath>

#include "condphoton/cli/config.hpp"

using namespace condphoton;
using namespace condphoton::cli;

TEST(ParseState, Kinds) {
  const auto c = parse_state("coherent:2.5");
  EXPECT_EQ(c.kind, StateKind::coherent);
  EXPECT_EQ(c.n0, 2.5);
  const auto m = parse_state("mixed:1,4");
  EXPECT_EQ(m.kind, StateKind::mixed_light);
  EXPECT_EQ(m.n_c, 1.0);
  EXPECT_EQ(m.n_t, 4.0);
  EXPECT_EQ(m.n0, 5.0);
  EXPECT_EQ(parse_state("fock:3").m, 3u);
  EXPECT_EQ(parse_state("thermal:0.1").kind, StateKind::thermal);
}

TEST(ParseState, Rejects) {
  for (const char* bad : {"thermal", "thermal:", "thermal:-1", "squeezed:1", "mixed:1", "mixed:1,0",
                          "fock:x", "coherent:1e400"}) {
    EXPECT_THROW(parse_state(bad), ConfigError) << bad;
  }
}

TEST(ParseDetectors, RepeatableAndCommaSeparated) {
  const auto d = parse_detectors({"r:1,n:2", "s:2"});
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0].label(), "r:1");
  EXPECT_EQ(d[1].label(), "n:2");
  EXPECT_EQ(d[2].kind, DetectorChoice::Kind::sequential);
  EXPECT_EQ(d[1].model(), DetectorModel::nonresolving(2));
  EXPECT_THROW(parse_detectors({"r:0"}), ConfigError);
  EXPECT_THROW(parse_detectors({"q:1"}), ConfigError);
}

TEST(ParseModels, SubsetsInOrder) {
  const auto m = parse_models("E,exact");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], Model::E);
  EXPECT_EQ(m[1], Model::exact);
  EXPECT_THROW(parse_models("B"), ConfigError);
}

TEST(ParseGrid, LogSpacedStrictlyIncreasing) {
  const auto g = parse_grid("0.1,1000,5");
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g.front(), 0.1);
  EXPECT_DOUBLE_EQ(g.back(), 1000.0);
  EXPECT_NEAR(g[2], 10.0, 1e-12);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
}

TEST(ParseGrid, DegenerateGridIsConfigError) {
  EXPECT_THROW(parse_grid("1,1,1"), ConfigError);
  EXPECT_THROW(parse_grid("1,10,1"), ConfigError);
  EXPECT_THROW(parse_grid("10,1,5"), ConfigError);
  EXPECT_THROW(parse_grid("0,1,5"), ConfigError);
  EXPECT_THROW(parse_grid("1,10"), ConfigError);
}

TEST(SweepConfig, ValidateRejectsOnePointGrid) {
  SweepConfig cfg;
  cfg.grid = {1.0};
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_NO_THROW(cfg.validate(false));
  cfg.grid = {1.0, 1.0};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.grid = {1.0, 2.0};
  EXPECT_NO_THROW(cfg.validate());
}

TEST(SweepConfig, ParameterRanges) {
  SweepConfig cfg;
  cfg.grid = {1.0, 2.0};
  cfg.parameter = 1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.process = Process::add;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_NEAR(cfg.scale(), std::sinh(1.0) * std::sinh(1.0), 1e-15);
  cfg.parameter = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.parameter = 0.1;
  cfg.detectors = {{DetectorChoice::Kind::sequential, 2}};
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(SweepConfig, FockStatesCannotBeSwept) {
  SweepConfig cfg;
  cfg.grid = {1.0, 2.0};
  cfg.state = FieldStateSpec::fock(2);
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(DefaultGrid, SpansTransitionRegion) {
  const auto g = default_grid(1e-2);
  ASSERT_EQ(g.size(), 60u);
  EXPECT_NEAR(g.front() * 1e-2, 1e-3, 1e-15);
  EXPECT_NEAR(g.back() * 1e-2, 1e2, 1e-10);
}

TEST(Presets, FigureParameters) {
  const auto f1 = preset("fig1");
  EXPECT_EQ(f1.state.kind, StateKind::mixed_light);
  EXPECT_NEAR(f1.state.n_c / f1.state.n_t, 0.25, 1e-15);
  EXPECT_EQ(f1.parameter, 1e-2);
  const auto f2 = preset("fig2");
  EXPECT_NEAR(f2.state.n_c / f2.state.n_t, 10.0, 1e-14);
  const auto f3 = preset("fig3");
  EXPECT_EQ(f3.state.kind, StateKind::thermal);
  ASSERT_EQ(f3.detectors.size(), 3u);
  for (const auto& d : f3.detectors) EXPECT_EQ(d.k, 2u);
  const auto f4 = preset("fig4");
  EXPECT_EQ(f4.process, Process::add);
  EXPECT_EQ(f4.parameter, 1e-2);
  EXPECT_EQ(f4.models.size(), 3u);
  for (const auto* name : {"fig1", "fig2", "fig3", "fig4"}) {
    EXPECT_NO_THROW(preset(name).validate()) << name;
  }
  EXPECT_THROW(preset("fig5"), ConfigError);
}

TEST(StateAt, KeepsMixedRatio) {
  const auto s = state_at(FieldStateSpec::mixed_light(1.0, 4.0), 50.0);
  EXPECT_NEAR(s.n_c, 10.0, 1e-12);
  EXPECT_NEAR(s.n_t, 40.0, 1e-12);
  EXPECT_EQ(state_at(FieldStateSpec::coherent(1.0), 7.0).n0, 7.0);
}
