#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "peq/diagnostics.hpp"
#include "peq/errors.hpp"
#include "peq/tail.hpp"

using namespace peq;

namespace {

Scenario small_scenario() {
  Scenario sc;
  sc.phys.lx = 4.0;
  sc.nx = 16;
  sc.ny = 4;
  sc.nz = 4;
  sc.step.dt = 0.05;
  sc.step.t_end = 1.0;
  sc.step.output_every = 5;
  return sc;
}

}  // namespace

TEST(Cutoff, PlateausAndMidpoint) {
  EXPECT_EQ(cutoff_eta(0.5), 0.0);
  EXPECT_EQ(cutoff_eta(0.0), 0.0);
  EXPECT_EQ(cutoff_eta(1.0), 0.0);
  EXPECT_EQ(cutoff_eta(3.0), 1.0);
  EXPECT_EQ(cutoff_eta(2.0), 1.0);
  EXPECT_DOUBLE_EQ(cutoff_eta(1.5), 0.5);
}

TEST(Cutoff, MonotoneWithBoundedDerivative) {
  double last = 0.0, max_d = 0.0;
  const int n = 100000;
  for (int k = 0; k <= n; ++k) {
    const double s = 3.0 * k / n;
    const double e = cutoff_eta(s);
    EXPECT_GE(e, last);
    last = e;
    max_d = std::max(max_d, std::abs(cutoff_eta_prime(s)));
  }
  EXPECT_LE(max_d, 1.875 + 1e-9);
  EXPECT_GT(max_d, 1.87);
  // Derivative agrees with a difference quotient.
  EXPECT_NEAR(cutoff_eta_prime(1.3), (cutoff_eta(1.3 + 1e-6) - cutoff_eta(1.3 - 1e-6)) / 2e-6, 1e-6);
}

TEST(Windowed, ZeroAndInnerSupport) {
  PhysParams p;
  p.lx = 4.0;
  const Grid g = make_grid(p, 32, 4, 4);
  Field3D T(g.nx, g.ny, g.nz);
  EXPECT_EQ(windowed_T_energy(T, 1.0, g), 0.0);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        if (std::abs(g.x(i)) <= 1.0) T(i, j, k) = 3.0;
  EXPECT_EQ(windowed_T_energy(T, 1.0, g), 0.0);
  EXPECT_GT(windowed_T_energy(T, 0.5, g), 0.0);
}

TEST(Windowed, ConstantFieldMatchesOneDimensionalOracle) {
  PhysParams p;
  p.lx = 4.0;
  p.l = 1.5;
  p.h = 0.5;
  const Grid g = make_grid(p, 64, 4, 4);
  Field3D T(g.nx, g.ny, g.nz, 1.0);
  for (double r : {0.7, 1.0, 1.9}) {
    double line = 0.0;
    for (int i = 0; i < g.nx; ++i) {
      const double x = -p.lx + (i + 0.5) * g.dx;
      const double e = cutoff_eta(x * x / (r * r));
      line += e * e * g.dx;
    }
    EXPECT_NEAR(windowed_T_energy(T, r, g), line * p.l * p.h, 1e-12);
    // Between the volume of {|x| >= sqrt(2) r} and that of {|x| >= r}.
    const double outer = (2 * p.lx - 2 * std::sqrt(2.0) * r) * p.l * p.h;
    EXPECT_GT(windowed_T_energy(T, r, g), outer - 2 * g.dx * p.l * p.h);
  }
}

TEST(Windowed, MonotoneInRadiusAndBoundedByTotal) {
  PhysParams p;
  p.lx = 4.0;
  const Grid g = make_grid(p, 32, 6, 4);
  const State s = peqtest::random_state(g, p, 77);
  double last = HUGE_VAL;
  for (double r : {0.1, 0.5, 1.0, 1.5, 1.9}) {
    const double w = windowed_T_energy(s.T, r, g);
    EXPECT_LE(w, last);
    EXPECT_LE(w, l2_squared(s.T, g));
    last = w;
  }
}

TEST(TailConfig, Validation) {
  PhysParams p;
  p.lx = 4.0;
  TailConfig c;
  c.radii = {0.5, 1.0, 1.9};
  EXPECT_NO_THROW(c.validate(p));
  c.radii = {1.0, 0.5};
  EXPECT_THROW(c.validate(p), ConfigError);
  c.radii = {1.0, 2.0};
  EXPECT_THROW(c.validate(p), ConfigError);
  c.radii = {-1.0};
  EXPECT_THROW(c.validate(p), ConfigError);
  c.radii = {};
  EXPECT_THROW(c.validate(p), ConfigError);
}

TEST(TailSummary, WitnessIsSmallestPassingTailOfRadii) {
  TailConfig c;
  c.radii = {1, 2, 3};
  c.epsilon = 0.1;
  c.tau_probe = 1.0;
  std::vector<TailSample> s = {{0.0, 1.0, {0.9, 0.8, 0.7}}, {1.0, 1.0, {0.3, 0.05, 0.01}}, {2.0, 1.0, {0.2, 0.08, 0.02}}};
  const TailReport r = summarize_tail(c, s);
  ASSERT_TRUE(r.witness_radius.has_value());
  EXPECT_EQ(*r.witness_radius, 2.0);
  EXPECT_TRUE(r.pass);
  EXPECT_DOUBLE_EQ(r.sup_ratio[0], 0.3);
  s[2].windowed[2] = 0.5;  // largest radius fails: no witness
  EXPECT_FALSE(summarize_tail(c, s).pass);
}

TEST(TailExperiment, UnforcedCompactDataStaysBelowInitialEnergy) {
  Scenario sc = small_scenario();
  sc.initial.kind = InitialKind::gaussian_blob;
  sc.initial.blob.cx = 0.0;
  sc.initial.blob.width = 0.3;
  TailConfig c;
  c.radii = {0.5, 1.0, 1.5};
  c.tau_probe = 0.0;
  const TailReport r = tail_decay_experiment(c, sc);
  const double e0 = r.samples.front().total;
  for (double w : r.sup_windowed) EXPECT_LT(w, e0);
  EXPECT_TRUE(r.monotone_in_r);
}

TEST(Truncation, ZeroDataGivesZeroDifference) {
  Scenario sc = small_scenario();
  const TruncationReport r = truncation_convergence(sc, 2);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0].max_rel_diff, 0.0);
}

TEST(Truncation, OddGridIsRejected) {
  Scenario sc = small_scenario();
  sc.nx = 15;
  EXPECT_THROW(truncation_convergence(sc, 2), ConfigError);
}

TEST(Truncation, SourceNearTheWallIsANegativeControl) {
  Scenario sc = small_scenario();
  sc.source.kind = SourceKind::gaussian_blob;
  sc.source.blob.width = 0.25;
  sc.source.blob.cx = 0.0;
  const double centred = truncation_convergence(sc, 2).pairs[0].max_rel_diff;
  sc.source.blob.cx = 3.0;
  const double near_wall = truncation_convergence(sc, 2).pairs[0].max_rel_diff;
  EXPECT_GT(near_wall, 10 * centred);
}

TEST(Contraction, IdenticalDataStayAtZeroDistance) {
  Scenario sc = small_scenario();
  sc.initial.kind = InitialKind::gaussian_blob;
  TailConfig c;
  const ContractionReport r = two_trajectory_contraction(c, sc, 0.0);
  for (const auto& s : r.series) {
    EXPECT_EQ(s.l2_dv, 0.0);
    EXPECT_EQ(s.l2_dT, 0.0);
  }
}

TEST(Contraction, DiffusionDominatedFrozenFlowContractsMonotonically) {
  Scenario sc = small_scenario();
  sc.phys.rt1 = 0.2;
  sc.phys.rt2 = 0.2;
  sc.step.frozen_velocity = true;
  sc.initial.kind = InitialKind::gaussian_blob;
  TailConfig c;
  c.pair_seed = 5;
  const ContractionReport r = two_trajectory_contraction(c, sc, 0.5);
  EXPECT_TRUE(r.monotone);
  EXPECT_LT(r.final_distance, r.initial_distance);
  EXPECT_GT(r.initial_distance, 0.0);
  for (const auto& s : r.series) EXPECT_EQ(s.l2_dv, 0.0);
}
