#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "peq/diagnostics.hpp"
#include "peq/integrator.hpp"

using namespace peq;

namespace {

constexpr double kPi = std::numbers::pi;

// Flat loops over every interior cell, no reductions helpers.
double naive_l2(const Field3D& f, const Grid& g) {
  double s = 0.0;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) s += f(i, j, k) * f(i, j, k) * g.dx * g.dy * g.dz;
  return s;
}

double naive_grad_x(const Field3D& f, const Grid& g) {
  double s = 0.0;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = -1; i < g.nx; ++i) {
        const double w = (i == -1 || i == g.nx - 1) ? 0.5 : 1.0;
        const double d = (f(i + 1, j, k) - f(i, j, k)) / g.dx;
        s += w * d * d * g.dx * g.dy * g.dz;
      }
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(Diagnostics, ColumnsInDeclarationOrder) {
  const auto& c = diag_columns();
  ASSERT_EQ(c.size(), 17u);
  EXPECT_EQ(c.front(), "t");
  EXPECT_EQ(c[1], "l2_T");
  EXPECT_EQ(c.back(), "constraint_residual");
  DiagRecord r;
  r.t = 1.5;
  r.l2_T = 2.5;
  const auto v = diag_values(r);
  EXPECT_EQ(*v[0], 1.5);
  EXPECT_EQ(*v[1], 2.5);
  EXPECT_FALSE(v[14].has_value());
  EXPECT_FALSE(v[15].has_value());
}

TEST(Diagnostics, ZeroStateGivesZeroNorms) {
  PhysParams p;
  const Grid g = make_grid(p, 8, 6, 4);
  const State s = State::zeros(g);
  const DiagRecord r = compute_record(s, &s, 0.1, p, g);
  for (const auto& v : diag_values(r)) EXPECT_EQ(v.value_or(0.0), 0.0);
  EXPECT_EQ(check_poincare_T(r, p), 0.0);
  EXPECT_EQ(check_poincare_v(r, p), 0.0);
}

TEST(Diagnostics, ConstantTemperature) {
  PhysParams p;
  p.lx = 2.0;
  p.l = 1.5;
  p.h = 0.5;
  p.alpha = 1.0;
  const Grid g = make_grid(p, 8, 6, 16);
  State s = State::zeros(g);
  s.T.fill(1.0);
  fill_ghosts(s.T, BcKind::temperature, p, g);
  const DiagRecord r = compute_record(s, nullptr, 0.0, p, g);
  EXPECT_NEAR(r.l2_T, 2 * p.lx * p.l * p.h, 1e-12);
  // The surface value is the Robin face value 1 / (1 + a), a = alpha rt2 dz / 2.
  const double a = 0.5 * p.alpha * p.rt2 * g.dz;
  EXPECT_NEAR(surface_l2_squared(s.T, g), 2 * p.lx * p.l / ((1 + a) * (1 + a)), 1e-12);
  EXPECT_NEAR(surface_l2_squared(s.T, g), 2 * p.lx * p.l, 2 * a * 2 * p.lx * p.l);
  const double ratio = check_poincare_T(r, p);
  EXPECT_NEAR(ratio, p.h / (kappa(p) * p.alpha), 2 * a);
  EXPECT_LE(ratio, 1.0);
  EXPECT_FALSE(r.l2_vt.has_value());
}

TEST(Diagnostics, MatchesNaiveQuadrature) {
  PhysParams p;
  p.lx = 1.3;
  p.alpha = 0.6;
  for (int n : {4, 8, 16}) {
    const Grid g = make_grid(p, n, n, n);
    const State s = peqtest::random_state(g, p, static_cast<std::uint64_t>(n));
    State prev = peqtest::random_state(g, p, 100 + static_cast<std::uint64_t>(n));
    const DiagRecord r = compute_record(s, &prev, 0.25, p, g);
    EXPECT_LT(rel(r.l2_T, naive_l2(s.T, g)), 1e-13);
    EXPECT_LT(rel(r.l2_v, naive_l2(s.v1, g) + naive_l2(s.v2, g)), 1e-13);
    EXPECT_LT(rel(face_gradient_squared_x(s.T, g), naive_grad_x(s.T, g)), 1e-13);
    Field3D dT = s.T;
    dT.axpy(-1.0, prev.T);
    EXPECT_LT(rel(*r.l2_Tt, naive_l2(dT, g) / 0.0625), 1e-13);
    double l6 = 0;
    for (int k = 0; k < g.nz; ++k)
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) l6 += std::pow(s.T(i, j, k), 6) * g.cell_volume();
    EXPECT_LT(rel(r.l6_T, std::pow(l6, 1.0 / 6.0)), 1e-13);
  }
}

TEST(Diagnostics, VNormsEqualOperatorInnerProducts) {
  PhysParams p;
  p.re1 = 2.0;
  p.re2 = 0.5;
  p.rt1 = 3.0;
  p.rt2 = 0.7;
  p.alpha = 1.7;
  const Grid g = make_grid(p, 10, 8, 6);
  const State s = peqtest::random_state(g, p, 6);
  const DiagRecord r = compute_record(s, nullptr, 0.0, p, g);
  auto inner = [&](const Field3D& a, const Field3D& b) {
    double x = 0;
    for (int k = 0; k < g.nz; ++k)
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) x += a(i, j, k) * b(i, j, k) * g.cell_volume();
    return x;
  };
  EXPECT_LT(rel(r.v1norm_v, inner(s.v1, apply_L1(s.v1, p, g)) + inner(s.v2, apply_L1(s.v2, p, g))), 1e-12);
  EXPECT_LT(rel(r.v2norm_T, inner(s.T, apply_L2(s.T, p, g))), 1e-12);
}

TEST(Diagnostics, KappaExamples) {
  PhysParams p;
  EXPECT_DOUBLE_EQ(kappa(p), 4.0);
  p.rt2 = 0.0;
  p.alpha = 2.0;
  EXPECT_DOUBLE_EQ(kappa(p), 1.0);
  PhysParams q;
  double last = 0;
  for (double h : {0.5, 1.0, 2.0}) {
    q.h = h;
    EXPECT_GT(kappa(q), last);
    last = kappa(q);
  }
}

TEST(Diagnostics, EnvelopeExamples) {
  PhysParams p;  // kappa = 4
  EXPECT_DOUBLE_EQ(gronwall_T_envelope(0.0, 2.0, 0.5, p), 2.0 + 16.0 * 0.5);
  EXPECT_NEAR(gronwall_T_envelope(4.0, 1.0, 0.0, p), std::exp(-1.0), 1e-15);
  EXPECT_LT(gronwall_T_envelope(400.0, 1.0, 0.0, p), 1e-40);
}

TEST(Diagnostics, PoincareVelocityOfSineProfile) {
  PhysParams p;
  p.l = 1.0;
  p.lx = 2.0;
  p.h = 1.0;
  DiagRecord r;
  // v1 = sin(pi y / l) on the box: |v|^2 = lx l h, |grad v|^2 = (pi / l)^2 lx l h.
  r.l2_v = p.lx * p.l * p.h;
  r.l2_gradv = (kPi / p.l) * (kPi / p.l) * p.lx * p.l * p.h;
  EXPECT_NEAR(check_poincare_v(r, p), 1.0 / (2 * kPi), 1e-15);
  r.l2_gradv = 0.0;
  EXPECT_TRUE(std::isinf(check_poincare_v(r, p)));
}

TEST(Diagnostics, PoincareVelocityOfResolvedMode) {
  PhysParams p;
  p.lx = 1.0;
  const Grid g = make_grid(p, 64, 32, 4);
  State s = State::zeros(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        s.v1(i, j, k) = std::sin(kPi * (g.x(i) + 1.0) / 2.0) * std::sin(kPi * g.y(j));
  fill_ghosts(s.v1, BcKind::velocity, p, g);
  const DiagRecord r = compute_record(s, nullptr, 0.0, p, g);
  const double exact = 1.0 / (2.0 * p.l * std::hypot(kPi / 2.0, kPi));
  EXPECT_NEAR(check_poincare_v(r, p), exact, 1e-3);
}

TEST(Diagnostics, PoincareHoldsOnRandomFields) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  double worst_T = 0, worst_v = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    PhysParams p;
    p.lx = u(rng);
    p.l = u(rng);
    p.h = u(rng);
    p.alpha = u(rng);
    p.rt1 = u(rng);
    p.rt2 = u(rng);
    p.re1 = u(rng);
    p.re2 = u(rng);
    const Grid g = make_grid(p, 4 + trial % 5, 4 + trial % 3, 4 + trial % 4);
    // Alternate rough and smooth fields.
    State s = trial % 2 ? peqtest::random_state(g, p, static_cast<std::uint64_t>(trial))
                        : peqtest::smooth_state(g, p, u(rng), u(rng));
    const DiagRecord r = compute_record(s, nullptr, 0.0, p, g);
    worst_T = std::max(worst_T, check_poincare_T(r, p));
    worst_v = std::max(worst_v, check_poincare_v(r, p));
  }
  EXPECT_LE(worst_T, 1.01);
  EXPECT_LE(worst_v, 1.01);
}

TEST(Diagnostics, AbsorbingEntryTime) {
  auto series = [](std::vector<double> v) {
    std::vector<DiagRecord> s;
    for (std::size_t n = 0; n < v.size(); ++n) {
      DiagRecord r;
      r.t = static_cast<double>(n);
      r.v1norm_v = v[n];
      s.push_back(r);
    }
    return s;
  };
  EXPECT_EQ(absorbing_entry_time(series({0.1, 0.2, 0.1}), 1.0), 0.0);
  EXPECT_FALSE(absorbing_entry_time(series({2, 3, 4}), 1.0).has_value());
  EXPECT_EQ(absorbing_entry_time(series({5, 0.5, 2, 0.5, 0.4}), 1.0), 3.0);
  EXPECT_FALSE(absorbing_entry_time(series({}), 1.0).has_value());
  // Larger radius, earlier entry.
  const auto dec = series({10, 5, 2, 1, 0.5, 0.2});
  EXPECT_LT(*absorbing_entry_time(dec, 3.0), *absorbing_entry_time(dec, 0.6));
}

TEST(Diagnostics, SinkFlagsViolations) {
  PhysParams p;
  const Grid g = make_grid(p, 8, 6, 4);
  CheckConfig strict;
  strict.div_tol = -1.0;  // every record violates
  DiagnosticsSink d(p, g, strict);
  const State s = State::zeros(g);
  d.on_output(s, nullptr, 0.1);
  EXPECT_EQ(d.records().size(), 1u);
  EXPECT_FALSE(d.violations().empty());
}

TEST(Diagnostics, EnergyCheckCatchesGrowth) {
  PhysParams p;
  const Grid g = make_grid(p, 8, 6, 4);
  DiagnosticsSink d(p, g, CheckConfig{});
  State a = State::zeros(g);
  a.T.fill(1.0);
  d.on_output(a, nullptr, 0.1);
  State b = a;
  b.T.fill(1.1);
  d.on_step(a, b);
  EXPECT_NEAR(d.max_energy_increase(), 0.21, 1e-12);
  EXPECT_FALSE(d.violations().empty());
}

TEST(Diagnostics, SplitConstantIsFiniteAndLogged) {
  PhysParams p;
  const Grid g = make_grid(p, 8, 6, 4);
  const State s = peqtest::smooth_state(g, p, 1.0, 0.0);
  const double c = empirical_split_constant(s, p, g);
  EXPECT_TRUE(std::isfinite(c));
  EXPECT_GE(c, 0.0);
}
