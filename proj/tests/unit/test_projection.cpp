#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "peq/projection.hpp"
#include "peq/stencil.hpp"
#include "peq/verification.hpp"

using namespace peq;

namespace {

double rel_change(const Field3D& a, const Field3D& b) {
  return peqtest::max_abs_diff(a, b) / std::max(peqtest::max_abs(b), 1e-300);
}

}  // namespace

TEST(Projection, RemovesBarotropicDivergence) {
  PhysParams p;
  p.lx = 2.0;
  for (auto method : {PoissonSolve::Method::direct, PoissonSolve::Method::cg}) {
    const Grid g = make_grid(p, 12, 8, 5);
    State s = peqtest::random_state(g, p, 3);
    PoissonSolve cfg;
    cfg.method = method;
    const ProjectionResult r = project(s.v1, s.v2, 0.1, g, cfg);
    EXPECT_GT(r.residual_before, 1e-3);
    EXPECT_LT(r.residual_after, 1e-12);
    EXPECT_LT(constraint_residual(s.v1, s.v2, g), 1e-12);
  }
}

TEST(Projection, IsIdempotent) {
  PhysParams p;
  const Grid g = make_grid(p, 16, 8, 6);
  State s = peqtest::random_state(g, p, 4);
  project(s.v1, s.v2, 0.05, g, PoissonSolve{});
  const Field3D v1 = s.v1, v2 = s.v2;
  project(s.v1, s.v2, 0.05, g, PoissonSolve{});
  EXPECT_LT(rel_change(s.v1, v1), 1e-12);
  EXPECT_LT(rel_change(s.v2, v2), 1e-12);
}

TEST(Projection, LeavesBaroclinicFieldsAlone) {
  PhysParams p;
  const Grid g = make_grid(p, 8, 8, 4);
  State s = State::zeros(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) s.v1(i, j, k) = (k % 2 ? 1.0 : -1.0) * (i + j);
  fill_ghosts(s.v1, BcKind::velocity, p, g);
  const Field3D before = s.v1;
  project(s.v1, s.v2, 1.0, g, PoissonSolve{});
  EXPECT_LT(peqtest::max_abs_diff(s.v1, before), 1e-13);
}

TEST(Projection, DirectAndIterativeSolversAgree) {
  PhysParams p;
  const Grid g = make_grid(p, 10, 7, 4);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> rhs(static_cast<std::size_t>(g.nx * g.ny));
  for (auto& x : rhs) x = u(rng);
  remove_mean(rhs);
  PoissonSolve d, c;
  d.method = PoissonSolve::Method::direct;
  c.method = PoissonSolve::Method::cg;
  const SurfacePressureSolver sd(g, d), sc(g, c);
  EXPECT_TRUE(sd.direct());
  EXPECT_FALSE(sc.direct());
  std::vector<double> a(rhs.size()), b(rhs.size());
  sd.solve(rhs, a);
  const CgResult r = sc.solve(rhs, b);
  EXPECT_TRUE(r.converged);
  for (std::size_t n = 0; n < a.size(); ++n) EXPECT_NEAR(a[n], b[n], 1e-9);
}

TEST(Projection, OperatorMatchesDenseOracle) {
  PhysParams p;
  const Grid g = make_grid(p, 6, 5, 4);
  const SurfacePressureSolver s(g, PoissonSolve{});
  const DenseMatrix m = dense_operator_oracle(g, OracleOp::poisson, BcKind::surface_pressure, p);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> x(static_cast<std::size_t>(m.cols)), y(x.size());
  for (auto& v : x) v = u(rng);
  s.apply(x, y);
  const std::vector<double> yo = m.multiply(x);
  for (std::size_t n = 0; n < y.size(); ++n) EXPECT_NEAR(y[n], yo[n], 1e-12 * (1 + std::abs(yo[n])));
  // Symmetric, constants in the nullspace.
  for (int r = 0; r < m.rows; ++r) {
    double row = 0;
    for (int c = 0; c < m.cols; ++c) {
      EXPECT_NEAR(m(r, c), m(c, r), 1e-12);
      row += m(r, c);
    }
    EXPECT_NEAR(row, 0.0, 1e-10);
  }
}

TEST(Projection, ConstraintResidualOfZeroIsZero) {
  PhysParams p;
  const Grid g = make_grid(p, 6, 5, 4);
  const State s = State::zeros(g);
  EXPECT_EQ(constraint_residual(s.v1, s.v2, g), 0.0);
}

TEST(Projection, PoissonConfigValidation) {
  PoissonSolve c;
  c.tolerance = 1e-3;
  EXPECT_ANY_THROW(c.validate());
  c.tolerance = 1e-10;
  c.max_iter = 0;
  EXPECT_ANY_THROW(c.validate());
}
