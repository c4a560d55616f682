#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "helpers.hpp"
#include "peq/diagnostics.hpp"
#include "peq/diffusion.hpp"
#include "peq/integrator.hpp"
#include "peq/model.hpp"
#include "peq/stencil.hpp"
#include "peq/verification.hpp"

using namespace peq;

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& m) {
  Eigen::MatrixXd a(m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) a(r, c) = m(r, c);
  return a;
}

// Grid built by hand so that single-layer cases are allowed.
Grid tiny(int nx, int ny, int nz, const PhysParams& p) {
  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.nz = nz;
  g.lx = p.lx;
  g.l = p.l;
  g.h = p.h;
  g.dx = 2 * p.lx / nx;
  g.dy = p.l / ny;
  g.dz = p.h / nz;
  return g;
}

}  // namespace

TEST(Mms, SpecSatisfiesBoundaryConditions) {
  PhysParams p;
  p.alpha = 2.3;
  p.rt2 = 0.4;
  p.lx = 1.7;
  const Grid g = make_grid(p, 8, 8, 8);
  EXPECT_LT(mms_boundary_defect(MmsSpec{}, p, g), 1e-12);
}

TEST(Mms, ZeroSpecHasZeroForcing) {
  PhysParams p;
  const Grid g = make_grid(p, 6, 6, 6);
  const MmsForcing f = mms_forcing(MmsSpec{0, 0, 0, 0}, p, g);
  EXPECT_EQ(peqtest::max_abs(f.f1), 0.0);
  EXPECT_EQ(peqtest::max_abs(f.f2), 0.0);
  EXPECT_EQ(peqtest::max_abs(f.Q), 0.0);
}

TEST(Mms, PureDiffusionSpecForcingIsL2T) {
  PhysParams p;
  p.rt1 = 2.0;
  p.rt2 = 0.5;
  p.lx = 1.2;
  const Grid g = make_grid(p, 6, 6, 6);
  const MmsSpec m{0.0, 0.0, 1.3, 0.0};
  const MmsForcing f = mms_forcing(m, p, g);
  // L2 T evaluated by finite differences of the closed form.
  const double e = 1e-4;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double x = g.x(i), y = g.y(j), z = g.z(k);
        auto T = [&](double a, double b, double c) { return mms_exact(m, p, a, b, c).T; };
        const double c0 = T(x, y, z);
        const double txx = (T(x + e, y, z) - 2 * c0 + T(x - e, y, z)) / (e * e);
        const double tyy = (T(x, y + e, z) - 2 * c0 + T(x, y - e, z)) / (e * e);
        const double tzz = (T(x, y, z + e) - 2 * c0 + T(x, y, z - e)) / (e * e);
        EXPECT_NEAR(f.Q(i, j, k), -(txx + tyy) / p.rt1 - tzz / p.rt2, 1e-5);
      }
}

TEST(Mms, DiscreteResidualIsSecondOrder) {
  PhysParams p;
  p.lx = 1.0;
  std::vector<double> res;
  for (int n : {8, 16, 32}) {
    const Grid g = make_grid(p, n, n, n);
    const MmsForcing f = mms_forcing(MmsSpec{}, p, g);
    State s = mms_state(MmsSpec{}, p, g);
    s.Q = f.Q;
    const Tendency t = explicit_tendency(s, p, g);
    Field3D r1 = t.dv1, rT = t.dT;
    r1.axpy(1.0, f.f1);
    r1.axpy(-1.0, apply_L1(s.v1, p, g));
    rT.axpy(-1.0, apply_L2(s.T, p, g));
    res.push_back(std::sqrt(l2_squared(r1, g) + l2_squared(rT, g)));
  }
  const OrderFit fit = convergence_order({{1.0 / 8, res[0]}, {1.0 / 16, res[1]}, {1.0 / 32, res[2]}});
  EXPECT_GT(fit.order, 1.0);  // boundary cells of the Robin and wall closures limit the local residual
  EXPECT_TRUE(fit.monotone);
}

TEST(Mms, ConvergenceOrderExamples) {
  EXPECT_NEAR(convergence_order({{0.1, 1e-2}, {0.05, 2.5e-3}}).order, 2.0, 1e-12);
  EXPECT_EQ(convergence_order({{0.1, 1e-2}, {0.05, 1e-2}}).order, 0.0);
  EXPECT_FALSE(convergence_order({{0.1, 1e-2}, {0.05, 2e-2}}).monotone);
  EXPECT_THROW(convergence_order({{0.1, 1e-2}}), std::invalid_argument);
}

TEST(Mms, ThreeLevelStudyIsSecondOrder) {
  PhysParams p;
  p.lx = 1.0;
  const MmsReport r = mms_study(MmsSpec{}, p, {8, 16, 32}, 0.01, 100);
  EXPECT_GE(r.order_v.order, 1.8);
  EXPECT_LE(r.order_v.order, 2.2);
  EXPECT_GE(r.order_T.order, 1.8);
  EXPECT_LE(r.order_T.order, 2.2);
  EXPECT_TRUE(r.order_v.monotone);
}

TEST(Oracle, LapHRowSumsOnSingleLayer) {
  PhysParams p;
  p.lx = 0.5;
  const Grid g = tiny(4, 4, 1, p);
  const DenseMatrix m = dense_operator_oracle(g, OracleOp::lap_h, BcKind::velocity, p);
  ASSERT_EQ(m.rows, 16);
  Field3D one(4, 4, 1, 1.0);
  fill_ghosts(one, BcKind::velocity, p, g);
  const Field3D lap = lap_h(one, g);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      double row = 0;
      for (int c = 0; c < 16; ++c) row += m(i + 4 * j, c);
      EXPECT_NEAR(row, lap(i, j, 0), 1e-12);
      const double expect = -(i == 0 || i == 3 ? 2.0 : 0.0) / (g.dx * g.dx) - (j == 0 || j == 3 ? 2.0 : 0.0) / (g.dy * g.dy);
      EXPECT_NEAR(row, expect, 1e-12);
    }
}

TEST(Oracle, MatchesStencilsOnSixCubed) {
  PhysParams p;
  p.alpha = 1.4;
  p.re1 = 2;
  p.rt2 = 0.6;
  p.lx = 1.1;
  const Grid g = make_grid(p, 6, 6, 6);
  std::mt19937_64 rng(31);
  struct C {
    OracleOp op;
    BcKind kind;
  };
  for (C c : {C{OracleOp::lap_h, BcKind::temperature}, C{OracleOp::lap_h, BcKind::velocity}, C{OracleOp::L1, BcKind::velocity},
              C{OracleOp::L2, BcKind::temperature}}) {
    const DenseMatrix m = dense_operator_oracle(g, c.op, c.kind, p);
    const Field3D f = peqtest::random_field(g, c.kind, p, rng);
    const Field3D s = c.op == OracleOp::lap_h ? lap_h(f, g)
                      : c.op == OracleOp::L1  ? apply_L1(f, p, g)
                                              : apply_L2(f, p, g);
    const std::vector<double> mv = m.multiply(f.interior()), sv = s.interior();
    double err = 0, scale = 0;
    for (std::size_t n = 0; n < mv.size(); ++n) {
      err = std::max(err, std::abs(mv[n] - sv[n]));
      scale = std::max(scale, std::abs(sv[n]));
    }
    EXPECT_LE(err / scale, 1e-13);
  }
}

TEST(Oracle, HelmholtzSolveMatchesDense) {
  PhysParams p;
  const Grid g = make_grid(p, 6, 6, 6);
  const double dt = 0.3;
  const DenseMatrix m = dense_operator_oracle(g, OracleOp::helmholtz_L2, BcKind::temperature, p, dt);
  std::mt19937_64 rng(5);
  Field3D f = peqtest::random_field(g, BcKind::temperature, p, rng);
  const std::vector<double> b = f.interior();
  const Eigen::VectorXd x = to_eigen(m).llt().solve(Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<long>(b.size())));
  ImplicitDiffusion(DiffusionOperator::heat(p), dt, p, g, 1e-13).solve(f);
  const auto got = f.interior();
  for (std::size_t n = 0; n < got.size(); ++n) EXPECT_NEAR(got[n], x(static_cast<long>(n)), 1e-11);
}

TEST(Oracle, DiffusionMatricesSymmetricSemiDefinite) {
  PhysParams p;
  p.alpha = 0.8;
  const Grid g = make_grid(p, 8, 8, 8);
  for (auto [op, definite] : {std::pair{OracleOp::L1, true}, std::pair{OracleOp::L2, true}}) {
    const Eigen::MatrixXd a = to_eigen(dense_operator_oracle(g, op, BcKind::temperature, p));
    ASSERT_EQ(a.rows(), 512);
    EXPECT_LT((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-10);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
    EXPECT_GE(ev.minCoeff(), -1e-9);
    if (definite) EXPECT_GT(ev.minCoeff(), 1e-6);
  }
  // Pure Neumann lap_h has the constants in its nullspace.
  const Eigen::MatrixXd n = -to_eigen(dense_operator_oracle(g, OracleOp::lap_h, BcKind::temperature, p));
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(n, Eigen::EigenvaluesOnly).eigenvalues();
  EXPECT_NEAR(ev.minCoeff(), 0.0, 1e-9);
}

TEST(Oracle, SizeCap) {
  PhysParams p;
  const Grid g = make_grid(p, 17, 16, 16);
  EXPECT_THROW(dense_operator_oracle(g, OracleOp::L2, BcKind::temperature, p), std::invalid_argument);
}
