#pragma once

#include <string>
#include <utility>
#include <vector>

#include "peq/boundary.hpp"
#include "peq/field.hpp"
#include "peq/grid.hpp"
#include "peq/params.hpp"
#include "peq/state.hpp"

namespace peq {

// Manufactured steady solution with xi = (x + lx) / (2 lx), zeta = z + h:
//   v1 = a1 sin(pi xi)  sin(pi y / l) cos(pi zeta / h)
//   v2 = a2 sin(2 pi xi) sin(pi y / l) cos(pi zeta / h)
//   T  = aT cos(pi xi) cos(pi y / l) (1 + c zeta^2),  c = -alpha / (2h/rt2 + alpha h^2)
//   p_s = ap cos(pi xi) cos(pi y / l)
// v has zero depth mean, so the barotropic constraint holds exactly; c makes
// T satisfy the Robin condition at the surface.
struct MmsSpec {
  double a1 = 1.0, a2 = 0.5, aT = 1.0, ap = 0.25;
};

struct MmsPoint {
  double v1, v2, T, w, p_s;
};

MmsPoint mms_exact(const MmsSpec& m, const PhysParams& p, double x, double y, double z);

// Largest boundary-condition defect of the spec on the domain faces, sampled
// on the grid's boundary-face centres. Zero (to rounding) for every MmsSpec
// with finite amplitudes.
double mms_boundary_defect(const MmsSpec& m, const PhysParams& p, const Grid& g);

struct MmsForcing {
  Field3D f1, f2;  // momentum body force
  Field3D Q;       // temperature source
};

// Analytic residual of the steady equations at the spec; throws
// std::invalid_argument if the boundary pre-check fails.
MmsForcing mms_forcing(const MmsSpec& m, const PhysParams& p, const Grid& g);

// Spec fields sampled at cell centres with ghosts filled.
State mms_state(const MmsSpec& m, const PhysParams& p, const Grid& g);

// Least-squares slope of log(error) against log(delta). `monotone` is false
// when the errors do not decrease with delta.
struct OrderFit {
  double order = 0.0;
  bool monotone = true;
};
OrderFit convergence_order(const std::vector<std::pair<double, double>>& delta_error);

struct MmsLevel {
  int n = 0;
  double delta = 0.0;
  double error_v = 0.0, error_T = 0.0;  // L2 norms of the solution error
};
struct MmsReport {
  std::vector<MmsLevel> levels;
  OrderFit order_v, order_T;
};

// Integrates the forced system from the spec for `steps` steps on n^3 grids.
MmsReport mms_study(const MmsSpec& m, const PhysParams& p, const std::vector<int>& levels, double dt, int steps);

// Row-major dense matrix.
struct DenseMatrix {
  int rows = 0, cols = 0;
  std::vector<double> a;
  double& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
  std::vector<double> multiply(const std::vector<double>& x) const;
};

enum class OracleOp {
  lap_h,         // horizontal Laplacian, ghosts of `bc` folded in
  L1,            // -(1/re1) lap_h - (1/re2) d_zz, velocity rules
  L2,            // same with rt1, rt2 and temperature rules
  helmholtz_L1,  // I + dt L1
  helmholtz_L2,  // I + dt L2
  poisson        // G^T G on the surface grid (nx*ny unknowns)
};

inline constexpr int kOracleLimit = 4096;

// Assembles the operator entry by entry from the ghost rules. Throws
// std::invalid_argument above kOracleLimit unknowns.
DenseMatrix dense_operator_oracle(const Grid& g, OracleOp op, BcKind bc, const PhysParams& p, double dt = 0.0);

}  // namespace peq
