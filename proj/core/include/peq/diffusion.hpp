#pragma once

#include <memory>
#include <span>
#include <vector>

#include "peq/boundary.hpp"
#include "peq/field.hpp"
#include "peq/grid.hpp"
#include "peq/linalg.hpp"
#include "peq/params.hpp"

namespace peq {

enum class DiffusionPreconditioner { none, jacobi, separable };

// Diffusion operator L = -ch lap_h - cv d_zz with the boundary rules of
// `kind` folded into the diagonal, acting on packed interior vectors.
struct DiffusionOperator {
  BcKind kind = BcKind::temperature;
  double ch = 1.0, cv = 1.0;

  static DiffusionOperator momentum(const PhysParams& p) { return {BcKind::velocity, 1.0 / p.re1, 1.0 / p.re2}; }
  static DiffusionOperator heat(const PhysParams& p) { return {BcKind::temperature, 1.0 / p.rt1, 1.0 / p.rt2}; }
};

// Exact inverse of I + dt L by diagonalising the three 1D operators.
class SeparableHelmholtz {
 public:
  SeparableHelmholtz(const DiffusionOperator& op, double dt, const PhysParams& p, const Grid& g);
  void solve(std::span<const double> rhs, std::span<double> out) const;

 private:
  struct Axis {
    int n = 0;
    std::vector<double> vectors;  // column-major n x n orthonormal eigenvectors
    std::vector<double> values;
  };
  Grid grid_;
  double dt_;
  Axis ax_, ay_, az_;
  std::vector<double> inverse_diagonal_;
};

// Backward-Euler diffusion: solves (I + dt L) u_new = u_old by PCG.
class ImplicitDiffusion {
 public:
  ImplicitDiffusion(const DiffusionOperator& op, double dt, const PhysParams& p, const Grid& g, double tolerance,
                    int max_iter = 500, DiffusionPreconditioner pc = DiffusionPreconditioner::separable);

  // In place; refills ghosts. Throws NumericalError on non-convergence.
  CgResult solve(Field3D& field) const;

  // y = (I + dt L) x on packed interior vectors.
  void apply(std::span<const double> x, std::span<double> y) const;

 private:
  DiffusionOperator op_;
  double dt_;
  PhysParams params_;
  Grid grid_;
  double tolerance_;
  int max_iter_;
  DiffusionPreconditioner pc_;
  double gxl_, gxh_, gyl_, gyh_, gzl_, gzh_;
  std::unique_ptr<SeparableHelmholtz> separable_;
  std::vector<double> diagonal_;
};

}  // namespace peq
