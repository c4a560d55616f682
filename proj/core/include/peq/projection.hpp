#pragma once

#include <memory>
#include <span>

#include "peq/field.hpp"
#include "peq/grid.hpp"
#include "peq/linalg.hpp"
#include "peq/state.hpp"

namespace peq {

struct PoissonSolve {
  enum class Method { automatic, direct, cg };

  double tolerance = 1e-12;  // relative residual, must lie in (0, 1e-6]
  int max_iter = 20000;
  Method method = Method::automatic;

  // automatic: dense Cholesky up to this many unknowns, Jacobi-PCG above.
  static constexpr long kDirectLimit = 64L * 64L;

  void validate() const;
  bool use_direct(const Grid& g) const;
};

// Solves the barotropic pressure equation G^T G phi = rhs on the horizontal
// grid, where G is the centred gradient with Neumann ghosts and -G^T is the
// centred divergence with Dirichlet (wall) ghosts. The constant nullspace is
// fixed by returning zero-mean phi.
class SurfacePressureSolver {
 public:
  SurfacePressureSolver(const Grid& g, const PoissonSolve& cfg);

  // rhs and result are packed interior vectors (x-fastest).
  CgResult solve(std::span<const double> rhs, std::span<double> phi) const;

  void apply(std::span<const double> x, std::span<double> y) const;
  bool direct() const { return static_cast<bool>(factor_); }

  struct Factor;  // dense Cholesky factor, shared across solvers of equal grids

 private:
  Grid grid_;
  PoissonSolve cfg_;
  std::shared_ptr<const Factor> factor_;
  std::vector<double> diagonal_;
};

// phi with div_h(grad_h phi) = div_h(vbar_star) / dt (the p_s increment).
// vbar_star must carry wall ghosts.
Field2D solve_surface_pressure(const Field2D& vbar1, const Field2D& vbar2, double dt, const Grid& g,
                               const PoissonSolve& cfg);

struct ProjectionResult {
  Field2D phi;  // p_s increment
  CgResult solve;
  double residual_before = 0.0;
  double residual_after = 0.0;
};

// Removes the barotropic divergence: v -= dt * grad_h phi at every depth.
// Velocity ghosts are refilled.
class Projector {
 public:
  Projector(const Grid& g, const PoissonSolve& cfg);

  ProjectionResult project(Field3D& v1, Field3D& v2, double dt) const;
  // Also adds phi to s.p_s.
  ProjectionResult project(State& s, double dt) const;

 private:
  Grid grid_;
  SurfacePressureSolver solver_;
};

ProjectionResult project(Field3D& v1, Field3D& v2, double dt, const Grid& g, const PoissonSolve& cfg);

// Depth-averaged horizontal divergence (interior).
Field2D barotropic_divergence(const Field3D& v1, const Field3D& v2, const Grid& g);

// max |div_h vbar| * min(dx, dy) / max |v|; zero for v = 0.
double constraint_residual(const Field3D& v1, const Field3D& v2, const Grid& g);

}  // namespace peq
