#include "peq/projection.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "peq/boundary.hpp"
#include "peq/errors.hpp"
#include "peq/parallel.hpp"
#include "peq/stencil.hpp"

namespace peq {

void PoissonSolve::validate() const {
  if (!(tolerance > 0.0 && tolerance <= 1e-6)) throw ConfigError("poisson tolerance must lie in (0, 1e-6]");
  if (max_iter < 1) throw ConfigError("poisson max_iter must be >= 1");
}

bool PoissonSolve::use_direct(const Grid& g) const {
  switch (method) {
    case Method::direct:
      return true;
    case Method::cg:
      return false;
    case Method::automatic:
      return static_cast<long>(g.nx) * g.ny <= kDirectLimit;
  }
  return false;
}

struct SurfacePressureSolver::Factor {
  Eigen::LLT<Eigen::MatrixXd> llt;
};

namespace {

// y = G^T G x on packed (x-fastest) horizontal vectors.
void apply_barotropic_operator(const Grid& g, std::span<const double> x, std::span<double> y) {
  const int nx = g.nx, ny = g.ny;
  const double cx = 0.5 / g.dx, cy = 0.5 / g.dy;
  std::vector<double> gx(x.size()), gy(x.size());
  auto at = [nx](int i, int j) { return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * j; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double c = x[at(i, j)];
      const double xl = i > 0 ? x[at(i - 1, j)] : c, xh = i + 1 < nx ? x[at(i + 1, j)] : c;
      const double yl = j > 0 ? x[at(i, j - 1)] : c, yh = j + 1 < ny ? x[at(i, j + 1)] : c;
      gx[at(i, j)] = cx * (xh - xl);
      gy[at(i, j)] = cy * (yh - yl);
    }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double ux = gx[at(i, j)], uy = gy[at(i, j)];
      const double xl = i > 0 ? gx[at(i - 1, j)] : -ux, xh = i + 1 < nx ? gx[at(i + 1, j)] : -ux;
      const double yl = j > 0 ? gy[at(i, j - 1)] : -uy, yh = j + 1 < ny ? gy[at(i, j + 1)] : -uy;
      y[at(i, j)] = -(cx * (xh - xl) + cy * (yh - yl));
    }
}

std::shared_ptr<const SurfacePressureSolver::Factor> cached_factor(const Grid& g,
                                                                   const std::function<std::shared_ptr<const SurfacePressureSolver::Factor>()>& make) {
  using Key = std::tuple<int, int, double, double>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const SurfacePressureSolver::Factor>> cache;
  const Key key{g.nx, g.ny, g.dx, g.dy};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = make();
  if (cache.size() > 16) cache.clear();
  cache.emplace(key, f);
  return f;
}

}  // namespace

SurfacePressureSolver::SurfacePressureSolver(const Grid& g, const PoissonSolve& cfg) : grid_(g), cfg_(cfg) {
  cfg.validate();
  const int n = g.nx * g.ny;
  if (cfg.use_direct(g)) {
    factor_ = cached_factor(g, [&] {
      Eigen::MatrixXd m(n, n);
      std::vector<double> e(static_cast<std::size_t>(n), 0.0), col(static_cast<std::size_t>(n));
      for (int c = 0; c < n; ++c) {
        e[static_cast<std::size_t>(c)] = 1.0;
        apply_barotropic_operator(g, e, col);
        e[static_cast<std::size_t>(c)] = 0.0;
        for (int r = 0; r < n; ++r) m(r, c) = col[static_cast<std::size_t>(r)];
      }
      // Rank-one shift on the constant nullspace; for zero-mean rhs the
      // solution of the shifted system is the zero-mean solution.
      const double shift = m.diagonal().mean() / n;
      m.array() += shift;
      auto f = std::make_shared<Factor>();
      f->llt.compute(m);
      if (f->llt.info() != Eigen::Success) throw NumericalError("surface pressure factorisation failed");
      return std::shared_ptr<const Factor>(std::move(f));
    });
  } else {
    diagonal_.resize(static_cast<std::size_t>(n));
    const double sx = 1.0 / (4.0 * g.dx * g.dx), sy = 1.0 / (4.0 * g.dy * g.dy);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const int cx = (i > 0) + (i + 1 < g.nx) + (i == 0) + (i == g.nx - 1);
        const int cy = (j > 0) + (j + 1 < g.ny) + (j == 0) + (j == g.ny - 1);
        diagonal_[static_cast<std::size_t>(i + g.nx * j)] = sx * cx + sy * cy;
      }
  }
}

void SurfacePressureSolver::apply(std::span<const double> x, std::span<double> y) const {
  apply_barotropic_operator(grid_, x, y);
}

CgResult SurfacePressureSolver::solve(std::span<const double> rhs, std::span<double> phi) const {
  std::vector<double> b(rhs.begin(), rhs.end());
  remove_mean(b);
  CgResult res;
  if (factor_) {
    Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::Map<Eigen::VectorXd> xv(phi.data(), static_cast<Eigen::Index>(phi.size()));
    xv = factor_->llt.solve(bv);
    remove_mean(phi);
    std::vector<double> r(b.size());
    apply(phi, r);
    for (std::size_t n = 0; n < r.size(); ++n) r[n] -= b[n];
    const double bn = norm2(b);
    res.converged = true;
    res.relative_residual = bn > 0.0 ? norm2(r) / bn : 0.0;
    return res;
  }
  std::fill(phi.begin(), phi.end(), 0.0);
  const LinearMap op = [this](std::span<const double> in, std::span<double> out) { apply(in, out); };
  const LinearMap pc = [this](std::span<const double> r, std::span<double> z) {
    for (std::size_t n = 0; n < r.size(); ++n) z[n] = r[n] / diagonal_[n];
  };
  res = pcg(op, pc, b, phi, cfg_.tolerance, cfg_.max_iter, true);
  if (!res.converged)
    throw NumericalError("surface pressure solve did not converge: relative residual " +
                         std::to_string(res.relative_residual) + " after " + std::to_string(res.iterations) +
                         " iterations");
  return res;
}

Field2D solve_surface_pressure(const Field2D& vbar1, const Field2D& vbar2, double dt, const Grid& g,
                               const PoissonSolve& cfg) {
  const SurfacePressureSolver solver(g, cfg);
  const Field2D div = div_h(vbar1, vbar2, g);
  std::vector<double> rhs = div.interior();
  for (double& v : rhs) v = -v / dt;
  std::vector<double> phi(rhs.size());
  solver.solve(rhs, phi);
  Field2D out(g.nx, g.ny);
  out.set_interior(phi);
  fill_ghosts(out, BcKind::surface_pressure, g);
  return out;
}

Field2D barotropic_divergence(const Field3D& v1, const Field3D& v2, const Grid& g) {
  Field2D m1 = depth_mean(v1, g), m2 = depth_mean(v2, g);
  fill_ghosts(m1, BcKind::velocity, g);
  fill_ghosts(m2, BcKind::velocity, g);
  return div_h(m1, m2, g);
}

double constraint_residual(const Field3D& v1, const Field3D& v2, const Grid& g) {
  double vmax = 0.0;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        vmax = std::max({vmax, std::abs(v1(i, j, k)), std::abs(v2(i, j, k))});
  if (vmax == 0.0) return 0.0;
  const Field2D div = barotropic_divergence(v1, v2, g);
  double dmax = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) dmax = std::max(dmax, std::abs(div(i, j)));
  return dmax * std::min(g.dx, g.dy) / vmax;
}

Projector::Projector(const Grid& g, const PoissonSolve& cfg) : grid_(g), solver_(g, cfg) {}

ProjectionResult Projector::project(Field3D& v1, Field3D& v2, double dt) const {
  const Grid& g = grid_;
  ProjectionResult out;
  const PhysParams unused;
  fill_ghosts(v1, BcKind::velocity, unused, g);
  fill_ghosts(v2, BcKind::velocity, unused, g);
  out.residual_before = constraint_residual(v1, v2, g);
  const Field2D div = barotropic_divergence(v1, v2, g);
  std::vector<double> rhs = div.interior();
  for (double& v : rhs) v = -v / dt;
  std::vector<double> phi(rhs.size());
  out.solve = solver_.solve(rhs, phi);
  out.phi = Field2D(g.nx, g.ny);
  out.phi.set_interior(phi);
  fill_ghosts(out.phi, BcKind::surface_pressure, g);
  auto [gx, gy] = grad_h(out.phi, g);
  parallel_for(0, g.nz, [&](int k) {
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        v1(i, j, k) -= dt * gx(i, j);
        v2(i, j, k) -= dt * gy(i, j);
      }
  });
  fill_ghosts(v1, BcKind::velocity, unused, g);
  fill_ghosts(v2, BcKind::velocity, unused, g);
  out.residual_after = constraint_residual(v1, v2, g);
  return out;
}

ProjectionResult Projector::project(State& s, double dt) const {
  ProjectionResult r = project(s.v1, s.v2, dt);
  s.p_s.axpy(1.0, r.phi);
  fill_ghosts(s.p_s, BcKind::surface_pressure, grid_);
  return r;
}

ProjectionResult project(Field3D& v1, Field3D& v2, double dt, const Grid& g, const PoissonSolve& cfg) {
  return Projector(g, cfg).project(v1, v2, dt);
}

}  // namespace peq
