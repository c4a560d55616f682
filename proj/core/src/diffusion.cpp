#include "peq/diffusion.hpp"

#include <Eigen/Dense>
#include <string>

#include "peq/errors.hpp"
#include "peq/parallel.hpp"

namespace peq {
namespace {

// -(c/d^2) * second difference with ghost folding, as a dense symmetric matrix.
Eigen::MatrixXd axis_operator(int n, double d, double c, double ghost_lo, double ghost_hi) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double s = c / (d * d);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 2.0 * s;
    if (i > 0) m(i, i - 1) = -s;
    if (i + 1 < n) m(i, i + 1) = -s;
  }
  m(0, 0) -= s * ghost_lo;
  m(n - 1, n - 1) -= s * ghost_hi;
  return m;
}

}  // namespace

SeparableHelmholtz::SeparableHelmholtz(const DiffusionOperator& op, double dt, const PhysParams& p, const Grid& g)
    : grid_(g), dt_(dt) {
  auto decompose = [](const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    Axis a;
    a.n = static_cast<int>(m.rows());
    a.vectors.assign(es.eigenvectors().data(), es.eigenvectors().data() + m.size());
    a.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    return a;
  };
  ax_ = decompose(axis_operator(g.nx, g.dx, op.ch, ghost_factor(op.kind, Face::x_lo, p, g),
                                ghost_factor(op.kind, Face::x_hi, p, g)));
  ay_ = decompose(axis_operator(g.ny, g.dy, op.ch, ghost_factor(op.kind, Face::y_lo, p, g),
                                ghost_factor(op.kind, Face::y_hi, p, g)));
  az_ = decompose(axis_operator(g.nz, g.dz, op.cv, ghost_factor(op.kind, Face::z_lo, p, g),
                                ghost_factor(op.kind, Face::z_hi, p, g)));
  inverse_diagonal_.resize(static_cast<std::size_t>(g.cells()));
  std::size_t n = 0;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        inverse_diagonal_[n++] = 1.0 / (1.0 + dt * (ax_.values[i] + ay_.values[j] + az_.values[k]));
}

void SeparableHelmholtz::solve(std::span<const double> rhs, std::span<double> out) const {
  using Eigen::Map;
  using Eigen::MatrixXd;
  const int nx = grid_.nx, ny = grid_.ny, nz = grid_.nz;
  Map<const MatrixXd> qx(ax_.vectors.data(), nx, nx), qy(ay_.vectors.data(), ny, ny), qz(az_.vectors.data(), nz, nz);
  std::copy(rhs.begin(), rhs.end(), out.begin());
  double* b = out.data();
  {
    Map<MatrixXd> m(b, nx, ny * nz);
    m = (qx.transpose() * m).eval();
  }
  for (int k = 0; k < nz; ++k) {
    Map<MatrixXd> m(b + static_cast<std::ptrdiff_t>(k) * nx * ny, nx, ny);
    m = (m * qy).eval();
  }
  {
    Map<MatrixXd> m(b, nx * ny, nz);
    m = (m * qz).eval();
  }
  for (std::size_t n = 0; n < inverse_diagonal_.size(); ++n) b[n] *= inverse_diagonal_[n];
  {
    Map<MatrixXd> m(b, nx * ny, nz);
    m = (m * qz.transpose()).eval();
  }
  for (int k = 0; k < nz; ++k) {
    Map<MatrixXd> m(b + static_cast<std::ptrdiff_t>(k) * nx * ny, nx, ny);
    m = (m * qy.transpose()).eval();
  }
  {
    Map<MatrixXd> m(b, nx, ny * nz);
    m = (qx * m).eval();
  }
}

ImplicitDiffusion::ImplicitDiffusion(const DiffusionOperator& op, double dt, const PhysParams& p, const Grid& g,
                                     double tolerance, int max_iter, DiffusionPreconditioner pc)
    : op_(op), dt_(dt), params_(p), grid_(g), tolerance_(tolerance), max_iter_(max_iter), pc_(pc) {
  gxl_ = ghost_factor(op.kind, Face::x_lo, p, g);
  gxh_ = ghost_factor(op.kind, Face::x_hi, p, g);
  gyl_ = ghost_factor(op.kind, Face::y_lo, p, g);
  gyh_ = ghost_factor(op.kind, Face::y_hi, p, g);
  gzl_ = ghost_factor(op.kind, Face::z_lo, p, g);
  gzh_ = ghost_factor(op.kind, Face::z_hi, p, g);
  if (pc == DiffusionPreconditioner::separable) separable_ = std::make_unique<SeparableHelmholtz>(op, dt, p, g);
  if (pc == DiffusionPreconditioner::jacobi) {
    const double sx = dt * op.ch / (g.dx * g.dx), sy = dt * op.ch / (g.dy * g.dy), sz = dt * op.cv / (g.dz * g.dz);
    diagonal_.resize(static_cast<std::size_t>(g.cells()));
    std::size_t n = 0;
    for (int k = 0; k < g.nz; ++k)
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
          double d = 1.0 + 2.0 * (sx + sy + sz);
          if (i == 0) d -= sx * gxl_;
          if (i == g.nx - 1) d -= sx * gxh_;
          if (j == 0) d -= sy * gyl_;
          if (j == g.ny - 1) d -= sy * gyh_;
          if (k == 0) d -= sz * gzl_;
          if (k == g.nz - 1) d -= sz * gzh_;
          diagonal_[n++] = d;
        }
  }
}

void ImplicitDiffusion::apply(std::span<const double> x, std::span<double> y) const {
  const int nx = grid_.nx, ny = grid_.ny, nz = grid_.nz;
  const double sx = dt_ * op_.ch / (grid_.dx * grid_.dx), sy = dt_ * op_.ch / (grid_.dy * grid_.dy),
               sz = dt_ * op_.cv / (grid_.dz * grid_.dz);
  const std::ptrdiff_t px = 1, py = nx, pz = static_cast<std::ptrdiff_t>(nx) * ny;
  parallel_for(0, nz, [&](int k) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const std::ptrdiff_t n = i * px + j * py + k * pz;
        const double c = x[n];
        const double xl = i > 0 ? x[n - px] : gxl_ * c, xh = i + 1 < nx ? x[n + px] : gxh_ * c;
        const double yl = j > 0 ? x[n - py] : gyl_ * c, yh = j + 1 < ny ? x[n + py] : gyh_ * c;
        const double zl = k > 0 ? x[n - pz] : gzl_ * c, zh = k + 1 < nz ? x[n + pz] : gzh_ * c;
        y[n] = c - sx * (xl - 2.0 * c + xh) - sy * (yl - 2.0 * c + yh) - sz * (zl - 2.0 * c + zh);
      }
  });
}

CgResult ImplicitDiffusion::solve(Field3D& field) const {
  const std::vector<double> b = field.interior();
  std::vector<double> x(b.size());
  LinearMap precond;
  switch (pc_) {
    case DiffusionPreconditioner::separable:
      precond = [this](std::span<const double> r, std::span<double> z) { separable_->solve(r, z); };
      separable_->solve(b, x);
      break;
    case DiffusionPreconditioner::jacobi:
      precond = [this](std::span<const double> r, std::span<double> z) {
        for (std::size_t n = 0; n < r.size(); ++n) z[n] = r[n] / diagonal_[n];
      };
      x = b;
      break;
    case DiffusionPreconditioner::none:
      precond = [](std::span<const double> r, std::span<double> z) { std::copy(r.begin(), r.end(), z.begin()); };
      x = b;
      break;
  }
  const LinearMap op = [this](std::span<const double> in, std::span<double> out) { apply(in, out); };
  const CgResult res = pcg(op, precond, b, x, tolerance_, max_iter_);
  if (!res.converged)
    throw NumericalError("implicit diffusion did not converge: relative residual " +
                         std::to_string(res.relative_residual) + " after " + std::to_string(res.iterations) +
                         " iterations");
  field.set_interior(x);
  fill_ghosts(field, op_.kind, params_, grid_);
  return res;
}

}  // namespace peq
