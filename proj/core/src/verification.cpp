#include "peq/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "peq/diagnostics.hpp"
#include "peq/integrator.hpp"
#include "peq/model.hpp"

namespace peq {

namespace {

constexpr double kPi = std::numbers::pi;

// Values and first derivatives of the spec at one point.
struct Jet {
  double v1, v1x, v1y, v1z;
  double v2, v2x, v2y, v2z;
  double T, Tx, Ty, Tz, Tzz;
  double w;
  double ps, psx, psy;
  double bx, by;  // int_0^z grad_h T dz'
  double lap_v1, lap_v2, lap_T;  // full 3D Laplacians split below
  double v1zz, v2zz;
};

double robin_curvature(const PhysParams& p) { return -p.alpha / (2.0 * p.h / p.rt2 + p.alpha * p.h * p.h); }

Jet jet(const MmsSpec& m, const PhysParams& p, double x, double y, double z) {
  const double a = kPi / (2.0 * p.lx), b = kPi / p.l, c = kPi / p.h;
  const double X = x + p.lx, zeta = z + p.h, cc = robin_curvature(p);
  const double sx1 = std::sin(a * X), cx1 = std::cos(a * X);
  const double sx2 = std::sin(2.0 * a * X), cx2 = std::cos(2.0 * a * X);
  const double sy = std::sin(b * y), cy = std::cos(b * y);
  const double Z = std::cos(c * zeta), Zs = std::sin(c * zeta);
  const double P = 1.0 + cc * zeta * zeta, Pz = 2.0 * cc * zeta;
  const double Ip = (zeta - p.h) + cc * (zeta * zeta * zeta - p.h * p.h * p.h) / 3.0;
  Jet j{};
  j.v1 = m.a1 * sx1 * sy * Z;
  j.v1x = m.a1 * a * cx1 * sy * Z;
  j.v1y = m.a1 * b * sx1 * cy * Z;
  j.v1z = -m.a1 * c * sx1 * sy * Zs;
  j.v1zz = -c * c * j.v1;
  j.v2 = m.a2 * sx2 * sy * Z;
  j.v2x = 2.0 * a * m.a2 * cx2 * sy * Z;
  j.v2y = m.a2 * b * sx2 * cy * Z;
  j.v2z = -m.a2 * c * sx2 * sy * Zs;
  j.v2zz = -c * c * j.v2;
  j.lap_v1 = -(a * a + b * b) * j.v1;
  j.lap_v2 = -(4.0 * a * a + b * b) * j.v2;
  const double D = m.a1 * a * cx1 * sy + m.a2 * b * sx2 * cy;
  j.w = -D * Zs / c;
  j.T = m.aT * cx1 * cy * P;
  j.Tx = -m.aT * a * sx1 * cy * P;
  j.Ty = -m.aT * b * cx1 * sy * P;
  j.Tz = m.aT * cx1 * cy * Pz;
  j.Tzz = m.aT * cx1 * cy * 2.0 * cc;
  j.lap_T = -(a * a + b * b) * j.T;
  j.ps = m.ap * cx1 * cy;
  j.psx = -m.ap * a * sx1 * cy;
  j.psy = -m.ap * b * cx1 * sy;
  j.bx = -m.aT * a * sx1 * cy * Ip;
  j.by = -m.aT * b * cx1 * sy * Ip;
  return j;
}

}  // namespace

MmsPoint mms_exact(const MmsSpec& m, const PhysParams& p, double x, double y, double z) {
  const Jet j = jet(m, p, x, y, z);
  return {j.v1, j.v2, j.T, j.w, j.ps};
}

double mms_boundary_defect(const MmsSpec& m, const PhysParams& p, const Grid& g) {
  double d = 0.0;
  auto upd = [&](double v) { d = std::max(d, std::abs(v)); };
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (double x : {-p.lx, p.lx}) {
        const Jet q = jet(m, p, x, g.y(j), g.z(k));
        upd(q.v1);
        upd(q.v2);
        upd(q.Tx);
      }
  for (int k = 0; k < g.nz; ++k)
    for (int i = 0; i < g.nx; ++i)
      for (double y : {0.0, p.l}) {
        const Jet q = jet(m, p, g.x(i), y, g.z(k));
        upd(q.v1);
        upd(q.v2);
        upd(q.Ty);
      }
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Jet lo = jet(m, p, g.x(i), g.y(j), -p.h), hi = jet(m, p, g.x(i), g.y(j), 0.0);
      upd(lo.v1z);
      upd(lo.v2z);
      upd(hi.v1z);
      upd(hi.v2z);
      upd(lo.Tz);
      upd(hi.Tz / p.rt2 + p.alpha * hi.T);
      upd(hi.w);
    }
  return d;
}

MmsForcing mms_forcing(const MmsSpec& m, const PhysParams& p, const Grid& g) {
  const double scale = std::max({1.0, std::abs(m.a1), std::abs(m.a2), std::abs(m.aT), std::abs(m.ap)});
  if (mms_boundary_defect(m, p, g) > 1e-10 * scale)
    throw std::invalid_argument("manufactured solution violates the boundary conditions");
  MmsForcing f{Field3D(g.nx, g.ny, g.nz), Field3D(g.nx, g.ny, g.nz), Field3D(g.nx, g.ny, g.nz)};
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j) {
      const double fr = coriolis_f(g.y(j), p) / p.ro;
      for (int i = 0; i < g.nx; ++i) {
        const Jet q = jet(m, p, g.x(i), g.y(j), g.z(k));
        const double L1v1 = -q.lap_v1 / p.re1 - q.v1zz / p.re2;
        const double L1v2 = -q.lap_v2 / p.re1 - q.v2zz / p.re2;
        const double L2T = -q.lap_T / p.rt1 - q.Tzz / p.rt2;
        f.f1(i, j, k) = q.v1 * q.v1x + q.v2 * q.v1y + q.w * q.v1z + q.psx - fr * q.v2 - q.bx + L1v1;
        f.f2(i, j, k) = q.v1 * q.v2x + q.v2 * q.v2y + q.w * q.v2z + q.psy + fr * q.v1 - q.by + L1v2;
        f.Q(i, j, k) = q.v1 * q.Tx + q.v2 * q.Ty + q.w * q.Tz + L2T;
      }
    }
  return f;
}

State mms_state(const MmsSpec& m, const PhysParams& p, const Grid& g) {
  State s = State::zeros(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const MmsPoint q = mms_exact(m, p, g.x(i), g.y(j), g.z(k));
        s.v1(i, j, k) = q.v1;
        s.v2(i, j, k) = q.v2;
        s.T(i, j, k) = q.T;
        if (k == 0) s.p_s(i, j) = q.p_s;
      }
  fill_ghosts(s.v1, BcKind::velocity, p, g);
  fill_ghosts(s.v2, BcKind::velocity, p, g);
  fill_ghosts(s.T, BcKind::temperature, p, g);
  fill_ghosts(s.p_s, BcKind::surface_pressure, g);
  s.w = diagnose_w(s.v1, s.v2, g);
  return s;
}

OrderFit convergence_order(const std::vector<std::pair<double, double>>& de) {
  if (de.size() < 2) throw std::invalid_argument("convergence_order needs at least two levels");
  std::vector<std::pair<double, double>> s = de;
  std::sort(s.begin(), s.end());
  OrderFit fit;
  for (std::size_t n = 1; n < s.size(); ++n)
    if (s[n].second < s[n - 1].second) fit.monotone = false;
  double mx = 0, my = 0;
  for (auto [d, e] : s) {
    if (!(d > 0.0) || !(e > 0.0)) throw std::invalid_argument("convergence_order needs positive deltas and errors");
    mx += std::log(d);
    my += std::log(e);
  }
  mx /= static_cast<double>(s.size());
  my /= static_cast<double>(s.size());
  double sxy = 0, sxx = 0;
  for (auto [d, e] : s) {
    sxy += (std::log(d) - mx) * (std::log(e) - my);
    sxx += (std::log(d) - mx) * (std::log(d) - mx);
  }
  fit.order = sxx > 0.0 ? sxy / sxx : 0.0;
  return fit;
}

MmsReport mms_study(const MmsSpec& m, const PhysParams& p, const std::vector<int>& levels, double dt, int steps) {
  MmsReport rep;
  std::vector<std::pair<double, double>> ev, eT;
  for (int n : levels) {
    const Grid g = make_grid(p, n, n, n);
    StepConfig cfg;
    cfg.dt = dt;
    cfg.t_end = dt * steps;
    Stepper stepper(p, g, cfg);
    MmsForcing f = mms_forcing(m, p, g);
    stepper.set_body_force(std::move(f.f1), std::move(f.f2));
    State s = mms_state(m, p, g);
    s.Q = std::move(f.Q);
    stepper.prepare(s);
    for (int it = 0; it < steps; ++it) stepper.step(s);
    const State exact = mms_state(m, p, g);
    Field3D d1 = s.v1, d2 = s.v2, dT = s.T;
    d1.axpy(-1.0, exact.v1);
    d2.axpy(-1.0, exact.v2);
    dT.axpy(-1.0, exact.T);
    MmsLevel lev;
    lev.n = n;
    lev.delta = 1.0 / n;
    lev.error_v = std::sqrt(l2_squared(d1, g) + l2_squared(d2, g));
    lev.error_T = std::sqrt(l2_squared(dT, g));
    rep.levels.push_back(lev);
    ev.emplace_back(lev.delta, lev.error_v);
    eT.emplace_back(lev.delta, lev.error_T);
  }
  if (levels.size() >= 2) {
    rep.order_v = convergence_order(ev);
    rep.order_T = convergence_order(eT);
  }
  return rep;
}

std::vector<double> DenseMatrix::multiply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != cols) throw std::invalid_argument("DenseMatrix::multiply: size mismatch");
  std::vector<double> y(static_cast<std::size_t>(rows), 0.0);
  for (int r = 0; r < rows; ++r) {
    double s = 0.0;
    for (int c = 0; c < cols; ++c) s += (*this)(r, c) * x[static_cast<std::size_t>(c)];
    y[static_cast<std::size_t>(r)] = s;
  }
  return y;
}

namespace {

DenseMatrix zeros(int r, int c) {
  DenseMatrix m;
  m.rows = r;
  m.cols = c;
  m.a.assign(static_cast<std::size_t>(r) * c, 0.0);
  return m;
}

// sign * (ch lap_h + cv d_zz) with the ghost rules of bc folded into the diagonal.
DenseMatrix assemble_3d(const Grid& g, BcKind bc, const PhysParams& p, double ch, double cv, double sign) {
  const int nx = g.nx, ny = g.ny, nz = g.nz, n = nx * ny * nz;
  DenseMatrix m = zeros(n, n);
  auto id = [&](int i, int j, int k) { return i + nx * (j + ny * k); };
  const double c[3] = {ch / (g.dx * g.dx), ch / (g.dy * g.dy), cv / (g.dz * g.dz)};
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int r = id(i, j, k);
        // One entry per neighbour; an outside neighbour is a ghost, i.e. a
        // multiple of this cell.
        struct Nb {
          bool inside;
          int col;
          double coef;
          Face face;
        };
        const Nb nbs[6] = {
            {i > 0, i > 0 ? id(i - 1, j, k) : r, c[0], Face::x_lo},
            {i + 1 < nx, i + 1 < nx ? id(i + 1, j, k) : r, c[0], Face::x_hi},
            {j > 0, j > 0 ? id(i, j - 1, k) : r, c[1], Face::y_lo},
            {j + 1 < ny, j + 1 < ny ? id(i, j + 1, k) : r, c[1], Face::y_hi},
            {k > 0, k > 0 ? id(i, j, k - 1) : r, c[2], Face::z_lo},
            {k + 1 < nz, k + 1 < nz ? id(i, j, k + 1) : r, c[2], Face::z_hi},
        };
        for (const Nb& nb : nbs) {
          if (nb.coef == 0.0) continue;
          m(r, r) -= sign * nb.coef;
          if (nb.inside)
            m(r, nb.col) += sign * nb.coef;
          else
            m(r, r) += sign * nb.coef * ghost_factor(bc, nb.face, p, g);
        }
      }
  return m;
}

}  // namespace

DenseMatrix dense_operator_oracle(const Grid& g, OracleOp op, BcKind bc, const PhysParams& p, double dt) {
  const long unknowns = op == OracleOp::poisson ? static_cast<long>(g.nx) * g.ny : g.cells();
  if (unknowns > kOracleLimit)
    throw std::invalid_argument("dense_operator_oracle: " + std::to_string(unknowns) + " unknowns exceed the cap of " +
                                std::to_string(kOracleLimit));
  switch (op) {
    case OracleOp::lap_h:
      return assemble_3d(g, bc, p, 1.0, 0.0, 1.0);
    case OracleOp::L1:
      return assemble_3d(g, BcKind::velocity, p, 1.0 / p.re1, 1.0 / p.re2, -1.0);
    case OracleOp::L2:
      return assemble_3d(g, BcKind::temperature, p, 1.0 / p.rt1, 1.0 / p.rt2, -1.0);
    case OracleOp::helmholtz_L1:
    case OracleOp::helmholtz_L2: {
      DenseMatrix m = op == OracleOp::helmholtz_L1 ? assemble_3d(g, BcKind::velocity, p, 1.0 / p.re1, 1.0 / p.re2, -1.0)
                                                   : assemble_3d(g, BcKind::temperature, p, 1.0 / p.rt1, 1.0 / p.rt2, -1.0);
      for (double& v : m.a) v *= dt;
      for (int r = 0; r < m.rows; ++r) m(r, r) += 1.0;
      return m;
    }
    case OracleOp::poisson: {
      const int nx = g.nx, ny = g.ny, n = nx * ny;
      auto id = [&](int i, int j) { return i + nx * j; };
      // G: centred gradient, Neumann ghosts. Rows [0, n) hold d/dx, [n, 2n) d/dy.
      DenseMatrix G = zeros(2 * n, n);
      const double cx = 0.5 / g.dx, cy = 0.5 / g.dy;
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
          const int r = id(i, j);
          G(r, i + 1 < nx ? id(i + 1, j) : r) += cx;
          G(r, i > 0 ? id(i - 1, j) : r) -= cx;
          G(n + r, j + 1 < ny ? id(i, j + 1) : r) += cy;
          G(n + r, j > 0 ? id(i, j - 1) : r) -= cy;
        }
      // D: centred divergence, Dirichlet ghosts (ghost = -interior).
      DenseMatrix D = zeros(n, 2 * n);
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
          const int r = id(i, j);
          if (i + 1 < nx) D(r, id(i + 1, j)) += cx; else D(r, r) -= cx;
          if (i > 0) D(r, id(i - 1, j)) -= cx; else D(r, r) += cx;
          if (j + 1 < ny) D(r, n + id(i, j + 1)) += cy; else D(r, n + r) -= cy;
          if (j > 0) D(r, n + id(i, j - 1)) -= cy; else D(r, n + r) += cy;
        }
      DenseMatrix m = zeros(n, n);
      for (int r = 0; r < n; ++r)
        for (int q = 0; q < 2 * n; ++q) {
          const double d = D(r, q);
          if (d == 0.0) continue;
          for (int c = 0; c < n; ++c) m(r, c) -= d * G(q, c);
        }
      return m;
    }
  }
  throw std::logic_error("unknown oracle operator");
}

}  // namespace peq
