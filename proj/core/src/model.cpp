#include "peq/model.hpp"

#include <cmath>
#include <string>

#include "peq/boundary.hpp"
#include "peq/errors.hpp"
#include "peq/parallel.hpp"
#include "peq/stencil.hpp"

namespace peq {

double coriolis_f(double y, const PhysParams& p) { return p.f0 + p.beta * y; }

Field3D diagnose_w_faces(const Field3D& v1, const Field3D& v2, const Grid& g) {
  const int nx = g.nx, ny = g.ny, nz = g.nz;
  Field3D wf(nx, ny, nz);
  const double cx = 0.5 / g.dx, cy = 0.5 / g.dy;
  parallel_for(0, ny, [&](int j) {
    for (int i = 0; i < nx; ++i) {
      double w = 0.0;
      wf(i, j, -1) = 0.0;
      for (int k = 0; k < nz; ++k) {
        const double div = cx * (v1(i + 1, j, k) - v1(i - 1, j, k)) + cy * (v2(i, j + 1, k) - v2(i, j - 1, k));
        w -= g.dz * div;
        wf(i, j, k) = w;
      }
    }
  });
  return wf;
}

Field3D diagnose_w(const Field3D& v1, const Field3D& v2, const Grid& g) {
  const Field3D wf = diagnose_w_faces(v1, v2, g);
  Field3D w(g.nx, g.ny, g.nz);
  parallel_for(0, g.nz, [&](int k) {
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) w(i, j, k) = 0.5 * (wf(i, j, k - 1) + wf(i, j, k));
  });
  return w;
}

namespace {

// out(i,j,k) = int_{z_k}^0 f dz' for every column.
Field3D integrate_to_surface(const Field3D& f, const Grid& g) {
  const int nz = g.nz;
  Field3D out(g.nx, g.ny, nz);
  const double dz = g.dz;
  parallel_for(0, g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const double top = 0.5 * (3.0 * f(i, j, nz - 1) - f(i, j, nz - 2));
      double s = 0.25 * dz * (top + f(i, j, nz - 1));
      out(i, j, nz - 1) = s;
      for (int k = nz - 2; k >= 0; --k) {
        s += 0.5 * dz * (f(i, j, k) + f(i, j, k + 1));
        out(i, j, k) = s;
      }
    }
  });
  return out;
}

}  // namespace

Field3D reconstruct_pressure(const Field3D& T, const Field2D& p_s, const Grid& g) {
  Field3D p = integrate_to_surface(T, g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) p(i, j, k) += p_s(i, j);
  return p;
}

std::pair<Field3D, Field3D> baroclinic_pressure_gradient(const Field3D& T, const Grid& g) {
  auto [gx, gy] = grad_h(T, g);
  Field3D bx = integrate_to_surface(gx, g);
  Field3D by = integrate_to_surface(gy, g);
  for (auto* f : {&bx, &by})
    for (double& v : f->raw()) v = -v;
  return {std::move(bx), std::move(by)};
}

namespace {

Field3D diffusion(const Field3D& f, double ch, double cv, const Grid& g) {
  Field3D out(f.nx(), f.ny(), f.nz());
  const double cx = ch / (g.dx * g.dx), cy = ch / (g.dy * g.dy), cz = cv / (g.dz * g.dz);
  parallel_for(0, g.nz, [&](int k) {
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double c = f(i, j, k);
        out(i, j, k) = -(cx * (f(i + 1, j, k) - 2.0 * c + f(i - 1, j, k)) +
                         cy * (f(i, j + 1, k) - 2.0 * c + f(i, j - 1, k)) +
                         cz * (f(i, j, k + 1) - 2.0 * c + f(i, j, k - 1)));
      }
  });
  return out;
}

}  // namespace

Field3D apply_L1(const Field3D& v, const PhysParams& p, const Grid& g) {
  return diffusion(v, 1.0 / p.re1, 1.0 / p.re2, g);
}

Field3D apply_L2(const Field3D& T, const PhysParams& p, const Grid& g) {
  return diffusion(T, 1.0 / p.rt1, 1.0 / p.rt2, g);
}

Field3D advect(const Field3D& v1, const Field3D& v2, const Field3D& wf, const Field3D& phi, const Grid& g) {
  const int nx = g.nx, ny = g.ny, nz = g.nz;
  Field3D out(nx, ny, nz);
  const double cx = 0.5 / g.dx, cy = 0.5 / g.dy, cz = 0.5 / g.dz;
  parallel_for(0, nz, [&](int k) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        double a = 0.0;
        if (i + 1 < nx) a += cx * 0.5 * (v1(i, j, k) + v1(i + 1, j, k)) * phi(i + 1, j, k);
        if (i > 0) a -= cx * 0.5 * (v1(i - 1, j, k) + v1(i, j, k)) * phi(i - 1, j, k);
        if (j + 1 < ny) a += cy * 0.5 * (v2(i, j, k) + v2(i, j + 1, k)) * phi(i, j + 1, k);
        if (j > 0) a -= cy * 0.5 * (v2(i, j - 1, k) + v2(i, j, k)) * phi(i, j - 1, k);
        if (k + 1 < nz) a += cz * wf(i, j, k) * phi(i, j, k + 1);
        if (k > 0) a -= cz * wf(i, j, k - 1) * phi(i, j, k - 1);
        out(i, j, k) = a;
      }
  });
  return out;
}

Tendency explicit_tendency(const State& s, const PhysParams& p, const Grid& g) {
  const Field3D wf = diagnose_w_faces(s.v1, s.v2, g);
  Tendency t{advect(s.v1, s.v2, wf, s.v1, g), advect(s.v1, s.v2, wf, s.v2, g), advect(s.v1, s.v2, wf, s.T, g)};
  Field2D ps = s.p_s;
  fill_ghosts(ps, BcKind::surface_pressure, g);
  auto [px, py] = grad_h(ps, g);
  auto [bx, by] = baroclinic_pressure_gradient(s.T, g);
  const double inv_ro = 1.0 / p.ro;
  parallel_for(0, g.nz, [&](int k) {
    for (int j = 0; j < g.ny; ++j) {
      const double fr = coriolis_f(g.y(j), p) * inv_ro;
      for (int i = 0; i < g.nx; ++i) {
        const double a1 = t.dv1(i, j, k), a2 = t.dv2(i, j, k), aT = t.dT(i, j, k);
        t.dv1(i, j, k) = -a1 - px(i, j) + fr * s.v2(i, j, k) + bx(i, j, k);
        t.dv2(i, j, k) = -a2 - py(i, j) - fr * s.v1(i, j, k) + by(i, j, k);
        t.dT(i, j, k) = -aT + s.Q(i, j, k);
      }
    }
  });
  return t;
}

void require_finite(const Field3D& f, const char* name) {
  for (int k = 0; k < f.nz(); ++k)
    for (int j = 0; j < f.ny(); ++j)
      for (int i = 0; i < f.nx(); ++i)
        if (!std::isfinite(f(i, j, k)))
          throw NumericalError(std::string("non-finite ") + name + " at cell (" + std::to_string(i) + ", " +
                               std::to_string(j) + ", " + std::to_string(k) + ")");
}

Tendency momentum_rhs(const State& s, const PhysParams& p, const Grid& g) {
  Tendency t = explicit_tendency(s, p, g);
  t.dv1.axpy(-1.0, apply_L1(s.v1, p, g));
  t.dv2.axpy(-1.0, apply_L1(s.v2, p, g));
  t.dT.fill(0.0);
  require_finite(t.dv1, "dv1");
  require_finite(t.dv2, "dv2");
  return t;
}

Tendency temperature_rhs(const State& s, const PhysParams& p, const Grid& g) {
  Tendency t = explicit_tendency(s, p, g);
  t.dT.axpy(-1.0, apply_L2(s.T, p, g));
  t.dv1.fill(0.0);
  t.dv2.fill(0.0);
  require_finite(t.dT, "dT");
  return t;
}

}  // namespace peq
