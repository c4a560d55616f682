#include "peq/boundary.hpp"

#include <stdexcept>

#include "peq/parallel.hpp"

namespace peq {

FaceRule face_rule(BcKind kind, Face face) {
  switch (kind) {
    case BcKind::velocity:
      return (face == Face::z_lo || face == Face::z_hi) ? FaceRule::neumann : FaceRule::dirichlet;
    case BcKind::temperature:
      return face == Face::z_hi ? FaceRule::robin : FaceRule::neumann;
    case BcKind::surface_pressure:
      return FaceRule::neumann;
  }
  throw std::logic_error("face_rule: unknown boundary kind");
}

double robin_ghost_factor(const PhysParams& p, const Grid& g) {
  const double a = 0.5 * p.alpha * p.rt2 * g.dz;
  return (1.0 - a) / (1.0 + a);
}

double ghost_factor(BcKind kind, Face face, const PhysParams& p, const Grid& g) {
  switch (face_rule(kind, face)) {
    case FaceRule::dirichlet:
      return -1.0;
    case FaceRule::neumann:
      return 1.0;
    case FaceRule::robin:
      return robin_ghost_factor(p, g);
  }
  throw std::logic_error("ghost_factor: unknown face rule");
}

void fill_ghosts(Field3D& f, BcKind kind, const PhysParams& p, const Grid& g) {
  if (kind == BcKind::surface_pressure) throw std::invalid_argument("fill_ghosts: surface_pressure is a 2D kind");
  const int nx = f.nx(), ny = f.ny(), nz = f.nz();
  const double cxl = ghost_factor(kind, Face::x_lo, p, g), cxh = ghost_factor(kind, Face::x_hi, p, g);
  const double cyl = ghost_factor(kind, Face::y_lo, p, g), cyh = ghost_factor(kind, Face::y_hi, p, g);
  const double czl = ghost_factor(kind, Face::z_lo, p, g), czh = ghost_factor(kind, Face::z_hi, p, g);
  parallel_for(0, nz, [&](int k) {
    for (int j = 0; j < ny; ++j) {
      f(-1, j, k) = cxl * f(0, j, k);
      f(nx, j, k) = cxh * f(nx - 1, j, k);
    }
    for (int i = 0; i < nx; ++i) {
      f(i, -1, k) = cyl * f(i, 0, k);
      f(i, ny, k) = cyh * f(i, ny - 1, k);
    }
  });
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      f(i, j, -1) = czl * f(i, j, 0);
      f(i, j, nz) = czh * f(i, j, nz - 1);
    }
}

void fill_ghosts(Field2D& f, BcKind kind, const Grid& g) {
  if (kind == BcKind::temperature) throw std::invalid_argument("fill_ghosts: temperature is a 3D kind");
  PhysParams unused;
  const int nx = f.nx(), ny = f.ny();
  const double cxl = ghost_factor(kind, Face::x_lo, unused, g), cxh = ghost_factor(kind, Face::x_hi, unused, g);
  const double cyl = ghost_factor(kind, Face::y_lo, unused, g), cyh = ghost_factor(kind, Face::y_hi, unused, g);
  for (int j = 0; j < ny; ++j) {
    f(-1, j) = cxl * f(0, j);
    f(nx, j) = cxh * f(nx - 1, j);
  }
  for (int i = 0; i < nx; ++i) {
    f(i, -1) = cyl * f(i, 0);
    f(i, ny) = cyh * f(i, ny - 1);
  }
}

}  // namespace peq
