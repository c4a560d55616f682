#pragma once

#include "peq/params.hpp"

namespace peq {

// Uniform cell-centred mesh of (-lx, lx) x (0, l) x (-h, 0).
struct Grid {
  int nx = 0, ny = 0, nz = 0;
  double lx = 0, l = 0, h = 0;
  double dx = 0, dy = 0, dz = 0;

  double x(int i) const { return -lx + (i + 0.5) * dx; }
  double y(int j) const { return (j + 0.5) * dy; }
  double z(int k) const { return -h + (k + 0.5) * dz; }
  double cell_volume() const { return dx * dy * dz; }
  double cell_area() const { return dx * dy; }
  long cells() const { return static_cast<long>(nx) * ny * nz; }
};

inline constexpr int kMinCells = 4;

// Throws ConfigError for counts < 4 or non-positive extents.
Grid make_grid(const PhysParams& p, int nx, int ny, int nz);

}  // namespace peq
