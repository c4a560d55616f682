#include "peq/stencil.hpp"

#include "peq/parallel.hpp"

namespace peq {
namespace {

template <class Kernel>
Field3D map_interior(const Field3D& f, Kernel&& kernel) {
  Field3D out(f.nx(), f.ny(), f.nz());
  const int nx = f.nx(), ny = f.ny();
  parallel_for(0, f.nz(), [&](int k) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) out(i, j, k) = kernel(i, j, k);
  });
  return out;
}

template <class Kernel>
Field2D map_interior(const Field2D& f, Kernel&& kernel) {
  Field2D out(f.nx(), f.ny());
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) out(i, j) = kernel(i, j);
  return out;
}

}  // namespace

Field3D ddx(const Field3D& f, const Grid& g) {
  const double c = 0.5 / g.dx;
  return map_interior(f, [&](int i, int j, int k) { return c * (f(i + 1, j, k) - f(i - 1, j, k)); });
}

Field3D ddy(const Field3D& f, const Grid& g) {
  const double c = 0.5 / g.dy;
  return map_interior(f, [&](int i, int j, int k) { return c * (f(i, j + 1, k) - f(i, j - 1, k)); });
}

Field3D d_dz(const Field3D& f, const Grid& g) {
  const double c = 0.5 / g.dz;
  return map_interior(f, [&](int i, int j, int k) { return c * (f(i, j, k + 1) - f(i, j, k - 1)); });
}

Field3D d2_dz2(const Field3D& f, const Grid& g) {
  const double c = 1.0 / (g.dz * g.dz);
  return map_interior(f, [&](int i, int j, int k) {
    return c * (f(i, j, k + 1) - 2.0 * f(i, j, k) + f(i, j, k - 1));
  });
}

Field3D lap_h(const Field3D& f, const Grid& g) {
  const double cx = 1.0 / (g.dx * g.dx), cy = 1.0 / (g.dy * g.dy);
  return map_interior(f, [&](int i, int j, int k) {
    const double c = f(i, j, k);
    return cx * (f(i + 1, j, k) - 2.0 * c + f(i - 1, j, k)) + cy * (f(i, j + 1, k) - 2.0 * c + f(i, j - 1, k));
  });
}

std::pair<Field3D, Field3D> grad_h(const Field3D& f, const Grid& g) { return {ddx(f, g), ddy(f, g)}; }

Field3D div_h(const Field3D& u1, const Field3D& u2, const Grid& g) {
  const double cx = 0.5 / g.dx, cy = 0.5 / g.dy;
  return map_interior(u1, [&](int i, int j, int k) {
    return cx * (u1(i + 1, j, k) - u1(i - 1, j, k)) + cy * (u2(i, j + 1, k) - u2(i, j - 1, k));
  });
}

Field2D ddx(const Field2D& f, const Grid& g) {
  const double c = 0.5 / g.dx;
  return map_interior(f, [&](int i, int j) { return c * (f(i + 1, j) - f(i - 1, j)); });
}

Field2D ddy(const Field2D& f, const Grid& g) {
  const double c = 0.5 / g.dy;
  return map_interior(f, [&](int i, int j) { return c * (f(i, j + 1) - f(i, j - 1)); });
}

Field2D lap_h(const Field2D& f, const Grid& g) {
  const double cx = 1.0 / (g.dx * g.dx), cy = 1.0 / (g.dy * g.dy);
  return map_interior(f, [&](int i, int j) {
    const double c = f(i, j);
    return cx * (f(i + 1, j) - 2.0 * c + f(i - 1, j)) + cy * (f(i, j + 1) - 2.0 * c + f(i, j - 1));
  });
}

std::pair<Field2D, Field2D> grad_h(const Field2D& f, const Grid& g) { return {ddx(f, g), ddy(f, g)}; }

Field2D div_h(const Field2D& u1, const Field2D& u2, const Grid& g) {
  const double cx = 0.5 / g.dx, cy = 0.5 / g.dy;
  return map_interior(u1, [&](int i, int j) {
    return cx * (u1(i + 1, j) - u1(i - 1, j)) + cy * (u2(i, j + 1) - u2(i, j - 1));
  });
}

Field2D depth_mean(const Field3D& v, const Grid& g) {
  Field2D mean(v.nx(), v.ny());
  const double w = 1.0 / v.nz();
  (void)g;
  parallel_for(0, v.ny(), [&](int j) {
    for (int i = 0; i < v.nx(); ++i) {
      double s = 0.0;
      for (int k = 0; k < v.nz(); ++k) s += v(i, j, k);
      mean(i, j) = w * s;
    }
  });
  return mean;
}

VerticalSplit vertical_average(const Field3D& v, const Grid& g) {
  VerticalSplit out{depth_mean(v, g), Field3D(v.nx(), v.ny(), v.nz())};
  parallel_for(0, v.nz(), [&](int k) {
    for (int j = 0; j < v.ny(); ++j)
      for (int i = 0; i < v.nx(); ++i) out.fluctuation(i, j, k) = v(i, j, k) - out.mean(i, j);
  });
  return out;
}

}  // namespace peq
