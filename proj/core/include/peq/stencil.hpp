#pragma once

#include <utility>

#include "peq/field.hpp"
#include "peq/grid.hpp"

namespace peq {

// Second-order centred stencils. Inputs must carry valid ghosts; outputs are
// interior-only (ghost layer left at zero).

Field3D ddx(const Field3D& f, const Grid& g);
Field3D ddy(const Field3D& f, const Grid& g);
Field3D d_dz(const Field3D& f, const Grid& g);
Field3D d2_dz2(const Field3D& f, const Grid& g);
Field3D lap_h(const Field3D& f, const Grid& g);
std::pair<Field3D, Field3D> grad_h(const Field3D& f, const Grid& g);
Field3D div_h(const Field3D& u1, const Field3D& u2, const Grid& g);

Field2D ddx(const Field2D& f, const Grid& g);
Field2D ddy(const Field2D& f, const Grid& g);
Field2D lap_h(const Field2D& f, const Grid& g);
std::pair<Field2D, Field2D> grad_h(const Field2D& f, const Grid& g);
Field2D div_h(const Field2D& u1, const Field2D& u2, const Grid& g);

struct VerticalSplit {
  Field2D mean;        // depth average (1/h) int v dz, midpoint rule on cell centres
  Field3D fluctuation; // v - mean
};

VerticalSplit vertical_average(const Field3D& v, const Grid& g);

// Depth average only; ghosts of the result are left at zero.
Field2D depth_mean(const Field3D& v, const Grid& g);

}  // namespace peq
