#pragma once

#include "peq/field.hpp"
#include "peq/grid.hpp"

namespace peq {

// Prognostic fields (v1, v2, T) plus diagnosed w, the surface pressure and
// the time-independent heat source.
struct State {
  Field3D v1, v2, T;
  Field3D w;    // cell-centred diagnosed vertical velocity
  Field2D p_s;
  Field3D Q;
  double t = 0.0;

  static State zeros(const Grid& g);
};

struct Tendency {
  Field3D dv1, dv2, dT;

  static Tendency zeros(const Grid& g);
};

}  // namespace peq
