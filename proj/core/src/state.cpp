#include "peq/state.hpp"

namespace peq {

State State::zeros(const Grid& g) {
  State s;
  s.v1 = Field3D(g.nx, g.ny, g.nz);
  s.v2 = Field3D(g.nx, g.ny, g.nz);
  s.T = Field3D(g.nx, g.ny, g.nz);
  s.w = Field3D(g.nx, g.ny, g.nz);
  s.p_s = Field2D(g.nx, g.ny);
  s.Q = Field3D(g.nx, g.ny, g.nz);
  return s;
}

Tendency Tendency::zeros(const Grid& g) {
  return {Field3D(g.nx, g.ny, g.nz), Field3D(g.nx, g.ny, g.nz), Field3D(g.nx, g.ny, g.nz)};
}

}  // namespace peq
