#include "peq/grid.hpp"

#include <cmath>
#include <string>

#include "peq/errors.hpp"

namespace peq {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ConfigError(std::string(name) + " must be positive and finite (got " + std::to_string(value) + ")");
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw ConfigError(std::string(name) + " must be finite");
}

}  // namespace

void PhysParams::validate() const {
  require_positive(re1, "re1");
  require_positive(re2, "re2");
  require_positive(rt1, "rt1");
  require_positive(rt2, "rt2");
  require_positive(ro, "ro");
  require_finite(f0, "f0");
  require_finite(beta, "beta");
  require_positive(alpha, "alpha");
  require_positive(h, "h");
  require_positive(l, "l");
  require_positive(lx, "lx");
}

Grid make_grid(const PhysParams& p, int nx, int ny, int nz) {
  require_positive(p.lx, "lx");
  require_positive(p.l, "l");
  require_positive(p.h, "h");
  if (nx < kMinCells || ny < kMinCells || nz < kMinCells)
    throw ConfigError("grid counts must be >= " + std::to_string(kMinCells) + " (got " + std::to_string(nx) + "x" +
                      std::to_string(ny) + "x" + std::to_string(nz) + ")");
  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.nz = nz;
  g.lx = p.lx;
  g.l = p.l;
  g.h = p.h;
  g.dx = 2.0 * p.lx / nx;
  g.dy = p.l / ny;
  g.dz = p.h / nz;
  return g;
}

}  // namespace peq
