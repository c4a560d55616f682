#pragma once

#include "peq/field.hpp"
#include "peq/grid.hpp"
#include "peq/params.hpp"

namespace peq {

// Boundary-condition set of a field. Every ghost value is a fixed multiple of
// the adjacent interior value (see ghost_factor), so the folded operators stay
// symmetric.
//
//   velocity:         Dirichlet 0 at x = +-lx and y = 0, l; Neumann in z.
//   temperature:      Neumann in x and y, Neumann at z = -h,
//                     Robin (1/rt2) T_z + alpha T = 0 at z = 0.
//   surface_pressure: Neumann on every face (2D).
enum class BcKind { velocity, temperature, surface_pressure };

enum class Face { x_lo, x_hi, y_lo, y_hi, z_lo, z_hi };

enum class FaceRule { dirichlet, neumann, robin };

FaceRule face_rule(BcKind kind, Face face);

// a = alpha * rt2 * dz / 2; ghost = interior * (1 - a) / (1 + a). This is the
// two-point realisation where the face value is the mean of ghost and interior.
double robin_ghost_factor(const PhysParams& p, const Grid& g);

// ghost = factor * interior for the given face.
double ghost_factor(BcKind kind, Face face, const PhysParams& p, const Grid& g);

void fill_ghosts(Field3D& field, BcKind kind, const PhysParams& p, const Grid& g);
void fill_ghosts(Field2D& field, BcKind kind, const Grid& g);

}  // namespace peq
