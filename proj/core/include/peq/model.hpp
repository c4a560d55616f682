#pragma once

#include <utility>

#include "peq/field.hpp"
#include "peq/grid.hpp"
#include "peq/params.hpp"
#include "peq/state.hpp"

namespace peq {

double coriolis_f(double y, const PhysParams& p);

// w on the z-faces: wf(i,j,k) is w at the top face of cell k, wf(i,j,-1) at
// the bottom (always 0). Built by the cumulative midpoint sum of div_h v.
Field3D diagnose_w_faces(const Field3D& v1, const Field3D& v2, const Grid& g);

// Cell-centred w: mean of the two bounding faces, so the profile is the
// trapezoidal cumulative integral of -div_h v from z = -h.
Field3D diagnose_w(const Field3D& v1, const Field3D& v2, const Grid& g);

// p = p_s - int_0^z T dz', trapezoidal from the surface. The surface value is
// linearly extrapolated from the two top cell centres.
Field3D reconstruct_pressure(const Field3D& T, const Field2D& p_s, const Grid& g);

// int_0^z grad_h T dz', same quadrature as reconstruct_pressure.
std::pair<Field3D, Field3D> baroclinic_pressure_gradient(const Field3D& T, const Grid& g);

Field3D apply_L1(const Field3D& v, const PhysParams& p, const Grid& g);
Field3D apply_L2(const Field3D& T, const PhysParams& p, const Grid& g);

// Skew-symmetric transport 1/2[(u.grad)phi + div(u phi)] with face
// velocities. Boundary-face normal velocities are taken as zero (walls, and
// the rigid lid w = 0 at z = 0), which makes <advect(phi), phi> = 0 exactly.
Field3D advect(const Field3D& v1, const Field3D& v2, const Field3D& w_faces, const Field3D& phi, const Grid& g);

// Tendencies of every term except the diffusion operators.
Tendency explicit_tendency(const State& s, const PhysParams& p, const Grid& g);

// Full right-hand sides, diffusion included. Non-finite output throws
// NumericalError naming the field and cell.
Tendency momentum_rhs(const State& s, const PhysParams& p, const Grid& g);
Tendency temperature_rhs(const State& s, const PhysParams& p, const Grid& g);

// Throws NumericalError with the location of the first non-finite entry.
void require_finite(const Field3D& f, const char* name);

}  // namespace peq
