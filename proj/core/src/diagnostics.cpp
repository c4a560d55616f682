#include "peq/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "peq/boundary.hpp"
#include "peq/model.hpp"
#include "peq/parallel.hpp"
#include "peq/projection.hpp"
#include "peq/stencil.hpp"

namespace peq {

const std::vector<std::string>& diag_columns() {
  static const std::vector<std::string> cols = {
      "t",        "l2_T",         "l2_v",  "l6_T",     "l6_vtilde", "l6_vz",  "l6_Tz",  "v1norm_v",
      "v2norm_T", "grad_vbar_2d", "l2_vz", "l2_gradv", "l2_L1v",    "l2_L2T", "l2_vt",  "l2_Tt",
      "constraint_residual"};
  return cols;
}

std::vector<std::optional<double>> diag_values(const DiagRecord& r) {
  return {r.t,        r.l2_T,         r.l2_v,  r.l6_T,     r.l6_vtilde, r.l6_vz,  r.l6_Tz, r.v1norm_v,
          r.v2norm_T, r.grad_vbar_2d, r.l2_vz, r.l2_gradv, r.l2_L1v,    r.l2_L2T, r.l2_vt, r.l2_Tt,
          r.constraint_residual};
}

double l2_squared(const Field3D& f, const Grid& g) {
  const double s = slab_sum(g.nz, [&](int k) {
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) acc += f(i, j, k) * f(i, j, k);
    return acc;
  });
  return s * g.cell_volume();
}

double l2_squared(const Field2D& f, const Grid& g) {
  const double s = slab_sum(g.ny, [&](int j) {
    double acc = 0.0;
    for (int i = 0; i < g.nx; ++i) acc += f(i, j) * f(i, j);
    return acc;
  });
  return s * g.cell_area();
}

double l6_norm(std::span<const Field3D* const> components, const Grid& g) {
  const double s = slab_sum(g.nz, [&](int k) {
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        double m2 = 0.0;
        for (const Field3D* c : components) m2 += (*c)(i, j, k) * (*c)(i, j, k);
        acc += m2 * m2 * m2;
      }
    return acc;
  });
  return std::pow(s * g.cell_volume(), 1.0 / 6.0);
}

double face_gradient_squared_x(const Field3D& f, const Grid& g) {
  const double s = slab_sum(g.nz, [&](int k) {
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i + 1 < g.nx; ++i) {
        const double d = f(i + 1, j, k) - f(i, j, k);
        acc += d * d;
      }
      const double lo = f(0, j, k) - f(-1, j, k), hi = f(g.nx, j, k) - f(g.nx - 1, j, k);
      acc += 0.5 * (lo * lo + hi * hi);
    }
    return acc;
  });
  return s * g.cell_volume() / (g.dx * g.dx);
}

double face_gradient_squared_y(const Field3D& f, const Grid& g) {
  const double s = slab_sum(g.nz, [&](int k) {
    double acc = 0.0;
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j + 1 < g.ny; ++j) {
        const double d = f(i, j + 1, k) - f(i, j, k);
        acc += d * d;
      }
      const double lo = f(i, 0, k) - f(i, -1, k), hi = f(i, g.ny, k) - f(i, g.ny - 1, k);
      acc += 0.5 * (lo * lo + hi * hi);
    }
    return acc;
  });
  return s * g.cell_volume() / (g.dy * g.dy);
}

double face_gradient_squared_z(const Field3D& f, const Grid& g) {
  const double s = slab_sum(g.nz, [&](int k) {
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double up = f(i, j, k + 1) - f(i, j, k);
        acc += (k + 1 < g.nz ? 1.0 : 0.5) * up * up;
        if (k == 0) {
          const double lo = f(i, j, 0) - f(i, j, -1);
          acc += 0.5 * lo * lo;
        }
      }
    return acc;
  });
  return s * g.cell_volume() / (g.dz * g.dz);
}

double surface_l2_squared(const Field3D& T, const Grid& g) {
  const int top = g.nz - 1;
  const double s = slab_sum(g.ny, [&](int j) {
    double acc = 0.0;
    for (int i = 0; i < g.nx; ++i) {
      const double face = 0.5 * (T(i, j, top) + T(i, j, top + 1));
      acc += face * face;
    }
    return acc;
  });
  return s * g.cell_area();
}

namespace {

double face_gradient_squared_2d(const Field2D& f, const Grid& g) {
  const double sx = slab_sum(g.ny, [&](int j) {
    double acc = 0.0;
    for (int i = 0; i + 1 < g.nx; ++i) acc += std::pow(f(i + 1, j) - f(i, j), 2);
    acc += 0.5 * (std::pow(f(0, j) - f(-1, j), 2) + std::pow(f(g.nx, j) - f(g.nx - 1, j), 2));
    return acc;
  });
  const double sy = slab_sum(g.nx, [&](int i) {
    double acc = 0.0;
    for (int j = 0; j + 1 < g.ny; ++j) acc += std::pow(f(i, j + 1) - f(i, j), 2);
    acc += 0.5 * (std::pow(f(i, 0) - f(i, -1), 2) + std::pow(f(i, g.ny) - f(i, g.ny - 1), 2));
    return acc;
  });
  return g.cell_area() * (sx / (g.dx * g.dx) + sy / (g.dy * g.dy));
}

double difference_l2_squared(const Field3D& a, const Field3D& b, double scale, const Grid& g) {
  const double s = slab_sum(g.nz, [&](int k) {
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double d = (a(i, j, k) - b(i, j, k)) * scale;
        acc += d * d;
      }
    return acc;
  });
  return s * g.cell_volume();
}

}  // namespace

DiagRecord compute_record(const State& s, const State* prev, double dt, const PhysParams& p, const Grid& g) {
  DiagRecord r;
  r.t = s.t;
  r.l2_T = l2_squared(s.T, g);
  r.l2_v = l2_squared(s.v1, g) + l2_squared(s.v2, g);
  {
    const Field3D* c[] = {&s.T};
    r.l6_T = l6_norm(c, g);
  }
  const VerticalSplit s1 = vertical_average(s.v1, g), s2 = vertical_average(s.v2, g);
  {
    const Field3D* c[] = {&s1.fluctuation, &s2.fluctuation};
    r.l6_vtilde = l6_norm(c, g);
  }
  const Field3D v1z = d_dz(s.v1, g), v2z = d_dz(s.v2, g), Tz = d_dz(s.T, g);
  {
    const Field3D* c[] = {&v1z, &v2z};
    r.l6_vz = l6_norm(c, g);
    const Field3D* t[] = {&Tz};
    r.l6_Tz = l6_norm(t, g);
  }
  r.l2_gradv = face_gradient_squared_x(s.v1, g) + face_gradient_squared_y(s.v1, g) +
               face_gradient_squared_x(s.v2, g) + face_gradient_squared_y(s.v2, g);
  r.l2_vz = face_gradient_squared_z(s.v1, g) + face_gradient_squared_z(s.v2, g);
  r.v1norm_v = r.l2_gradv / p.re1 + r.l2_vz / p.re2;
  r.v2norm_T = (face_gradient_squared_x(s.T, g) + face_gradient_squared_y(s.T, g)) / p.rt1 +
               face_gradient_squared_z(s.T, g) / p.rt2 + p.alpha * surface_l2_squared(s.T, g);
  Field2D m1 = s1.mean, m2 = s2.mean;
  fill_ghosts(m1, BcKind::velocity, g);
  fill_ghosts(m2, BcKind::velocity, g);
  r.grad_vbar_2d = face_gradient_squared_2d(m1, g) + face_gradient_squared_2d(m2, g);
  r.l2_L1v = l2_squared(apply_L1(s.v1, p, g), g) + l2_squared(apply_L1(s.v2, p, g), g);
  r.l2_L2T = l2_squared(apply_L2(s.T, p, g), g);
  if (prev != nullptr && dt > 0.0) {
    const double inv = 1.0 / dt;
    r.l2_vt = difference_l2_squared(s.v1, prev->v1, inv, g) + difference_l2_squared(s.v2, prev->v2, inv, g);
    r.l2_Tt = difference_l2_squared(s.T, prev->T, inv, g);
  }
  r.constraint_residual = constraint_residual(s.v1, s.v2, g);
  return r;
}

double kappa(const PhysParams& p) { return 2.0 * p.rt2 * p.h * p.h + 2.0 * p.h / p.alpha; }

double gronwall_T_envelope(double t, double l2_T0, double l2_Q, const PhysParams& p) {
  const double k = kappa(p);
  return l2_T0 * std::exp(-t / k) + k * k * l2_Q;
}

double check_poincare_T(const DiagRecord& r, const PhysParams& p) {
  if (r.l2_T == 0.0) return 0.0;
  if (r.v2norm_T == 0.0) return std::numeric_limits<double>::infinity();
  return r.l2_T / (kappa(p) * r.v2norm_T);
}

double check_poincare_v(const DiagRecord& r, const PhysParams& p) {
  if (r.l2_v == 0.0) return 0.0;
  if (r.l2_gradv == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(r.l2_v) / (2.0 * p.l * std::sqrt(r.l2_gradv));
}

std::optional<double> absorbing_entry_time(std::span<const DiagRecord> series, double radius2) {
  if (series.empty()) return std::nullopt;
  std::size_t first_inside = 0;
  for (std::size_t n = 0; n < series.size(); ++n)
    if (series[n].v1norm_v + series[n].v2norm_T > radius2) first_inside = n + 1;
  if (first_inside >= series.size()) return std::nullopt;
  return series[first_inside].t;
}

double empirical_split_constant(const State& s, const PhysParams& p, const Grid& g) {
  (void)p;
  const Field3D* v[] = {&s.v1, &s.v2};
  const double l6_v = l6_norm(v, g);
  const VerticalSplit s1 = vertical_average(s.v1, g), s2 = vertical_average(s.v2, g);
  const Field3D* vt[] = {&s1.fluctuation, &s2.fluctuation};
  const double l6_vt = l6_norm(vt, g);
  Field2D m1 = s1.mean, m2 = s2.mean;
  fill_ghosts(m1, BcKind::velocity, g);
  fill_ghosts(m2, BcKind::velocity, g);
  const double grad_bar = std::sqrt(face_gradient_squared_2d(m1, g) + face_gradient_squared_2d(m2, g));
  const double l2_v = std::sqrt(l2_squared(s.v1, g) + l2_squared(s.v2, g));
  const double rhs = std::pow(g.h, -1.0 / 3.0) * l2_v + std::pow(g.h, 1.0 / 6.0) * grad_bar;
  if (rhs == 0.0) return 0.0;
  return std::max(0.0, (l6_v - l6_vt) / rhs);
}

DiagnosticsSink::DiagnosticsSink(const PhysParams& p, const Grid& g, CheckConfig checks)
    : params_(p), grid_(g), checks_(checks) {}

void DiagnosticsSink::violation(const std::string& what) {
  if (violations_.size() < 64) violations_.push_back(what);
}

void DiagnosticsSink::on_output(const State& s, const State* prev, double dt) {
  if (l2_Q_ < 0.0) {
    l2_Q_ = l2_squared(s.Q, grid_);
    q_zero_ = l2_Q_ == 0.0;
    t0_ = s.t;
    l2_T0_ = l2_squared(s.T, grid_);
  }
  DiagRecord r = compute_record(s, prev, dt, params_, grid_);
  const double pt = check_poincare_T(r, params_), pv = check_poincare_v(r, params_);
  max_pt_ = std::max(max_pt_, pt);
  max_pv_ = std::max(max_pv_, pv);
  std::ostringstream at;
  at.precision(17);
  at << " at t = " << r.t;
  if (!(pt <= 1.0 + checks_.poincare_tol)) violation("temperature Poincare ratio " + std::to_string(pt) + at.str());
  if (!(pv <= 1.0 + checks_.poincare_tol)) violation("velocity Poincare ratio " + std::to_string(pv) + at.str());
  const double env = gronwall_T_envelope(r.t - t0_, l2_T0_, l2_Q_, params_);
  const double env_ratio = env > 0.0 ? r.l2_T / env : (r.l2_T > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  max_env_ = std::max(max_env_, env_ratio);
  if (!(env_ratio <= 1.0 + checks_.envelope_tol))
    violation("temperature exceeds Gronwall envelope by ratio " + std::to_string(env_ratio) + at.str());
  if (!(r.constraint_residual <= checks_.div_tol))
    violation("barotropic constraint residual " + std::to_string(r.constraint_residual) + at.str());
  max_split_ = std::max(max_split_, empirical_split_constant(s, params_, grid_));
  records_.push_back(r);
}

void DiagnosticsSink::on_step(const State& before, const State& after) {
  if (!checks_.energy || !q_zero_) return;
  const double e0 = l2_squared(before.v1, grid_) + l2_squared(before.v2, grid_) + l2_squared(before.T, grid_);
  const double e1 = l2_squared(after.v1, grid_) + l2_squared(after.v2, grid_) + l2_squared(after.T, grid_);
  if (e0 > 0.0) max_energy_increase_ = std::max(max_energy_increase_, (e1 - e0) / e0);
  if (e1 > e0 * (1.0 + checks_.energy_slack)) {
    std::ostringstream os;
    os.precision(17);
    os << "energy increased from " << e0 << " to " << e1 << " at t = " << after.t;
    violation(os.str());
  }
}

}  // namespace peq
