#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "peq/field.hpp"
#include "peq/grid.hpp"
#include "peq/integrator.hpp"
#include "peq/params.hpp"
#include "peq/state.hpp"

namespace peq {

// Monitored norms of one snapshot. Squared quantities are named l2_*; L6
// norms are not squared. Gradient norms are evaluated on cell faces with
// trapezoid weights (half weight on boundary faces), which makes
// v1norm_v = <v, L1 v> and v2norm_T = <T, L2 T> exactly.
struct DiagRecord {
  double t = 0.0;
  double l2_T = 0.0;
  double l2_v = 0.0;
  double l6_T = 0.0;
  double l6_vtilde = 0.0;
  double l6_vz = 0.0;
  double l6_Tz = 0.0;
  double v1norm_v = 0.0;  // (1/re1)|grad v|^2 + (1/re2)|v_z|^2
  double v2norm_T = 0.0;  // (1/rt1)|grad T|^2 + (1/rt2)|T_z|^2 + alpha |T(z=0)|^2
  double grad_vbar_2d = 0.0;
  double l2_vz = 0.0;
  double l2_gradv = 0.0;
  double l2_L1v = 0.0;
  double l2_L2T = 0.0;
  std::optional<double> l2_vt;
  std::optional<double> l2_Tt;
  double constraint_residual = 0.0;
};

// Column names in CSV order (t first, then the fields above).
const std::vector<std::string>& diag_columns();
// Values in the same order; missing time derivatives are std::nullopt.
std::vector<std::optional<double>> diag_values(const DiagRecord& r);

// s and s_prev must carry valid ghosts.
DiagRecord compute_record(const State& s, const State* s_prev, double dt, const PhysParams& p, const Grid& g);

// Quadrature building blocks (all deterministic).
double l2_squared(const Field3D& f, const Grid& g);
double l2_squared(const Field2D& f, const Grid& g);
double l6_norm(std::span<const Field3D* const> components, const Grid& g);
double face_gradient_squared_x(const Field3D& f, const Grid& g);
double face_gradient_squared_y(const Field3D& f, const Grid& g);
double face_gradient_squared_z(const Field3D& f, const Grid& g);
double surface_l2_squared(const Field3D& T, const Grid& g);  // uses the top-face value (ghost + interior)/2

// 2 rt2 h^2 + 2 h / alpha.
double kappa(const PhysParams& p);

// |T0|^2 exp(-t/kappa) + kappa^2 |Q|^2.
double gronwall_T_envelope(double t, double l2_T0, double l2_Q, const PhysParams& p);

// l2_T / (kappa * v2norm_T); 0 when T = 0.
double check_poincare_T(const DiagRecord& r, const PhysParams& p);
// |v|_2 / (2 l |grad v|_2); 0 when v = 0, +inf for a nonzero v with zero gradient.
double check_poincare_v(const DiagRecord& r, const PhysParams& p);

// First time after which v1norm_v + v2norm_T stays <= radius2.
std::optional<double> absorbing_entry_time(std::span<const DiagRecord> series, double radius2);

// Smallest C with |v|_6 <= C (h^-1/3 |v|_2 + h^1/6 |grad vbar|_2) + |vtilde|_6
// for this snapshot (0 when the right-hand side vanishes). Logged, never asserted.
double empirical_split_constant(const State& s, const PhysParams& p, const Grid& g);

struct CheckConfig {
  double poincare_tol = 1e-2;
  double envelope_tol = 0.05;
  double div_tol = 1e-8;
  double energy_slack = 1e-8;
  bool energy = true;  // dissipation check, only applied when Q = 0
};

// Collects DiagRecords and evaluates the inequality checks on the fly.
class DiagnosticsSink : public RunSink {
 public:
  DiagnosticsSink(const PhysParams& p, const Grid& g, CheckConfig checks);

  void on_output(const State& s, const State* prev, double dt) override;
  void on_step(const State& before, const State& after) override;

  const std::vector<DiagRecord>& records() const { return records_; }
  const std::vector<std::string>& violations() const { return violations_; }
  double max_poincare_T() const { return max_pt_; }
  double max_poincare_v() const { return max_pv_; }
  double max_envelope_ratio() const { return max_env_; }
  double max_energy_increase() const { return max_energy_increase_; }
  double max_split_constant() const { return max_split_; }
  double l2_Q() const { return l2_Q_; }

 private:
  void violation(const std::string& what);

  PhysParams params_;
  Grid grid_;
  CheckConfig checks_;
  std::vector<DiagRecord> records_;
  std::vector<std::string> violations_;
  double l2_Q_ = -1.0;
  bool q_zero_ = false;
  double t0_ = 0.0, l2_T0_ = 0.0;
  double max_pt_ = 0.0, max_pv_ = 0.0, max_env_ = 0.0, max_energy_increase_ = 0.0, max_split_ = 0.0;
};

}  // namespace peq
