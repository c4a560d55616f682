#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "peq/experiments.hpp"
#include "peq/field.hpp"
#include "peq/grid.hpp"

namespace peq {

struct TailConfig {
  std::vector<double> radii{0.5, 1.0, 1.5};
  double epsilon = 1e-3;  // bound on windowed / total T energy
  double tau_probe = 5.0;
  std::uint64_t pair_seed = 1;
  // Throws ConfigError unless radii are positive, strictly increasing and
  // below lx / 2.
  void validate(const PhysParams& p) const;
};

// 0 on [0, 1], 1 on [2, inf), quintic smoothstep in u = s - 1 between.
double cutoff_eta(double s);
double cutoff_eta_prime(double s);

// Sum of eta(x^2 / r^2)^2 |T|^2 dV over the cells.
double windowed_T_energy(const Field3D& T, double r, const Grid& g);

struct TailSample {
  double t = 0.0;
  double total = 0.0;  // |T|_2^2
  std::vector<double> windowed;
};

struct TailReport {
  std::vector<double> radii;
  std::vector<double> sup_windowed;  // sup over t >= tau_probe, per radius
  std::vector<double> sup_ratio;     // sup of windowed / total over t >= tau_probe
  std::optional<double> witness_radius;  // smallest r from which every ratio is <= epsilon
  bool monotone_in_r = true;             // at every sample
  bool pass = false;
  std::vector<TailSample> samples;
};

// Records windowed energies at every output of a run.
class TailSink : public RunSink {
 public:
  TailSink(std::vector<double> radii, const Grid& g) : radii_(std::move(radii)), grid_(g) {}
  void on_output(const State& s, const State* prev, double dt) override;
  const std::vector<TailSample>& samples() const { return samples_; }

 private:
  std::vector<double> radii_;
  Grid grid_;
  std::vector<TailSample> samples_;
};

TailReport summarize_tail(const TailConfig& cfg, std::vector<TailSample> samples);
TailReport tail_decay_experiment(const TailConfig& cfg, const Scenario& sc);

// Runs the scenario on half-lengths lx, 2 lx, 4 lx, ... (levels domains,
// same dx) and compares consecutive pairs on the smaller one's domain.
struct TruncationPair {
  double lx_small = 0, lx_large = 0;
  double max_rel_diff = 0;  // max over output times of |u_s - u_l| / |u_l| on the common cells
  std::vector<double> times, rel_diff;
};
struct TruncationReport {
  std::vector<TruncationPair> pairs;
};

// Throws ConfigError when nx is odd (the grids would not nest).
TruncationReport truncation_convergence(const Scenario& base, int levels = 3, int factor = 2);

struct ContractionSample {
  double t = 0.0;
  double l2_dv = 0.0, l2_dT = 0.0;  // L2 norms (not squared) of the differences
  double v_distance = 0.0;          // sqrt(dist) * sqrt(H2-level diagnostics of both states)
};
struct ContractionReport {
  std::vector<ContractionSample> series;
  bool monotone = true;  // total L2 distance never increases
  double initial_distance = 0, final_distance = 0;
};

// Trajectory A starts from the scenario; B adds a smooth random perturbation
// of amplitude `perturbation` drawn from cfg.pair_seed. Both integrate in
// separate workers.
ContractionReport two_trajectory_contraction(const TailConfig& cfg, const Scenario& sc, double perturbation = 0.5);

}  // namespace peq
