#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "peq/diagnostics.hpp"
#include "peq/grid.hpp"
#include "peq/integrator.hpp"
#include "peq/params.hpp"
#include "peq/state.hpp"
#include "peq/verification.hpp"

namespace peq {

// Gaussian bump exp(-|r - c|^2 / (2 width^2)), multiplied in x by
// 1 - eta(|x - cx| / (1.5 width)) so that it vanishes for |x - cx| >= 3 width.
struct BlobSpec {
  double cx = 0.0, cy = 0.5, cz = -0.5;
  double width = 0.25;
  double amplitude = 1.0;
  void validate(const char* section) const;
};

double blob_value(const BlobSpec& b, double x, double y, double z);

enum class InitialKind { zero, gaussian_blob, mms };
enum class SourceKind { zero, gaussian_blob, file };

struct InitialSpec {
  InitialKind kind = InitialKind::zero;
  BlobSpec blob;
  // Velocity mode A sin(pi y / l) xshape(x) cos(pi (z + h) / h), with the
  // blob's x profile as xshape; only used by gaussian_blob.
  double velocity_amplitude = 0.0;
  MmsSpec mms;  // used by the mms preset
};

struct SourceSpec {
  SourceKind kind = SourceKind::zero;
  BlobSpec blob;
  std::string path;  // PEQ1 snapshot whose T slot holds Q
};

// Everything needed to integrate one trajectory.
struct Scenario {
  PhysParams phys;
  int nx = 32, ny = 16, nz = 8;
  StepConfig step;
  InitialSpec initial;
  SourceSpec source;
  CheckConfig checks;

  Grid grid() const { return make_grid(phys, nx, ny, nz); }
};

const char* to_string(InitialKind k);
const char* to_string(SourceKind k);
std::optional<InitialKind> initial_kind_from(const std::string& s);
std::optional<SourceKind> source_kind_from(const std::string& s);

// Builds the initial state (ghosts filled, not yet projected) including Q.
State make_initial_state(const Scenario& sc, const Grid& g);
Field3D make_source(const SourceSpec& src, const PhysParams& p, const Grid& g);

// Runs a scenario with a DiagnosticsSink plus any extra sinks.
struct ScenarioRun {
  RunResult result;
  std::vector<DiagRecord> records;
  std::vector<std::string> violations;
  double max_poincare_T = 0, max_poincare_v = 0, max_envelope_ratio = 0, max_energy_increase = 0,
         max_split_constant = 0;
};
ScenarioRun run_scenario(const Scenario& sc, std::vector<RunSink*> extra = {});

// Two runs from initial data whose amplitudes differ by `scale`.
struct AbsorbingConfig {
  double scale = 10.0;
  double radius2 = 1.0;         // frozen V-norm radius squared
  double horizon_factor = 1.0;  // allowed entry-time gap, in units of kappa
  double dwell_kappas = 5.0;    // required time inside after the later entry, in units of kappa
  void validate() const;
};

struct AbsorbingReport {
  std::optional<double> entry_reference, entry_scaled;
  double initial_ratio = 0;  // ratio of the two initial V-norms (not squared)
  double kappa = 0;
  double t_end = 0;
  double max_v_reference = 0, max_v_scaled = 0;     // sup of v1norm_v + v2norm_T
  double final_v_reference = 0, final_v_scaled = 0;
  bool pass = false;
  std::vector<DiagRecord> reference, scaled;
};

AbsorbingReport absorbing_experiment(const Scenario& sc, const AbsorbingConfig& cfg);

}  // namespace peq
