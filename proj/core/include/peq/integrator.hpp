#pragma once

#include <optional>
#include <span>
#include <utility>

#include "peq/diffusion.hpp"
#include "peq/errors.hpp"
#include "peq/grid.hpp"
#include "peq/params.hpp"
#include "peq/projection.hpp"
#include "peq/state.hpp"

namespace peq {

struct StepConfig {
  double dt = 0.01;
  double t_end = 1.0;
  double cfl_target = 0.5;
  double dt_max = 1.0;  // cfl_dt result for a motionless state
  double diffusion_tol = 1e-12;
  int output_every = 1;  // steps between DiagRecords / sink outputs
  bool frozen_velocity = false;  // temperature-only mode: v is never updated
  PoissonSolve poisson;

  void validate() const;
  long steps() const;
};

// cfl_target * min(dx/|v1|, dy/|v2|, dz/|w|), capped by dt_max.
double cfl_dt(const State& s, const Grid& g, const StepConfig& cfg);

// First-order IMEX Euler: explicit transport, Coriolis, pressure and
// baroclinic terms; backward-Euler diffusion; barotropic projection.
class Stepper {
 public:
  Stepper(const PhysParams& p, const Grid& g, const StepConfig& cfg);

  // Momentum body force, used only by the manufactured-solution harness.
  void set_body_force(Field3D f1, Field3D f2);

  // Fills ghosts, projects (unless frozen) and diagnoses w.
  void prepare(State& s) const;

  void step(State& s) const;

  const StepConfig& config() const { return cfg_; }
  const Grid& grid() const { return grid_; }
  const PhysParams& params() const { return params_; }

 private:
  PhysParams params_;
  Grid grid_;
  StepConfig cfg_;
  ImplicitDiffusion momentum_diffusion_, heat_diffusion_;
  Projector projector_;
  std::optional<std::pair<Field3D, Field3D>> body_force_;
};

State step(const State& s, double dt, const PhysParams& p, const Grid& g, StepConfig cfg);

// Observers of a run. Sinks are called from the driving thread only.
class RunSink {
 public:
  virtual ~RunSink() = default;
  // prev is the state one step earlier (null at t = 0); dt the step between.
  virtual void on_output(const State& s, const State* prev, double dt) = 0;
  virtual void on_step(const State& /*before*/, const State& /*after*/) {}
};

// Thrown when a step fails; carries the time of the last valid state.
class RunAborted : public NumericalError {
 public:
  RunAborted(const std::string& what, double last_valid_time)
      : NumericalError(what + " (last valid time " + std::to_string(last_valid_time) + ")"),
        last_valid_time_(last_valid_time) {}
  double last_valid_time() const { return last_valid_time_; }

 private:
  double last_valid_time_;
};

struct RunResult {
  State final_state;
  long steps = 0;
  bool cfl_exceeded = false;
};

RunResult run(State initial, const Stepper& stepper, std::span<RunSink* const> sinks);
RunResult run(State initial, const PhysParams& p, const Grid& g, const StepConfig& cfg,
              std::span<RunSink* const> sinks);

}  // namespace peq
