#include "peq/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "peq/boundary.hpp"
#include "peq/model.hpp"
#include "peq/parallel.hpp"

namespace peq {

void StepConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be non-negative");
  if (!(cfl_target > 0.0 && cfl_target <= 1.0)) throw ConfigError("cfl_target must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw ConfigError("dt_max must be positive");
  if (!(diffusion_tol > 0.0 && diffusion_tol < 1.0)) throw ConfigError("diffusion_tol must lie in (0, 1)");
  if (output_every < 1) throw ConfigError("output_every must be >= 1");
  poisson.validate();
}

long StepConfig::steps() const { return std::lround(t_end / dt); }

double cfl_dt(const State& s, const Grid& g, const StepConfig& cfg) {
  double u = 0.0, v = 0.0, w = 0.0;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        u = std::max(u, std::abs(s.v1(i, j, k)));
        v = std::max(v, std::abs(s.v2(i, j, k)));
        if (!s.w.empty()) w = std::max(w, std::abs(s.w(i, j, k)));
      }
  double limit = cfg.dt_max;
  if (u > 0.0) limit = std::min(limit, cfg.cfl_target * g.dx / u);
  if (v > 0.0) limit = std::min(limit, cfg.cfl_target * g.dy / v);
  if (w > 0.0) limit = std::min(limit, cfg.cfl_target * g.dz / w);
  return limit;
}

Stepper::Stepper(const PhysParams& p, const Grid& g, const StepConfig& cfg)
    : params_((p.validate(), p)),
      grid_(g),
      cfg_((cfg.validate(), cfg)),
      momentum_diffusion_(DiffusionOperator::momentum(p), cfg.dt, p, g, cfg.diffusion_tol),
      heat_diffusion_(DiffusionOperator::heat(p), cfg.dt, p, g, cfg.diffusion_tol),
      projector_(g, cfg.poisson) {}

void Stepper::set_body_force(Field3D f1, Field3D f2) { body_force_.emplace(std::move(f1), std::move(f2)); }

void Stepper::prepare(State& s) const {
  fill_ghosts(s.v1, BcKind::velocity, params_, grid_);
  fill_ghosts(s.v2, BcKind::velocity, params_, grid_);
  fill_ghosts(s.T, BcKind::temperature, params_, grid_);
  fill_ghosts(s.p_s, BcKind::surface_pressure, grid_);
  if (!cfg_.frozen_velocity) projector_.project(s, cfg_.dt);
  s.w = diagnose_w(s.v1, s.v2, grid_);
}

void Stepper::step(State& s) const {
  const double dt = cfg_.dt;
  const Tendency tend = explicit_tendency(s, params_, grid_);
  s.T.axpy(dt, tend.dT);
  heat_diffusion_.solve(s.T);
  if (!cfg_.frozen_velocity) {
    s.v1.axpy(dt, tend.dv1);
    s.v2.axpy(dt, tend.dv2);
    if (body_force_) {
      s.v1.axpy(dt, body_force_->first);
      s.v2.axpy(dt, body_force_->second);
    }
    momentum_diffusion_.solve(s.v1);
    momentum_diffusion_.solve(s.v2);
    projector_.project(s, dt);
  }
  s.w = diagnose_w(s.v1, s.v2, grid_);
  s.t += dt;
  require_finite(s.v1, "v1");
  require_finite(s.v2, "v2");
  require_finite(s.T, "T");
}

State step(const State& s, double dt, const PhysParams& p, const Grid& g, StepConfig cfg) {
  cfg.dt = dt;
  const Stepper stepper(p, g, cfg);
  State out = s;
  stepper.step(out);
  return out;
}

RunResult run(State initial, const Stepper& stepper, std::span<RunSink* const> sinks) {
  const StepConfig& cfg = stepper.config();
  RunResult result;
  State& s = initial;
  stepper.prepare(s);
  const double t0 = s.t;
  for (RunSink* sink : sinks) sink->on_output(s, nullptr, cfg.dt);
  const long n = cfg.steps();
  State prev;
  for (long m = 1; m <= n; ++m) {
    if (!result.cfl_exceeded && cfg.dt > cfl_dt(s, stepper.grid(), cfg)) {
      result.cfl_exceeded = true;
      std::cerr << "warning: dt " << cfg.dt << " exceeds the advective CFL suggestion at t = " << s.t << "\n";
    }
    prev = s;
    try {
      stepper.step(s);
    } catch (const NumericalError& e) {
      throw RunAborted(e.what(), prev.t);
    }
    s.t = t0 + static_cast<double>(m) * cfg.dt;
    for (RunSink* sink : sinks) sink->on_step(prev, s);
    if (m % cfg.output_every == 0 || m == n)
      for (RunSink* sink : sinks) sink->on_output(s, &prev, cfg.dt);
  }
  result.steps = n;
  result.final_state = std::move(s);
  return result;
}

RunResult run(State initial, const PhysParams& p, const Grid& g, const StepConfig& cfg,
              std::span<RunSink* const> sinks) {
  const Stepper stepper(p, g, cfg);
  return run(std::move(initial), stepper, sinks);
}

}  // namespace peq
