#include "peq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "peq/boundary.hpp"
#include "peq/errors.hpp"
#include "peq/io.hpp"
#include "peq/model.hpp"
#include "peq/tail.hpp"

namespace peq {

void BlobSpec::validate(const char* section) const {
  const std::string s(section);
  if (!(width > 0.0) || !std::isfinite(width)) throw ConfigError(s + " blob width must be positive");
  if (!std::isfinite(cx) || !std::isfinite(cy) || !std::isfinite(cz) || !std::isfinite(amplitude))
    throw ConfigError(s + " blob parameters must be finite");
}

namespace {

double blob_x(const BlobSpec& b, double x) {
  const double dx = x - b.cx;
  return std::exp(-dx * dx / (2.0 * b.width * b.width)) * (1.0 - cutoff_eta(std::abs(dx) / (1.5 * b.width)));
}

}  // namespace

double blob_value(const BlobSpec& b, double x, double y, double z) {
  const double dy = y - b.cy, dz = z - b.cz;
  return b.amplitude * blob_x(b, x) * std::exp(-(dy * dy + dz * dz) / (2.0 * b.width * b.width));
}

const char* to_string(InitialKind k) {
  switch (k) {
    case InitialKind::zero: return "zero";
    case InitialKind::gaussian_blob: return "gaussian-blob";
    case InitialKind::mms: return "mms";
  }
  return "?";
}

const char* to_string(SourceKind k) {
  switch (k) {
    case SourceKind::zero: return "zero";
    case SourceKind::gaussian_blob: return "gaussian-blob";
    case SourceKind::file: return "file";
  }
  return "?";
}

std::optional<InitialKind> initial_kind_from(const std::string& s) {
  for (InitialKind k : {InitialKind::zero, InitialKind::gaussian_blob, InitialKind::mms})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

std::optional<SourceKind> source_kind_from(const std::string& s) {
  for (SourceKind k : {SourceKind::zero, SourceKind::gaussian_blob, SourceKind::file})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

Field3D make_source(const SourceSpec& src, const PhysParams&, const Grid& g) {
  Field3D Q(g.nx, g.ny, g.nz);
  switch (src.kind) {
    case SourceKind::zero:
      break;
    case SourceKind::gaussian_blob:
      for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
          for (int i = 0; i < g.nx; ++i) Q(i, j, k) = blob_value(src.blob, g.x(i), g.y(j), g.z(k));
      break;
    case SourceKind::file: {
      const Snapshot snap = read_snapshot(src.path);
      if (snap.T.nx() != g.nx || snap.T.ny() != g.ny || snap.T.nz() != g.nz)
        throw ConfigError("source file " + src.path + " has dimensions " + std::to_string(snap.T.nx()) + "x" +
                          std::to_string(snap.T.ny()) + "x" + std::to_string(snap.T.nz()) +
                          " which do not match the grid");
      Q.set_interior(snap.T.interior());
      for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
          for (int i = 0; i < g.nx; ++i)
            if (!std::isfinite(Q(i, j, k))) throw ConfigError("source file " + src.path + " holds non-finite values");
      break;
    }
  }
  return Q;
}

State make_initial_state(const Scenario& sc, const Grid& g) {
  const PhysParams& p = sc.phys;
  State s = State::zeros(g);
  switch (sc.initial.kind) {
    case InitialKind::zero:
      break;
    case InitialKind::gaussian_blob: {
      const BlobSpec& b = sc.initial.blob;
      const double A = sc.initial.velocity_amplitude;
      constexpr double pi = std::numbers::pi;
      for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
          for (int i = 0; i < g.nx; ++i) {
            s.T(i, j, k) = blob_value(b, g.x(i), g.y(j), g.z(k));
            if (A != 0.0)
              s.v1(i, j, k) = A * std::sin(pi * g.y(j) / p.l) * blob_x(b, g.x(i)) * std::cos(pi * (g.z(k) + p.h) / p.h);
          }
      break;
    }
    case InitialKind::mms:
      s = mms_state(sc.initial.mms, p, g);
      break;
  }
  s.Q = make_source(sc.source, p, g);
  fill_ghosts(s.v1, BcKind::velocity, p, g);
  fill_ghosts(s.v2, BcKind::velocity, p, g);
  fill_ghosts(s.T, BcKind::temperature, p, g);
  fill_ghosts(s.p_s, BcKind::surface_pressure, g);
  s.w = diagnose_w(s.v1, s.v2, g);
  return s;
}

ScenarioRun run_scenario(const Scenario& sc, std::vector<RunSink*> extra) {
  sc.phys.validate();
  const Grid g = sc.grid();
  const Stepper stepper(sc.phys, g, sc.step);
  DiagnosticsSink diag(sc.phys, g, sc.checks);
  std::vector<RunSink*> sinks{&diag};
  sinks.insert(sinks.end(), extra.begin(), extra.end());
  ScenarioRun out;
  out.result = run(make_initial_state(sc, g), stepper, sinks);
  out.records = diag.records();
  out.violations = diag.violations();
  out.max_poincare_T = diag.max_poincare_T();
  out.max_poincare_v = diag.max_poincare_v();
  out.max_envelope_ratio = diag.max_envelope_ratio();
  out.max_energy_increase = diag.max_energy_increase();
  out.max_split_constant = diag.max_split_constant();
  return out;
}

void AbsorbingConfig::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("absorbing scale must be positive");
  if (!(radius2 > 0.0) || !std::isfinite(radius2)) throw ConfigError("absorbing radius2 must be positive");
  if (!(horizon_factor >= 0.0)) throw ConfigError("absorbing horizon_factor must be non-negative");
  if (!(dwell_kappas >= 0.0)) throw ConfigError("absorbing dwell_kappas must be non-negative");
}

AbsorbingReport absorbing_experiment(const Scenario& sc, const AbsorbingConfig& cfg) {
  cfg.validate();
  if (sc.initial.kind == InitialKind::zero) throw ConfigError("absorbing experiment needs non-zero initial data");
  Scenario scaled = sc;
  scaled.initial.blob.amplitude *= cfg.scale;
  scaled.initial.velocity_amplitude *= cfg.scale;
  MmsSpec& m = scaled.initial.mms;
  m.a1 *= cfg.scale;
  m.a2 *= cfg.scale;
  m.aT *= cfg.scale;
  m.ap *= cfg.scale;

  AbsorbingReport rep;
  rep.reference = run_scenario(sc).records;
  rep.scaled = run_scenario(scaled).records;
  rep.kappa = kappa(sc.phys);
  auto vnorm = [](const DiagRecord& r) { return r.v1norm_v + r.v2norm_T; };
  for (const auto& r : rep.reference) rep.max_v_reference = std::max(rep.max_v_reference, vnorm(r));
  for (const auto& r : rep.scaled) rep.max_v_scaled = std::max(rep.max_v_scaled, vnorm(r));
  if (!rep.reference.empty()) {
    rep.final_v_reference = vnorm(rep.reference.back());
    rep.final_v_scaled = vnorm(rep.scaled.back());
    rep.t_end = rep.reference.back().t;
    const double v0 = vnorm(rep.reference.front());
    rep.initial_ratio = v0 > 0.0 ? std::sqrt(vnorm(rep.scaled.front()) / v0) : 0.0;
  }
  rep.entry_reference = absorbing_entry_time(rep.reference, cfg.radius2);
  rep.entry_scaled = absorbing_entry_time(rep.scaled, cfg.radius2);
  if (rep.entry_reference && rep.entry_scaled) {
    const double gap = std::abs(*rep.entry_scaled - *rep.entry_reference);
    const double last = std::max(*rep.entry_scaled, *rep.entry_reference);
    rep.pass = gap <= cfg.horizon_factor * rep.kappa && rep.t_end - last >= cfg.dwell_kappas * rep.kappa;
  }
  return rep;
}

}  // namespace peq
