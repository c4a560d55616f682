#include "peq/tail.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>

#include "peq/boundary.hpp"
#include "peq/diagnostics.hpp"
#include "peq/errors.hpp"
#include "peq/parallel.hpp"

namespace peq {

void TailConfig::validate(const PhysParams& p) const {
  if (radii.empty()) throw ConfigError("tail radii must not be empty");
  for (std::size_t n = 0; n < radii.size(); ++n) {
    if (!(radii[n] > 0.0)) throw ConfigError("tail radii must be positive");
    if (n > 0 && !(radii[n] > radii[n - 1])) throw ConfigError("tail radii must be strictly increasing");
  }
  if (!(radii.back() < 0.5 * p.lx)) throw ConfigError("largest tail radius must be below lx / 2");
  if (!(epsilon > 0.0)) throw ConfigError("tail epsilon must be positive");
  if (!(tau_probe >= 0.0)) throw ConfigError("tail tau_probe must be non-negative");
}

double cutoff_eta(double s) {
  if (s <= 1.0) return 0.0;
  if (s >= 2.0) return 1.0;
  const double u = s - 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double cutoff_eta_prime(double s) {
  if (s <= 1.0 || s >= 2.0) return 0.0;
  const double u = s - 1.0;
  return 30.0 * u * u * (1.0 - u) * (1.0 - u);
}

double windowed_T_energy(const Field3D& T, double r, const Grid& g) {
  std::vector<double> weight(static_cast<std::size_t>(g.nx));
  for (int i = 0; i < g.nx; ++i) {
    const double e = cutoff_eta(g.x(i) * g.x(i) / (r * r));
    weight[static_cast<std::size_t>(i)] = e * e;
  }
  const double s = slab_sum(g.nz, [&](int k) {
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) acc += weight[static_cast<std::size_t>(i)] * T(i, j, k) * T(i, j, k);
    return acc;
  });
  return s * g.cell_volume();
}

void TailSink::on_output(const State& s, const State*, double) {
  TailSample smp;
  smp.t = s.t;
  smp.total = l2_squared(s.T, grid_);
  for (double r : radii_) smp.windowed.push_back(windowed_T_energy(s.T, r, grid_));
  samples_.push_back(std::move(smp));
}

TailReport summarize_tail(const TailConfig& cfg, std::vector<TailSample> samples) {
  TailReport rep;
  rep.radii = cfg.radii;
  const std::size_t nr = cfg.radii.size();
  rep.sup_windowed.assign(nr, 0.0);
  rep.sup_ratio.assign(nr, 0.0);
  bool any = false;
  for (const TailSample& s : samples) {
    for (std::size_t n = 1; n < s.windowed.size(); ++n)
      if (s.windowed[n] > s.windowed[n - 1]) rep.monotone_in_r = false;
    if (s.t < cfg.tau_probe) continue;
    any = true;
    for (std::size_t n = 0; n < nr; ++n) {
      rep.sup_windowed[n] = std::max(rep.sup_windowed[n], s.windowed[n]);
      const double ratio = s.total > 0.0 ? s.windowed[n] / s.total : 0.0;
      rep.sup_ratio[n] = std::max(rep.sup_ratio[n], ratio);
    }
  }
  if (any) {
    for (std::size_t n = nr; n-- > 0;) {
      if (rep.sup_ratio[n] > cfg.epsilon) break;
      rep.witness_radius = cfg.radii[n];
    }
  }
  rep.pass = rep.witness_radius.has_value() && rep.monotone_in_r;
  rep.samples = std::move(samples);
  return rep;
}

TailReport tail_decay_experiment(const TailConfig& cfg, const Scenario& sc) {
  cfg.validate(sc.phys);
  TailSink sink(cfg.radii, sc.grid());
  run_scenario(sc, {&sink});
  return summarize_tail(cfg, sink.samples());
}

namespace {

struct Snapshots : RunSink {
  std::vector<double> times;
  std::vector<std::vector<double>> fields;  // packed v1, v2, T interiors
  std::vector<double> h2;                   // |L1 v|_2 + |L2 T|_2
  const PhysParams* params = nullptr;
  const Grid* grid = nullptr;
  bool want_h2 = false;

  void on_output(const State& s, const State*, double) override {
    times.push_back(s.t);
    std::vector<double> f = s.v1.interior();
    const std::vector<double> b = s.v2.interior(), c = s.T.interior();
    f.insert(f.end(), b.begin(), b.end());
    f.insert(f.end(), c.begin(), c.end());
    fields.push_back(std::move(f));
    if (want_h2) {
      const DiagRecord r = compute_record(s, nullptr, 0.0, *params, *grid);
      h2.push_back(std::sqrt(r.l2_L1v) + std::sqrt(r.l2_L2T));
    }
  }
};

Scenario scaled_domain(const Scenario& base, int mult) {
  Scenario sc = base;
  sc.phys.lx = base.phys.lx * mult;
  sc.nx = base.nx * mult;
  return sc;
}

}  // namespace

TruncationReport truncation_convergence(const Scenario& base, int levels, int factor) {
  if (levels < 2) throw ConfigError("truncation needs at least two domains");
  if (factor < 2) throw ConfigError("truncation factor must be >= 2");
  if (base.source.kind == SourceKind::file || base.initial.kind == InitialKind::mms)
    throw ConfigError("truncation needs position-defined initial data and source (no file or mms presets)");
  if ((base.nx * (factor - 1)) % 2 != 0) throw ConfigError("truncation needs an even nx so the grids nest");
  std::vector<Scenario> scs;
  std::vector<Snapshots> snaps(static_cast<std::size_t>(levels));
  int mult = 1;
  for (int L = 0; L < levels; ++L, mult *= factor) {
    scs.push_back(scaled_domain(base, mult));
    run_scenario(scs.back(), {&snaps[static_cast<std::size_t>(L)]});
  }
  TruncationReport rep;
  for (int L = 0; L + 1 < levels; ++L) {
    const Scenario &small = scs[static_cast<std::size_t>(L)], &large = scs[static_cast<std::size_t>(L) + 1];
    const Snapshots &ss = snaps[static_cast<std::size_t>(L)], &sl = snaps[static_cast<std::size_t>(L) + 1];
    if (ss.times.size() != sl.times.size()) throw ConfigError("truncation runs produced different output counts");
    const int offset = (large.nx - small.nx) / 2;
    const std::size_t ns = static_cast<std::size_t>(small.nx) * small.ny * small.nz;
    const std::size_t nl = static_cast<std::size_t>(large.nx) * large.ny * large.nz;
    TruncationPair pair;
    pair.lx_small = small.phys.lx;
    pair.lx_large = large.phys.lx;
    for (std::size_t t = 0; t < ss.times.size(); ++t) {
      double diff = 0.0, ref = 0.0;
      for (int comp = 0; comp < 3; ++comp)
        for (int k = 0; k < small.nz; ++k)
          for (int j = 0; j < small.ny; ++j)
            for (int i = 0; i < small.nx; ++i) {
              const std::size_t is = comp * ns + static_cast<std::size_t>(i + small.nx * (j + small.ny * k));
              const std::size_t il =
                  comp * nl + static_cast<std::size_t>(i + offset + large.nx * (j + large.ny * k));
              const double a = ss.fields[t][is], b = sl.fields[t][il];
              diff += (a - b) * (a - b);
              ref += b * b;
            }
      const double rel = ref > 0.0 ? std::sqrt(diff / ref) : (diff > 0.0 ? 1.0 : 0.0);
      pair.times.push_back(ss.times[t]);
      pair.rel_diff.push_back(rel);
      pair.max_rel_diff = std::max(pair.max_rel_diff, rel);
    }
    rep.pairs.push_back(std::move(pair));
  }
  return rep;
}

namespace {

// Low modes compatible with the boundary rules, random coefficients in
// [-amp, amp]. Velocity is left alone for frozen-velocity runs.
void add_perturbation(State& s, const PhysParams& p, const Grid& g, double amp, std::uint64_t seed, bool velocity) {
  std::mt19937_64 rng(seed);
  auto coef = [&] { return amp * (2.0 * std::generate_canonical<double, 53>(rng) - 1.0); };
  constexpr double pi = std::numbers::pi;
  auto xi = [&](int i) { return (g.x(i) + p.lx) / (2.0 * p.lx); };
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n)
      for (int q = 0; q <= 1; ++q) {
        const double cT = coef(), c1 = coef(), c2 = coef();
        for (int k = 0; k < g.nz; ++k)
          for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
              const double zq = std::cos(q * pi * (g.z(k) + p.h) / p.h);
              s.T(i, j, k) += cT * std::cos(m * pi * xi(i)) * std::cos(n * pi * g.y(j) / p.l) * zq;
              const double sv = std::sin((m + 1) * pi * xi(i)) * std::sin((n + 1) * pi * g.y(j) / p.l) * zq;
              if (!velocity) continue;
              s.v1(i, j, k) += c1 * sv;
              s.v2(i, j, k) += c2 * sv;
            }
      }
  fill_ghosts(s.v1, BcKind::velocity, p, g);
  fill_ghosts(s.v2, BcKind::velocity, p, g);
  fill_ghosts(s.T, BcKind::temperature, p, g);
}

}  // namespace

ContractionReport two_trajectory_contraction(const TailConfig& cfg, const Scenario& sc, double perturbation) {
  sc.phys.validate();
  const Grid g = sc.grid();
  const Stepper stepper(sc.phys, g, sc.step);
  State a = make_initial_state(sc, g);
  State b = a;
  if (perturbation != 0.0) add_perturbation(b, sc.phys, g, perturbation, cfg.pair_seed, !sc.step.frozen_velocity);

  auto integrate = [&](State s) {
    Snapshots snap;
    snap.params = &sc.phys;
    snap.grid = &g;
    snap.want_h2 = true;
    RunSink* sinks[] = {&snap};
    run(std::move(s), stepper, sinks);
    return snap;
  };
  auto fa = std::async(std::launch::async, integrate, std::move(a));
  auto fb = std::async(std::launch::async, integrate, std::move(b));
  const Snapshots sa = fa.get(), sb = fb.get();

  ContractionReport rep;
  const std::size_t n = static_cast<std::size_t>(g.cells());
  for (std::size_t t = 0; t < sa.times.size(); ++t) {
    double dv = 0.0, dT = 0.0;
    for (std::size_t c = 0; c < 2 * n; ++c) dv += std::pow(sa.fields[t][c] - sb.fields[t][c], 2);
    for (std::size_t c = 2 * n; c < 3 * n; ++c) dT += std::pow(sa.fields[t][c] - sb.fields[t][c], 2);
    ContractionSample smp;
    smp.t = sa.times[t];
    smp.l2_dv = std::sqrt(dv * g.cell_volume());
    smp.l2_dT = std::sqrt(dT * g.cell_volume());
    const double dist = std::hypot(smp.l2_dv, smp.l2_dT);
    smp.v_distance = std::sqrt(dist) * std::sqrt(sa.h2[t] + sb.h2[t]);
    rep.series.push_back(smp);
  }
  for (std::size_t t = 1; t < rep.series.size(); ++t) {
    const auto& s0 = rep.series[t - 1];
    const auto& s1 = rep.series[t];
    if (std::hypot(s1.l2_dv, s1.l2_dT) > std::hypot(s0.l2_dv, s0.l2_dT)) rep.monotone = false;
  }
  if (!rep.series.empty()) {
    rep.initial_distance = std::hypot(rep.series.front().l2_dv, rep.series.front().l2_dT);
    rep.final_distance = std::hypot(rep.series.back().l2_dv, rep.series.back().l2_dT);
  }
  return rep;
}

}  // namespace peq
