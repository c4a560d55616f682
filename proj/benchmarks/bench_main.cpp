#include <benchmark/benchmark.h>

#include <cmath>

#include "peq/boundary.hpp"
#include "peq/diagnostics.hpp"
#include "peq/integrator.hpp"
#include "peq/model.hpp"
#include "peq/projection.hpp"
#include "peq/stencil.hpp"

namespace {

peq::State blob_state(const peq::PhysParams& p, const peq::Grid& g) {
  peq::State s = peq::State::zeros(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double x = g.x(i), y = g.y(j) - 0.5, z = g.z(k) + 0.5;
        s.T(i, j, k) = std::exp(-8.0 * (x * x + y * y + z * z));
        s.v1(i, j, k) = 0.1 * std::sin(3.14159 * g.y(j)) * std::exp(-x * x);
      }
  peq::fill_ghosts(s.v1, peq::BcKind::velocity, p, g);
  peq::fill_ghosts(s.v2, peq::BcKind::velocity, p, g);
  peq::fill_ghosts(s.T, peq::BcKind::temperature, p, g);
  return s;
}

void BM_LapH(benchmark::State& st) {
  peq::PhysParams p;
  const auto n = static_cast<int>(st.range(0));
  const peq::Grid g = peq::make_grid(p, 2 * n, n, n / 2);
  const peq::State s = blob_state(p, g);
  for (auto _ : st) benchmark::DoNotOptimize(peq::lap_h(s.T, g));
}
BENCHMARK(BM_LapH)->Arg(16)->Arg(32);

void BM_Advect(benchmark::State& st) {
  peq::PhysParams p;
  const auto n = static_cast<int>(st.range(0));
  const peq::Grid g = peq::make_grid(p, 2 * n, n, n / 2);
  const peq::State s = blob_state(p, g);
  const peq::Field3D wf = peq::diagnose_w_faces(s.v1, s.v2, g);
  for (auto _ : st) benchmark::DoNotOptimize(peq::advect(s.v1, s.v2, wf, s.T, g));
}
BENCHMARK(BM_Advect)->Arg(16)->Arg(32);

void BM_Projection(benchmark::State& st) {
  peq::PhysParams p;
  const auto n = static_cast<int>(st.range(0));
  const peq::Grid g = peq::make_grid(p, 2 * n, n, n / 2);
  const peq::Projector proj(g, peq::PoissonSolve{});
  peq::State s = blob_state(p, g);
  for (auto _ : st) {
    peq::Field3D a = s.v1, b = s.v2;
    benchmark::DoNotOptimize(proj.project(a, b, 0.01));
  }
}
BENCHMARK(BM_Projection)->Arg(16)->Arg(32);

void BM_Step(benchmark::State& st) {
  peq::PhysParams p;
  const auto n = static_cast<int>(st.range(0));
  const peq::Grid g = peq::make_grid(p, 2 * n, n, n / 2);
  peq::StepConfig cfg;
  cfg.dt = 0.01;
  const peq::Stepper stepper(p, g, cfg);
  peq::State s = blob_state(p, g);
  stepper.prepare(s);
  for (auto _ : st) stepper.step(s);
}
BENCHMARK(BM_Step)->Arg(16)->Arg(32);

void BM_Record(benchmark::State& st) {
  peq::PhysParams p;
  const auto n = static_cast<int>(st.range(0));
  const peq::Grid g = peq::make_grid(p, 2 * n, n, n / 2);
  const peq::State s = blob_state(p, g);
  for (auto _ : st) benchmark::DoNotOptimize(peq::compute_record(s, nullptr, 0.0, p, g));
}
BENCHMARK(BM_Record)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
