#pragma once

#include <cmath>
#include <random>

#include "peq/boundary.hpp"
#include "peq/grid.hpp"
#include "peq/model.hpp"
#include "peq/state.hpp"

namespace peqtest {

inline peq::Field3D random_field(const peq::Grid& g, peq::BcKind kind, const peq::PhysParams& p, std::mt19937_64& rng,
                                 double amp = 1.0) {
  std::uniform_real_distribution<double> u(-amp, amp);
  peq::Field3D f(g.nx, g.ny, g.nz);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) f(i, j, k) = u(rng);
  peq::fill_ghosts(f, kind, p, g);
  return f;
}

inline peq::State random_state(const peq::Grid& g, const peq::PhysParams& p, std::uint64_t seed, double amp = 1.0) {
  std::mt19937_64 rng(seed);
  peq::State s = peq::State::zeros(g);
  s.v1 = random_field(g, peq::BcKind::velocity, p, rng, amp);
  s.v2 = random_field(g, peq::BcKind::velocity, p, rng, amp);
  s.T = random_field(g, peq::BcKind::temperature, p, rng, amp);
  s.w = peq::diagnose_w(s.v1, s.v2, g);
  return s;
}

// Smooth, wall-compatible state built from low modes.
inline peq::State smooth_state(const peq::Grid& g, const peq::PhysParams& p, double av, double aT) {
  constexpr double pi = 3.14159265358979323846;
  peq::State s = peq::State::zeros(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double xi = (g.x(i) + p.lx) / (2 * p.lx), y = g.y(j) / p.l, z = (g.z(k) + p.h) / p.h;
        s.v1(i, j, k) = av * std::sin(pi * xi) * std::sin(pi * y) * (1.0 + 0.5 * std::cos(pi * z));
        s.v2(i, j, k) = av * std::sin(2 * pi * xi) * std::sin(pi * y) * std::cos(pi * z);
        s.T(i, j, k) = aT * (1.0 + std::cos(pi * xi) * std::cos(pi * y)) * std::exp(-z);
      }
  peq::fill_ghosts(s.v1, peq::BcKind::velocity, p, g);
  peq::fill_ghosts(s.v2, peq::BcKind::velocity, p, g);
  peq::fill_ghosts(s.T, peq::BcKind::temperature, p, g);
  s.w = peq::diagnose_w(s.v1, s.v2, g);
  return s;
}

inline double max_abs_diff(const peq::Field3D& a, const peq::Field3D& b) {
  double m = 0.0;
  for (int k = 0; k < a.nz(); ++k)
    for (int j = 0; j < a.ny(); ++j)
      for (int i = 0; i < a.nx(); ++i) m = std::max(m, std::abs(a(i, j, k) - b(i, j, k)));
  return m;
}

inline double max_abs(const peq::Field3D& a) {
  double m = 0.0;
  for (int k = 0; k < a.nz(); ++k)
    for (int j = 0; j < a.ny(); ++j)
      for (int i = 0; i < a.nx(); ++i) m = std::max(m, std::abs(a(i, j, k)));
  return m;
}

// Restores the global thread count on scope exit.
struct ThreadGuard {
  int saved;
  explicit ThreadGuard(int n);
  ~ThreadGuard();
};

}  // namespace peqtest

#include "peq/parallel.hpp"

inline peqtest::ThreadGuard::ThreadGuard(int n) : saved(peq::thread_count()) { peq::set_thread_count(n); }
inline peqtest::ThreadGuard::~ThreadGuard() { peq::set_thread_count(saved); }
