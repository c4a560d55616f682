#include "peq/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "peq/parallel.hpp"

namespace peq {

double dot(std::span<const double> a, std::span<const double> b) {
  constexpr std::size_t kChunk = 4096;
  const std::size_t n = a.size();
  const int chunks = static_cast<int>((n + kChunk - 1) / kChunk);
  return slab_sum(chunks, [&](int c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk, hi = std::min(n, lo + kChunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    return s;
  });
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void remove_mean(std::span<double> x) {
  if (x.empty()) return;
  const double mean = pairwise_sum(x) / static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

CgResult pcg(const LinearMap& op, const LinearMap& preconditioner, std::span<const double> b, std::span<double> x,
             double tolerance, int max_iter, bool project_mean) {
  const std::size_t n = b.size();
  std::vector<double> r(n), z(n), p(n), q(n);
  CgResult result;
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    result.converged = true;
    return result;
  }
  op(x, q);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
  if (project_mean) remove_mean(r);
  double rnorm = norm2(r);
  result.relative_residual = rnorm / bnorm;
  if (result.relative_residual <= tolerance) {
    result.converged = true;
    return result;
  }
  preconditioner(r, z);
  if (project_mean) remove_mean(z);
  p = z;
  double rz = dot(r, z);
  for (int it = 1; it <= max_iter; ++it) {
    op(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) break;
    const double a = rz / pq;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += a * p[i];
      r[i] -= a * q[i];
    }
    if (project_mean) remove_mean(r);
    rnorm = norm2(r);
    result.iterations = it;
    result.relative_residual = rnorm / bnorm;
    if (result.relative_residual <= tolerance) {
      result.converged = true;
      break;
    }
    preconditioner(r, z);
    if (project_mean) remove_mean(z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  if (project_mean) remove_mean(x);
  return result;
}

}  // namespace peq
