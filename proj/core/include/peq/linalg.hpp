#pragma once

#include <functional>
#include <span>
#include <vector>

namespace peq {

// Deterministic dot product: fixed 4096-element chunks, pairwise combined.
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// Preconditioned conjugate gradient for a symmetric positive (semi)definite
// operator. x holds the initial guess on entry. When project_mean is set the
// constant vector is treated as the nullspace and removed from residuals.
CgResult pcg(const LinearMap& op, const LinearMap& preconditioner, std::span<const double> b, std::span<double> x,
             double tolerance, int max_iter, bool project_mean = false);

void remove_mean(std::span<double> x);

}  // namespace peq
