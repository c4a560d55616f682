#pragma once

#include <functional>
#include <span>
#include <vector>

namespace peq {

// Worker count used by parallel_for. Initialised from PEQ_THREADS (default 1).
int thread_count();
void set_thread_count(int n);

// Runs body(lo, hi) over a static contiguous partition of [begin, end).
// Every index is visited exactly once; the partition never affects results
// because bodies only write disjoint outputs.
void parallel_ranges(int begin, int end, const std::function<void(int, int)>& body);

template <class F>
void parallel_for(int begin, int end, F&& f) {
  parallel_ranges(begin, end, [&f](int lo, int hi) {
    for (int n = lo; n < hi; ++n) f(n);
  });
}

// Pairwise (tree) summation; the association order depends only on the
// length of the input.
double pairwise_sum(std::span<const double> values);

// Computes partial(n) for every slab n in parallel, then combines the
// partials with pairwise_sum. Bit-identical for any thread count.
template <class F>
double slab_sum(int nslabs, F&& partial) {
  std::vector<double> parts(static_cast<std::size_t>(nslabs), 0.0);
  parallel_for(0, nslabs, [&](int n) { parts[static_cast<std::size_t>(n)] = partial(n); });
  return pairwise_sum(parts);
}

}  // namespace peq
