#ifndef CVPI_PARALLEL_HPP_INCLUDED
#define CVPI_PARALLEL_HPP_INCLUDED

#include <cstddef>
#include <functional>
#include <span>

namespace cvpi {

// Worker cap for parallel_for. 0 means "hardware concurrency".
void set_thread_count(unsigned count);
unsigned thread_count();

// Runs body(i) for i in [0, count). Work is handed out dynamically; callers
// write results into per-index slots so the outcome does not depend on
// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Pairwise (cascade) summation; deterministic for a fixed input order.
double pairwise_sum(std::span<const double> values);

inline double pairwise_mean(std::span<const double> values) {
  return values.empty() ? 0.0 : pairwise_sum(values) / static_cast<double>(values.size());
}

}  // namespace cvpi

#endif  // CVPI_PARALLEL_HPP_INCLUDED
