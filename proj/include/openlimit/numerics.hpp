#pragma once

#include <complex>
#include <span>
#include <vector>

namespace openlimit {

// Selects the OpenMP kernel or the single-threaded reference loop. Both produce identical
// output; the serial path exists for testing and benchmarking.
enum class Exec { parallel, serial };

// Pairwise (cascade) summation; the result depends only on the input order.
std::complex<double> pairwise_sum(std::span<const std::complex<double>> v);
double pairwise_sum(std::span<const double> v);

int max_threads();

}  // namespace openlimit
