#include "openlimit/numerics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace openlimit {

namespace {

template <class T>
T cascade(std::span<const T> v) {
    if (v.size() <= 16) {
        T s{};
        for (const T& x : v) s += x;
        return s;
    }
    const std::size_t h = v.size() / 2;
    return cascade(v.first(h)) + cascade(v.subspan(h));
}

}  // namespace

std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) { return cascade(v); }

double pairwise_sum(std::span<const double> v) { return cascade(v); }

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace openlimit
