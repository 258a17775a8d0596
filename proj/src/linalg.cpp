#include "openlimit/linalg.hpp"

#include "openlimit/errors.hpp"

#include <lapacke.h>

#include <string>

namespace openlimit::linalg {

namespace {

void check(lapack_int info, const char* routine) {
    if (info != 0) throw NumericalError(std::string(routine) + " failed with info = " + std::to_string(info));
}

}  // namespace

std::vector<std::complex<double>> eigenvalues_general(const Eigen::MatrixXcd& a) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Eigen::MatrixXcd m = a;
    std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
    if (n == 0) return w;
    check(LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, reinterpret_cast<lapack_complex_double*>(m.data()), n,
                        reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1),
          "zgeev");
    return w;
}

std::vector<std::complex<double>> eigenvalues_real(const Eigen::MatrixXd& a) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Eigen::MatrixXd m = a;
    std::vector<double> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
    if (n > 0) check(LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, m.data(), n, wr.data(), wi.data(), nullptr, 1, nullptr, 1), "dgeev");
    std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
    for (lapack_int i = 0; i < n; ++i) w[i] = {wr[i], wi[i]};
    return w;
}

std::vector<double> eigenvalues_hermitian(const Eigen::MatrixXcd& a) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Eigen::MatrixXcd m = a;
    std::vector<double> w(static_cast<std::size_t>(n));
    if (n > 0)
        check(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, reinterpret_cast<lapack_complex_double*>(m.data()), n, w.data()),
              "zheevd");
    return w;
}

std::vector<double> eigenvalues_symmetric(const Eigen::MatrixXd& a) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Eigen::MatrixXd m = a;
    std::vector<double> w(static_cast<std::size_t>(n));
    if (n > 0) check(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, m.data(), n, w.data()), "dsyevd");
    return w;
}

}  // namespace openlimit::linalg
