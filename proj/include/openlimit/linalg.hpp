#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace openlimit::linalg {

// Dense eigenvalue drivers on LAPACK (geev, heevd, syevd). Inputs are copied; the solvers
// throw NumericalError on non-convergence.
std::vector<std::complex<double>> eigenvalues_general(const Eigen::MatrixXcd& a);
std::vector<std::complex<double>> eigenvalues_real(const Eigen::MatrixXd& a);
std::vector<double> eigenvalues_hermitian(const Eigen::MatrixXcd& a);
std::vector<double> eigenvalues_symmetric(const Eigen::MatrixXd& a);

}  // namespace openlimit::linalg
