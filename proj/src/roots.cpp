#include "openlimit/roots.hpp"

#include "openlimit/errors.hpp"

#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace openlimit {

namespace {

constexpr double kTieTolerance = 1e-12;

double principal_arg(cplx z) {
    const double a = std::arg(z);
    return a == -std::numbers::pi ? std::numbers::pi : a;
}

// Parlett-Reinsch diagonal balancing with powers of two, in place.
template <class Matrix>
void balance(Matrix& a) {
    const int n = static_cast<int>(a.rows());
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / 2.0, f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while (c >= g) {
                f /= 2.0;
                c /= 4.0;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

struct Horner {
    cplx value;
    cplx slope;
    double scale;  // sum |c_d| |z|^d, the natural size of the rounding error
};

Horner horner(const std::vector<cplx>& c, cplx z) {
    cplx p = 0.0, dp = 0.0;
    double s = 0.0;
    const double az = std::abs(z);
    for (std::size_t d = c.size(); d-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[d];
        s = s * az + std::abs(c[d]);
    }
    return {p, dp, s};
}

void polish(const std::vector<cplx>& c, std::vector<cplx>& roots, std::size_t i) {
    cplx z = roots[i];
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j)
        if (j != i) nearest = std::min(nearest, std::abs(roots[j] - z));
    Horner h = horner(c, z);
    for (int it = 0; it < 5; ++it) {
        if (std::abs(h.value) <= std::numeric_limits<double>::epsilon() * h.scale) break;
        if (h.slope == cplx(0.0)) break;
        const cplx step = h.value / h.slope;
        if (!(std::abs(step) < 0.5 * nearest)) break;
        const cplx zn = z - step;
        const Horner hn = horner(c, zn);
        if (!(std::abs(hn.value) < std::abs(h.value))) break;
        z = zn;
        h = hn;
    }
    roots[i] = z;
}

std::optional<std::vector<cplx>> companion_eigenvalues(const std::vector<cplx>& c, bool real, bool balanced) {
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<cplx> out;
    if (real) {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
        for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i].real() / c[d].real();
        if (balanced) balance(comp);
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        if (es.info() != Eigen::Success) return std::nullopt;
        for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()[i]);
    } else {
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
        for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
        if (balanced) balance(comp);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        if (es.info() != Eigen::Success) return std::nullopt;
        for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()[i]);
    }
    return out;
}

// LAPACK's Hessenberg QR with exceptional shifts; used when Eigen's real Schur iteration
// stalls, which happens on some highly structured companion matrices (e.g. even polynomials).
std::optional<std::vector<cplx>> companion_eigenvalues_lapack(const std::vector<cplx>& c) {
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<double> a(static_cast<std::size_t>(d) * d, 0.0), wr(d), wi(d);
    for (int i = 1; i < d; ++i) a[static_cast<std::size_t>(i - 1) * d + i] = 1.0;  // column-major
    for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(d - 1) * d + i] = -c[i].real() / c[d].real();
    const lapack_int info =
        LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', d, a.data(), d, wr.data(), wi.data(), nullptr, 1, nullptr, 1);
    if (info != 0) return std::nullopt;
    std::vector<cplx> out(d);
    for (int i = 0; i < d; ++i) out[i] = {wr[i], wi[i]};
    return out;
}

std::vector<cplx> companion_roots(const std::vector<cplx>& c, bool real) {
    if (real) {
        if (auto r = companion_eigenvalues(c, true, true)) return *r;
        if (auto r = companion_eigenvalues_lapack(c)) return *r;
    } else {
        if (auto r = companion_eigenvalues(c, false, true)) return *r;
        if (auto r = companion_eigenvalues(c, false, false)) return *r;
    }
    throw NumericalError("companion eigensolver failed");
}

std::vector<cplx> roots_impl(const std::vector<cplx>& c, bool real) {
    const int d = static_cast<int>(c.size()) - 1;
    if (d < 1) return {};
    if (c[d] == cplx(0.0)) throw NumericalError("root polynomial has a vanishing leading coefficient");
    if (d == 1) return {-c[0] / c[1]};
    std::vector<cplx> r = companion_roots(c, real);
    if (real) {
        // Polish the closed upper half plane and mirror, so conjugate pairs stay exact.
        std::vector<cplx> work = r;
        for (std::size_t i = 0; i < work.size(); ++i)
            if (work[i].imag() >= 0.0) polish(c, work, i);
        std::vector<cplx> out;
        for (const cplx& z : work)
            if (z.imag() > 0.0) {
                out.push_back(z);
                out.push_back(std::conj(z));
            } else if (z.imag() == 0.0) {
                out.push_back(cplx(z.real(), 0.0));
            }
        if (out.size() != r.size()) {
            // A root crossed onto the real axis while polishing; fall back to the raw set.
            out = r;
            for (std::size_t i = 0; i < out.size(); ++i) polish(c, out, i);
        }
        return out;
    }
    for (std::size_t i = 0; i < r.size(); ++i) polish(c, r, i);
    return r;
}

}  // namespace

std::vector<cplx> root_polynomial(const LaurentSymbol& sym, cplx lambda) {
    const int p = sym.upper();
    const int deg = p + sym.lower();
    std::vector<cplx> c(deg + 1, 0.0);
    for (const auto& [k, a] : sym.coeffs()) c[p - k] += a;
    c[p] -= lambda;
    return c;
}

void sort_roots(std::vector<cplx>& roots) {
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        return principal_arg(a) < principal_arg(b);
    });
    std::size_t i = 0;
    while (i < roots.size()) {
        std::size_t j = i + 1;
        const double base = std::abs(roots[i]);
        while (j < roots.size() && std::abs(roots[j]) - base <= kTieTolerance * base) ++j;
        if (j - i > 1)
            std::sort(roots.begin() + i, roots.begin() + j,
                      [](cplx a, cplx b) { return principal_arg(a) < principal_arg(b); });
        i = j;
    }
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs) {
    const bool real = std::all_of(coeffs.begin(), coeffs.end(), [](cplx z) { return z.imag() == 0.0; });
    return roots_impl(coeffs, real);
}

CriticalSet critical_points(const LaurentSymbol& sym) {
    // z^{p+1} f'(z) = sum_k -k a_k z^{p-k}; strip the powers of z that the clearing introduces.
    const int p = sym.upper();
    std::map<int, cplx> poly;
    for (const auto& [k, a] : sym.coeffs())
        if (k != 0) poly[p - k] += static_cast<double>(-k) * a;
    CriticalSet out;
    if (poly.empty()) return out;
    const int lo = poly.begin()->first;
    const int hi = poly.rbegin()->first;
    std::vector<cplx> c(hi - lo + 1, 0.0);
    for (const auto& [d, v] : poly) c[d - lo] = v;
    out.points = polynomial_roots(c);
    sort_roots(out.points);
    const LaurentSymbol f2 = derivative(sym, 2);
    for (const cplx& z : out.points) out.second_derivative_values.push_back(eval(f2, z));
    return out;
}

RootSolver::RootSolver(const LaurentSymbol& sym, double confluent_tol)
    : sym_(sym), confluent_tol_(confluent_tol) {
    if (!sym.two_sided())
        throw DomainError("root profile needs nonzero coefficients on both sides of the diagonal");
    degree_ = sym.upper() + sym.lower();
    real_ = sym.real_coefficients();
    critical_ = critical_points(sym);
}

std::vector<cplx> RootSolver::roots(cplx lambda) const {
    std::vector<cplx> c = root_polynomial(sym_, lambda);
    std::vector<cplx> r = roots_impl(c, real_ && lambda.imag() == 0.0);
    sort_roots(r);
    return r;
}

double RootSolver::middle_gap(const std::vector<cplx>& sorted) const {
    const int s = split();
    return std::abs(sorted[s]) / std::abs(sorted[s - 1]) - 1.0;
}

RootProfile RootSolver::profile(cplx lambda) const {
    RootProfile prof;
    prof.lambda = lambda;
    prof.roots = roots(lambda);
    prof.split = split();
    prof.middle_gap = middle_gap(prof.roots);
    if (prof.split + 1 < static_cast<int>(prof.roots.size()))
        prof.outer_gap = std::abs(prof.roots[prof.split + 1]) / std::abs(prof.roots[prof.split]) - 1.0;
    prof.confluent_flags.resize(prof.roots.size(), false);
    for (std::size_t i = 0; i < prof.roots.size(); ++i)
        for (const cplx& zc : critical_.points)
            if (std::abs(prof.roots[i] - zc) < confluent_tol_) prof.confluent_flags[i] = true;
    return prof;
}

RootProfile root_profile(const LaurentSymbol& sym, cplx lambda) { return RootSolver(sym).profile(lambda); }

Assumption1Report assumption1_check(const LaurentSymbol& sym, const std::vector<cplx>& gbz_points,
                                    double tol) {
    Assumption1Report rep;
    const RootSolver solver(sym);
    const CriticalSet& cs = solver.critical();

    auto is_real = [](cplx z) { return std::abs(z.imag()) <= 1e-12 * (1.0 + std::abs(z)); };

    for (const cplx& z : gbz_points) {
        if (is_real(z)) continue;
        for (const cplx& zc : cs.points) {
            if (is_real(zc)) continue;
            if (std::abs(z - zc) <= tol) {
                rep.offending_points.push_back(z);
                break;
            }
        }
    }

    for (std::size_t i = 0; i < cs.points.size(); ++i) {
        const cplx zc = cs.points[i];
        const cplx fz = eval(sym, zc);
        const double f2 = std::abs(cs.second_derivative_values[i]);
        const double im = std::abs(fz.imag());
        if (im > 1e-6 * (1.0 + std::abs(fz))) continue;
        const double lam = fz.real();
        const RootProfile prof = solver.profile(lam);
        // A perturbation of size |Im f| splits a double root by about sqrt(2 |Im f| / |f''|).
        const double reach =
            10.0 * std::sqrt(2.0 * (im + 1e-14 * (1.0 + std::abs(lam))) / std::max(f2, 1e-300)) + tol;
        const double d = std::min(std::abs(prof.lower_middle() - zc), std::abs(prof.upper_middle() - zc));
        if (d > reach) continue;
        if (prof.middle_gap > 4.0 * reach / std::abs(zc) + kGapTolerance) continue;
        if (is_real(zc)) {
            if (f2 <= tol) rep.degenerate_real.push_back(zc);
        } else {
            rep.complex_confluent.push_back(zc);
            rep.complex_confluent_lambda.push_back(lam);
        }
    }
    rep.pass = rep.offending_points.empty() && rep.complex_confluent.empty() && rep.degenerate_real.empty();
    return rep;
}

}  // namespace openlimit
