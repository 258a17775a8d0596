#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace openlimit {

using cplx = std::complex<double>;

/**
 * Finite Laurent polynomial f(z) = sum_k a_k z^{-k}.
 *
 * The index convention follows the Toeplitz matrix: a_k sits on diagonal i - j = k.
 * Zero coefficients are dropped on construction, so upper() and lower() are always the
 * true extents. The two extents may differ (f = 0.6z^-2 + 2.5z^-1 + 3.2 + 1.6z has
 * upper() = 2, lower() = 1).
 */
class LaurentSymbol {
public:
    LaurentSymbol() = default;
    explicit LaurentSymbol(const std::map<int, cplx>& coeffs);

    // Largest k > 0 with a_k != 0 (order of the pole of f at 0), or 0.
    int upper() const { return upper_; }
    // Largest k > 0 with a_{-k} != 0 (order of the pole of f at infinity), or 0.
    int lower() const { return lower_; }
    int bandwidth() const { return upper_ > lower_ ? upper_ : lower_; }

    // Smallest and largest index carrying a coefficient; 0 for the zero symbol.
    int min_index() const;
    int max_index() const;

    cplx coeff(int k) const;
    const std::map<int, cplx>& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }
    bool real_coefficients() const;
    bool is_constant() const { return upper_ == 0 && lower_ == 0; }

    // Both sides carry a coefficient, so z^upper (f(z) - lambda) has degree upper + lower
    // and no root at 0.
    bool two_sided() const { return upper_ > 0 && lower_ > 0; }

    // The symbol z -> f(r z), i.e. a_k -> a_k r^{-k}.
    LaurentSymbol scaled(double r) const;

    std::optional<double> kappa;
    std::optional<double> rho;

private:
    std::map<int, cplx> coeffs_;
    int upper_ = 0;
    int lower_ = 0;
};

LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b);
LaurentSymbol operator*(cplx s, const LaurentSymbol& a);
bool operator==(const LaurentSymbol& a, const LaurentSymbol& b);

// Horner evaluation in z and 1/z. Throws DomainError at z = 0 when the symbol has a pole there.
cplx eval(const LaurentSymbol& sym, cplx z);

// Term-wise derivative of the given order (1 or 2), expressed in the same index convention:
// d/dz a_k z^{-k} = -k a_k z^{-(k+1)}, so the derivative's coefficient at k + 1 is -k a_k.
LaurentSymbol derivative(const LaurentSymbol& sym, int order);

/**
 * Algebraic-decay family: a_k = (k + offset)^{-kappa} and a_{-k} = (k + offset)^{-rho}
 * for 1 <= k <= m, a_0 = a0.
 *
 * offset = 0 is the plain power law; the figure presets use offset = 1, a0 = 1.
 */
LaurentSymbol decay_symbol(int m, double kappa, double rho, cplx a0 = 0.0, double offset = 0.0);

// Ordered samples (theta, w). `closed` means the last sample connects back to the first;
// the starting point is not repeated at the end.
struct PlaneCurve {
    std::vector<double> theta;
    std::vector<cplx> points;
    bool closed = true;

    std::size_t size() const { return points.size(); }
    double diameter() const;
};

// f(r e^{i theta}) for theta_j = 2 pi j / n_samples, j = 0..n_samples-1.
PlaneCurve symbol_curve(const LaurentSymbol& sym, double radius, int n_samples);

// f evaluated on explicit points z_j carried with their angles.
PlaneCurve symbol_curve(const LaurentSymbol& sym, const std::vector<double>& theta,
                        const std::vector<cplx>& z);

// Winding number of a closed curve about lambda, counterclockwise positive.
// on_curve_tol < 0 selects the default 1e-9 times the curve diameter.
int winding(const PlaneCurve& curve, cplx lambda, double on_curve_tol = -1.0);

}  // namespace openlimit
