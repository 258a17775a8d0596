#pragma once

#include "openlimit/symbol.hpp"

#include <optional>
#include <vector>

namespace openlimit {

inline constexpr double kGapTolerance = 1e-8;
inline constexpr double kConfluentTolerance = 1e-6;

struct CriticalSet {
    std::vector<cplx> points;
    std::vector<cplx> second_derivative_values;
};

/**
 * Roots of z^p (f(z) - lambda), p = sym.upper(), sorted by ascending modulus.
 *
 * Moduli equal to within a relative 1e-12 are treated as ties and ordered by principal
 * argument in (-pi, pi]. The limit-set condition compares roots p and p + 1 (1-based),
 * stored here at split - 1 and split.
 */
struct RootProfile {
    cplx lambda;
    std::vector<cplx> roots;
    int split = 0;
    double middle_gap = 0.0;
    std::optional<double> outer_gap;
    std::vector<bool> confluent_flags;

    cplx lower_middle() const { return roots[split - 1]; }
    cplx upper_middle() const { return roots[split]; }
};

// Ascending coefficients c_0..c_D of z^p (f(z) - lambda).
std::vector<cplx> root_polynomial(const LaurentSymbol& sym, cplx lambda);

// Sort by modulus with the tie-break described on RootProfile.
void sort_roots(std::vector<cplx>& roots);

/**
 * Reusable solver for one symbol. Caches the polynomial layout and the critical set so
 * that grid sweeps do not recompute them; const methods are safe to call concurrently.
 */
class RootSolver {
public:
    explicit RootSolver(const LaurentSymbol& sym, double confluent_tol = kConfluentTolerance);

    const LaurentSymbol& symbol() const { return sym_; }
    int degree() const { return degree_; }
    int split() const { return sym_.upper(); }
    const CriticalSet& critical() const { return critical_; }

    // Sorted, Newton-polished roots without gap metrics or flags.
    std::vector<cplx> roots(cplx lambda) const;
    RootProfile profile(cplx lambda) const;
    // Relative gap between the two middle moduli of an already sorted root list.
    double middle_gap(const std::vector<cplx>& sorted) const;

private:
    LaurentSymbol sym_;
    int degree_ = 0;
    bool real_ = false;
    double confluent_tol_;
    CriticalSet critical_;
};

RootProfile root_profile(const LaurentSymbol& sym, cplx lambda);

// Zeros of f' (roots of z^{p+1} f'(z)), with f'' evaluated at each.
CriticalSet critical_points(const LaurentSymbol& sym);

// Polynomial roots from companion-matrix eigenvalues followed by guarded Newton steps.
// Coefficients are ascending; the leading one must be nonzero.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);

struct Assumption1Report {
    bool pass = true;
    // GBZ samples that sit on a non-real critical point.
    std::vector<cplx> offending_points;
    // Non-real critical points that are themselves middle roots at a real energy: a complex
    // confluent pair lying on the GBZ.
    std::vector<cplx> complex_confluent;
    std::vector<double> complex_confluent_lambda;
    // Real critical points on the GBZ with vanishing second derivative.
    std::vector<cplx> degenerate_real;
};

/**
 * Checks that f' does not vanish at non-real points of the GBZ and that f'' does not vanish
 * at its real critical points.
 *
 * Besides the sample-distance test, every non-real critical point with (numerically) real
 * critical value is tested for membership in the GBZ, since a confluent pair is generally
 * missed by a finite sample set.
 */
Assumption1Report assumption1_check(const LaurentSymbol& sym, const std::vector<cplx>& gbz_points,
                                    double tol = kConfluentTolerance);

}  // namespace openlimit
