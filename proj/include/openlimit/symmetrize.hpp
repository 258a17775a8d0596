#pragma once

#include "openlimit/limitset.hpp"
#include "openlimit/numerics.hpp"
#include "openlimit/symbol.hpp"

#include <optional>
#include <vector>

namespace openlimit {

inline constexpr double kHermitianTolerance = 1e-6;

/**
 * Fourier coefficients c_k, |k| <= K, of a function on the circle, with c_k the coefficient
 * of e^{ik theta}. As a Toeplitz symbol this is f = sum_k c_k z^k, so c_k lands on diagonal
 * i - j = -k.
 */
struct FourierSeries {
    int K = 0;
    std::vector<cplx> coeffs;  // index k + K
    int sample_count = 0;
    int bandwidth_t = 0;
    double tail_norm = 0.0;
    bool hermitian = false;
    double hermitian_defect = 0.0;  // max_k |c_{-k} - conj(c_k)|
    double hermitian_correction = 0.0;

    cplx at(int k) const { return coeffs[static_cast<std::size_t>(k + K)]; }
    cplx& at(int k) { return coeffs[static_cast<std::size_t>(k + K)]; }
    cplx eval(double theta) const;
};

// Recomputes hermitian_defect and the hermitian flag against tol.
void update_hermitian_flag(FourierSeries& s, double tol = kHermitianTolerance);

/**
 * c_k = (1/2pi) sum_j w_j f(p_j) e^{-ik theta_j} over the curve samples, with pairwise
 * summation in sample order so that the parallel and serial paths agree bit for bit.
 * Throws UnsupportedError for a non-polar curve and DomainError when N < 2K + 1.
 */
FourierSeries nudft_coeffs(const GbzCurve& curve, const LaurentSymbol& sym, int K, Exec exec = Exec::parallel);

// The same coefficients for arbitrary sample values instead of f(p_j).
FourierSeries nudft_values(const GbzCurve& curve, const std::vector<cplx>& values, int K,
                           Exec exec = Exec::parallel);

/**
 * Automatic band: with m_k = max(|c_k|, |c_{-k}|), the first k >= 2 such that no index in
 * k..k+4 drops below m_{k-1} marks the start of the noise floor, and t = k - 1. Capped at
 * min(K, N/4).
 */
int auto_truncation(const FourierSeries& s);

// Zeroes |k| > t and sets tail_norm = sum_{t < |k| <= K} |c_k|. t = nullopt selects auto.
FourierSeries truncate_series(const FourierSeries& s, std::optional<int> t);

// c_k <- (c_k + conj(c_{-k})) / 2. Refuses a series whose hermitian flag is false.
FourierSeries hermitian_symmetrize(const FourierSeries& s);

// Exact series of f on the unit circle: c_k = a_{-k}.
FourierSeries series_of_symbol(const LaurentSymbol& sym, int K);

// The Laurent symbol with a_k = c_{-k}; entries with |c_k| == 0 are dropped.
LaurentSymbol symbol_of_series(const FourierSeries& s);

// g(theta) = sum c_k e^{ik theta} at n uniform angles. For a Hermitian series the extrema
// are refined by golden-section search and appended, so that the sampled range is exact.
PlaneCurve series_curve(const FourierSeries& s, int n);

}  // namespace openlimit
