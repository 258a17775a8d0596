#pragma once

#include "openlimit/geometry.hpp"
#include "openlimit/limitset.hpp"
#include "openlimit/symbol.hpp"
#include "openlimit/symmetrize.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace openlimit {

inline constexpr int kEigenCap = 4000;

// n x n Toeplitz matrix with entry (i, j) = band[i - j].
struct BandedToeplitz {
    int n = 0;
    std::map<int, cplx> band;
    bool hermitian = false;

    cplx entry(int i, int j) const;
    bool real() const;
    Eigen::MatrixXcd dense() const;
};

BandedToeplitz toeplitz_matrix(const LaurentSymbol& sym, int n);
// band[k] = c_{-k}; the hermitian flag is taken from the series.
BandedToeplitz toeplitz_matrix(const FourierSeries& series, int n);

// D^{-1} T D with D = diag(r^j), i.e. the matrix of z -> f(r z). Exactly similar to T.
BandedToeplitz gauge(const BandedToeplitz& mat, double r);
Eigen::MatrixXcd gauge_dense(const Eigen::MatrixXcd& m, double r);

struct SpectrumResult {
    std::vector<cplx> eigenvalues;  // sorted by (Re, Im)
    int n = 0;
    bool hermitian = false;
};

void sort_spectrum(std::vector<cplx>& ev);

// Hermitian input goes to heevd/syevd and returns exactly real eigenvalues; otherwise geev.
// Throws DomainError above the cap.
SpectrumResult eigenvalues(const BandedToeplitz& mat, int cap = kEigenCap);
SpectrumResult eigenvalues(const Eigen::MatrixXcd& m, bool hermitian, int cap = kEigenCap);

// sum_k |lambda_k - tau_k| over both spectra in sorted order; no 1/n factor.
double l1_spectral_distance(const SpectrumResult& a, const SpectrumResult& b);

/**
 * Histogram measure on an interval [lo, hi] or a box, with mass that falls outside kept in
 * underflow/overflow cells so that nothing is lost.
 */
struct SpectralMeasure {
    enum class Kind { real, planar };
    Kind kind = Kind::real;
    double lo = 0.0, hi = 1.0;  // real support
    Box box;                    // planar support
    int nx = 0, ny = 1;
    std::vector<double> mass;
    double underflow = 0.0;
    double overflow = 0.0;
    double raw_mass = 1.0;  // total before normalisation

    static SpectralMeasure real_line(double lo, double hi, int bins);
    static SpectralMeasure plane(const Box& box, int nx, int ny);

    double total_mass() const;
    double bin_center(int i) const;
    // CDF at the bin edges lo + i (hi - lo) / nx, i = 0..nx, plus the final value 1.
    std::vector<double> cdf() const;
    void add(cplx at, double m);
    void normalize();
};

SpectralMeasure empirical_measure(const SpectrumResult& s, int bins, double lo, double hi);
SpectralMeasure empirical_measure(const SpectrumResult& s, const Box& box, int nx, int ny);

/**
 * Pushforward of d theta / 2pi through theta -> values(theta) on a closed curve. Between
 * consecutive samples the value is taken linear in theta, so each segment spreads its mass
 * uniformly over the interval it sweeps.
 */
SpectralMeasure pushforward_measure(const GbzCurve& curve, const std::vector<double>& values, int bins, double lo,
                                    double hi);

// Pushforward of the angle measure through f(p(e^{i theta})). Needs a polar curve.
SpectralMeasure hermitian_dos(const LaurentSymbol& sym, const GbzCurve& curve, int bins, double lo, double hi);

struct DensityNode {
    cplx lambda;
    double density = 0.0;
    double ds = 0.0;
};

/**
 * Limiting eigenvalue density at the nodes of each arc:
 * rho = (1/2pi) |phi(lambda + h nu) + phi(lambda - h nu) - 2 phi(lambda)| / h with phi the sum
 * of log|z_k| over the largest lower() roots and nu the unit normal. h is h_rel times the
 * local node spacing. Arc end nodes get zero weight since the density is singular there.
 */
std::vector<DensityNode> hirschman_nodes(const LaurentSymbol& sym, const LimitSet& limit, double h_rel = 1e-4);

// Nodes binned by real part. A constant symbol gives the point mass at its value.
SpectralMeasure hirschman_dos(const LaurentSymbol& sym, const LimitSet& limit, int bins, double lo, double hi,
                              double h_rel = 1e-4);
SpectralMeasure hirschman_dos(const LaurentSymbol& sym, const LimitSet& limit, const Box& box, int nx, int ny,
                              double h_rel = 1e-4);

// Kolmogorov-Smirnov statistic on the bin-edge CDFs for real measures, total variation
// (half the l1 difference) for planar ones. Throws DomainError on different binnings.
double measure_distance(const SpectralMeasure& a, const SpectralMeasure& b);

// (1/n) sum_k lambda_k^s for s = 1..s_max.
std::vector<cplx> moments(const SpectrumResult& s, int s_max);

struct FrobeniusNorms {
    double printed = 0.0;       // (1/n) sum |M_ij|
    double conventional = 0.0;  // (1/n) sum |M_ij|^2
};

FrobeniusNorms frobenius_normalized(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

struct HullCheck {
    int violations = 0;
    double max_excess = 0.0;
};

// Eigenvalues farther than tol outside conv(range_curve). tol < 0 selects 1e-9 max(1, diameter).
HullCheck conv_hull_check(const SpectrumResult& s, const PlaneCurve& range_curve, double tol = -1.0);

struct DecayFit {
    cplx lambda;
    double growth_rate = 0.0;  // v_j ~ e^{growth_rate j}
    double decay_rate = 0.0;   // -growth_rate
    double r2 = 0.0;
    double gauge = 1.0;
    int iterations = 0;
    bool envelope = true;  // false when the plain log|v_j| fit was used
    std::vector<double> log_profile;  // ln|v_j| - max_j ln|v_j|
};

/**
 * Growth rate of the eigenvector for lambda.
 *
 * The eigenvector is computed by inverse iteration on the gauged matrix D^{-1} T D, with the
 * gauge updated to the fitted rate until the gauged vector is flat, so that the fit never
 * reads components below the rounding floor. The rate is the least-squares slope, over the
 * interior third of indices, of (1/2) log|u_j^2 - u_{j-1} u_{j+1}|; for a standing wave
 * c r^j sin(j theta + phi) this envelope is exactly c^2 r^{2j} sin^2 theta.
 */
DecayFit eigenvector_decay(const BandedToeplitz& mat, cplx lambda, double gauge_hint = 1.0);

// GBZ radius at real energy lambda, interpolated linearly in lambda. Both middle roots of an
// energy share one modulus, so the radius is a function of lambda alone.
double gbz_radius_at(const GbzCurve& curve, double lambda);

// Entries (M)_{ij} = (1/2pi) sum_n w_n p_n^j e^{-i i theta_n}, cached over a rectangle.
class SimilarityTable {
public:
    SimilarityTable(const GbzCurve& curve, int row_max, int col_min, int col_max, Exec exec = Exec::parallel);
    cplx operator()(int i, int j) const;
    int row_max() const { return row_max_; }

private:
    int row_max_, col_min_, col_max_;
    std::vector<cplx> data_;
};

// Block i_lo..i_hi x j_lo..j_hi of M. Indices are limited to |i|, |j| <= 30.
Eigen::MatrixXcd similarity_matrix_entries(const GbzCurve& curve, int i_lo, int i_hi, int j_lo, int j_hi);

struct ConvolutionResidual {
    double residual = 0.0;
    double roundoff = 0.0;  // 64 eps sum_k |M_{i-k,k'}| |M_{k,j}|
};

// |sum_{|k| <= K} M_{i-k,k'} M_{k,j} - M_{i,k'+j}|. The table must cover rows up to |i| + K.
ConvolutionResidual convolution_identity_residual(const SimilarityTable& m, int i, int j, int kp, int K_sum);
ConvolutionResidual convolution_identity_residual(const GbzCurve& curve, int i, int j, int kp, int K_sum);

// Dense T with its top-left c x c block replaced by uniform(-1, 1) entries.
Eigen::MatrixXcd corner_perturbed(const BandedToeplitz& mat, int c, std::uint64_t seed);

}  // namespace openlimit
