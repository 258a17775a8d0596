#pragma once

#include "openlimit/geometry.hpp"
#include "openlimit/numerics.hpp"
#include "openlimit/roots.hpp"
#include "openlimit/symbol.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace openlimit {

struct LimitSet {
    std::vector<std::vector<cplx>> arcs;
    std::vector<cplx> degenerate_points;
    double max_imag = 0.0;
    bool connected_estimate = true;

    std::vector<cplx> points() const;
    std::size_t size() const;
};

struct GbzSample {
    double theta = 0.0;
    double r = 0.0;
    double lambda = 0.0;
    double beta = 0.0;  // -ln r
    // Angular quadrature weight: the share of d theta this sample represents.
    double weight = 0.0;

    cplx z() const { return std::polar(r, theta); }
};

struct PolarReport {
    bool is_polar = false;
    int winding = 0;
    bool monotone_lambda = false;
    std::vector<int> multivalued_bins;
    int max_gap_bins = 0;
};

struct GbzCurve {
    std::vector<GbzSample> samples;  // sorted by theta
    std::vector<std::pair<double, double>> intervals;  // real energies carrying the samples
    // True when weights come from the exact parametrisation by energy; otherwise they are the
    // periodic trapezoid (theta_{j+1} - theta_{j-1}) / 2.
    bool exact_weights = false;
    bool is_polar = false;
    int winding_about_origin = 0;
    bool assumption1_pass = false;
    PolarReport polar;
    Assumption1Report assumption1;

    std::size_t size() const { return samples.size(); }
    std::vector<double> thetas() const;
    std::vector<cplx> points() const;
    std::vector<double> weights() const;
    double min_radius() const;
    double max_radius() const;
};

// Builds a curve from explicit points (e.g. a circle), with periodic trapezoid weights.
GbzCurve curve_from_points(const std::vector<cplx>& z, const std::vector<double>& lambda = {});

// The unit circle with n uniform samples; the natural GBZ of a Hermitian or constant symbol.
GbzCurve circle_curve(double r, int n);

struct RealScanResult {
    LimitSet limit;
    GbzCurve curve;
};

/**
 * Scans real energies for the equal-middle-moduli condition.
 *
 * Membership of each coarse grid point is decided by middle_gap < kGapTolerance, and every
 * change of membership between neighbours is refined by bisection. Each resulting interval
 * is then resampled at n_samples cosine-clustered energies (endpoints excluded) and both
 * middle roots are emitted, weighted by |d theta / d lambda| d lambda.
 */
RealScanResult limit_set_real_scan(const LaurentSymbol& sym, double lambda_lo, double lambda_hi,
                                   int n_grid, int n_samples = 0);

// Real-part range of f on the optimal gauge circle, padded by 10% on each side.
std::pair<double, double> default_lambda_range(const LaurentSymbol& sym);

// Real scan plus polar test and Assumption 1 check. is_polar also requires that no complex
// confluent pair sits on the curve, since such a point splits it into separate pieces.
GbzCurve gbz_extract(const LaurentSymbol& sym, std::optional<std::pair<double, double>> lambda_range,
                     int n_samples, int angle_bins = 256, int n_grid = 1024);

PolarReport polar_curve_test(const GbzCurve& curve, int angle_bins = 256, double radius_tol = 0.05);

struct BandPoint {
    double alpha;
    double beta;
    double lambda;
};

std::vector<BandPoint> band_structure(const LaurentSymbol& sym, const GbzCurve& curve);

// Root sets at every node of a grid (row-major), sorted as in RootProfile.
std::vector<std::vector<cplx>> root_grid(const RootSolver& solver, const Grid& grid, Exec exec = Exec::parallel);

/**
 * Limit set inside a window of the plane.
 *
 * Roots are computed at every cell centre. Along each grid edge the roots at the two ends
 * are matched; if the set of branches forming the p smallest changes, the edge is bisected
 * while tracking the two exchanged branches until their moduli agree. Points that pass a
 * fresh middle_gap < kGapTolerance check are chained into arcs.
 */
LimitSet limit_set_grid(const LaurentSymbol& sym, const Box& box, int n_grid, Exec exec = Exec::parallel);

// Radius r minimising the area of conv f(rT).
double optimal_gauge(const LaurentSymbol& sym);

// Bounding box of f over the annulus r_min <= |z| <= r_max (16 rings), padded by `pad` times
// the larger side and widened so that neither side is below a quarter of the other.
Box annulus_box(const LaurentSymbol& sym, double r_min, double r_max, double pad = 0.05);

// annulus_box over the range of GBZ radii; falls back to the optimal gauge circle when the
// symbol has no real limit points.
Box default_box(const LaurentSymbol& sym);

Indicator winding_region(const LaurentSymbol& sym, double r, const Grid& grid, Exec exec = Exec::parallel);

struct OperatorSpectrum {
    PlaneCurve curve;
    Indicator region;
};

OperatorSpectrum operator_spectrum(const LaurentSymbol& sym, double r, const Grid& grid, int curve_samples = 4096);

// count log-spaced radii from r_min to r_max inclusive.
std::vector<double> log_radius_grid(double r_min, double r_max, int count);

/**
 * Intersection over r of sigma(T(f(rT))), rasterised: a cell is kept iff for every r its
 * centre has nonzero winding with respect to f(rT) or lies within tol of that curve.
 * tol < 0 selects one cell diagonal. Independent of the root finder.
 */
Indicator ss_intersection_oracle(const LaurentSymbol& sym, const std::vector<double>& r_grid, const Grid& grid,
                                 int curve_samples = 4096, double tol = -1.0, Exec exec = Exec::parallel);

// Middle-root moduli at the given limit-set points; used to bracket the oracle's radii.
std::pair<double, double> middle_radius_range(const LaurentSymbol& sym, const std::vector<cplx>& lambdas);

}  // namespace openlimit
