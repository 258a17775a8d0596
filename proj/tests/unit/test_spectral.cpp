#include "openlimit/errors.hpp"
#include "openlimit/limitset.hpp"
#include "openlimit/spectral.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace openlimit;

namespace {

constexpr double pi = std::numbers::pi;
const LaurentSymbol hermitian({{1, 1.0}, {-1, 1.0}});
const LaurentSymbol hatano({{1, 2.0}, {-1, 1.0}});
LaurentSymbol fig3() { return decay_symbol(7, 3.5, 4.8, 1.0, 1.0); }
LaurentSymbol fig6() { return LaurentSymbol({{2, 0.6}, {1, 2.5}, {0, 3.2}, {-1, 1.6}}); }

SpectrumResult spectrum_of(std::vector<double> v) {
    SpectrumResult s;
    for (double x : v) s.eigenvalues.push_back(x);
    sort_spectrum(s.eigenvalues);
    s.n = static_cast<int>(v.size());
    return s;
}

double arcsine_cdf(double x) { return 0.5 + std::asin(std::clamp(x / 2.0, -1.0, 1.0)) / pi; }

}  // namespace

TEST_CASE("Toeplitz matrix layout") {
    const BandedToeplitz h = toeplitz_matrix(hermitian, 3);
    CHECK(h.hermitian);
    CHECK(h.entry(0, 0) == cplx(0.0));
    CHECK(h.entry(1, 0) == cplx(1.0));
    CHECK(h.entry(0, 1) == cplx(1.0));
    CHECK(h.entry(2, 0) == cplx(0.0));

    const BandedToeplitz t = toeplitz_matrix(fig6(), 5);
    CHECK_FALSE(t.hermitian);
    CHECK(t.entry(2, 0) == cplx(0.6));
    CHECK(t.entry(3, 2) == cplx(2.5));
    CHECK(t.entry(4, 4) == cplx(3.2));
    CHECK(t.entry(1, 2) == cplx(1.6));
    CHECK(t.entry(0, 2) == cplx(0.0));

    const Eigen::MatrixXcd d = toeplitz_matrix(decay_symbol(3, 3.5, 6.5, 1.0, 1.0), 10).dense();
    int diagonals = 0;
    for (int k = -9; k <= 9; ++k) diagonals += d.diagonal(k).cwiseAbs().maxCoeff() > 0.0;
    CHECK(diagonals == 7);
}

TEST_CASE("closed-form eigenvalues") {
    const SpectrumResult s = eigenvalues(toeplitz_matrix(hermitian, 4));
    std::vector<double> expect{2 * std::cos(pi / 5), 2 * std::cos(2 * pi / 5), -2 * std::cos(pi / 5),
                               -2 * std::cos(2 * pi / 5)};
    std::sort(expect.begin(), expect.end());
    for (int k = 0; k < 4; ++k) CHECK(std::abs(s.eigenvalues[k] - expect[k]) < 1e-14);

    const SpectrumResult c = eigenvalues(toeplitz_matrix(LaurentSymbol({{0, 2.5}}), 7));
    REQUIRE(c.eigenvalues.size() == 7);
    for (const cplx& z : c.eigenvalues) CHECK(z == cplx(2.5));

    CHECK_THROWS_AS(eigenvalues(toeplitz_matrix(hermitian, 20), 10), DomainError);
}

TEST_CASE("gauge is an exact similarity") {
    const BandedToeplitz t = toeplitz_matrix(fig3(), 40);
    const double r0 = optimal_gauge(fig3());
    const SpectrumResult a = eigenvalues(gauge(t, r0)), b = eigenvalues(gauge(t, 1.03 * r0));
    for (int k = 0; k < 40; ++k) CHECK(std::abs(a.eigenvalues[k] - b.eigenvalues[k]) < 1e-10);
    const Eigen::MatrixXcd g = gauge_dense(t.dense(), r0);
    CHECK((g - gauge(t, r0).dense()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("l1 distance: cos vs cos 2theta against the closed forms") {
    const LaurentSymbol f({{1, 0.5}, {-1, 0.5}}), g({{2, 0.5}, {-2, 0.5}});
    double previous = 0.0;
    for (int n : {50, 100, 200}) {
        std::vector<double> a, b;
        for (int k = 1; k <= n; ++k) a.push_back(std::cos(k * pi / (n + 1)));
        // T_n(cos 2 theta) splits into chains on the even and the odd indices.
        for (int m : {(n + 1) / 2, n / 2})
            for (int k = 1; k <= m; ++k) b.push_back(std::cos(k * pi / (m + 1)));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        double oracle = 0.0;
        for (int k = 0; k < n; ++k) oracle += std::abs(a[k] - b[k]);
        const double d = l1_spectral_distance(eigenvalues(toeplitz_matrix(f, n)), eigenvalues(toeplitz_matrix(g, n)));
        CHECK(d == doctest::Approx(oracle).epsilon(1e-10));
        CHECK(d >= previous * (1 - 1e-12));
        previous = d;
    }
    CHECK(l1_spectral_distance(spectrum_of({1, 2}), spectrum_of({2, 1})) == 0.0);
}

TEST_CASE("empirical measures") {
    const SpectralMeasure m = empirical_measure(spectrum_of(std::vector<double>(9, 0.35)), 10, 0.0, 1.0);
    CHECK(m.mass[3] == doctest::Approx(1.0));
    CHECK(m.total_mass() == doctest::Approx(1.0));

    // Closed-form eigenvalues 2 cos(k pi / (n + 1)) against the arcsine law.
    const int n = 400;
    const SpectralMeasure e = empirical_measure(eigenvalues(toeplitz_matrix(hermitian, n)), 50, -2.0, 2.0);
    const std::vector<double> cdf = e.cdf();
    for (int i = 0; i <= 50; ++i) CHECK(std::abs(cdf[i] - arcsine_cdf(-2.0 + 4.0 * i / 50)) < 2.0 / n);
}

TEST_CASE("Hermitian DoS is the arcsine law for 2 cos theta") {
    const SpectralMeasure d = hermitian_dos(hermitian, circle_curve(1.0, 4096), 100, -2.0, 2.0);
    const std::vector<double> cdf = d.cdf();
    for (int i = 0; i <= 100; ++i) CHECK(std::abs(cdf[i] - arcsine_cdf(-2.0 + 4.0 * i / 100)) < 1e-6);

    const SpectralMeasure c = hermitian_dos(LaurentSymbol({{0, 0.5}}), circle_curve(1.0, 64), 10, 0.0, 1.0);
    CHECK(c.mass[5] == doctest::Approx(1.0));
}

TEST_CASE("Hirschman density") {
    const auto [lo, hi] = std::pair{-3.0, 3.0};
    const LimitSet lh = limit_set_real_scan(hermitian, lo, hi, 512, 2048).limit;
    const SpectralMeasure h = hirschman_dos(hermitian, lh, 100, -2.0, 2.0);
    const SpectralMeasure exact = hermitian_dos(hermitian, circle_curve(1.0, 8192), 100, -2.0, 2.0);
    double l1 = 0.0;
    for (int i = 0; i < 100; ++i) l1 += std::abs(h.mass[i] - exact.mass[i]);
    CHECK(l1 < 0.02);
    CHECK(h.raw_mass == doctest::Approx(1.0).epsilon(1e-3));

    // Constant gauge: 2/z + z has the DoS of 2 sqrt2 cos theta.
    const double s = 2 * std::sqrt(2.0);
    const LimitSet lt = limit_set_real_scan(hatano, -4.0, 4.0, 512, 2048).limit;
    const SpectralMeasure t = hirschman_dos(hatano, lt, 100, -s, s);
    const SpectralMeasure ref = hermitian_dos(LaurentSymbol({{1, std::sqrt(2.0)}, {-1, std::sqrt(2.0)}}),
                                              circle_curve(1.0, 8192), 100, -s, s);
    CHECK(measure_distance(t, ref) < 0.01);

    const SpectralMeasure point = hirschman_dos(LaurentSymbol({{0, 0.5}}), LimitSet{}, 10, 0.0, 1.0);
    CHECK(point.mass[5] == doctest::Approx(1.0));
}

TEST_CASE("fig3 measures agree") {
    const GbzCurve g = gbz_extract(fig3(), std::nullopt, 1024);
    REQUIRE(g.intervals.size() == 1);
    const auto [a, b] = g.intervals[0];
    const double lo = a - 0.05 * (b - a), hi = b + 0.05 * (b - a);
    const auto [wlo, whi] = default_lambda_range(fig3());
    const SpectralMeasure hir = hirschman_dos(fig3(), limit_set_real_scan(fig3(), wlo, whi, 1024, 2048).limit, 100, lo, hi);
    const SpectralMeasure her = hermitian_dos(fig3(), g, 100, lo, hi);
    double r0 = optimal_gauge(fig3());
    const SpectralMeasure emp = empirical_measure(eigenvalues(gauge(toeplitz_matrix(fig3(), 100), r0)), 100, lo, hi);
    CHECK(measure_distance(hir, her) < 0.01);
    CHECK(measure_distance(emp, hir) < 0.05);
    CHECK(measure_distance(emp, her) < 0.05);
}

TEST_CASE("measure distances") {
    const SpectralMeasure a = empirical_measure(spectrum_of({0.0}), 10, -0.5, 1.5);
    const SpectralMeasure b = empirical_measure(spectrum_of({1.0}), 10, -0.5, 1.5);
    CHECK(measure_distance(a, a) == 0.0);
    CHECK(measure_distance(a, b) == doctest::Approx(1.0));
    CHECK_THROWS_AS(measure_distance(a, empirical_measure(spectrum_of({1.0}), 20, -0.5, 1.5)), DomainError);

    // Arcsine vs uniform on [-2, 2]: the CDF gap is extremal where the densities cross,
    // 1 / (pi sqrt(4 - x^2)) = 1/4, i.e. at x = 2 sqrt(1 - 4 / pi^2).
    const double xs = 2 * std::sqrt(1 - 4 / (pi * pi));
    const double ks = std::abs(arcsine_cdf(xs) - (xs + 2) / 4);
    CHECK(ks == doctest::Approx(0.105257).epsilon(1e-5));
    const SpectralMeasure arc = hermitian_dos(hermitian, circle_curve(1.0, 8192), 400, -2.0, 2.0);
    SpectralMeasure uni = SpectralMeasure::real_line(-2.0, 2.0, 400);
    for (int i = 0; i < 400; ++i) uni.add(uni.bin_center(i), 1.0 / 400);
    CHECK(measure_distance(arc, uni) == doctest::Approx(ks).epsilon(5e-3));
}

TEST_CASE("moments and the trace identity") {
    const std::vector<cplx> m = moments(spectrum_of({1.0, -1.0}), 2);
    CHECK(std::abs(m[0]) < 1e-15);
    CHECK(m[1] == cplx(1.0));

    const int n = 60;
    const LaurentSymbol f({{1, 0.7}, {0, 0.3}, {-1, 0.7}});
    const std::vector<cplx> mm = moments(eigenvalues(toeplitz_matrix(f, n)), 2);
    CHECK(mm[1].real() == doctest::Approx(0.3 * 0.3 + 2.0 * (n - 1) / n * 0.49).epsilon(1e-12));
}

TEST_CASE("normalised Frobenius norm") {
    const Eigen::MatrixXcd a = toeplitz_matrix(hermitian, 100).dense();
    Eigen::MatrixXcd b = a;
    CHECK(frobenius_normalized(a, b).printed == 0.0);
    b(3, 7) += 1.0;
    CHECK(frobenius_normalized(a, b).printed == doctest::Approx(0.01));
    CHECK(frobenius_normalized(a, b).conventional == doctest::Approx(0.01));

    // A c x c corner perturbation costs O(c^2 / n).
    double previous = 1e9;
    for (int n : {100, 400, 1600}) {
        const BandedToeplitz t = toeplitz_matrix(hermitian, n);
        const double v = frobenius_normalized(t.dense(), corner_perturbed(t, 4, 5)).printed;
        CHECK(v <= 16.0 * 2.0 / n);
        CHECK(v < previous);
        previous = v;
    }
}

TEST_CASE("corner perturbation is local and reproducible") {
    const BandedToeplitz t = toeplitz_matrix(fig6(), 30);
    const Eigen::MatrixXcd a = corner_perturbed(t, 3, 42), b = corner_perturbed(t, 3, 42), d = t.dense();
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j)
            if (i >= 3 || j >= 3) CHECK(a(i, j) == d(i, j));
    CHECK((a - corner_perturbed(t, 3, 43)).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("convex hull checks") {
    const SpectrumResult h = eigenvalues(toeplitz_matrix(hermitian, 200));
    CHECK(conv_hull_check(h, symbol_curve(hermitian, 1.0, 1024)).violations == 0);
    const SpectrumResult out = spectrum_of({0.0, 3.0});
    const HullCheck c = conv_hull_check(out, symbol_curve(hermitian, 1.0, 1024));
    CHECK(c.violations == 1);
    CHECK(c.max_excess == doctest::Approx(1.0));
}

TEST_CASE("eigenvector decay rates") {
    const BandedToeplitz h = toeplitz_matrix(hermitian, 100);
    const SpectrumResult sh = eigenvalues(h);
    for (int k : {30, 50, 70}) CHECK(std::abs(eigenvector_decay(h, sh.eigenvalues[k]).decay_rate) < 1e-6);

    // Eigenvectors of 2/z + z are sin(j k pi / (n + 1)) (sqrt 2)^j.
    const BandedToeplitz t = toeplitz_matrix(hatano, 200);
    const SpectrumResult st = eigenvalues(gauge(t, std::sqrt(2.0)));
    for (int k : {60, 100, 140}) {
        const DecayFit d = eigenvector_decay(t, st.eigenvalues[k], std::sqrt(2.0));
        CHECK(d.growth_rate == doctest::Approx(std::log(std::sqrt(2.0))).epsilon(1e-6));
        CHECK(d.decay_rate == doctest::Approx(-d.growth_rate));
    }
    CHECK_THROWS_AS(eigenvector_decay(toeplitz_matrix(hatano, 20), 0.0), DomainError);
}

TEST_CASE("skin-effect rates follow the GBZ radius") {
    const GbzCurve g = gbz_extract(fig6(), std::nullopt, 2048);
    const BandedToeplitz t = toeplitz_matrix(fig6(), 120);
    const double r0 = optimal_gauge(fig6());
    const SpectrumResult s = eigenvalues(gauge(t, r0));
    int left = 0, right = 0;
    for (int k = 30; k < 90; k += 6) {
        const DecayFit d = eigenvector_decay(t, s.eigenvalues[k], r0);
        const double predicted = -std::log(gbz_radius_at(g, d.lambda.real()));
        CHECK(std::abs(d.decay_rate - predicted) <= 0.1 * std::abs(predicted));
        (predicted > 0 ? right : left) += 1;
    }
    CHECK(left + right == 10);
}

TEST_CASE("similarity matrix") {
    const double r = 1.7;
    const Eigen::MatrixXcd m = similarity_matrix_entries(circle_curve(r, 256), -4, 4, -4, 4);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) CHECK(std::abs(m(i, j) - (i == j ? std::pow(r, j - 4) : 0.0)) < 1e-12);
    const Eigen::MatrixXcd id = similarity_matrix_entries(circle_curve(1.0, 64), 0, 5, 0, 5);
    CHECK((id - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK_THROWS_AS(similarity_matrix_entries(circle_curve(1.0, 64), 0, 31, 0, 1), DomainError);

    // Column j holds the Fourier coefficients of the positive function r(theta)^j, so no entry
    // can exceed the diagonal one.
    const GbzCurve g = gbz_extract(fig3(), std::nullopt, 2048);
    const Eigen::MatrixXcd f = similarity_matrix_entries(g, -10, 10, -10, 10);
    for (int j = 0; j < 21; ++j) {
        Eigen::Index at = 0;
        f.col(j).cwiseAbs().maxCoeff(&at);
        CHECK(at == j);
        CHECK(std::abs(f(j, j).imag()) < 1e-12 * std::abs(f(j, j)));
    }
}

TEST_CASE("convolution identity") {
    CHECK(convolution_identity_residual(circle_curve(1.3, 256), 2, 1, -1, 6).residual < 1e-13);
    CHECK(convolution_identity_residual(circle_curve(1.0, 64), 0, 0, 0, 4).residual < 1e-14);

    const GbzCurve g = gbz_extract(fig3(), std::nullopt, 2048);
    double previous = 0.0;
    for (int K : {10, 20, 40}) {
        const ConvolutionResidual r = convolution_identity_residual(g, 1, 2, 1, K);
        if (K > 10) CHECK((r.residual <= previous / 10 || r.residual <= 10 * r.roundoff));
        previous = r.residual;
    }
    CHECK_THROWS_AS(convolution_identity_residual(g, 11, 0, 0, 4), DomainError);
}
