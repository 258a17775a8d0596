#include "openlimit/spectral.hpp"

#include "openlimit/errors.hpp"
#include "openlimit/linalg.hpp"
#include "openlimit/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace openlimit {

namespace {

constexpr double kPi = std::numbers::pi;

bool lex_less(cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); }

}  // namespace

cplx BandedToeplitz::entry(int i, int j) const {
    const auto it = band.find(i - j);
    return it == band.end() ? cplx(0.0) : it->second;
}

bool BandedToeplitz::real() const {
    return std::all_of(band.begin(), band.end(), [](const auto& kv) { return kv.second.imag() == 0.0; });
}

Eigen::MatrixXcd BandedToeplitz::dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& [k, a] : band)
        for (int i = std::max(0, k); i < n && i - k < n; ++i) m(i, i - k) = a;
    return m;
}

BandedToeplitz toeplitz_matrix(const LaurentSymbol& sym, int n) {
    if (n < 1) throw DomainError("matrix dimension must be positive");
    BandedToeplitz t;
    t.n = n;
    for (const auto& [k, a] : sym.coeffs())
        if (std::abs(k) < n) t.band[k] = a;
    t.hermitian = true;
    for (const auto& [k, a] : t.band)
        if (t.entry(0, k) != std::conj(a)) t.hermitian = false;
    return t;
}

BandedToeplitz toeplitz_matrix(const FourierSeries& series, int n) {
    if (n < 1) throw DomainError("matrix dimension must be positive");
    BandedToeplitz t;
    t.n = n;
    for (int k = -series.K; k <= series.K; ++k)
        if (series.at(-k) != cplx(0.0) && std::abs(k) < n) t.band[k] = series.at(-k);
    t.hermitian = series.hermitian;
    if (t.hermitian) {
        // The series is Hermitian only within tolerance; make the matrix exactly so.
        std::map<int, cplx> band;
        for (const auto& [k, a] : t.band) {
            if (k < 0) continue;
            band[k] = k == 0 ? cplx(a.real(), 0.0) : a;
            if (k > 0) band[-k] = std::conj(a);
        }
        t.band = std::move(band);
    }
    return t;
}

BandedToeplitz gauge(const BandedToeplitz& mat, double r) {
    if (!(r > 0.0)) throw DomainError("gauge radius must be positive");
    BandedToeplitz g = mat;
    for (auto& [k, a] : g.band) a *= std::pow(r, -k);
    g.hermitian = r == 1.0 && mat.hermitian;
    return g;
}

Eigen::MatrixXcd gauge_dense(const Eigen::MatrixXcd& m, double r) {
    if (!(r > 0.0)) throw DomainError("gauge radius must be positive");
    Eigen::MatrixXcd g = m;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) g(i, j) *= std::pow(r, static_cast<double>(j - i));
    return g;
}

void sort_spectrum(std::vector<cplx>& ev) { std::sort(ev.begin(), ev.end(), lex_less); }

SpectrumResult eigenvalues(const Eigen::MatrixXcd& m, bool hermitian, int cap) {
    const int n = static_cast<int>(m.rows());
    if (n > cap) throw DomainError("matrix dimension " + std::to_string(n) + " exceeds the eigensolver cap " + std::to_string(cap));
    const bool real = m.imag().cwiseAbs().maxCoeff() == 0.0;
    SpectrumResult res;
    res.n = n;
    res.hermitian = hermitian;
    if (hermitian) {
        const std::vector<double> w =
            real ? linalg::eigenvalues_symmetric(m.real()) : linalg::eigenvalues_hermitian(m);
        res.eigenvalues.assign(w.begin(), w.end());
    } else {
        res.eigenvalues = real ? linalg::eigenvalues_real(m.real()) : linalg::eigenvalues_general(m);
    }
    sort_spectrum(res.eigenvalues);
    return res;
}

SpectrumResult eigenvalues(const BandedToeplitz& mat, int cap) {
    if (mat.n > cap) throw DomainError("matrix dimension " + std::to_string(mat.n) + " exceeds the eigensolver cap " + std::to_string(cap));
    return eigenvalues(mat.dense(), mat.hermitian, cap);
}

double l1_spectral_distance(const SpectrumResult& a, const SpectrumResult& b) {
    if (a.eigenvalues.size() != b.eigenvalues.size()) throw DomainError("spectra of different sizes");
    std::vector<cplx> x = a.eigenvalues, y = b.eigenvalues;
    sort_spectrum(x);
    sort_spectrum(y);
    std::vector<double> d(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) d[k] = std::abs(x[k] - y[k]);
    return pairwise_sum(d);
}

SpectralMeasure SpectralMeasure::real_line(double lo, double hi, int bins) {
    if (!(hi > lo) || bins < 1) throw DomainError("invalid measure support");
    SpectralMeasure m;
    m.kind = Kind::real;
    m.lo = lo;
    m.hi = hi;
    m.nx = bins;
    m.ny = 1;
    m.mass.assign(static_cast<std::size_t>(bins), 0.0);
    return m;
}

SpectralMeasure SpectralMeasure::plane(const Box& box, int nx, int ny) {
    if (!(box.width() > 0.0 && box.height() > 0.0) || nx < 1 || ny < 1) throw DomainError("invalid measure support");
    SpectralMeasure m;
    m.kind = Kind::planar;
    m.box = box;
    m.nx = nx;
    m.ny = ny;
    m.mass.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    return m;
}

double SpectralMeasure::total_mass() const {
    return pairwise_sum(mass) + underflow + overflow;
}

double SpectralMeasure::bin_center(int i) const { return lo + (i + 0.5) * (hi - lo) / nx; }

std::vector<double> SpectralMeasure::cdf() const {
    std::vector<double> f;
    f.reserve(mass.size() + 2);
    double acc = underflow;
    f.push_back(acc);
    for (double m : mass) f.push_back(acc += m);
    f.push_back(acc + overflow);
    return f;
}

void SpectralMeasure::add(cplx at, double m) {
    if (kind == Kind::real) {
        const double x = at.real();
        if (x < lo) underflow += m;
        else if (x > hi) overflow += m;
        else mass[std::min(nx - 1, static_cast<int>((x - lo) / (hi - lo) * nx))] += m;
        return;
    }
    const double x = at.real(), y = at.imag();
    if (x < box.re_lo || x > box.re_hi || y < box.im_lo || y > box.im_hi) {
        overflow += m;
        return;
    }
    const int ix = std::min(nx - 1, static_cast<int>((x - box.re_lo) / box.width() * nx));
    const int iy = std::min(ny - 1, static_cast<int>((y - box.im_lo) / box.height() * ny));
    mass[static_cast<std::size_t>(iy) * nx + ix] += m;
}

void SpectralMeasure::normalize() {
    const double t = total_mass();
    raw_mass = t;
    if (!(t > 0.0)) throw NumericalError("measure has no mass");
    for (double& m : mass) m /= t;
    underflow /= t;
    overflow /= t;
}

SpectralMeasure empirical_measure(const SpectrumResult& s, int bins, double lo, double hi) {
    if (bins < 10) throw DomainError("empirical measure needs at least 10 bins");
    SpectralMeasure m = SpectralMeasure::real_line(lo, hi, bins);
    const double w = 1.0 / static_cast<double>(s.eigenvalues.size());
    for (const cplx& z : s.eigenvalues) m.add(z, w);
    return m;
}

SpectralMeasure empirical_measure(const SpectrumResult& s, const Box& box, int nx, int ny) {
    if (nx * ny < 10) throw DomainError("empirical measure needs at least 10 bins");
    SpectralMeasure m = SpectralMeasure::plane(box, nx, ny);
    const double w = 1.0 / static_cast<double>(s.eigenvalues.size());
    for (const cplx& z : s.eigenvalues) m.add(z, w);
    return m;
}

namespace {

// Spreads mass m uniformly over [a, b] (a point mass when a == b).
void add_uniform(SpectralMeasure& meas, double a, double b, double m) {
    if (a > b) std::swap(a, b);
    const double len = b - a;
    if (len <= 1e-15 * (1.0 + std::abs(a))) {
        meas.add(cplx(0.5 * (a + b), 0.0), m);
        return;
    }
    const double dens = m / len;
    if (a < meas.lo) meas.underflow += dens * (std::min(b, meas.lo) - a);
    if (b > meas.hi) meas.overflow += dens * (b - std::max(a, meas.hi));
    const double ca = std::max(a, meas.lo), cb = std::min(b, meas.hi);
    if (cb <= ca) return;
    const double w = (meas.hi - meas.lo) / meas.nx;
    const int i0 = std::min(meas.nx - 1, static_cast<int>((ca - meas.lo) / w));
    const int i1 = std::min(meas.nx - 1, static_cast<int>((cb - meas.lo) / w));
    for (int i = i0; i <= i1; ++i) {
        const double e0 = std::max(ca, meas.lo + i * w), e1 = std::min(cb, meas.lo + (i + 1) * w);
        if (e1 > e0) meas.mass[i] += dens * (e1 - e0);
    }
}

}  // namespace

SpectralMeasure pushforward_measure(const GbzCurve& curve, const std::vector<double>& values, int bins, double lo,
                                    double hi) {
    if (values.size() != curve.size() || values.empty()) throw DomainError("one value per curve sample required");
    SpectralMeasure m = SpectralMeasure::real_line(lo, hi, bins);
    const std::size_t n = values.size();
    if (n == 1) {
        m.add(cplx(values[0], 0.0), 1.0);
        return m;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = (j + 1) % n;
        double d = curve.samples[k].theta - curve.samples[j].theta;
        if (k == 0) d += 2.0 * kPi;
        add_uniform(m, values[j], values[k], d / (2.0 * kPi));
    }
    m.normalize();
    return m;
}

SpectralMeasure hermitian_dos(const LaurentSymbol& sym, const GbzCurve& curve, int bins, double lo, double hi) {
    if (!curve.is_polar) throw UnsupportedError("the Hermitian density of states needs a polar curve");
    std::vector<double> v(curve.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = eval(sym, curve.samples[j].z()).real();
    return pushforward_measure(curve, v, bins, lo, hi);
}

std::vector<DensityNode> hirschman_nodes(const LaurentSymbol& sym, const LimitSet& limit, double h_rel) {
    if (!sym.two_sided()) throw DomainError("Hirschman density needs a two-sided symbol");
    const RootSolver solver(sym);
    const int p = sym.upper(), q = sym.lower();
    auto phi = [&](cplx lam) {
        const std::vector<cplx> r = solver.roots(lam);
        double s = 0.0;
        for (int k = p; k < p + q; ++k) s += std::log(std::abs(r[k]));
        return s;
    };
    std::vector<DensityNode> nodes;
    for (const auto& arc : limit.arcs) {
        if (arc.size() < 3) throw DomainError("limit-set arcs too sparse for normals");
        const std::size_t base = nodes.size();
        nodes.resize(base + arc.size() - 2);
        const long long last = static_cast<long long>(arc.size()) - 1;
#pragma omp parallel for schedule(dynamic, 16)
        for (long long j = 1; j < last; ++j) {
            const cplx t = arc[j + 1] - arc[j - 1];
            const cplx nu = cplx(0.0, 1.0) * t / std::abs(t);
            const double spacing = std::min(std::abs(arc[j + 1] - arc[j]), std::abs(arc[j] - arc[j - 1]));
            const double h = std::max(h_rel * spacing, 1e-10 * (1.0 + std::abs(arc[j])));
            DensityNode& d = nodes[base + j - 1];
            d.lambda = arc[j];
            d.density = std::abs(phi(arc[j] + h * nu) + phi(arc[j] - h * nu) - 2.0 * phi(arc[j])) / (2.0 * kPi * h);
            d.ds = 0.5 * std::abs(t);
        }
    }
    return nodes;
}

SpectralMeasure hirschman_dos(const LaurentSymbol& sym, const LimitSet& limit, int bins, double lo, double hi,
                              double h_rel) {
    SpectralMeasure m = SpectralMeasure::real_line(lo, hi, bins);
    if (!sym.two_sided()) {
        m.add(sym.coeff(0), 1.0);
        return m;
    }
    for (const DensityNode& d : hirschman_nodes(sym, limit, h_rel)) m.add(d.lambda, d.density * d.ds);
    m.normalize();
    return m;
}

SpectralMeasure hirschman_dos(const LaurentSymbol& sym, const LimitSet& limit, const Box& box, int nx, int ny,
                              double h_rel) {
    SpectralMeasure m = SpectralMeasure::plane(box, nx, ny);
    if (!sym.two_sided()) {
        m.add(sym.coeff(0), 1.0);
        return m;
    }
    for (const DensityNode& d : hirschman_nodes(sym, limit, h_rel)) m.add(d.lambda, d.density * d.ds);
    m.normalize();
    return m;
}

double measure_distance(const SpectralMeasure& a, const SpectralMeasure& b) {
    const bool same = a.kind == b.kind && a.nx == b.nx && a.ny == b.ny &&
                      (a.kind == SpectralMeasure::Kind::real
                           ? a.lo == b.lo && a.hi == b.hi
                           : a.box.re_lo == b.box.re_lo && a.box.re_hi == b.box.re_hi &&
                                 a.box.im_lo == b.box.im_lo && a.box.im_hi == b.box.im_hi);
    if (!same) throw DomainError("measures have incompatible binning");
    if (a.kind == SpectralMeasure::Kind::real) {
        const std::vector<double> fa = a.cdf(), fb = b.cdf();
        double d = 0.0;
        for (std::size_t i = 0; i < fa.size(); ++i) d = std::max(d, std::abs(fa[i] - fb[i]));
        return d;
    }
    std::vector<double> diff(a.mass.size() + 2);
    for (std::size_t i = 0; i < a.mass.size(); ++i) diff[i] = std::abs(a.mass[i] - b.mass[i]);
    diff[a.mass.size()] = std::abs(a.underflow - b.underflow);
    diff[a.mass.size() + 1] = std::abs(a.overflow - b.overflow);
    return 0.5 * pairwise_sum(diff);
}

std::vector<cplx> moments(const SpectrumResult& s, int s_max) {
    if (s_max < 1) throw DomainError("s_max must be at least 1");
    std::vector<cplx> out;
    std::vector<cplx> pw(s.eigenvalues.size());
    for (int e = 1; e <= s_max; ++e) {
        for (std::size_t k = 0; k < pw.size(); ++k) pw[k] = std::pow(s.eigenvalues[k], e);
        out.push_back(pairwise_sum(pw) / static_cast<double>(pw.size()));
    }
    return out;
}

FrobeniusNorms frobenius_normalized(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrices of different sizes");
    const Eigen::MatrixXd d = (a - b).cwiseAbs();
    const double n = static_cast<double>(a.rows());
    return {d.sum() / n, d.cwiseAbs2().sum() / n};
}

HullCheck conv_hull_check(const SpectrumResult& s, const PlaneCurve& range_curve, double tol) {
    if (tol < 0.0) tol = 1e-9 * std::max(1.0, range_curve.diameter());
    const std::vector<cplx> hull = convex_hull(range_curve.points);
    HullCheck h;
    for (const cplx& z : s.eigenvalues) {
        const double e = hull_excess(hull, z);
        if (e > tol) ++h.violations;
        h.max_excess = std::max(h.max_excess, e);
    }
    return h;
}

namespace {

struct LineFit {
    double slope = 0.0;
    double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    const double res = syy - f.slope * sxy;
    f.r2 = syy > 1e-300 ? std::clamp(1.0 - res / syy, 0.0, 1.0) : 1.0;
    return f;
}

// Slope of the log envelope over the interior third; falls back to log|u_j| when the
// envelope vanishes (a single-exponential mode).
LineFit fit_mode(const Eigen::VectorXcd& u, bool& envelope) {
    const int n = static_cast<int>(u.size());
    const int j0 = std::max(1, n / 3), j1 = std::min(n - 2, 2 * n / 3);
    std::vector<double> x, y;
    double small = 0.0, total = 0.0;
    for (int j = j0; j <= j1; ++j) {
        const cplx c = u(j) * u(j) - u(j - 1) * u(j + 1);
        total += 1.0;
        if (std::abs(c) < 1e-10 * std::norm(u(j)) + 1e-300) small += 1.0;
        if (c == cplx(0.0)) continue;
        x.push_back(j);
        y.push_back(0.5 * std::log(std::abs(c)));
    }
    envelope = small < 0.5 * total && x.size() >= 3;
    if (envelope) return fit_line(x, y);
    x.clear();
    y.clear();
    for (int j = j0; j <= j1; ++j) {
        if (u(j) == cplx(0.0)) continue;
        x.push_back(j);
        y.push_back(std::log(std::abs(u(j))));
    }
    if (x.size() < 3) throw NumericalError("eigenvector fit is degenerate");
    return fit_line(x, y);
}

}  // namespace

DecayFit eigenvector_decay(const BandedToeplitz& mat, cplx lambda, double gauge_hint) {
    if (mat.n < 50) throw DomainError("eigenvector fits need n >= 50");
    const int n = mat.n;
    DecayFit fit;
    fit.lambda = lambda;
    double g = gauge_hint > 0.0 ? gauge_hint : 1.0;
    const cplx shift = lambda + cplx(1e-11 * (1.0 + std::abs(lambda)), 0.0);
    LineFit lf;
    Eigen::VectorXcd u(n);
    for (int it = 1; it <= 40; ++it) {
        const Eigen::MatrixXcd a = gauge(mat, g).dense() - shift * Eigen::MatrixXcd::Identity(n, n);
        const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
        for (int j = 0; j < n; ++j) u(j) = cplx(1.0 + 0.5 * std::sin(0.7 * j), 0.25 * std::cos(1.3 * j));
        for (int k = 0; k < 3; ++k) {
            u = lu.solve(u);
            u /= u.cwiseAbs().maxCoeff();
        }
        lf = fit_mode(u, fit.envelope);
        fit.iterations = it;
        if (!std::isfinite(lf.slope)) throw NumericalError("eigenvector fit produced a non-finite slope");
        if (std::abs(lf.slope) < 1e-9) break;
        g *= std::exp(lf.slope);
    }
    fit.gauge = g;
    fit.growth_rate = std::log(g) + lf.slope;
    fit.decay_rate = -fit.growth_rate;
    fit.r2 = lf.r2;
    fit.log_profile.resize(static_cast<std::size_t>(n));
    double top = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        fit.log_profile[j] = std::log(std::abs(u(j))) + j * std::log(g);
        top = std::max(top, fit.log_profile[j]);
    }
    for (double& v : fit.log_profile) v -= top;
    return fit;
}

double gbz_radius_at(const GbzCurve& curve, double lambda) {
    if (curve.samples.empty()) throw DomainError("empty GBZ curve");
    std::vector<std::pair<double, double>> lr;
    for (const GbzSample& s : curve.samples) lr.emplace_back(s.lambda, s.r);
    std::sort(lr.begin(), lr.end());
    if (lambda <= lr.front().first) return lr.front().second;
    if (lambda >= lr.back().first) return lr.back().second;
    const auto it = std::lower_bound(lr.begin(), lr.end(), std::pair{lambda, -std::numeric_limits<double>::infinity()});
    const auto prev = it - 1;
    const double t = it->first > prev->first ? (lambda - prev->first) / (it->first - prev->first) : 0.0;
    return prev->second + t * (it->second - prev->second);
}

SimilarityTable::SimilarityTable(const GbzCurve& curve, int row_max, int col_min, int col_max, Exec exec)
    : row_max_(row_max), col_min_(col_min), col_max_(col_max) {
    if (!curve.is_polar) throw UnsupportedError("the similarity transform needs a polar curve");
    if (row_max < 0 || col_max < col_min) throw DomainError("empty similarity table");
    const int rows = 2 * row_max + 1, cols = col_max - col_min + 1;
    data_.assign(static_cast<std::size_t>(rows) * cols, cplx(0.0));
    const std::vector<double> w = curve.weights();
    auto fill = [&](int idx, std::vector<cplx>& buf) {
        const int i = idx / cols - row_max, j = idx % cols + col_min;
        for (std::size_t s = 0; s < curve.size(); ++s) {
            const GbzSample& g = curve.samples[s];
            buf[s] = w[s] * std::pow(g.r, j) * std::polar(1.0, (j - i) * g.theta);
        }
        data_[static_cast<std::size_t>(idx)] = pairwise_sum(buf) / (2.0 * kPi);
    };
    const int total = rows * cols;
    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            std::vector<cplx> buf(curve.size());
#pragma omp for schedule(static)
            for (int idx = 0; idx < total; ++idx) fill(idx, buf);
        }
    } else {
        std::vector<cplx> buf(curve.size());
        for (int idx = 0; idx < total; ++idx) fill(idx, buf);
    }
}

cplx SimilarityTable::operator()(int i, int j) const {
    if (std::abs(i) > row_max_ || j < col_min_ || j > col_max_) throw DomainError("similarity entry outside the table");
    const int cols = col_max_ - col_min_ + 1;
    return data_[static_cast<std::size_t>(i + row_max_) * cols + (j - col_min_)];
}

Eigen::MatrixXcd similarity_matrix_entries(const GbzCurve& curve, int i_lo, int i_hi, int j_lo, int j_hi) {
    constexpr int kGuard = 30;
    if (i_lo > i_hi || j_lo > j_hi) throw DomainError("empty index range");
    if (std::max(std::abs(i_lo), std::abs(i_hi)) > kGuard || std::max(std::abs(j_lo), std::abs(j_hi)) > kGuard)
        throw DomainError("similarity entries limited to |i|, |j| <= 30: the transform is exponentially ill-conditioned");
    const SimilarityTable t(curve, std::max(std::abs(i_lo), std::abs(i_hi)), j_lo, j_hi);
    Eigen::MatrixXcd m(i_hi - i_lo + 1, j_hi - j_lo + 1);
    for (int i = i_lo; i <= i_hi; ++i)
        for (int j = j_lo; j <= j_hi; ++j) m(i - i_lo, j - j_lo) = t(i, j);
    return m;
}

ConvolutionResidual convolution_identity_residual(const SimilarityTable& m, int i, int j, int kp, int K_sum) {
    if (K_sum < 0) throw DomainError("negative truncation");
    std::vector<cplx> terms;
    std::vector<double> mags;
    for (int k = -K_sum; k <= K_sum; ++k) {
        const cplx a = m(i - k, kp), b = m(k, j);
        terms.push_back(a * b);
        mags.push_back(std::abs(a) * std::abs(b));
    }
    ConvolutionResidual r;
    r.residual = std::abs(pairwise_sum(terms) - m(i, kp + j));
    r.roundoff = 64.0 * std::numeric_limits<double>::epsilon() * (pairwise_sum(mags) + std::abs(m(i, kp + j)));
    return r;
}

ConvolutionResidual convolution_identity_residual(const GbzCurve& curve, int i, int j, int kp, int K_sum) {
    if (std::max({std::abs(i), std::abs(j), std::abs(kp)}) > 10) throw DomainError("indices limited to |i|, |j|, |k'| <= 10");
    const int cmin = std::min({kp, j, kp + j}), cmax = std::max({kp, j, kp + j});
    const SimilarityTable t(curve, std::abs(i) + K_sum, cmin, cmax);
    return convolution_identity_residual(t, i, j, kp, K_sum);
}

Eigen::MatrixXcd corner_perturbed(const BandedToeplitz& mat, int c, std::uint64_t seed) {
    if (c < 0 || c > mat.n) throw DomainError("corner block larger than the matrix");
    Eigen::MatrixXcd m = mat.dense();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = u(rng);
    return m;
}

}  // namespace openlimit
