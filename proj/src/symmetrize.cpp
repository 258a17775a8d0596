#include "openlimit/symmetrize.hpp"

#include "openlimit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace openlimit {

namespace {

constexpr double kPi = std::numbers::pi;

FourierSeries empty_series(int K, int n) {
    FourierSeries s;
    s.K = K;
    s.coeffs.assign(static_cast<std::size_t>(2 * K + 1), cplx(0.0));
    s.sample_count = n;
    s.bandwidth_t = K;
    return s;
}

void coefficient(const std::vector<double>& theta, const std::vector<cplx>& u, int k, std::vector<cplx>& buf,
                 cplx& out) {
    for (std::size_t j = 0; j < u.size(); ++j) buf[j] = u[j] * std::polar(1.0, -k * theta[j]);
    out = pairwise_sum(buf) / (2.0 * kPi);
}

}  // namespace

cplx FourierSeries::eval(double theta) const {
    std::vector<cplx> terms(coeffs.size());
    for (int k = -K; k <= K; ++k) terms[static_cast<std::size_t>(k + K)] = at(k) * std::polar(1.0, k * theta);
    return pairwise_sum(terms);
}

void update_hermitian_flag(FourierSeries& s, double tol) {
    double defect = 0.0;
    for (int k = 0; k <= s.K; ++k) defect = std::max(defect, std::abs(s.at(-k) - std::conj(s.at(k))));
    s.hermitian_defect = defect;
    s.hermitian = defect < tol;
}

FourierSeries nudft_values(const GbzCurve& curve, const std::vector<cplx>& values, int K, Exec exec) {
    const int n = static_cast<int>(curve.size());
    if (K < 0) throw DomainError("negative series bandwidth");
    if (n < 2 * K + 1) throw DomainError("aliasing: " + std::to_string(n) + " samples cannot resolve K = " + std::to_string(K));
    if (values.size() != curve.size()) throw DomainError("one value per curve sample required");
    const std::vector<double> theta = curve.thetas();
    const std::vector<double> w = curve.weights();
    std::vector<cplx> u(values.size());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = w[j] * values[j];

    FourierSeries s = empty_series(K, n);
    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            std::vector<cplx> buf(u.size());
#pragma omp for schedule(static)
            for (int k = -K; k <= K; ++k) coefficient(theta, u, k, buf, s.at(k));
        }
    } else {
        std::vector<cplx> buf(u.size());
        for (int k = -K; k <= K; ++k) coefficient(theta, u, k, buf, s.at(k));
    }
    update_hermitian_flag(s);
    return s;
}

FourierSeries nudft_coeffs(const GbzCurve& curve, const LaurentSymbol& sym, int K, Exec exec) {
    if (!curve.is_polar) throw UnsupportedError("the symmetriser needs a polar curve");
    std::vector<cplx> values(curve.size());
    for (std::size_t j = 0; j < values.size(); ++j) values[j] = eval(sym, curve.samples[j].z());
    return nudft_values(curve, values, K, exec);
}

int auto_truncation(const FourierSeries& s) {
    const int cap = std::max(1, std::min(s.K, s.sample_count / 4));
    std::vector<double> m(static_cast<std::size_t>(s.K + 1));
    for (int k = 0; k <= s.K; ++k) m[k] = std::max(std::abs(s.at(k)), std::abs(s.at(-k)));
    for (int k = 2; k <= s.K; ++k) {
        const int last = std::min(s.K, k + 4);
        bool floor = true;
        for (int j = k; j <= last; ++j)
            if (m[j] < m[k - 1]) floor = false;
        if (floor) return std::min(k - 1, cap);
    }
    return cap;
}

FourierSeries truncate_series(const FourierSeries& s, std::optional<int> t) {
    const int band = t ? *t : auto_truncation(s);
    if (band < 1 || band > s.K) throw DomainError("truncation band " + std::to_string(band) + " outside [1, K]");
    FourierSeries out = s;
    std::vector<double> tail;
    for (int k = band + 1; k <= s.K; ++k) {
        tail.push_back(std::abs(s.at(k)));
        tail.push_back(std::abs(s.at(-k)));
        out.at(k) = 0.0;
        out.at(-k) = 0.0;
    }
    out.bandwidth_t = band;
    out.tail_norm = pairwise_sum(tail);
    update_hermitian_flag(out);
    return out;
}

FourierSeries hermitian_symmetrize(const FourierSeries& s) {
    if (!s.hermitian)
        throw UnsupportedError("series is not Hermitian within tolerance (defect " + std::to_string(s.hermitian_defect) + ")");
    FourierSeries out = s;
    double corr = 0.0;
    for (int k = -s.K; k <= s.K; ++k) {
        out.at(k) = 0.5 * (s.at(k) + std::conj(s.at(-k)));
        corr = std::max(corr, std::abs(out.at(k) - s.at(k)));
    }
    // Rounding in the average can leave a last-bit asymmetry; copy the upper half over.
    for (int k = 1; k <= s.K; ++k) out.at(-k) = std::conj(out.at(k));
    out.at(0) = out.at(0).real();
    out.hermitian_correction = corr;
    update_hermitian_flag(out);
    return out;
}

FourierSeries series_of_symbol(const LaurentSymbol& sym, int K) {
    if (std::max(-sym.min_index(), sym.max_index()) > K) throw DomainError("K smaller than the symbol bandwidth");
    FourierSeries s = empty_series(K, 2 * K + 1);
    for (const auto& [k, a] : sym.coeffs()) s.at(-k) = a;
    update_hermitian_flag(s);
    return s;
}

LaurentSymbol symbol_of_series(const FourierSeries& s) {
    std::map<int, cplx> c;
    for (int k = -s.K; k <= s.K; ++k)
        if (s.at(k) != cplx(0.0)) c[-k] = s.at(k);
    return LaurentSymbol(c);
}

PlaneCurve series_curve(const FourierSeries& s, int n) {
    if (n < 16) throw DomainError("series curve needs at least 16 samples");
    std::vector<std::pair<double, cplx>> pts(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * kPi * j / n;
        pts[j] = {th, s.eval(th)};
    }
    if (s.hermitian) {
        const double h = 2.0 * kPi / n;
        auto refine = [&](int j, double sign) {
            double a = pts[j].first - h, b = pts[j].first + h;
            auto g = [&](double th) { return sign * s.eval(th).real(); };
            const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
            double c = b - gr * (b - a), d = a + gr * (b - a);
            double gc = g(c), gd = g(d);
            for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
                if (gc > gd) {
                    b = d;
                    d = c;
                    gd = gc;
                    c = b - gr * (b - a);
                    gc = g(c);
                } else {
                    a = c;
                    c = d;
                    gc = gd;
                    d = a + gr * (b - a);
                    gd = g(d);
                }
            }
            double th = std::fmod(0.5 * (a + b) + 2.0 * kPi, 2.0 * kPi);
            return std::pair<double, cplx>{th, s.eval(th)};
        };
        const auto [jmax, jmin] = [&] {
            int hi = 0, lo = 0;
            for (int j = 1; j < n; ++j) {
                if (pts[j].second.real() > pts[hi].second.real()) hi = j;
                if (pts[j].second.real() < pts[lo].second.real()) lo = j;
            }
            return std::pair{hi, lo};
        }();
        pts.push_back(refine(jmax, 1.0));
        pts.push_back(refine(jmin, -1.0));
        std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    PlaneCurve c;
    for (const auto& [th, w] : pts) {
        c.theta.push_back(th);
        c.points.push_back(w);
    }
    c.closed = true;
    return c;
}

}  // namespace openlimit
