#include "openlimit/symbol.hpp"

#include "openlimit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace openlimit {

LaurentSymbol::LaurentSymbol(const std::map<int, cplx>& coeffs) {
    for (const auto& [k, a] : coeffs) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw DomainError("non-finite coefficient at k = " + std::to_string(k));
        if (a == cplx(0.0)) continue;
        coeffs_[k] = a;
        if (k > 0) upper_ = std::max(upper_, k);
        if (k < 0) lower_ = std::max(lower_, -k);
    }
}

int LaurentSymbol::min_index() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }

int LaurentSymbol::max_index() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

cplx LaurentSymbol::coeff(int k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? cplx(0.0) : it->second;
}

bool LaurentSymbol::real_coefficients() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const auto& kv) { return kv.second.imag() == 0.0; });
}

LaurentSymbol LaurentSymbol::scaled(double r) const {
    if (!(r > 0.0)) throw DomainError("gauge radius must be positive");
    std::map<int, cplx> out;
    for (const auto& [k, a] : coeffs_) out[k] = a * std::pow(r, -k);
    LaurentSymbol s(out);
    s.kappa = kappa;
    s.rho = rho;
    return s;
}

LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b) {
    std::map<int, cplx> c = a.coeffs();
    for (const auto& [k, v] : b.coeffs()) c[k] += v;
    return LaurentSymbol(c);
}

LaurentSymbol operator*(cplx s, const LaurentSymbol& a) {
    std::map<int, cplx> c;
    for (const auto& [k, v] : a.coeffs()) c[k] = s * v;
    return LaurentSymbol(c);
}

bool operator==(const LaurentSymbol& a, const LaurentSymbol& b) { return a.coeffs() == b.coeffs(); }

cplx eval(const LaurentSymbol& sym, cplx z) {
    if (sym.empty()) return 0.0;
    if (z == cplx(0.0)) {
        if (sym.max_index() > 0) throw DomainError("symbol has a pole at z = 0");
    }
    // Positive powers z^j come from k = -j; negative powers w^k = z^{-k} from k > 0.
    cplx pos = 0.0;
    for (int j = std::max(0, -sym.min_index()); j >= 1; --j) pos = (pos + sym.coeff(-j)) * z;
    cplx neg = 0.0;
    if (sym.max_index() > 0) {
        const cplx w = 1.0 / z;
        for (int k = sym.max_index(); k >= 1; --k) neg = (neg + sym.coeff(k)) * w;
    }
    // Indices beyond the usual range (e.g. a derivative's shifted coefficients) are covered
    // because min_index/max_index are the true extents.
    return pos + sym.coeff(0) + neg;
}

LaurentSymbol derivative(const LaurentSymbol& sym, int order) {
    if (order != 1 && order != 2) throw DomainError("derivative order must be 1 or 2");
    std::map<int, cplx> d;
    for (const auto& [k, a] : sym.coeffs()) d[k + 1] = static_cast<double>(-k) * a;
    LaurentSymbol first(d);
    return order == 1 ? first : derivative(first, 1);
}

LaurentSymbol decay_symbol(int m, double kappa, double rho, cplx a0, double offset) {
    if (m < 1) throw DomainError("decay family needs m >= 1");
    if (!(kappa > 0.0) || !(rho > 0.0)) throw DomainError("decay exponents must be positive");
    if (offset < 0.0) throw DomainError("decay offset must be non-negative");
    std::map<int, cplx> c;
    for (int k = 1; k <= m; ++k) {
        c[k] = std::pow(k + offset, -kappa);
        c[-k] = std::pow(k + offset, -rho);
    }
    c[0] = a0;
    LaurentSymbol s(c);
    s.kappa = kappa;
    s.rho = rho;
    return s;
}

double PlaneCurve::diameter() const {
    if (points.empty()) return 0.0;
    double xmin = points[0].real(), xmax = xmin, ymin = points[0].imag(), ymax = ymin;
    for (const cplx& w : points) {
        xmin = std::min(xmin, w.real());
        xmax = std::max(xmax, w.real());
        ymin = std::min(ymin, w.imag());
        ymax = std::max(ymax, w.imag());
    }
    return std::hypot(xmax - xmin, ymax - ymin);
}

PlaneCurve symbol_curve(const LaurentSymbol& sym, double radius, int n_samples) {
    if (!(radius > 0.0)) throw DomainError("curve radius must be positive");
    if (n_samples < 4) throw DomainError("need at least 4 curve samples");
    PlaneCurve c;
    c.theta.resize(n_samples);
    c.points.resize(n_samples);
    for (int j = 0; j < n_samples; ++j) {
        const double th = 2.0 * std::numbers::pi * j / n_samples;
        c.theta[j] = th;
        c.points[j] = eval(sym, std::polar(radius, th));
    }
    return c;
}

PlaneCurve symbol_curve(const LaurentSymbol& sym, const std::vector<double>& theta,
                        const std::vector<cplx>& z) {
    if (theta.size() != z.size()) throw DomainError("theta and z sizes differ");
    PlaneCurve c;
    c.theta = theta;
    c.points.reserve(z.size());
    for (const cplx& zz : z) c.points.push_back(eval(sym, zz));
    return c;
}

int winding(const PlaneCurve& curve, cplx lambda, double on_curve_tol) {
    if (!curve.closed) throw DomainError("winding number needs a closed curve");
    const std::size_t n = curve.size();
    if (n < 2) throw DomainError("winding number needs at least two samples");
    const double tol = on_curve_tol < 0.0 ? 1e-9 * curve.diameter() : on_curve_tol;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx a = curve.points[j] - lambda;
        const cplx b = curve.points[(j + 1) % n] - lambda;
        if (std::abs(a) <= tol) throw OnCurveError("point lies on the curve");
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace openlimit
