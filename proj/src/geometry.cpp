#include "openlimit/geometry.hpp"

#include "openlimit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace openlimit {

double Grid::cell_diagonal() const { return std::hypot(dx(), dy()); }

cplx Grid::center(int ix, int iy) const {
    return {box.re_lo + (ix + 0.5) * dx(), box.im_lo + (iy + 0.5) * dy()};
}

std::size_t Indicator::count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

std::vector<cplx> Indicator::marked_centers() const {
    std::vector<cplx> out;
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix)
            if (at(ix, iy)) out.push_back(grid.center(ix, iy));
    return out;
}

Box bounding_box(const std::vector<cplx>& pts, double pad) {
    if (pts.empty()) throw DomainError("bounding box of an empty point set");
    Box b{pts[0].real(), pts[0].real(), pts[0].imag(), pts[0].imag()};
    for (const cplx& z : pts) {
        b.re_lo = std::min(b.re_lo, z.real());
        b.re_hi = std::max(b.re_hi, z.real());
        b.im_lo = std::min(b.im_lo, z.imag());
        b.im_hi = std::max(b.im_hi, z.imag());
    }
    const double side = std::max(b.width(), b.height());
    const double p = pad * (side > 0.0 ? side : 1.0);
    b.re_lo -= p;
    b.re_hi += p;
    b.im_lo -= p;
    b.im_hi += p;
    return b;
}

namespace {

double cross(cplx o, cplx a, cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

}  // namespace

std::vector<cplx> convex_hull(std::vector<cplx> pts) {
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<cplx> h(2 * pts.size());
    std::size_t k = 0;
    for (const cplx& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0.0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

double point_segment_distance(cplx z, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(z - a);
    const double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(z - (a + t * d));
}

double hull_excess(const std::vector<cplx>& hull, cplx z) {
    if (hull.empty()) throw DomainError("empty hull");
    if (hull.size() == 1) return std::abs(z - hull[0]);
    if (hull.size() == 2) return point_segment_distance(z, hull[0], hull[1]);
    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const cplx a = hull[i], b = hull[(i + 1) % hull.size()];
        if (cross(a, b, z) < 0.0) inside = false;
        best = std::min(best, point_segment_distance(z, a, b));
    }
    return inside ? 0.0 : best;
}

namespace {

void raster_row(const PlaneCurve& curve, const Grid& grid, int iy, Indicator& out) {
    const double y = grid.center(0, iy).imag();
    const std::size_t n = curve.size();
    std::vector<std::pair<double, int>> crossings;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx a = curve.points[j], b = curve.points[(j + 1) % n];
        int dir = 0;
        if (a.imag() <= y && b.imag() > y) dir = 1;
        else if (b.imag() <= y && a.imag() > y) dir = -1;
        if (dir == 0) continue;
        const double t = (y - a.imag()) / (b.imag() - a.imag());
        crossings.emplace_back(a.real() + t * (b.real() - a.real()), dir);
    }
    if (crossings.empty()) return;
    std::sort(crossings.begin(), crossings.end());
    // Winding at x counts crossings to the right of x: w(x) = sum_{x_c > x} dir.
    int total = 0;
    for (const auto& c : crossings) total += c.second;
    std::size_t next = 0;
    int w = total;
    for (int ix = 0; ix < grid.nx; ++ix) {
        const double x = grid.center(ix, iy).real();
        while (next < crossings.size() && crossings[next].first <= x) w -= crossings[next++].second;
        if (w != 0) out.set(ix, iy);
    }
}

}  // namespace

Indicator winding_raster(const PlaneCurve& curve, const Grid& grid, Exec exec) {
    if (!curve.closed) throw DomainError("winding raster needs a closed curve");
    Indicator out(grid);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (int iy = 0; iy < grid.ny; ++iy) raster_row(curve, grid, iy, out);
    } else {
        for (int iy = 0; iy < grid.ny; ++iy) raster_row(curve, grid, iy, out);
    }
    return out;
}

Indicator winding_raster_reference(const PlaneCurve& curve, const Grid& grid) {
    Indicator out(grid);
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix) {
            try {
                if (winding(curve, grid.center(ix, iy), 0.0) != 0) out.set(ix, iy);
            } catch (const OnCurveError&) {
            }
        }
    return out;
}

void mark_near_curve(Indicator& ind, const PlaneCurve& curve, double tol) {
    const Grid& g = ind.grid;
    const std::size_t n = curve.size();
    const std::size_t segs = curve.closed ? n : n - 1;
    for (std::size_t j = 0; j < segs; ++j) {
        const cplx a = curve.points[j], b = curve.points[(j + 1) % n];
        const double xlo = std::min(a.real(), b.real()) - tol, xhi = std::max(a.real(), b.real()) + tol;
        const double ylo = std::min(a.imag(), b.imag()) - tol, yhi = std::max(a.imag(), b.imag()) + tol;
        const int ix0 = std::max(0, static_cast<int>(std::floor((xlo - g.box.re_lo) / g.dx() - 0.5)));
        const int ix1 = std::min(g.nx - 1, static_cast<int>(std::ceil((xhi - g.box.re_lo) / g.dx() - 0.5)));
        const int iy0 = std::max(0, static_cast<int>(std::floor((ylo - g.box.im_lo) / g.dy() - 0.5)));
        const int iy1 = std::min(g.ny - 1, static_cast<int>(std::ceil((yhi - g.box.im_lo) / g.dy() - 0.5)));
        for (int iy = iy0; iy <= iy1; ++iy)
            for (int ix = ix0; ix <= ix1; ++ix)
                if (point_segment_distance(g.center(ix, iy), a, b) <= tol) ind.set(ix, iy);
    }
}

namespace {

// Liang-Barsky: does the segment a-b meet the closed rectangle [x0,x1] x [y0,y1]?
bool segment_meets_rect(cplx a, cplx b, double x0, double x1, double y0, double y1) {
    double t0 = 0.0, t1 = 1.0;
    const double dx = b.real() - a.real(), dy = b.imag() - a.imag();
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {a.real() - x0, x1 - a.real(), a.imag() - y0, y1 - a.imag()};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) return false;
            continue;
        }
        const double t = q[i] / p[i];
        if (p[i] < 0.0) t0 = std::max(t0, t);
        else t1 = std::min(t1, t);
        if (t0 > t1) return false;
    }
    return true;
}

}  // namespace

void mark_crossed_cells(Indicator& ind, const PlaneCurve& curve) {
    const Grid& g = ind.grid;
    const std::size_t n = curve.size();
    const std::size_t segs = curve.closed ? n : n - 1;
    const double hx = 0.5 * g.dx(), hy = 0.5 * g.dy();
    for (std::size_t j = 0; j < segs; ++j) {
        const cplx a = curve.points[j], b = curve.points[(j + 1) % n];
        const int ix0 = std::max(0, static_cast<int>(std::floor((std::min(a.real(), b.real()) - g.box.re_lo) / g.dx())));
        const int ix1 = std::min(g.nx - 1, static_cast<int>(std::floor((std::max(a.real(), b.real()) - g.box.re_lo) / g.dx())));
        const int iy0 = std::max(0, static_cast<int>(std::floor((std::min(a.imag(), b.imag()) - g.box.im_lo) / g.dy())));
        const int iy1 = std::min(g.ny - 1, static_cast<int>(std::floor((std::max(a.imag(), b.imag()) - g.box.im_lo) / g.dy())));
        for (int iy = iy0; iy <= iy1; ++iy)
            for (int ix = ix0; ix <= ix1; ++ix) {
                const cplx c = g.center(ix, iy);
                if (segment_meets_rect(a, b, c.real() - hx, c.real() + hx, c.imag() - hy, c.imag() + hy))
                    ind.set(ix, iy);
            }
    }
}

double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    auto directed = [](const std::vector<cplx>& p, const std::vector<cplx>& q) {
        double worst = 0.0;
        for (const cplx& x : p) {
            double best = std::numeric_limits<double>::infinity();
            for (const cplx& y : q) best = std::min(best, std::norm(x - y));
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(a, b), directed(b, a));
}

}  // namespace openlimit
