#include "openlimit/limitset.hpp"

#include "openlimit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace openlimit {

namespace {

constexpr double kPi = std::numbers::pi;

double real_tolerance(double lambda) { return 1e-8 * (1.0 + std::abs(lambda)); }

// Minimum-cost assignment (Hungarian algorithm, O(n^3)); returns perm with from[i] -> to[perm[i]].
std::vector<int> hungarian(const std::vector<cplx>& from, const std::vector<cplx>& to) {
    const int n = static_cast<int>(from.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = std::abs(from[i0 - 1] - to[j - 1]) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> perm(n);
    for (int j = 1; j <= n; ++j) perm[p[j] - 1] = j - 1;
    return perm;
}

// Greedy nearest matching; falls back to the optimal assignment when the greedy choice is
// not clearly unambiguous (a matched distance comparable to the spacing of the roots).
std::vector<int> match_roots(const std::vector<cplx>& from, const std::vector<cplx>& to) {
    const int n = static_cast<int>(from.size());
    std::vector<std::pair<double, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pairs.emplace_back(std::abs(from[i] - to[j]), i * n + j);
    std::sort(pairs.begin(), pairs.end());
    std::vector<int> perm(n, -1);
    std::vector<char> taken(n, 0);
    double worst = 0.0;
    int assigned = 0;
    for (const auto& [d, code] : pairs) {
        const int i = code / n, j = code % n;
        if (perm[i] >= 0 || taken[j]) continue;
        perm[i] = j;
        taken[j] = 1;
        worst = std::max(worst, d);
        if (++assigned == n) break;
    }
    double spacing = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) spacing = std::min(spacing, std::abs(from[i] - from[j]));
    if (worst > 0.25 * spacing) return hungarian(from, to);
    return perm;
}

struct ScanSample {
    bool ok = false;
    GbzSample lo, hi;
};

void finalize_weights_by_difference(std::vector<GbzSample>& s) {
    const std::size_t n = s.size();
    if (n == 0) return;
    if (n == 1) {
        s[0].weight = 2.0 * kPi;
        return;
    }
    for (std::size_t j = 0; j < n; ++j) {
        double next = j + 1 < n ? s[j + 1].theta : s[0].theta + 2.0 * kPi;
        double prev = j > 0 ? s[j - 1].theta : s[n - 1].theta - 2.0 * kPi;
        s[j].weight = 0.5 * (next - prev);
    }
}

}  // namespace

std::vector<cplx> LimitSet::points() const {
    std::vector<cplx> out;
    for (const auto& a : arcs) out.insert(out.end(), a.begin(), a.end());
    return out;
}

std::size_t LimitSet::size() const {
    std::size_t n = 0;
    for (const auto& a : arcs) n += a.size();
    return n;
}

std::vector<double> GbzCurve::thetas() const {
    std::vector<double> t;
    for (const auto& s : samples) t.push_back(s.theta);
    return t;
}

std::vector<cplx> GbzCurve::points() const {
    std::vector<cplx> z;
    for (const auto& s : samples) z.push_back(s.z());
    return z;
}

std::vector<double> GbzCurve::weights() const {
    std::vector<double> w;
    for (const auto& s : samples) w.push_back(s.weight);
    return w;
}

double GbzCurve::min_radius() const {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) r = std::min(r, s.r);
    return r;
}

double GbzCurve::max_radius() const {
    double r = 0.0;
    for (const auto& s : samples) r = std::max(r, s.r);
    return r;
}

GbzCurve curve_from_points(const std::vector<cplx>& z, const std::vector<double>& lambda) {
    GbzCurve c;
    for (std::size_t j = 0; j < z.size(); ++j) {
        GbzSample s;
        s.theta = std::arg(z[j]);
        if (s.theta == -kPi) s.theta = kPi;
        s.r = std::abs(z[j]);
        s.beta = -std::log(s.r);
        s.lambda = j < lambda.size() ? lambda[j] : 0.0;
        c.samples.push_back(s);
    }
    std::sort(c.samples.begin(), c.samples.end(),
              [](const GbzSample& a, const GbzSample& b) { return a.theta < b.theta; });
    finalize_weights_by_difference(c.samples);
    // A sparse point list cannot fill more angle bins than it has points.
    c.polar = polar_curve_test(c, std::clamp(static_cast<int>(z.size()), 4, 256));
    c.is_polar = c.polar.is_polar;
    c.winding_about_origin = c.polar.winding;
    c.assumption1_pass = true;
    return c;
}

GbzCurve circle_curve(double r, int n) {
    std::vector<cplx> z;
    for (int j = 0; j < n; ++j) z.push_back(std::polar(r, -kPi + 2.0 * kPi * (j + 0.5) / n));
    return curve_from_points(z);
}

RealScanResult limit_set_real_scan(const LaurentSymbol& sym, double lambda_lo, double lambda_hi, int n_grid,
                                   int n_samples) {
    if (!(lambda_lo < lambda_hi)) throw DomainError("real scan needs lambda_lo < lambda_hi");
    if (n_grid < 64) throw DomainError("real scan needs n_grid >= 64");
    if (n_samples <= 0) n_samples = n_grid;
    const RootSolver solver(sym);
    const LaurentSymbol df = derivative(sym, 1);
    const int s = solver.split();

    auto inside = [&](double lam) { return solver.middle_gap(solver.roots(lam)) < kGapTolerance; };

    std::vector<double> grid(n_grid);
    std::vector<char> in(n_grid, 0);
    for (int i = 0; i < n_grid; ++i) grid[i] = lambda_lo + (lambda_hi - lambda_lo) * i / (n_grid - 1);
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < n_grid; ++i) in[i] = inside(grid[i]);

    auto boundary = [&](double out_pt, double in_pt) {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (out_pt + in_pt);
            if (mid == out_pt || mid == in_pt) break;
            (inside(mid) ? in_pt : out_pt) = mid;
        }
        return in_pt;
    };

    std::vector<std::pair<double, double>> intervals;
    for (int i = 0; i < n_grid; ++i) {
        if (!in[i] || (i > 0 && in[i - 1])) continue;
        int j = i;
        while (j + 1 < n_grid && in[j + 1]) ++j;
        const double a = i == 0 ? grid[0] : boundary(grid[i - 1], grid[i]);
        const double b = j == n_grid - 1 ? grid[n_grid - 1] : boundary(grid[j + 1], grid[j]);
        if (b > a) intervals.emplace_back(a, b);
        i = j;
    }

    RealScanResult res;
    res.curve.intervals = intervals;
    res.curve.exact_weights = true;
    double total = 0.0;
    for (const auto& [a, b] : intervals) total += b - a;

    for (const auto& [a, b] : intervals) {
        const int ng = std::max(8, static_cast<int>(std::lround(n_samples * (b - a) / total)));
        std::vector<ScanSample> part(ng);
#pragma omp parallel for schedule(dynamic, 8)
        for (int j = 0; j < ng; ++j) {
            const double t = kPi * (j + 0.5) / ng;
            const double lam = a + 0.5 * (b - a) * (1.0 - std::cos(t));
            const double dlam_dt = 0.5 * (b - a) * std::sin(t);
            const std::vector<cplx> r = solver.roots(lam);
            if (!(solver.middle_gap(r) < kGapTolerance)) continue;
            auto make = [&](cplx z) {
                GbzSample g;
                g.theta = std::arg(z);
                if (g.theta == -kPi) g.theta = kPi;
                g.r = std::abs(z);
                g.beta = -std::log(g.r);
                g.lambda = lam;
                // d theta = Im(d lambda / (z f'(z))) along f(z) = lambda.
                g.weight = std::abs((1.0 / (z * eval(df, z))).imag()) * dlam_dt * (kPi / ng);
                return g;
            };
            part[j].ok = true;
            part[j].lo = make(r[s - 1]);
            part[j].hi = make(r[s]);
        }
        std::vector<cplx> arc{cplx(a, 0.0)};
        for (const auto& p : part) {
            if (!p.ok) continue;
            res.curve.samples.push_back(p.lo);
            res.curve.samples.push_back(p.hi);
            arc.emplace_back(p.lo.lambda, 0.0);
        }
        arc.emplace_back(b, 0.0);
        res.limit.arcs.push_back(std::move(arc));
    }
    std::stable_sort(res.curve.samples.begin(), res.curve.samples.end(),
                     [](const GbzSample& x, const GbzSample& y) { return x.theta < y.theta; });
    res.limit.max_imag = 0.0;
    res.limit.connected_estimate = intervals.size() <= 1;
    return res;
}

std::pair<double, double> default_lambda_range(const LaurentSymbol& sym) {
    const double r = optimal_gauge(sym);
    const PlaneCurve c = symbol_curve(sym, r, 1024);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const cplx& w : c.points) {
        lo = std::min(lo, w.real());
        hi = std::max(hi, w.real());
    }
    const double pad = 0.1 * (hi > lo ? hi - lo : 1.0);
    return {lo - pad, hi + pad};
}

GbzCurve gbz_extract(const LaurentSymbol& sym, std::optional<std::pair<double, double>> lambda_range,
                     int n_samples, int angle_bins, int n_grid) {
    const auto [lo, hi] = lambda_range ? *lambda_range : default_lambda_range(sym);
    RealScanResult scan = limit_set_real_scan(sym, lo, hi, n_grid, n_samples);
    GbzCurve c = std::move(scan.curve);
    if (c.samples.empty()) return c;
    c.polar = polar_curve_test(c, angle_bins);
    c.assumption1 = assumption1_check(sym, c.points());
    c.assumption1_pass = c.assumption1.pass;
    c.is_polar = c.polar.is_polar && c.assumption1.complex_confluent.empty();
    c.winding_about_origin = c.polar.winding;
    return c;
}

PolarReport polar_curve_test(const GbzCurve& curve, int angle_bins, double radius_tol) {
    PolarReport rep;
    if (curve.samples.empty() || angle_bins < 4) return rep;
    std::vector<double> rmin(angle_bins, std::numeric_limits<double>::infinity()), rmax(angle_bins, 0.0);
    std::vector<char> occupied(angle_bins, 0);
    for (const auto& s : curve.samples) {
        int b = static_cast<int>(std::floor((s.theta + kPi) / (2.0 * kPi) * angle_bins));
        b = std::clamp(b, 0, angle_bins - 1);
        occupied[b] = 1;
        rmin[b] = std::min(rmin[b], s.r);
        rmax[b] = std::max(rmax[b], s.r);
    }
    for (int b = 0; b < angle_bins; ++b)
        if (occupied[b] && (rmax[b] - rmin[b]) > radius_tol * rmin[b]) rep.multivalued_bins.push_back(b);

    int first = -1;
    for (int b = 0; b < angle_bins; ++b)
        if (occupied[b]) {
            first = b;
            break;
        }
    int gap = 0, run = 0;
    for (int k = 1; k <= angle_bins; ++k) {
        const int b = (first + k) % angle_bins;
        if (occupied[b]) {
            gap = std::max(gap, run);
            run = 0;
        } else {
            ++run;
        }
    }
    rep.max_gap_bins = gap;

    const auto& smp = curve.samples;
    double total = 0.0;
    for (std::size_t j = 0; j < smp.size(); ++j) total += std::arg(smp[(j + 1) % smp.size()].z() / smp[j].z());
    rep.winding = static_cast<int>(std::lround(total / (2.0 * kPi)));

    auto monotone = [&](bool upper) {
        std::vector<double> lam;
        for (const auto& s : smp)
            if (upper ? (s.theta > 0.0 && s.theta < kPi) : (s.theta < 0.0 && s.theta > -kPi)) lam.push_back(s.lambda);
        if (lam.size() < 2) return true;
        bool inc = true, dec = true;
        for (std::size_t j = 1; j < lam.size(); ++j) {
            if (!(lam[j] > lam[j - 1])) inc = false;
            if (!(lam[j] < lam[j - 1])) dec = false;
        }
        return inc || dec;
    };
    rep.monotone_lambda = monotone(false) && monotone(true);
    rep.is_polar = rep.multivalued_bins.empty() && rep.max_gap_bins <= 3 && rep.winding == 1;
    return rep;
}

std::vector<BandPoint> band_structure(const LaurentSymbol& sym, const GbzCurve& curve) {
    if (!curve.is_polar) throw UnsupportedError("band structure needs a polar GBZ");
    std::vector<BandPoint> out;
    out.reserve(curve.size());
    for (const auto& s : curve.samples) {
        const cplx v = eval(sym, std::exp(cplx(-s.beta, s.theta)));
        if (std::abs(v.imag()) >= real_tolerance(s.lambda))
            throw NumericalError("GBZ sample does not map to a real energy");
        out.push_back({s.theta, s.beta, s.lambda});
    }
    return out;
}

std::vector<std::vector<cplx>> root_grid(const RootSolver& solver, const Grid& grid, Exec exec) {
    std::vector<std::vector<cplx>> out(static_cast<std::size_t>(grid.nx) * grid.ny);
    auto row = [&](int iy) {
        for (int ix = 0; ix < grid.nx; ++ix)
            out[static_cast<std::size_t>(iy) * grid.nx + ix] = solver.roots(grid.center(ix, iy));
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 2)
        for (int iy = 0; iy < grid.ny; ++iy) row(iy);
    } else {
        for (int iy = 0; iy < grid.ny; ++iy) row(iy);
    }
    return out;
}

namespace {

// Locates the exchange of the p-th and (p+1)-th moduli on the segment [la, lb].
std::optional<cplx> refine_edge(const RootSolver& solver, cplx la, const std::vector<cplx>& ra, cplx lb,
                                const std::vector<cplx>& rb) {
    const int s = solver.split();
    const std::vector<int> perm = match_roots(ra, rb);
    int a = -1, b = -1;
    for (int i = 0; i < static_cast<int>(ra.size()); ++i) {
        if (i < s && perm[i] >= s && (a < 0 || std::abs(ra[i]) > std::abs(ra[a]))) a = i;
        if (i >= s && perm[i] < s && (b < 0 || std::abs(ra[i]) < std::abs(ra[b]))) b = i;
    }
    if (a < 0 || b < 0) return std::nullopt;

    cplx left = la, right = lb;
    std::vector<cplx> rl = ra;
    cplx found = 0.5 * (la + lb);
    for (int it = 0; it < 80; ++it) {
        const cplx mid = 0.5 * (left + right);
        if (mid == left || mid == right) break;
        const std::vector<cplx> rm = solver.roots(mid);
        const std::vector<int> pm = match_roots(rl, rm);
        const double g = std::log(std::abs(rm[pm[a]])) - std::log(std::abs(rm[pm[b]]));
        found = mid;
        if (g == 0.0) break;
        if (g < 0.0) {
            left = mid;
            rl = rm;
            a = pm[a];
            b = pm[b];
        } else {
            right = mid;
        }
        if (std::abs(right - left) <= 1e-15 * (1.0 + std::abs(left))) {
            found = 0.5 * (left + right);
            break;
        }
    }
    if (solver.middle_gap(solver.roots(found)) < kGapTolerance) return found;
    return std::nullopt;
}

bool partition_changes(int split, const std::vector<cplx>& ra, const std::vector<cplx>& rb) {
    const std::vector<int> perm = match_roots(ra, rb);
    for (int i = 0; i < split; ++i)
        if (perm[i] >= split) return true;
    return false;
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<std::vector<cplx>> chain_arcs(const std::vector<cplx>& pts, double link) {
    const int n = static_cast<int>(pts.size());
    std::vector<std::vector<cplx>> arcs;
    if (n == 0) return arcs;
    DisjointSet ds(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return pts[i].real() < pts[j].real(); });
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n && pts[order[b]].real() - pts[order[a]].real() <= link; ++b)
            if (std::abs(pts[order[a]] - pts[order[b]]) <= link) ds.unite(order[a], order[b]);

    std::vector<std::vector<int>> comps;
    std::vector<int> comp_of(n, -1);
    for (int i = 0; i < n; ++i) {
        const int r = ds.find(i);
        if (comp_of[r] < 0) {
            comp_of[r] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[comp_of[r]].push_back(i);
    }
    for (const auto& comp : comps) {
        // Start from the member farthest from the first one, then walk to nearest neighbours.
        int start = comp[0];
        double far = -1.0;
        for (int i : comp)
            if (std::abs(pts[i] - pts[comp[0]]) > far) {
                far = std::abs(pts[i] - pts[comp[0]]);
                start = i;
            }
        std::vector<char> used(comp.size(), 0);
        std::vector<cplx> arc;
        int cur = start;
        for (std::size_t k = 0; k < comp.size(); ++k) {
            std::size_t idx = std::find(comp.begin(), comp.end(), cur) - comp.begin();
            used[idx] = 1;
            arc.push_back(pts[cur]);
            double best = std::numeric_limits<double>::infinity();
            int next = -1;
            for (std::size_t q = 0; q < comp.size(); ++q) {
                if (used[q]) continue;
                const double d = std::abs(pts[comp[q]] - pts[cur]);
                if (d < best) {
                    best = d;
                    next = comp[q];
                }
            }
            if (next < 0) break;
            cur = next;
        }
        arcs.push_back(std::move(arc));
    }
    return arcs;
}

}  // namespace

LimitSet limit_set_grid(const LaurentSymbol& sym, const Box& box, int n_grid, Exec exec) {
    if (n_grid < 2) throw DomainError("limit set grid needs n_grid >= 2");
    const RootSolver solver(sym);
    const Grid grid{box, n_grid, n_grid};
    const auto nodes = root_grid(solver, grid, exec);
    const int s = solver.split();
    auto node = [&](int ix, int iy) -> const std::vector<cplx>& {
        return nodes[static_cast<std::size_t>(iy) * grid.nx + ix];
    };

    std::vector<std::vector<cplx>> per_row(grid.ny);
    auto row = [&](int iy) {
        auto try_edge = [&](int ax, int ay, int bx, int by) {
            const auto& ra = node(ax, ay);
            const auto& rb = node(bx, by);
            if (!partition_changes(s, ra, rb)) return;
            if (auto p = refine_edge(solver, grid.center(ax, ay), ra, grid.center(bx, by), rb))
                per_row[iy].push_back(*p);
        };
        for (int ix = 0; ix + 1 < grid.nx; ++ix) try_edge(ix, iy, ix + 1, iy);
        if (iy + 1 < grid.ny)
            for (int ix = 0; ix < grid.nx; ++ix) try_edge(ix, iy, ix, iy + 1);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 2)
        for (int iy = 0; iy < grid.ny; ++iy) row(iy);
    } else {
        for (int iy = 0; iy < grid.ny; ++iy) row(iy);
    }

    std::vector<cplx> pts;
    for (const auto& r : per_row) pts.insert(pts.end(), r.begin(), r.end());

    LimitSet ls;
    ls.arcs = chain_arcs(pts, 3.0 * grid.cell_diagonal());
    ls.connected_estimate = ls.arcs.size() <= 1;
    for (const cplx& p : pts) ls.max_imag = std::max(ls.max_imag, std::abs(p.imag()));

    const CriticalSet& cs = solver.critical();
    for (const cplx& zc : cs.points) {
        const cplx lc = eval(sym, zc);
        if (lc.real() < box.re_lo || lc.real() > box.re_hi || lc.imag() < box.im_lo || lc.imag() > box.im_hi)
            continue;
        const RootProfile prof = solver.profile(lc);
        const double d = std::min(std::abs(prof.lower_middle() - zc), std::abs(prof.upper_middle() - zc));
        if (prof.middle_gap < 1e-6 && d < 1e-4 * (1.0 + std::abs(zc))) ls.degenerate_points.push_back(lc);
    }
    return ls;
}

double optimal_gauge(const LaurentSymbol& sym) {
    if (sym.is_constant()) return 1.0;
    auto area = [&](double logr, int n) {
        const PlaneCurve c = symbol_curve(sym, std::exp(logr), n);
        const std::vector<cplx> h = convex_hull(c.points);
        double a = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const cplx p = h[i], q = h[(i + 1) % h.size()];
            a += p.real() * q.imag() - q.real() * p.imag();
        }
        return 0.5 * std::abs(a);
    };
    const double lo = std::log(1e-3), hi = std::log(1e3);
    const int n = 241;
    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double v = area(lo + (hi - lo) * i / (n - 1), 256);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double step = (hi - lo) / (n - 1);
    double a = lo + step * (best - 1), b = lo + step * (best + 1);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = area(x1, 1024), f2 = area(x2, 1024);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = area(x1, 1024);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = area(x2, 1024);
        }
    }
    return std::exp(0.5 * (a + b));
}

Box annulus_box(const LaurentSymbol& sym, double r_min, double r_max, double pad) {
    std::vector<cplx> pts;
    const int rings = r_max > r_min ? 16 : 1;
    for (int i = 0; i < rings; ++i) {
        const double r = rings == 1 ? r_min : r_min * std::pow(r_max / r_min, i / (rings - 1.0));
        const PlaneCurve c = symbol_curve(sym, r, 1024);
        pts.insert(pts.end(), c.points.begin(), c.points.end());
    }
    Box b = bounding_box(pts, pad);
    const double cw = 0.5 * (b.re_lo + b.re_hi), ch = 0.5 * (b.im_lo + b.im_hi);
    if (b.height() < 0.25 * b.width()) {
        const double half = 0.125 * b.width();
        b.im_lo = ch - half;
        b.im_hi = ch + half;
    } else if (b.width() < 0.25 * b.height()) {
        const double half = 0.125 * b.height();
        b.re_lo = cw - half;
        b.re_hi = cw + half;
    }
    return b;
}

Box default_box(const LaurentSymbol& sym) {
    const GbzCurve c = sym.two_sided() ? gbz_extract(sym, std::nullopt, 256) : GbzCurve{};
    if (c.samples.empty()) {
        const double r = optimal_gauge(sym);
        return annulus_box(sym, r, r);
    }
    return annulus_box(sym, c.min_radius(), c.max_radius());
}

Indicator winding_region(const LaurentSymbol& sym, double r, const Grid& grid, Exec exec) {
    return winding_raster(symbol_curve(sym, r, 4096), grid, exec);
}

OperatorSpectrum operator_spectrum(const LaurentSymbol& sym, double r, const Grid& grid, int curve_samples) {
    OperatorSpectrum out{symbol_curve(sym, r, curve_samples), Indicator(grid)};
    out.region = winding_raster(out.curve, grid);
    mark_near_curve(out.region, out.curve, 0.5 * grid.cell_diagonal());
    return out;
}

std::vector<double> log_radius_grid(double r_min, double r_max, int count) {
    if (!(r_min > 0.0) || !(r_max > r_min) || count < 2) throw DomainError("invalid radius range");
    const double lo = std::log(r_min), hi = std::log(r_max);
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = std::exp(lo + (hi - lo) * i / (count - 1));
    return out;
}

Indicator ss_intersection_oracle(const LaurentSymbol& sym, const std::vector<double>& r_grid, const Grid& grid,
                                 int curve_samples, double tol, Exec exec) {
    if (r_grid.empty()) throw DomainError("oracle needs at least one radius");
    const double t = tol;
    Indicator acc(grid);
    std::fill(acc.mask.begin(), acc.mask.end(), std::uint8_t{1});
    for (double r : r_grid) {
        const PlaneCurve c = symbol_curve(sym, r, curve_samples);
        Indicator ind = winding_raster(c, grid, exec);
        if (tol < 0.0) mark_crossed_cells(ind, c);
        else mark_near_curve(ind, c, t);
        for (std::size_t i = 0; i < acc.mask.size(); ++i) acc.mask[i] &= ind.mask[i];
    }
    return acc;
}

std::pair<double, double> middle_radius_range(const LaurentSymbol& sym, const std::vector<cplx>& lambdas) {
    const RootSolver solver(sym);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const cplx& l : lambdas) {
        const auto r = solver.roots(l);
        lo = std::min(lo, std::abs(r[solver.split() - 1]));
        hi = std::max(hi, std::abs(r[solver.split()]));
    }
    return {lo, hi};
}

}  // namespace openlimit
