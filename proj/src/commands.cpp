#include "openlimit/commands.hpp"

#include "openlimit/errors.hpp"
#include "openlimit/io.hpp"
#include "openlimit/limitset.hpp"
#include "openlimit/spectral.hpp"
#include "openlimit/symmetrize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace openlimit {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;
using io::num;

fs::path n_dir(const ExperimentConfig& c, int n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "n_%04d", n);
    return c.output_dir / buf;
}

json header(const std::string& command, const ExperimentConfig& c) {
    return {{"schema", 1}, {"command", command}, {"name", c.name}, {"symbol", io::symbol_to_json(c.symbol)}};
}

json cplx_list(const std::vector<cplx>& v) {
    json a = json::array();
    for (const cplx& z : v) a.push_back(io::to_json(z));
    return a;
}

json assumption1_json(const GbzCurve& g) {
    const Assumption1Report& a = g.assumption1;
    return {{"pass", g.assumption1_pass},
            {"offending_points", cplx_list(a.offending_points)},
            {"complex_confluent", cplx_list(a.complex_confluent)},
            {"complex_confluent_lambda", a.complex_confluent_lambda},
            {"degenerate_real", cplx_list(a.degenerate_real)}};
}

json polar_json(const GbzCurve& g) {
    return {{"is_polar", g.is_polar},
            {"winding", g.winding_about_origin},
            {"monotone_lambda", g.polar.monotone_lambda},
            {"multivalued_bins", g.polar.multivalued_bins},
            {"max_gap_bins", g.polar.max_gap_bins}};
}

json intervals_json(const GbzCurve& g) {
    json a = json::array();
    for (const auto& [lo, hi] : g.intervals) a.push_back({lo, hi});
    return a;
}

// GBZ from the real scan; a constant symbol gets the unit circle.
GbzCurve extract(const ExperimentConfig& c, int lambda_samples) {
    if (c.symbol.is_constant()) return circle_curve(1.0, 2 * lambda_samples);
    if (!c.symbol.two_sided())
        throw UnsupportedError("one-sided symbol: every truncation is triangular and the limit set is the point a_0");
    return gbz_extract(c.symbol, c.lambda_window, lambda_samples, c.angle_bins, c.real_scan_grid);
}

// Spectrum of T_n(f), computed on the optimally gauged (exactly similar) matrix.
SpectrumResult symbol_spectrum(const LaurentSymbol& sym, int n, double& r_used) {
    const BandedToeplitz t = toeplitz_matrix(sym, n);
    r_used = t.hermitian || !sym.two_sided() ? 1.0 : optimal_gauge(sym);
    return eigenvalues(r_used == 1.0 ? t : gauge(t, r_used));
}

struct SeriesRun {
    GbzCurve curve;
    FourierSeries full;
    FourierSeries used;
};

SeriesRun symmetrized_series(const ExperimentConfig& c, int n) {
    SeriesRun s;
    const int N = c.samples_for(n);
    s.curve = extract(c, (N + 1) / 2);
    if (s.curve.samples.empty()) throw NumericalError("no real energy satisfies the limit condition in the window");
    if (!s.curve.is_polar) throw UnsupportedError("the GBZ is not a polar curve; the symmetriser does not apply");
    s.full = nudft_coeffs(s.curve, c.symbol, c.bandwidth_for(static_cast<int>(s.curve.size())));
    update_hermitian_flag(s.full, c.hermitian_tol);
    s.used = truncate_series(hermitian_symmetrize(s.full), c.t);
    return s;
}

void write_spectrum(const fs::path& path, const SpectrumResult& s) {
    std::vector<std::vector<std::string>> rows;
    for (const cplx& z : s.eigenvalues) rows.push_back({num(z.real()), num(z.imag())});
    io::write_csv(path, {"re", "im"}, rows);
}

void write_series(const fs::path& path, const FourierSeries& s) {
    std::vector<std::vector<std::string>> rows;
    for (int k = -s.K; k <= s.K; ++k) rows.push_back({num(k), num(s.at(k).real()), num(s.at(k).imag())});
    io::write_csv(path, {"k", "re", "im"}, rows);
}

void write_measure(const fs::path& path, const SpectralMeasure& m) {
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < m.nx; ++i) rows.push_back({num(m.bin_center(i)), num(m.mass[i])});
    io::write_csv(path, {"bin_center", "mass"}, rows);
}

double loglog_slope(const std::vector<int>& n, const std::vector<double>& d) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(d[i] > 0.0)) continue;
        const double x = std::log(n[i]), y = std::log(d[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return std::numeric_limits<double>::quiet_NaN();
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

json cmd_limitset(const ExperimentConfig& c, std::ostream& log) {
    const Box box = c.box ? *c.box : default_box(c.symbol);
    const LimitSet ls = limit_set_grid(c.symbol, box, c.limitset_grid);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t a = 0; a < ls.arcs.size(); ++a)
        for (const cplx& z : ls.arcs[a]) rows.push_back({num(z.real()), num(z.imag()), num(static_cast<long long>(a))});
    io::write_csv(c.output_dir / "limitset.csv", {"re", "im", "arc_id"}, rows);

    json r = header("limitset", c);
    r["box"] = {{"re", {box.re_lo, box.re_hi}}, {"im", {box.im_lo, box.im_hi}}};
    r["grid"] = c.limitset_grid;
    r["max_imag"] = ls.max_imag;
    r["connected_estimate"] = ls.connected_estimate;
    r["arcs"] = ls.arcs.size();
    r["points"] = ls.size();
    r["degenerate_points"] = cplx_list(ls.degenerate_points);
    const GbzCurve g = extract(c, c.gbz_samples);
    r["real_intervals"] = intervals_json(g);
    if (g.samples.empty()) {
        r["is_polar"] = false;
        r["gbz_empty"] = true;
    } else {
        r.update(polar_json(g));
        r["assumption1"] = assumption1_json(g);
    }
    io::write_json(c.output_dir / "report.json", r);
    log << "limitset: " << ls.size() << " points in " << ls.arcs.size() << " arcs, max |Im| = " << ls.max_imag
        << ", polar = " << r["is_polar"] << '\n';
    return r;
}

json cmd_gbz(const ExperimentConfig& c, std::ostream& log) {
    const GbzCurve g = extract(c, c.gbz_samples);
    std::vector<std::vector<std::string>> rows;
    for (const GbzSample& s : g.samples) rows.push_back({num(s.theta), num(s.r), num(s.lambda), num(s.beta)});
    io::write_csv(c.output_dir / "gbz.csv", {"theta", "r", "lambda", "beta"}, rows);
    json r = header("gbz", c);
    r["samples"] = g.size();
    r["real_intervals"] = intervals_json(g);
    if (g.samples.empty()) {
        r["is_polar"] = false;
        r["gbz_empty"] = true;
    } else {
        r.update(polar_json(g));
        r["assumption1"] = assumption1_json(g);
        r["min_radius"] = g.min_radius();
        r["max_radius"] = g.max_radius();
        r["crosses_unit_circle"] = g.min_radius() < 1.0 && g.max_radius() > 1.0;
    }
    io::write_json(c.output_dir / "report.json", r);
    log << "gbz: " << g.size() << " samples, polar = " << r["is_polar"] << '\n';
    return r;
}

json cmd_symmetrize(const ExperimentConfig& c, std::ostream& log) {
    json runs = json::array();
    std::vector<int> ns;
    std::vector<double> ds;
    for (int n : c.n_list) {
        json run{{"n", n}};
        double r_f = 1.0;
        const SpectrumResult sf = symbol_spectrum(c.symbol, n, r_f);
        SpectrumResult sg;
        if (c.compare_symbol) {
            double r_g = 1.0;
            sg = symbol_spectrum(*c.compare_symbol, n, r_g);
            run["second"] = "compare_symbol";
            run["gauge_second"] = r_g;
        } else {
            const SeriesRun s = symmetrized_series(c, n);
            sg = eigenvalues(toeplitz_matrix(s.used, n));
            write_series(n_dir(c, n) / "fourier.csv", s.full);
            const HullCheck hp = conv_hull_check(sg, series_curve(s.used, 4096));
            run["second"] = "symbol_on_gbz";
            run["N"] = s.curve.size();
            run["K"] = s.full.K;
            run["t"] = s.used.bandwidth_t;
            run["tail_norm"] = s.used.tail_norm;
            run["hermitian_defect"] = s.full.hermitian_defect;
            run["hermitian_correction"] = s.used.hermitian_correction;
            run["hull_violations_second"] = hp.violations;
            run["hull_max_excess_second"] = hp.max_excess;
        }
        const LaurentSymbol& f = c.symbol;
        const HullCheck hf = conv_hull_check(sf, symbol_curve(f, f.two_sided() ? optimal_gauge(f) : 1.0, 4096));
        const double d = l1_spectral_distance(sf, sg);
        run["gauge"] = r_f;
        run["d_sigma"] = d;
        run["hull_violations_f"] = hf.violations;
        run["hull_max_excess_f"] = hf.max_excess;
        write_spectrum(n_dir(c, n) / "spectrum_f.csv", sf);
        write_spectrum(n_dir(c, n) / "spectrum_fp.csv", sg);
        runs.push_back(run);
        ns.push_back(n);
        ds.push_back(d);
        log << "symmetrize: n = " << n << ", d_sigma = " << d << '\n';
    }
    json r = header("symmetrize", c);
    r["runs"] = runs;
    bool non_increasing = true, increasing = ds.size() >= 2;
    for (std::size_t i = 1; i < ds.size(); ++i) {
        if (i + 3 > ds.size() && ds[i] > ds[i - 1]) non_increasing = false;
        if (!(ds[i] > ds[i - 1])) increasing = false;
    }
    r["trend"] = {{"loglog_slope", loglog_slope(ns, ds)},
                  {"non_increasing_last3", non_increasing},
                  {"increasing", increasing},
                  {"max_d_sigma", ds.empty() ? 0.0 : *std::max_element(ds.begin(), ds.end())}};
    io::write_json(c.output_dir / "distance.json", r);
    return r;
}

json cmd_dos(const ExperimentConfig& c, std::ostream& log) {
    const LaurentSymbol& f = c.symbol;
    const GbzCurve g = extract(c, c.gbz_samples);
    const bool polar = g.is_polar && !g.samples.empty();
    const bool real_limit = polar && g.assumption1_pass;

    LimitSet limit;
    if (f.two_sided()) {
        if (real_limit) {
            const auto [lo, hi] = c.lambda_window ? *c.lambda_window : default_lambda_range(f);
            limit = limit_set_real_scan(f, lo, hi, c.real_scan_grid, c.gbz_samples).limit;
        } else {
            limit = limit_set_grid(f, c.box ? *c.box : default_box(f), c.limitset_grid);
        }
    }
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    if (f.is_constant()) {
        // Put the point mass at a bin centre so roundoff in the eigenvalues cannot split it.
        const double w = 2.0 / c.bins;
        lo = f.coeff(0).real() - w * (c.bins / 2 + 0.5);
        hi = lo + w * c.bins;
    } else {
        for (const cplx& z : limit.points()) {
            lo = std::min(lo, z.real());
            hi = std::max(hi, z.real());
        }
        if (!(hi > lo)) throw NumericalError("limit set is empty or a single point; no density to bin");
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }

    json r = header("dos", c);
    r["support"] = {lo, hi};
    r["bins"] = c.bins;
    r["real_limit"] = real_limit || f.is_constant();
    const SpectralMeasure hir = hirschman_dos(f, limit, c.bins, lo, hi, c.h_rel);
    write_measure(c.output_dir / "dos_hirschman.csv", hir);
    r["hirschman_raw_mass"] = hir.raw_mass;
    std::optional<SpectralMeasure> her;
    if (polar || f.is_constant()) {
        her = hermitian_dos(f, g, c.bins, lo, hi);
        write_measure(c.output_dir / "dos_hermitian.csv", *her);
        r["ks_hirschman_hermitian"] = measure_distance(hir, *her);
    }
    json runs = json::array();
    for (int n : c.n_list) {
        json run{{"n", n}};
        double r_f = 1.0;
        const SpectrumResult sf = symbol_spectrum(f, n, r_f);
        const SpectralMeasure ef = empirical_measure(sf, c.bins, lo, hi);
        write_measure(n_dir(c, n) / "dos_empirical_f.csv", ef);
        run["ks_empirical_f_hirschman"] = measure_distance(ef, hir);
        json mf = json::array();
        for (const cplx& m : moments(sf, 4)) mf.push_back(io::to_json(m));
        run["moments_f"] = mf;
        if (her) {
            const SeriesRun s = symmetrized_series(c, n);
            const SpectrumResult sp = eigenvalues(toeplitz_matrix(s.used, n));
            const SpectralMeasure ep = empirical_measure(sp, c.bins, lo, hi);
            write_measure(n_dir(c, n) / "dos_empirical.csv", ep);
            run["ks_empirical_hermitian"] = measure_distance(ep, *her);
            run["ks_empirical_hirschman"] = measure_distance(ep, hir);
            json mp = json::array();
            for (const cplx& m : moments(sp, 4)) mp.push_back(io::to_json(m));
            run["moments_fp"] = mp;
        }
        log << "dos: n = " << n << ", KS(empirical f, Hirschman) = " << run["ks_empirical_f_hirschman"] << '\n';
        runs.push_back(run);
    }
    r["runs"] = runs;
    io::write_json(c.output_dir / "distance.json", r);
    return r;
}

json cmd_localization(const ExperimentConfig& c, std::ostream& log) {
    const LaurentSymbol& f = c.symbol;
    const GbzCurve g = extract(c, c.gbz_samples);
    json runs = json::array();
    for (int n : c.n_list) {
        const BandedToeplitz t = toeplitz_matrix(f, n);
        double r0 = 1.0;
        const SpectrumResult s = symbol_spectrum(f, n, r0);
        const int count = std::max(1, static_cast<int>(std::lround(c.mode_fraction * n)));
        const int first = (n - count) / 2;
        std::vector<DecayFit> fits(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
        for (int m = 0; m < count; ++m) fits[m] = eigenvector_decay(t, s.eigenvalues[first + m], r0);

        std::vector<std::vector<std::string>> rates, modes;
        double worst = 0.0;
        for (int m = 0; m < count; ++m) {
            const DecayFit& d = fits[m];
            const double pred = g.samples.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                  : -std::log(gbz_radius_at(g, d.lambda.real()));
            const double rel = std::abs(pred) > 1e-12 ? std::abs(d.decay_rate - pred) / std::abs(pred)
                                                      : std::numeric_limits<double>::quiet_NaN();
            if (std::isfinite(rel)) worst = std::max(worst, rel);
            rates.push_back({num(first + m), num(d.lambda.real()), num(d.lambda.imag()), num(d.decay_rate), num(pred),
                             num(std::abs(d.decay_rate - pred)), num(rel), num(d.r2)});
            for (int j = 0; j < n; ++j) modes.push_back({num(first + m), num(j), num(d.log_profile[j])});
        }
        io::write_csv(n_dir(c, n) / "rates.csv",
                      {"mode", "lambda_re", "lambda_im", "decay_fit", "decay_predicted", "abs_error", "rel_error", "r2"},
                      rates);
        io::write_csv(n_dir(c, n) / "modes.csv", {"mode", "j", "log_abs_v"}, modes);
        runs.push_back({{"n", n}, {"modes", count}, {"first_mode", first}, {"gauge", r0}, {"max_rel_error", worst}});
        log << "localization: n = " << n << ", " << count << " modes, max relative error " << worst << '\n';
    }
    json r = header("localization", c);
    r["runs"] = runs;
    io::write_json(c.output_dir / "localization.json", r);
    return r;
}

json cmd_oracle(const ExperimentConfig& c, std::ostream& log) {
    const LaurentSymbol& f = c.symbol;
    if (!f.two_sided()) throw UnsupportedError("the oracle needs a two-sided symbol");
    const Box box = c.box ? *c.box : default_box(f);
    const Grid grid{box, c.oracle_grid, c.oracle_grid};
    const LimitSet ls = limit_set_grid(f, box, c.oracle_grid);
    const GbzCurve g = extract(c, c.gbz_samples);
    auto [rlo, rhi] = g.samples.empty() ? middle_radius_range(f, ls.points())
                                        : std::pair{g.min_radius(), g.max_radius()};
    if (!(rhi > rlo * (1.0 + 1e-9))) {
        rlo /= 1.01;
        rhi *= 1.01;
    }
    const Indicator ind = ss_intersection_oracle(f, log_radius_grid(rlo, rhi, c.oracle_radii), grid);
    const std::vector<cplx> marked = ind.marked_centers();
    const double h = hausdorff(ls.points(), marked);

    std::vector<std::vector<std::string>> rows;
    for (const cplx& z : marked) rows.push_back({num(z.real()), num(z.imag())});
    io::write_csv(c.output_dir / "oracle.csv", {"re", "im"}, rows);
    rows.clear();
    for (std::size_t a = 0; a < ls.arcs.size(); ++a)
        for (const cplx& z : ls.arcs[a]) rows.push_back({num(z.real()), num(z.imag()), num(static_cast<long long>(a))});
    io::write_csv(c.output_dir / "limitset.csv", {"re", "im", "arc_id"}, rows);

    json r = header("oracle", c);
    r["box"] = {{"re", {box.re_lo, box.re_hi}}, {"im", {box.im_lo, box.im_hi}}};
    r["grid"] = c.oracle_grid;
    r["radii"] = c.oracle_radii;
    r["radius_range"] = {rlo, rhi};
    r["marked_cells"] = marked.size();
    r["limit_points"] = ls.size();
    r["cell_diagonal"] = grid.cell_diagonal();
    r["hausdorff"] = h;
    r["hausdorff_cells"] = h / grid.cell_diagonal();
    io::write_json(c.output_dir / "report.json", r);
    log << "oracle: Hausdorff distance " << h / grid.cell_diagonal() << " cell diagonals\n";
    return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"limitset", "gbz", "symmetrize", "dos", "localization", "oracle"};
    return names;
}

json run_command(const std::string& command, const ExperimentConfig& cfg, std::ostream& log) {
    fs::create_directories(cfg.output_dir);
    if (command == "limitset") return cmd_limitset(cfg, log);
    if (command == "gbz") return cmd_gbz(cfg, log);
    if (command == "symmetrize") return cmd_symmetrize(cfg, log);
    if (command == "dos") return cmd_dos(cfg, log);
    if (command == "localization") return cmd_localization(cfg, log);
    if (command == "oracle") return cmd_oracle(cfg, log);
    throw ConfigError("unknown command \"" + command + "\"");
}

int exit_code_for(const std::exception& e) {
    return dynamic_cast<const ConfigError*>(&e) ? kExitConfig : kExitNumerical;
}

}  // namespace openlimit
