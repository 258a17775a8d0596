#include "openlimit/config.hpp"

#include "openlimit/errors.hpp"
#include "openlimit/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace openlimit {

namespace {

using json = nlohmann::json;

struct Context {
    const std::string& text;
    const std::string& origin;
    std::set<std::string> overridden;

    // Line of the last key of a dotted path, found by locating each key in turn.
    int line_of(const std::string& path) const {
        std::size_t pos = 0;
        std::stringstream ss(path);
        std::string key;
        while (std::getline(ss, key, '.')) {
            const std::size_t at = text.find('"' + key + '"', pos);
            if (at == std::string::npos) return 0;
            pos = at + 1;
        }
        return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
    }

    [[noreturn]] void fail(const std::string& path, const std::string& what) const {
        std::string where = origin;
        if (overridden.count(path)) where += " (--set " + path + ")";
        else if (const int line = line_of(path); line > 0) where += ":" + std::to_string(line);
        throw ConfigError(where + ": " + path + ": " + what);
    }
};

void check_keys(const Context& cx, const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) cx.fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; });
        if (!known) cx.fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
    }
}

int get_int(const Context& cx, const json& v, const std::string& path, int min) {
    if (!v.is_number_integer()) cx.fail(path, "expected an integer");
    const long long x = v.get<long long>();
    if (x < min || x > 100000000) cx.fail(path, "must be an integer >= " + std::to_string(min));
    return static_cast<int>(x);
}

double get_num(const Context& cx, const json& v, const std::string& path) {
    if (!v.is_number()) cx.fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) cx.fail(path, "must be finite");
    return x;
}

double get_positive(const Context& cx, const json& v, const std::string& path) {
    const double x = get_num(cx, v, path);
    if (!(x > 0.0)) cx.fail(path, "must be positive");
    return x;
}

std::pair<double, double> get_range(const Context& cx, const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) cx.fail(path, "expected [lo, hi]");
    const double lo = get_num(cx, v[0], path), hi = get_num(cx, v[1], path);
    if (!(lo < hi)) cx.fail(path, "needs lo < hi");
    return {lo, hi};
}

LaurentSymbol read_symbol(const Context& cx, const json& v, const std::string& path, const std::filesystem::path& base,
                          int depth);

LaurentSymbol symbol_of_preset(const Context& cx, const std::string& name, const std::string& path, int depth) {
    const std::filesystem::path file = preset_path(name);
    std::ifstream in(file);
    if (!in) cx.fail(path, "unknown preset \"" + name + "\"");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        cx.fail(path, "preset \"" + name + "\" does not parse: " + e.what());
    }
    const std::string origin = file.string();
    const Context inner{text, origin, {}};
    if (!doc.contains("symbol")) inner.fail("symbol", "missing");
    return read_symbol(inner, doc["symbol"], "symbol", file.parent_path(), depth + 1);
}

LaurentSymbol read_symbol(const Context& cx, const json& v, const std::string& path, const std::filesystem::path& base,
                          int depth) {
    if (depth > 4) cx.fail(path, "preset references nest too deeply");
    check_keys(cx, v, path, {"family", "coeffs", "m", "kappa", "rho", "file", "preset"});
    const int forms = static_cast<int>(v.contains("family")) + static_cast<int>(v.contains("coeffs")) +
                      static_cast<int>(v.contains("file")) + static_cast<int>(v.contains("preset"));
    if (forms != 1) cx.fail(path, "give exactly one of family, coeffs, file, preset");
    LaurentSymbol sym;
    if (v.contains("family")) {
        const json& f = v["family"];
        const std::string fp = path + ".family";
        check_keys(cx, f, fp, {"m", "kappa", "rho", "a0", "offset"});
        for (const char* req : {"m", "kappa", "rho"})
            if (!f.contains(req)) cx.fail(fp + "." + req, "missing");
        const int m = get_int(cx, f["m"], fp + ".m", 1);
        const double kappa = get_positive(cx, f["kappa"], fp + ".kappa");
        const double rho = get_positive(cx, f["rho"], fp + ".rho");
        const double a0 = f.contains("a0") ? get_num(cx, f["a0"], fp + ".a0") : 0.0;
        const double offset = f.contains("offset") ? get_num(cx, f["offset"], fp + ".offset") : 0.0;
        if (offset < 0.0) cx.fail(fp + ".offset", "must be non-negative");
        sym = decay_symbol(m, kappa, rho, a0, offset);
    } else if (v.contains("coeffs")) {
        try {
            sym = io::symbol_from_json(v);
        } catch (const ConfigError& e) {
            cx.fail(path, e.what());
        } catch (const json::exception& e) {
            cx.fail(path, e.what());
        }
    } else if (v.contains("file")) {
        if (!v["file"].is_string()) cx.fail(path + ".file", "expected a path");
        std::filesystem::path file = v["file"].get<std::string>();
        if (file.is_relative() && !base.empty()) file = base / file;
        std::ifstream in(file);
        if (!in) cx.fail(path + ".file", "cannot read " + file.string());
        try {
            sym = io::symbol_from_json(json::parse(in));
        } catch (const std::exception& e) {
            cx.fail(path + ".file", e.what());
        }
    } else {
        if (!v["preset"].is_string()) cx.fail(path + ".preset", "expected a preset name");
        sym = symbol_of_preset(cx, v["preset"].get<std::string>(), path + ".preset", depth);
    }
    if (sym.empty()) cx.fail(path, "symbol has no nonzero coefficient");
    return sym;
}

void set_path(json& doc, const std::string& path, const json& value) {
    json* node = &doc;
    std::stringstream ss(path);
    std::string key;
    std::vector<std::string> keys;
    while (std::getline(ss, key, '.')) keys.push_back(key);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i].empty()) throw ConfigError("--set " + path + ": empty key");
        if (!node->is_object()) *node = json::object();
        if (i + 1 == keys.size()) (*node)[keys[i]] = value;
        else node = &(*node)[keys[i]];
    }
}

}  // namespace

int ExperimentConfig::samples_for(int n) const {
    if (N) return *N;
    return static_cast<int>(std::ceil(N_scale * n));
}

int ExperimentConfig::bandwidth_for(int samples) const {
    if (K) return *K;
    return std::min((samples - 1) / 2, 128);
}

std::filesystem::path preset_dir() {
    if (const char* env = std::getenv("OPENLIMIT_PRESET_DIR")) return env;
    return OPENLIMIT_PRESET_DIR;
}

std::filesystem::path preset_path(const std::string& name) { return preset_dir() / (name + ".json"); }

ExperimentConfig config_from_text(const std::string& text, const std::string& origin,
                                  const std::vector<std::string>& overrides, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
        const auto upto = text.begin() + static_cast<std::ptrdiff_t>(byte);
        const int line = 1 + static_cast<int>(std::count(text.begin(), upto, '\n'));
        const std::size_t nl = text.rfind('\n', byte > 0 ? byte - 1 : 0);
        const std::size_t col = nl == std::string::npos ? byte : byte - nl - 1;
        std::string msg = e.what();
        if (const std::size_t p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }
    Context cx{text, origin, {}};
    for (const std::string& o : overrides) {
        const std::size_t eq = o.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--set " + o + ": expected key.path=value");
        const std::string path = o.substr(0, eq), raw = o.substr(eq + 1);
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            value = raw;
        }
        set_path(doc, path, value);
        cx.overridden.insert(path);
    }

    check_keys(cx, doc, "", {"name", "symbol", "compare_symbol", "lambda_window", "box", "grid", "oracle", "matrix", "dos",
                             "localization", "tolerances", "output_dir", "seed"});
    ExperimentConfig c;
    c.resolved = doc;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) cx.fail("name", "expected a string");
        c.name = doc["name"].get<std::string>();
    }
    if (!doc.contains("symbol")) cx.fail("symbol", "missing");
    c.symbol = read_symbol(cx, doc["symbol"], "symbol", base_dir, 0);
    if (doc.contains("compare_symbol")) c.compare_symbol = read_symbol(cx, doc["compare_symbol"], "compare_symbol", base_dir, 0);
    if (doc.contains("lambda_window")) c.lambda_window = get_range(cx, doc["lambda_window"], "lambda_window");
    if (doc.contains("box")) {
        const json& b = doc["box"];
        check_keys(cx, b, "box", {"re", "im"});
        if (!b.contains("re") || !b.contains("im")) cx.fail("box", "needs both re and im ranges");
        const auto re = get_range(cx, b["re"], "box.re"), im = get_range(cx, b["im"], "box.im");
        c.box = Box{re.first, re.second, im.first, im.second};
    }
    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        check_keys(cx, g, "grid", {"real_scan", "gbz_samples", "limitset", "angle_bins"});
        if (g.contains("real_scan")) c.real_scan_grid = get_int(cx, g["real_scan"], "grid.real_scan", 64);
        if (g.contains("gbz_samples")) c.gbz_samples = get_int(cx, g["gbz_samples"], "grid.gbz_samples", 8);
        if (g.contains("limitset")) c.limitset_grid = get_int(cx, g["limitset"], "grid.limitset", 8);
        if (g.contains("angle_bins")) c.angle_bins = get_int(cx, g["angle_bins"], "grid.angle_bins", 8);
    }
    if (doc.contains("oracle")) {
        const json& o = doc["oracle"];
        check_keys(cx, o, "oracle", {"radii", "grid"});
        if (o.contains("radii")) c.oracle_radii = get_int(cx, o["radii"], "oracle.radii", 2);
        if (o.contains("grid")) c.oracle_grid = get_int(cx, o["grid"], "oracle.grid", 8);
    }
    if (doc.contains("matrix")) {
        const json& m = doc["matrix"];
        check_keys(cx, m, "matrix", {"n", "N", "c", "K", "t"});
        if (m.contains("n")) {
            c.n_list.clear();
            if (m["n"].is_array()) {
                for (const json& v : m["n"]) c.n_list.push_back(get_int(cx, v, "matrix.n", 1));
            } else {
                c.n_list.push_back(get_int(cx, m["n"], "matrix.n", 1));
            }
            if (c.n_list.empty()) cx.fail("matrix.n", "must not be empty");
        }
        if (m.contains("N") && !m["N"].is_null()) c.N = get_int(cx, m["N"], "matrix.N", 3);
        if (m.contains("c")) c.N_scale = get_positive(cx, m["c"], "matrix.c");
        if (m.contains("K") && !m["K"].is_null()) c.K = get_int(cx, m["K"], "matrix.K", 1);
        if (m.contains("t")) {
            if (m["t"].is_string()) {
                if (m["t"].get<std::string>() != "auto") cx.fail("matrix.t", "expected an integer or \"auto\"");
            } else {
                c.t = get_int(cx, m["t"], "matrix.t", 1);
            }
        }
    }
    if (doc.contains("dos")) {
        const json& d = doc["dos"];
        check_keys(cx, d, "dos", {"bins", "h_rel"});
        if (d.contains("bins")) c.bins = get_int(cx, d["bins"], "dos.bins", 10);
        if (d.contains("h_rel")) c.h_rel = get_positive(cx, d["h_rel"], "dos.h_rel");
    }
    if (doc.contains("localization")) {
        const json& l = doc["localization"];
        check_keys(cx, l, "localization", {"fraction"});
        if (l.contains("fraction")) {
            c.mode_fraction = get_positive(cx, l["fraction"], "localization.fraction");
            if (c.mode_fraction > 1.0) cx.fail("localization.fraction", "must be at most 1");
        }
    }
    if (doc.contains("tolerances")) {
        const json& t = doc["tolerances"];
        check_keys(cx, t, "tolerances", {"hermitian"});
        if (t.contains("hermitian")) c.hermitian_tol = get_positive(cx, t["hermitian"], "tolerances.hermitian");
    }
    if (doc.contains("output_dir")) {
        if (!doc["output_dir"].is_string()) cx.fail("output_dir", "expected a path");
        c.output_dir = doc["output_dir"].get<std::string>();
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) cx.fail("seed", "expected a non-negative integer");
        c.seed = doc["seed"].get<std::uint64_t>();
    }
    for (int n : c.n_list) {
        const int N = c.samples_for(n);
        if (N < 2 * c.bandwidth_for(N) + 1) cx.fail(c.N ? "matrix.N" : "matrix.c", "N = " + std::to_string(N) + " is below 2K + 1");
        if (c.t && *c.t > c.bandwidth_for(N)) cx.fail("matrix.t", "exceeds K");
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& file, const std::vector<std::string>& overrides) {
    std::ifstream in(file);
    if (!in) throw ConfigError(file.string() + ": cannot read config");
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_text(buf.str(), file.string(), overrides, file.parent_path());
}

}  // namespace openlimit
