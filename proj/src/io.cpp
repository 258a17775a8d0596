#include "openlimit/io.hpp"

#include "openlimit/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace openlimit::io {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string num(long long x) { return std::to_string(x); }

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

void write_json(const std::filesystem::path& path, const json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json symbol_to_json(const LaurentSymbol& sym) {
    json j;
    j["m"] = sym.bandwidth();
    j["coeffs"] = json::array();
    for (const auto& [k, a] : sym.coeffs()) j["coeffs"].push_back({{"k", k}, {"re", a.real()}, {"im", a.imag()}});
    if (sym.kappa) j["kappa"] = *sym.kappa;
    if (sym.rho) j["rho"] = *sym.rho;
    return j;
}

LaurentSymbol symbol_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw ConfigError("symbol needs a \"coeffs\" array");
    std::map<int, cplx> c;
    for (const json& e : j["coeffs"]) {
        if (!e.is_object() || !e.contains("k") || !e["k"].is_number_integer())
            throw ConfigError("each coefficient needs an integer \"k\"");
        const double re = e.value("re", 0.0), im = e.value("im", 0.0);
        c[e["k"].get<int>()] += cplx(re, im);
    }
    LaurentSymbol sym(c);
    if (j.contains("m") && j["m"].get<int>() != sym.bandwidth())
        throw ConfigError("symbol \"m\" = " + std::to_string(j["m"].get<int>()) + " does not match its coefficients (bandwidth " +
                          std::to_string(sym.bandwidth()) + ")");
    if (j.contains("kappa")) sym.kappa = j["kappa"].get<double>();
    if (j.contains("rho")) sym.rho = j["rho"].get<double>();
    return sym;
}

void write_curve_csv(const std::filesystem::path& path, const PlaneCurve& c) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < c.size(); ++i) rows.push_back({num(c.theta[i]), num(c.points[i].real()), num(c.points[i].imag())});
    write_csv(path, {"theta", "re", "im"}, rows);
}

PlaneCurve read_curve_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::string line;
    std::getline(in, line);
    if (line.rfind("theta,re,im", 0) != 0) throw ConfigError(path.string() + ": expected header theta,re,im");
    PlaneCurve c;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string a, b, d;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, d))
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected three columns");
        try {
            c.theta.push_back(std::stod(a));
            c.points.emplace_back(std::stod(b), std::stod(d));
        } catch (const std::exception&) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": not a number");
        }
    }
    c.closed = true;
    return c;
}

}  // namespace openlimit::io
