#pragma once

#include "openlimit/limitset.hpp"
#include "openlimit/symbol.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace openlimit::io {

using json = nlohmann::json;

// 17 significant digits, so that every double round-trips.
std::string num(double x);
std::string num(long long x);
inline std::string num(int x) { return num(static_cast<long long>(x)); }

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
void write_json(const std::filesystem::path& path, const json& j);

json to_json(cplx z);  // [re, im]
json symbol_to_json(const LaurentSymbol& sym);
// {"m": int, "coeffs": [{"k", "re", "im"}], "kappa"?, "rho"?}; m is checked against the coefficients.
LaurentSymbol symbol_from_json(const json& j);

void write_curve_csv(const std::filesystem::path& path, const PlaneCurve& c);  // theta,re,im
PlaneCurve read_curve_csv(const std::filesystem::path& path);

}  // namespace openlimit::io
