#pragma once

#include "openlimit/geometry.hpp"
#include "openlimit/symbol.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace openlimit {

/**
 * One experiment, read from a JSON file. Keys not listed here are rejected so that typos do
 * not silently fall back to defaults.
 *
 *   name                 string
 *   symbol               {"family": {m, kappa, rho, a0, offset}} | {"coeffs": [{k, re, im}]}
 *                        | {"file": path} | {"preset": name}
 *   compare_symbol       same forms; symmetrize compares against it instead of f o p
 *   lambda_window        [lo, hi] for the real scan
 *   box                  {"re": [lo, hi], "im": [lo, hi]} for the limit-set window
 *   grid                 {real_scan, gbz_samples, limitset, angle_bins}
 *   oracle               {radii, grid}
 *   matrix               {n: int | [int], N, c, K, t: int | "auto"}
 *   dos                  {bins, h_rel}
 *   localization         {fraction}
 *   tolerances           {hermitian}
 *   output_dir           path
 *   seed                 non-negative integer
 */
struct ExperimentConfig {
    std::string name = "experiment";
    LaurentSymbol symbol;
    std::optional<LaurentSymbol> compare_symbol;
    std::optional<std::pair<double, double>> lambda_window;
    std::optional<Box> box;
    int real_scan_grid = 1024;
    int gbz_samples = 2048;  // real energies; each contributes two GBZ points
    int limitset_grid = 400;
    int angle_bins = 256;
    int oracle_radii = 64;
    int oracle_grid = 400;
    std::vector<int> n_list{100};
    std::optional<int> N;
    double N_scale = 10.0;
    std::optional<int> K;
    std::optional<int> t;  // nullopt = auto
    int bins = 100;
    double h_rel = 1e-4;
    double mode_fraction = 0.5;
    double hermitian_tol = 1e-6;
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 0;
    nlohmann::json resolved;  // the merged document, echoed into reports

    // NUDFT sample count for matrix size n: N if set, else ceil(c n).
    int samples_for(int n) const;
    // Series bandwidth for N samples: K if set, else min((N - 1) / 2, 128).
    int bandwidth_for(int samples) const;
};

std::filesystem::path preset_dir();
std::filesystem::path preset_path(const std::string& name);

// Applies "a.b.c=value" overrides (value parsed as JSON, else taken as a string), then
// validates. Errors carry origin:line when the offending key can be located in the text.
ExperimentConfig config_from_text(const std::string& text, const std::string& origin,
                                  const std::vector<std::string>& overrides = {},
                                  const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& file, const std::vector<std::string>& overrides = {});

}  // namespace openlimit
