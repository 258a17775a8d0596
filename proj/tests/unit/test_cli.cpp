#include "openlimit/commands.hpp"
#include "openlimit/config.hpp"
#include "openlimit/errors.hpp"
#include "openlimit/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

using namespace openlimit;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("openlimit_unit_" + std::to_string(::getpid()) + "_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

struct Run {
    int code;
    std::string err;
};

Run cli(const std::string& args, const fs::path& dir, const std::string& env = "") {
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" OPENLIMIT_CLI_PATH "\" " + args + " >/dev/null 2>\"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    std::ifstream in(err);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("every bundled preset loads") {
    for (const char* name : {"fig1", "fig2", "fig3", "fig5a", "fig5b", "fig6", "fig7", "appA", "hermitian", "tridiagonal"}) {
        CAPTURE(name);
        CHECK_NOTHROW(load_config(preset_path(name)));
    }
    const ExperimentConfig c = load_config(preset_path("fig5b"));
    CHECK(c.n_list == std::vector<int>{20, 40, 60, 80, 100});
    CHECK(c.samples_for(40) == 400);
    CHECK(c.bandwidth_for(400) == 128);
    CHECK(c.bandwidth_for(101) == 50);
    CHECK(load_config(preset_path("fig6")).symbol.coeff(2) == cplx(0.6));
}

TEST_CASE("configuration errors carry their location") {
    const std::string text = "{\n  \"symbol\": {\"coeffs\": [{\"k\": 1, \"re\": 1}]},\n  \"grid\": {\"limitsett\": 10}\n}\n";
    try {
        config_from_text(text, "exp.json");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        CHECK(what.find("exp.json:3") != std::string::npos);
        CHECK(what.find("grid.limitsett") != std::string::npos);
    }
    try {
        config_from_text("{\n  \"symbol\": {\"coeffs\": [}\n}", "broken.json");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("broken.json:2") != std::string::npos);
    }
    CHECK_THROWS_AS(config_from_text("{\"symbol\": {\"coeffs\": [{\"k\": 1, \"re\": 1}]}}", "x", {"matrix.n=0"}), ConfigError);
    CHECK_THROWS_AS(config_from_text("{\"symbol\": {\"coeffs\": [{\"k\": 1, \"re\": 1}], \"m\": 3}}", "x"), ConfigError);
    const ExperimentConfig c =
        config_from_text("{\"symbol\": {\"preset\": \"fig1\"}}", "x", {"matrix.n=[10,20]", "dos.bins=40", "matrix.t=5"});
    CHECK(c.n_list == std::vector<int>{10, 20});
    CHECK(c.bins == 40);
    CHECK(c.t == 5);
    CHECK(c.symbol == load_config(preset_path("fig1")).symbol);
}

TEST_CASE("symbol files round trip") {
    const fs::path dir = temp_dir("symbol");
    const LaurentSymbol f({{2, 0.6}, {1, cplx(2.5, 0.25)}, {0, 3.2}, {-1, 1.6}});
    io::write_json(dir / "sym.json", io::symbol_to_json(f));
    std::ofstream(dir / "exp.json") << "{\"symbol\": {\"file\": \"sym.json\"}}";
    CHECK(load_config(dir / "exp.json").symbol == f);
    fs::remove_all(dir);
}

TEST_CASE("exit codes") {
    const fs::path dir = temp_dir("exit");
    CHECK(cli("gbz --preset hermitian --out \"" + (dir / "ok").string() + "\"", dir).code == kExitOk);
    CHECK(cli("gbz --preset no_such_preset --out \"" + (dir / "x").string() + "\"", dir).code == kExitConfig);
    CHECK(cli("gbz --preset fig1 --no-such-flag", dir).code == kExitConfig);
    CHECK(cli("frobnicate", dir).code == kExitConfig);
    CHECK(cli("gbz --config a.json --preset fig1", dir).code == kExitConfig);

    std::ofstream(dir / "bad.json") << "{\n  \"symbol\": {\"preset\": \"fig1\"},\n  \"dos\": {\"binz\": 3}\n}\n";
    const Run bad = cli("dos --config \"" + (dir / "bad.json").string() + "\"", dir);
    CHECK(bad.code == kExitConfig);
    CHECK(bad.err.find("bad.json:3") != std::string::npos);

    // The symmetriser refuses a GBZ that is not a polar curve.
    const Run np = cli("symmetrize --preset fig2 --n 20 --out \"" + (dir / "np").string() + "\"", dir);
    CHECK(np.code == kExitNumerical);
    CHECK(np.err.find("polar") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("output directory precedence and layout") {
    const fs::path dir = temp_dir("layout");
    const std::string env = "OPENLIMIT_OUTPUT_DIR=\"" + (dir / "from_env").string() + "\"";
    REQUIRE(cli("symmetrize --preset hermitian --n 20,30", dir, env).code == 0);
    CHECK(fs::exists(dir / "from_env" / "distance.json"));
    CHECK(fs::exists(dir / "from_env" / "n_0020" / "spectrum_fp.csv"));
    CHECK(fs::exists(dir / "from_env" / "n_0030" / "fourier.csv"));
    REQUIRE(cli("symmetrize --preset hermitian --n 20 --out \"" + (dir / "flag").string() + "\"", dir, env).code == 0);
    CHECK(fs::exists(dir / "flag" / "distance.json"));

    const nlohmann::json d = read_json(dir / "from_env" / "distance.json");
    CHECK(d["schema"] == 1);
    for (const auto& run : d["runs"]) CHECK(run["d_sigma"].get<double>() < 1e-8);
    fs::remove_all(dir);
}

TEST_CASE("runs are deterministic") {
    const fs::path dir = temp_dir("determinism");
    for (const char* sub : {"a", "b"})
        REQUIRE(cli("dos --preset tridiagonal --n 40 --out \"" + (dir / sub).string() + "\"", dir).code == 0);
    for (const char* f : {"distance.json", "dos_hirschman.csv", "dos_hermitian.csv", "n_0040/dos_empirical.csv"}) {
        CAPTURE(f);
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
        CHECK_FALSE(slurp(dir / "a" / f).empty());
    }
    fs::remove_all(dir);
}

TEST_CASE("command reports") {
    const fs::path dir = temp_dir("reports");
    std::ostringstream log;

    ExperimentConfig h = load_config(preset_path("hermitian"));
    h.output_dir = dir / "h";
    const nlohmann::json g = run_command("gbz", h, log);
    CHECK(g["is_polar"] == true);
    CHECK(g["min_radius"].get<double>() == doctest::Approx(1.0));
    CHECK(g["max_radius"].get<double>() == doctest::Approx(1.0));
    const nlohmann::json l = run_command("limitset", h, log);
    CHECK(l["max_imag"].get<double>() < 1e-8);

    ExperimentConfig t = load_config(preset_path("tridiagonal"), {"matrix.n=200"});
    t.output_dir = dir / "t";
    const nlohmann::json loc = run_command("localization", t, log);
    CHECK(loc["runs"][0]["max_rel_error"].get<double>() < 1e-3);
    CHECK(fs::exists(dir / "t" / "n_0200" / "rates.csv"));

    ExperimentConfig f6 = load_config(preset_path("fig6"));
    f6.output_dir = dir / "f6";
    const nlohmann::json r6 = run_command("gbz", f6, log);
    CHECK(r6["is_polar"] == true);
    CHECK(r6["crosses_unit_circle"] == true);

    ExperimentConfig c = load_config(preset_path("hermitian"), {"symbol={\"coeffs\": [{\"k\": 0, \"re\": 0.5}]}"});
    c.output_dir = dir / "c";
    const nlohmann::json d = run_command("dos", c, log);
    CHECK(d["ks_hirschman_hermitian"].get<double>() < 1e-12);
    CHECK(d["runs"][0]["ks_empirical_hermitian"].get<double>() < 1e-12);
    CHECK(d["runs"][0]["ks_empirical_hirschman"].get<double>() < 1e-12);

    CHECK_THROWS_AS(run_command("nope", c, log), ConfigError);
    fs::remove_all(dir);
}
