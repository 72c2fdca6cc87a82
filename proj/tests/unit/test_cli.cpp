#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "wgcool/cli.hpp"
#include "wgcool/config.hpp"
#include "wgcool/errors.hpp"

using namespace wgcool;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("wgcool_test_" + std::to_string(std::rand()) + "_" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_exe(const std::string& args) {
    const std::string cmd = std::string(WGCOOL_EXE) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run_cmd(cli::Subcommand cmd, const SimConfig& cfg, const fs::path& out, unsigned threads,
            std::string* log_text = nullptr) {
    std::ostringstream log, err;
    cli::RunOptions opt;
    opt.out_dir = out;
    opt.threads = threads;
    const int code = cli::run(cmd, cfg, opt, log, err);
    if (log_text) *log_text = log.str();
    return code;
}

std::size_t data_rows(const std::string& csv) {
    std::size_t n = 0;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') ++n;
    return n;
}

}  // namespace

TEST_CASE("force curve file") {
    TempDir dir;
    std::string log;
    REQUIRE(run_cmd(cli::Subcommand::ForceCurve, preset(2), dir.path, 1, &log) == cli::kOk);
    const std::string csv = slurp(dir.path / "force_curve.csv");
    CHECK(data_rows(csv) == 401);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(log.find("beta=") != std::string::npos);

    // the header echoes the complete configuration; rerunning it reproduces the file
    const std::string tag = "# config: ";
    const auto at = csv.find(tag);
    REQUIRE(at != std::string::npos);
    const std::string echoed = csv.substr(at + tag.size(), csv.find('\n', at) - at - tag.size());
    CHECK(echoed == to_json(preset(2)));
    TempDir again;
    REQUIRE(run_cmd(cli::Subcommand::ForceCurve, parse_config(echoed), again.path, 1) == cli::kOk);
    CHECK(slurp(again.path / "force_curve.csv") == csv);
}

TEST_CASE("kappa sweep summary reports the exponent") {
    TempDir dir;
    std::string log;
    REQUIRE(run_cmd(cli::Subcommand::KappaSweep, preset(3), dir.path, 2, &log) == cli::kOk);
    CHECK(data_rows(slurp(dir.path / "kappa_sweep.csv")) == 27);
    const auto at = log.find("exponent=");
    REQUIRE(at != std::string::npos);
    const double e = std::stod(log.substr(at + 9));
    CHECK(e >= -1.65);
    CHECK(e <= -1.35);
}

TEST_CASE("output is identical for any thread count") {
    for (auto [cmd, file, id] : {std::tuple{cli::Subcommand::DeltaSweep, "delta_sweep.csv", 4},
                                 std::tuple{cli::Subcommand::Shift, "shift.csv", 2}}) {
        SimConfig cfg = preset(id);
        if (cmd == cli::Subcommand::Shift) cfg.sweep.n_points = 41;
        TempDir a, b;
        REQUIRE(run_cmd(cmd, cfg, a.path, 1) == cli::kOk);
        REQUIRE(run_cmd(cmd, cfg, b.path, 4) == cli::kOk);
        CHECK(slurp(a.path / file) == slurp(b.path / file));
    }
}

TEST_CASE("failures leave nothing behind") {
    TempDir dir;
    SimConfig cfg = preset(3);
    cfg.scenario.numerics.max_evals = 100;
    CHECK(run_cmd(cli::Subcommand::KappaSweep, cfg, dir.path, 1) == cli::kQuadratureFailure);
    CHECK(fs::is_empty(dir.path));
    const fs::path missing = dir.path / "no" / "such" / "dir";
    CHECK(run_cmd(cli::Subcommand::ForceCurve, preset(2), missing, 1) == cli::kFailure);
    CHECK(fs::is_empty(dir.path));
}

TEST_CASE("load_config") {
    CHECK(cli::load_config(cli::Subcommand::KappaSweep, std::nullopt, std::nullopt).sweep.kind == SweepKind::Kappa);
    CHECK(cli::load_config(cli::Subcommand::DeltaSweep, std::nullopt, 4).sweep.kind == SweepKind::Delta);
    CHECK_THROWS_AS((void)cli::load_config(cli::Subcommand::KappaSweep, std::nullopt, 2), ConfigError);
    CHECK_THROWS_AS((void)cli::load_config(cli::Subcommand::ForceCurve, fs::path("/nonexistent.json"), std::nullopt),
                    ConfigError);
    CHECK_THROWS_AS((void)cli::load_config(cli::Subcommand::ForceCurve, fs::path("x.json"), 2), ConfigError);
}

TEST_CASE("executable exit codes") {
    TempDir dir;
    const std::string out = " --out " + dir.path.string();
    std::ofstream(dir.path / "bad.json") << R"({"waveguide": {"kappa": 0}})";
    std::ofstream(dir.path / "slow.json") << R"({"numerics": {"max_evals": 100}, "sweep": {"n_points": 5}})";
    std::ofstream(dir.path / "small.json") << R"({"sweep": {"n_points": 11}})";

    CHECK(run_exe("force-curve --config " + (dir.path / "bad.json").string() + out) == 2);
    CHECK(run_exe("force-curve --config " + (dir.path / "slow.json").string() + out) == 3);
    CHECK(run_exe("force-curve --preset 2 --config x.json" + out) == 2);
    CHECK(run_exe("force-curve --preset 9" + out) == 2);
    CHECK(run_exe("force-curve --preset 2 --out " + (dir.path / "missing").string()) == 1);
    CHECK(run_exe("bogus") == 2);
    CHECK(run_exe("force-curve --config " + (dir.path / "small.json").string() + " --threads 2" + out) == 0);
    CHECK(data_rows(slurp(dir.path / "force_curve.csv")) == 11);
    CHECK(run_exe("preset --preset 3" + out) == 0);
    CHECK(parse_config(slurp(dir.path / "preset_3.json")).sweep.kind == SweepKind::Kappa);
    for (const auto& e : fs::directory_iterator(dir.path)) CHECK(e.path().extension() != ".partial");
}
