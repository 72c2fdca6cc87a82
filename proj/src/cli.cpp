#include "wgcool/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "wgcool/errors.hpp"
#include "wgcool/forces.hpp"
#include "wgcool/parallel.hpp"
#include "wgcool/steady_state.hpp"

namespace wgcool::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

/// CSV body with '#' header lines; rows joined with LF.
class Table {
public:
    Table(const std::string& title, const SimConfig& config, std::vector<std::string> columns)
        : columns_(std::move(columns)) {
        text_ << "# wgcool " << WGCOOL_VERSION << " " << title << "\n";
        text_ << "# config: " << to_json(config) << "\n";
        text_ << "# ";
        for (std::size_t i = 0; i < columns_.size(); ++i) text_ << (i ? "," : "") << columns_[i];
        text_ << "\n";
    }

    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            text_ << (first ? "" : ",") << fmt17(v);
            first = false;
        }
        text_ << "\n";
        ++rows_;
    }

    [[nodiscard]] std::string str() const { return text_.str(); }
    [[nodiscard]] std::size_t rows() const { return rows_; }

private:
    std::vector<std::string> columns_;
    std::ostringstream text_;
    std::size_t rows_ = 0;
};

/// Writes through a temporary sibling and renames into place.
void write_atomically(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("cannot move output into " + path.string());
    }
}

SweepRequest request_from(const SimConfig& config, unsigned threads) {
    SweepRequest req;
    req.kind = config.sweep.kind;
    req.grid = config.sweep.grid();
    req.family = config.sweep.family;
    req.scale_by_kappa = config.sweep.scale_by_kappa;
    req.threads = threads;
    return req;
}

std::string run_force_curve(const SimConfig& config, const RunOptions& opt) {
    const std::vector<SweepRow> rows = run_sweep(config.scenario, request_from(config, opt.threads));
    Table table("force-curve", config, {"v_m_per_s", "force_N", "force_over_Ffs", "quad_error_N"});
    double peak = 0.0;
    for (const SweepRow& r : rows) {
        table.row({r.x, r.value, r.normalized, r.quad_error});
        peak = std::max(peak, std::abs(r.normalized));
    }
    const fs::path path = opt.out_dir / "force_curve.csv";
    write_atomically(path, table.str());

    const SystemState sys = build_system(config.scenario);
    std::string summary = "force-curve: " + std::to_string(rows.size()) + " rows -> " + path.string() +
                          "; max|F|/F_fs=" + fmt6(peak);
    if (sys.pump.two_sided) {
        summary += "; beta=" + fmt6(friction_coefficient(sys, DerivativeMethod::Analytic).beta) + " kg/s";
        try {
            summary += "; capture_range=" + fmt6(capture_range(sys)) + " m/s";
        } catch (const NoSignChange&) {
            summary += "; capture_range=none (no sign change below 1e3 kappa/k_p)";
        } catch (const std::domain_error&) {
            summary += "; capture_range=none (no cooling regime at rest)";
        }
    }
    return summary;
}

std::string run_friction_sweep(const SimConfig& config, const RunOptions& opt) {
    const bool kappa_sweep = config.sweep.kind == SweepKind::Kappa;
    const SweepRequest req = request_from(config, opt.threads);
    const std::vector<SweepRow> rows = run_sweep(config.scenario, req);

    Table table(kappa_sweep ? "kappa-sweep" : "delta-sweep", config,
                kappa_sweep ? std::vector<std::string>{"kappa_per_s", "delta_rad_per_s", "beta_kg_per_s",
                                                       "beta_normalized", "quad_error"}
                            : std::vector<std::string>{"delta_rad_per_s", "kappa_per_s", "beta_kg_per_s",
                                                       "beta_normalized", "quad_error"});
    for (const SweepRow& r : rows) table.row({r.x, r.secondary, r.value, r.normalized, r.quad_error});
    const fs::path path = opt.out_dir / (kappa_sweep ? "kappa_sweep.csv" : "delta_sweep.csv");
    write_atomically(path, table.str());

    std::string summary = std::string(kappa_sweep ? "kappa-sweep: " : "delta-sweep: ") +
                          std::to_string(rows.size()) + " rows -> " + path.string();
    const std::size_t n = req.grid.size();
    const std::size_t curves = rows.size() / n;
    for (std::size_t c = 0; c < curves; ++c) {
        const auto first = rows.begin() + static_cast<std::ptrdiff_t>(c * n);
        const auto last = first + static_cast<std::ptrdiff_t>(n);
        if (kappa_sweep) {
            const std::string label = config.sweep.scale_by_kappa
                                          ? "delta/kappa=" + fmt6(first->secondary / first->x)
                                          : "delta=" + fmt6(first->secondary);
            std::vector<double> xs;
            std::vector<double> ys;
            for (auto it = first; it != last; ++it) {
                xs.push_back(it->x);
                ys.push_back(it->value);
            }
            try {
                const FitResult fit = power_law_fit(xs, ys);
                summary += "; " + label + " exponent=" + fmt6(fit.exponent) + " r2=" + fmt6(fit.r_squared);
            } catch (const NonPositiveValue&) {
                summary += "; " + label + " exponent=nan (beta <= 0 in sweep)";
            } catch (const std::invalid_argument&) {
                summary += "; " + label + " exponent=nan (fewer than 3 points)";
            }
        } else {
            const auto best = std::max_element(
                first, last, [](const SweepRow& a, const SweepRow& b) { return a.value < b.value; });
            summary += "; kappa=" + fmt6(best->secondary) + " argmax_delta=" + fmt6(best->x) +
                       " rad/s (beta_normalized=" + fmt6(best->normalized) + ")";
        }
    }
    return summary;
}

std::string run_shift(const SimConfig& config, const RunOptions& opt) {
    const SystemState sys = build_system(config.scenario);
    const double unit = config.sweep.scale_by_kappa ? sys.model.kappa / sys.pump.k_p : 1.0;
    const std::vector<double> grid = config.sweep.grid();
    std::vector<ComplexShift> shifts(grid.size());
    parallel_for(grid.size(), opt.threads,
                 [&](std::size_t i) { shifts[i] = waveguide_shift(grid[i] * unit, +1, sys); });

    Table table("shift", config, {"v_m_per_s", "delta_shift_rad_per_s", "gamma_broad_rad_per_s"});
    double max_gamma = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        table.row({grid[i] * unit, shifts[i].delta_shift, shifts[i].gamma_broad});
        max_gamma = std::max(max_gamma, shifts[i].gamma_broad);
    }
    const fs::path path = opt.out_dir / "shift.csv";
    write_atomically(path, table.str());
    return "shift: " + std::to_string(grid.size()) + " rows -> " + path.string() +
           "; max Gamma_A=" + fmt6(max_gamma) + " rad/s";
}

}  // namespace

Subcommand parse_subcommand(const std::string& name) {
    if (name == "force-curve") return Subcommand::ForceCurve;
    if (name == "kappa-sweep") return Subcommand::KappaSweep;
    if (name == "delta-sweep") return Subcommand::DeltaSweep;
    if (name == "shift") return Subcommand::Shift;
    if (name == "preset") return Subcommand::Preset;
    throw ConfigError("", "unknown subcommand \"" + name + "\"");
}

const char* to_string(Subcommand cmd) {
    switch (cmd) {
        case Subcommand::ForceCurve: return "force-curve";
        case Subcommand::KappaSweep: return "kappa-sweep";
        case Subcommand::DeltaSweep: return "delta-sweep";
        case Subcommand::Shift: return "shift";
        case Subcommand::Preset: return "preset";
    }
    return "unknown";
}

SweepKind sweep_kind_for(Subcommand cmd) {
    switch (cmd) {
        case Subcommand::KappaSweep: return SweepKind::Kappa;
        case Subcommand::DeltaSweep: return SweepKind::Delta;
        default: return SweepKind::ForceCurve;
    }
}

SimConfig load_config(Subcommand cmd, const std::optional<fs::path>& config_path,
                      std::optional<int> preset_id) {
    if (config_path && preset_id) throw ConfigError("", "--config and --preset are mutually exclusive");
    const SweepKind want = sweep_kind_for(cmd);
    SimConfig cfg;
    if (preset_id) {
        cfg = preset(*preset_id);
    } else if (config_path) {
        std::ifstream in(*config_path, std::ios::binary);
        if (!in) throw ConfigError("", "cannot read config file " + config_path->string());
        std::ostringstream text;
        text << in.rdbuf();
        cfg = parse_config(text.str(), want);
    } else {
        cfg = parse_config("{}", want);
    }
    if (cmd != Subcommand::Preset && cfg.sweep.kind != want) {
        throw ConfigError("sweep.kind", std::string("is \"") + to_string(cfg.sweep.kind) + "\" but " +
                                            to_string(cmd) + " needs \"" + to_string(want) + "\"");
    }
    return cfg;
}

int run(Subcommand cmd, const SimConfig& config, const RunOptions& opt, std::ostream& log,
        std::ostream& err) {
    try {
        if (cmd == Subcommand::Preset) {
            const std::string text = to_json(config, 2) + "\n";
            if (opt.preset_id && !opt.out_dir.empty() && opt.out_dir != ".") {
                const fs::path path = opt.out_dir / ("preset_" + std::to_string(*opt.preset_id) + ".json");
                write_atomically(path, text);
                log << "preset: wrote " << path.string() << "\n";
            } else {
                log << text;
            }
            return kOk;
        }
        std::string summary;
        switch (cmd) {
            case Subcommand::ForceCurve: summary = run_force_curve(config, opt); break;
            case Subcommand::KappaSweep:
            case Subcommand::DeltaSweep: summary = run_friction_sweep(config, opt); break;
            case Subcommand::Shift: summary = run_shift(config, opt); break;
            case Subcommand::Preset: break;
        }
        log << summary << "\n";
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const NonPropagatingPump& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const QuadratureFailure& e) {
        err << "quadrature failure: " << e.what() << "\n";
        return kQuadratureFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

int main(int argc, char** argv) {
    CLI::App app{"Velocity-dependent optical force and friction in a lossy waveguide"};
    app.set_version_flag("--version", WGCOOL_VERSION);
    app.require_subcommand(1);

    std::string config_path;
    int preset_id = 0;
    std::string out_dir = ".";
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"force-curve", "total force versus velocity (force_curve.csv)"},
        {"kappa-sweep", "friction coefficient versus loss rate (kappa_sweep.csv)"},
        {"delta-sweep", "friction coefficient versus threshold detuning (delta_sweep.csv)"},
        {"shift", "waveguide light shift and broadening versus velocity (shift.csv)"},
        {"preset", "print or save a preset configuration"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        auto* cfg_opt = sub->add_option("--config", config_path, "JSON configuration file");
        auto* preset_opt = sub->add_option("--preset", preset_id, "preset: 2 (force curve), 3 (kappa sweep) or 4 (delta sweep)");
        cfg_opt->excludes(preset_opt);
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
        if (name == "preset") preset_opt->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    try {
        const Subcommand cmd = parse_subcommand(chosen->get_name());
        std::optional<fs::path> path;
        std::optional<int> pid;
        if (chosen->count("--config")) path = config_path;
        if (chosen->count("--preset")) pid = preset_id;

        RunOptions opt;
        opt.out_dir = out_dir;
        opt.threads = threads;
        opt.preset_id = pid;
        if (cmd != Subcommand::Preset && !fs::is_directory(opt.out_dir)) {
            std::cerr << "error: output directory " << out_dir << " does not exist\n";
            return kFailure;
        }
        const SimConfig cfg = load_config(cmd, path, pid);
        return run(cmd, cfg, opt, std::cout, std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
}

}  // namespace wgcool::cli
