#include "wgcool/config.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "wgcool/errors.hpp"

namespace wgcool {

using nlohmann::json;

namespace {

constexpr double kMinKappa = 1e3;

class Reader {
public:
    Reader(const json& obj, std::string path, std::set<std::string> allowed)
        : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ConfigError(path_, "must be a JSON object");
        for (const auto& [key, _] : obj_.items()) {
            if (!allowed.count(key)) throw ConfigError(key_path(key), "unknown key");
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return obj_.contains(key); }

    void number(const std::string& key, double& out) const {
        if (!has(key)) return;
        const json& v = obj_.at(key);
        if (!v.is_number()) throw ConfigError(key_path(key), "must be a number");
        out = v.get<double>();
        if (!std::isfinite(out)) throw ConfigError(key_path(key), "must be finite");
    }

    void integer(const std::string& key, long& out) const {
        if (!has(key)) return;
        const json& v = obj_.at(key);
        if (v.is_number_integer()) {
            out = v.get<long>();
        } else if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>() &&
                   std::abs(v.get<double>()) < 9e18) {
            out = static_cast<long>(v.get<double>());
        } else {
            throw ConfigError(key_path(key), "must be an integer");
        }
    }

    void boolean(const std::string& key, bool& out) const {
        if (!has(key)) return;
        const json& v = obj_.at(key);
        if (!v.is_boolean()) throw ConfigError(key_path(key), "must be true or false");
        out = v.get<bool>();
    }

    void string(const std::string& key, std::string& out) const {
        if (!has(key)) return;
        const json& v = obj_.at(key);
        if (!v.is_string()) throw ConfigError(key_path(key), "must be a string");
        out = v.get<std::string>();
    }

    void numbers(const std::string& key, std::vector<double>& out) const {
        if (!has(key)) return;
        const json& v = obj_.at(key);
        if (!v.is_array()) throw ConfigError(key_path(key), "must be an array of numbers");
        out.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
                throw ConfigError(key_path(key) + "[" + std::to_string(i) + "]", "must be a finite number");
            }
            out.push_back(v[i].get<double>());
        }
    }

    [[nodiscard]] std::string key_path(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

private:
    const json& obj_;
    std::string path_;
};

void require(bool ok, const std::string& key, const std::string& constraint) {
    if (!ok) throw ConfigError(key, constraint);
}

const json& section(const json& root, const char* name) {
    static const json empty = json::object();
    return root.contains(name) ? root.at(name) : empty;
}

}  // namespace

SweepKind parse_sweep_kind(const std::string& name) {
    if (name == "force_curve") return SweepKind::ForceCurve;
    if (name == "kappa") return SweepKind::Kappa;
    if (name == "delta") return SweepKind::Delta;
    throw ConfigError("sweep.kind", "must be one of force_curve, kappa, delta (got \"" + name + "\")");
}

std::vector<double> SweepConfig::grid() const {
    std::vector<double> g(static_cast<std::size_t>(n_points));
    if (n_points == 1) {
        g[0] = grid_min;
        return g;
    }
    const double last = n_points - 1;
    for (int i = 0; i < n_points; ++i) {
        if (log_spaced) {
            const double t = i / last;
            g[i] = std::exp((1.0 - t) * std::log(grid_min) + t * std::log(grid_max));
        } else {
            g[i] = grid_min * ((last - i) / last) + grid_max * (i / last);
        }
    }
    g.front() = grid_min;
    g.back() = grid_max;
    return g;
}

SweepConfig default_sweep(SweepKind kind) {
    SweepConfig s;
    s.kind = kind;
    switch (kind) {
        case SweepKind::ForceCurve:
            break;
        case SweepKind::Kappa:
            s.grid_min = 1e8;
            s.grid_max = 1e10;
            s.n_points = 9;
            s.log_spaced = true;
            s.family = {-1.0, -3.0, -10.0};
            break;
        case SweepKind::Delta:
            s.grid_min = -20.0;
            s.grid_max = 5.0;
            s.n_points = 101;
            s.family = {3e8, 1e9, 3e9};
            break;
    }
    return s;
}

SimConfig parse_config(const std::string& text, SweepKind default_kind) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    Reader top(root, "", {"atom", "pump", "waveguide", "numerics", "sweep"});

    SimConfig cfg;
    Scenario& sc = cfg.scenario;

    const Reader atom(section(root, "atom"), "atom",
                      {"gamma", "delta_A_over_gamma", "mass_kg", "x_frac", "include_shift"});
    atom.number("gamma", sc.gamma);
    atom.number("delta_A_over_gamma", sc.delta_A_over_gamma);
    atom.number("mass_kg", sc.mass_kg);
    atom.number("x_frac", sc.x_frac);
    atom.boolean("include_shift", sc.include_shift);
    require(sc.gamma > 0.0, "atom.gamma", "gamma must be > 0");
    require(sc.mass_kg > 0.0, "atom.mass_kg", "mass_kg must be > 0");
    require(sc.x_frac > 0.0 && sc.x_frac < 1.0, "atom.x_frac", "x_frac must lie in (0, 1)");

    const Reader pump(section(root, "pump"), "pump", {"lambda_p_m", "omega_eff", "two_sided"});
    pump.number("lambda_p_m", sc.lambda_p_m);
    pump.number("omega_eff", sc.omega_eff);
    pump.boolean("two_sided", sc.two_sided);
    require(sc.lambda_p_m > 0.0, "pump.lambda_p_m", "lambda_p_m must be > 0");
    require(sc.omega_eff >= 0.0, "pump.omega_eff", "omega_eff must be >= 0");

    const Reader wg(section(root, "waveguide"), "waveguide",
                    {"kappa", "delta_thresh", "a0_over_lambda_p_sq", "extra_branches"});
    wg.number("kappa", sc.kappa);
    require(sc.kappa >= kMinKappa, "waveguide.kappa", "kappa must be >= 1e3");
    sc.delta_thresh = -3.0 * sc.kappa;
    wg.number("delta_thresh", sc.delta_thresh);
    require(sc.delta_thresh > -sc.omega_p(), "waveguide.delta_thresh",
            "delta_thresh must exceed -omega_p so that the fundamental branch propagates");
    wg.number("a0_over_lambda_p_sq", sc.a0_over_lambda_p_sq);
    require(sc.a0_over_lambda_p_sq > 0.0, "waveguide.a0_over_lambda_p_sq",
            "a0_over_lambda_p_sq must be > 0");
    std::vector<double> extra;
    wg.numbers("extra_branches", extra);
    int previous = 2;
    for (std::size_t i = 0; i < extra.size(); ++i) {
        const std::string key = "waveguide.extra_branches[" + std::to_string(i) + "]";
        require(std::floor(extra[i]) == extra[i] && extra[i] > previous && extra[i] < 1e6, key,
                "branch indices must be integers >= 3 in strictly increasing order");
        previous = static_cast<int>(extra[i]);
        sc.extra_branches.push_back(previous);
    }

    NumericsConfig& num = sc.numerics;
    const Reader nr(section(root, "numerics"), "numerics",
                    {"rel_tol", "abs_tol", "max_evals", "tail_factor", "fd_step_frac"});
    nr.number("rel_tol", num.rel_tol);
    nr.number("abs_tol", num.abs_tol);
    nr.integer("max_evals", num.max_evals);
    nr.number("tail_factor", num.tail_factor);
    nr.number("fd_step_frac", num.fd_step_frac);
    require(num.rel_tol > 0.0, "numerics.rel_tol", "rel_tol must be > 0");
    require(num.abs_tol >= 0.0, "numerics.abs_tol", "abs_tol must be >= 0");
    require(num.max_evals > 0, "numerics.max_evals", "max_evals must be > 0");
    require(num.tail_factor >= 10.0, "numerics.tail_factor", "tail_factor must be >= 10");
    require(num.fd_step_frac > 0.0, "numerics.fd_step_frac", "fd_step_frac must be > 0");

    const Reader sw(section(root, "sweep"), "sweep",
                    {"kind", "grid_min", "grid_max", "n_points", "log_spaced", "family",
                     "scale_by_kappa"});
    SweepKind kind = default_kind;
    if (sw.has("kind")) {
        std::string name;
        sw.string("kind", name);
        kind = parse_sweep_kind(name);
    }
    SweepConfig& s = cfg.sweep;
    s = default_sweep(kind);
    sw.number("grid_min", s.grid_min);
    sw.number("grid_max", s.grid_max);
    long n_points = s.n_points;
    sw.integer("n_points", n_points);
    sw.boolean("log_spaced", s.log_spaced);
    sw.numbers("family", s.family);
    sw.boolean("scale_by_kappa", s.scale_by_kappa);
    require(n_points >= 1 && n_points <= 1'000'000, "sweep.n_points", "n_points must lie in [1, 1e6]");
    s.n_points = static_cast<int>(n_points);
    if (s.n_points == 1) {
        require(s.grid_min == s.grid_max, "sweep.grid_max", "a single-point grid needs grid_min == grid_max");
    } else {
        require(s.grid_max > s.grid_min, "sweep.grid_max", "grid_max must be > grid_min");
    }
    if (s.log_spaced) require(s.grid_min > 0.0, "sweep.grid_min", "log-spaced grids need grid_min > 0");
    if (kind == SweepKind::Kappa) {
        require(s.grid_min >= kMinKappa, "sweep.grid_min", "kappa grid must stay >= 1e3");
    }
    if (kind == SweepKind::Delta) {
        for (std::size_t i = 0; i < s.family.size(); ++i) {
            require(s.family[i] >= kMinKappa, "sweep.family[" + std::to_string(i) + "]",
                    "kappa family values must be >= 1e3");
        }
    }
    return cfg;
}

SimConfig preset(int id) {
    SimConfig cfg;
    switch (id) {
        case 2: cfg.sweep = default_sweep(SweepKind::ForceCurve); break;
        case 3: cfg.sweep = default_sweep(SweepKind::Kappa); break;
        case 4: cfg.sweep = default_sweep(SweepKind::Delta); break;
        default:
            throw ConfigError("preset", "unknown preset " + std::to_string(id) +
                                            " (expected 2, 3 or 4)");
    }
    return cfg;
}

std::string to_json(const SimConfig& cfg, int indent) {
    const Scenario& sc = cfg.scenario;
    const NumericsConfig& num = sc.numerics;
    json j;
    j["atom"] = {{"gamma", sc.gamma},
                 {"delta_A_over_gamma", sc.delta_A_over_gamma},
                 {"mass_kg", sc.mass_kg},
                 {"x_frac", sc.x_frac},
                 {"include_shift", sc.include_shift}};
    j["pump"] = {{"lambda_p_m", sc.lambda_p_m}, {"omega_eff", sc.omega_eff}, {"two_sided", sc.two_sided}};
    j["waveguide"] = {{"kappa", sc.kappa},
                      {"delta_thresh", sc.delta_thresh},
                      {"a0_over_lambda_p_sq", sc.a0_over_lambda_p_sq},
                      {"extra_branches", sc.extra_branches}};
    j["numerics"] = {{"rel_tol", num.rel_tol},
                     {"abs_tol", num.abs_tol},
                     {"max_evals", num.max_evals},
                     {"tail_factor", num.tail_factor},
                     {"fd_step_frac", num.fd_step_frac}};
    j["sweep"] = {{"kind", to_string(cfg.sweep.kind)},
                  {"grid_min", cfg.sweep.grid_min},
                  {"grid_max", cfg.sweep.grid_max},
                  {"n_points", cfg.sweep.n_points},
                  {"log_spaced", cfg.sweep.log_spaced},
                  {"family", cfg.sweep.family},
                  {"scale_by_kappa", cfg.sweep.scale_by_kappa}};
    return j.dump(indent);
}

}  // namespace wgcool
