// qcarnot: finite-time Carnot cycle simulator for a two-level working
// substance. Subcommands mirror the figure-class experiments: cycle,
// power-sweep, emp-curve, scaling, lowdiss. Every output file starts with a
// comment line carrying the tool version and the hash of the run manifest
// written next to it.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcarnot/cycle.hpp"
#include "qcarnot/lowdiss.hpp"
#include "qcarnot/optimize.hpp"
#include "qcarnot/params.hpp"
#include "qcarnot/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qcarnot;

namespace {

constexpr double default_tol = 1e-9;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// FNV-1a over the manifest text; enough to tie outputs to their manifest.
std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

struct CommonArgs {
    double T_h = 0.0, T_c = 0.0, gamma_h = 0.0;
    std::string gamma_c = "inf";
    double omega_i = 0.0, omega_f = 0.0;
    std::string out_dir = ".";
    std::string params_file;
    double tol = default_tol;
    double margin = 0.1;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--params", a.params_file, "JSON parameter block (flags override)");
    cmd->add_option("--T-h", a.T_h, "hot bath temperature");
    cmd->add_option("--T-c", a.T_c, "cold bath temperature");
    cmd->add_option("--gamma-h", a.gamma_h, "hot bath coupling");
    cmd->add_option("--gamma-c", a.gamma_c, "cold bath coupling (number or \"inf\")");
    cmd->add_option("--omega-i", a.omega_i, "hot stroke initial spacing");
    cmd->add_option("--omega-f", a.omega_f, "hot stroke final spacing");
    cmd->add_option("--out-dir", a.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--tol", a.tol, "integrator relative tolerance")
        ->capture_default_str();
    cmd->add_option("--margin", a.margin, "regime margin factor")->capture_default_str();
}

EngineParams resolve_params(const CLI::App* cmd, const CommonArgs& a, bool need_T_c) {
    EngineParams p{0, 0, 0, Coupling::infinite(), 0, 0};
    bool have_file = !a.params_file.empty();
    if (have_file) {
        std::ifstream in(a.params_file);
        if (!in)
            throw ValidationError("cannot read params file " + a.params_file);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        p = params_from_json(text);
    }
    auto given = [&](const char* name) { return cmd->count(name) > 0; };
    if (given("--T-h")) p.T_h = a.T_h;
    if (given("--T-c")) p.T_c = a.T_c;
    if (given("--gamma-h")) p.gamma_h = a.gamma_h;
    if (given("--omega-i")) p.omega_h_i = a.omega_i;
    if (given("--omega-f")) p.omega_h_f = a.omega_f;
    if (given("--gamma-c") || !have_file) {
        if (a.gamma_c == "inf")
            p.gamma_c = Coupling::infinite();
        else {
            try {
                p.gamma_c = Coupling::finite(std::stod(a.gamma_c));
            } catch (const std::invalid_argument&) {
                throw ValidationError("--gamma-c must be a number or \"inf\"");
            }
        }
    }
    if (!have_file) {
        auto require = [&](const char* name) {
            if (!given(name))
                throw ValidationError(std::string("missing required option ") + name);
        };
        require("--T-h");
        if (need_T_c) require("--T-c");
        require("--gamma-h");
        require("--omega-i");
        require("--omega-f");
    }
    if (!need_T_c && p.T_c == 0.0) p.T_c = p.T_h / 2.0;  // placeholder for sweeps over eta_C
    validate(p);
    return p;
}

// Durations accept absolute values or t_r multiples like "2tr".
double parse_duration(const std::string& s, double t_r) {
    std::string body = s;
    bool in_tr = false;
    if (body.size() > 2 && body.substr(body.size() - 2) == "tr") {
        in_tr = true;
        body = body.substr(0, body.size() - 2);
    }
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(body, &pos);
    } catch (const std::exception&) {
        throw ValidationError("bad duration \"" + s + "\"");
    }
    if (pos != body.size())
        throw ValidationError("bad duration \"" + s + "\"");
    if (!(v > 0.0))
        throw ValidationError("durations must be positive, got \"" + s + "\"");
    return in_tr ? v * t_r : v;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

struct Manifest {
    json j;
    std::string hash;
};

Manifest write_manifest(const fs::path& out_dir, const std::string& subcommand,
                        const EngineParams& p, double tol, double margin,
                        const json& extra, const std::vector<std::string>& outputs) {
    json m;
    m["tool"] = "qcarnot";
    m["version"] = version;
    m["subcommand"] = subcommand;
    m["params"] = json::parse(params_to_json(p));
    m["integrator"] = {{"method", "rk4-fixed-step"},
                       {"tol", tol},
                       {"step_rule", "min(tau/2000, t_rel/200)"},
                       {"trajectory_samples", 512}};
    m["margin"] = margin;
    m["settings"] = extra;
    m["outputs"] = outputs;
    Manifest out;
    out.j = m;
    const std::string dump = m.dump(2);
    out.hash = fnv1a_hex(dump);
    fs::create_directories(out_dir);
    std::ofstream f(out_dir / (subcommand + "_manifest.json"));
    f << dump << "\n";
    return out;
}

std::ofstream open_output(const fs::path& path, const std::string& hash) {
    std::ofstream f(path);
    if (!f)
        throw SolverError("cannot write " + path.string());
    const bool is_json = path.extension() == ".json";
    f << (is_json ? "// " : "# ") << "qcarnot " << version << " manifest=" << hash
      << "\n";
    return f;
}

void write_json_body(std::ofstream& f, const json& j) { f << j.dump(2) << "\n"; }

json cycle_summary(const CycleResult& r, double tau_h, std::optional<double> tau_c) {
    json j;
    j["tau_h"] = tau_h;
    if (tau_c) j["tau_c"] = *tau_c;
    j["Q_h"] = r.Q_h;
    j["Q_c"] = r.Q_c;
    j["W"] = r.W;
    j["P"] = r.P;
    j["eta"] = r.eta;
    j["S_ir_h"] = r.S_ir_h;
    j["S_ir_c"] = r.S_ir_c;
    j["engine"] = r.engine;
    j["closure_error"] = r.closure_error;
    return j;
}

int cmd_cycle(const CLI::App* cmd, const CommonArgs& a, const std::string& tau_list,
              const std::string& tau_c_arg) {
    const EngineParams p = resolve_params(cmd, a, true);
    const DerivedParams d = derive(p);
    std::vector<double> taus;
    std::vector<std::string> labels;
    for (const std::string& tok : split_csv(tau_list)) {
        taus.push_back(parse_duration(tok, d.t_r));
        labels.push_back(tok);
    }
    if (taus.empty())
        throw ValidationError("--tau-h needs at least one duration");
    if (p.gamma_c.is_infinite() && !tau_c_arg.empty())
        throw ValidationError("--tau-c applies only to a finite gamma_c");

    const fs::path out_dir(a.out_dir);
    std::vector<std::string> outputs;
    for (const std::string& l : labels) {
        outputs.push_back("cycle_" + l + ".csv");
        outputs.push_back("cycle_" + l + ".json");
    }
    const Manifest man = write_manifest(out_dir, "cycle", p, a.tol, a.margin,
                                        json{{"tau_h", labels}, {"tau_c", tau_c_arg}},
                                        outputs);

    for (std::size_t i = 0; i < taus.size(); ++i) {
        CycleResult r;
        std::optional<double> tau_c;
        if (p.gamma_c.is_infinite()) {
            r = run_ideal_cold_cycle({p, taus[i], std::nullopt}, a.tol);
        } else {
            tau_c = tau_c_arg.empty() ? taus[i] : parse_duration(tau_c_arg, d.t_r);
            r = run_finite_cycle({p, taus[i], tau_c}, 1e-10, a.tol);
        }
        auto csv = open_output(out_dir / ("cycle_" + labels[i] + ".csv"), man.hash);
        csv << "stroke,t,omega,p_e\n";
        for (const auto& s : r.hot.trajectory)
            csv << "hot," << fmt(s.t) << "," << fmt(s.omega) << "," << fmt(s.p_e) << "\n";
        for (const auto& s : r.cold.trajectory)
            csv << "cold," << fmt(s.t) << "," << fmt(s.omega) << "," << fmt(s.p_e)
                << "\n";
        auto js = open_output(out_dir / ("cycle_" + labels[i] + ".json"), man.hash);
        write_json_body(js, cycle_summary(r, taus[i], tau_c));
        if (!r.engine)
            std::cerr << "warning: tau_h = " << labels[i]
                      << " is not an engine point (W <= 0 or Q_h <= 0)\n";
    }
    return 0;
}

int cmd_power_sweep(const CLI::App* cmd, const CommonArgs& a, const std::string& lo_s,
                    const std::string& hi_s, int n) {
    const EngineParams p = resolve_params(cmd, a, true);
    const DerivedParams d = derive(p);
    const double lo = parse_duration(lo_s, d.t_r);
    const double hi = parse_duration(hi_s, d.t_r);
    if (!(lo < hi))
        throw ValidationError("--tau-min must be below --tau-max");
    if (n < 8)
        throw ValidationError("--n-points must be at least 8");

    const fs::path out_dir(a.out_dir);
    const Manifest man = write_manifest(
        out_dir, "power_sweep", p, a.tol, a.margin,
        json{{"tau_min", lo_s}, {"tau_max", hi_s}, {"n_points", n}},
        {"power_sweep.csv"});

    const PowerOptimum1D opt = maximize_power_1d(p, {lo, hi, 33});
    auto csv = open_output(out_dir / "power_sweep.csv", man.hash);
    csv << "tau_h,tau_h_over_tr,P,P_norm,eta\n";
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double tau = lo * std::exp(step * i);
        const CycleResult r = run_ideal_cold_cycle({p, tau, std::nullopt}, a.tol);
        csv << fmt(tau) << "," << fmt(tau / d.t_r) << "," << fmt(r.P) << ","
            << fmt(r.P / opt.P_max) << "," << fmt(r.eta) << "\n";
    }
    return 0;
}

int cmd_emp_curve(const CLI::App* cmd, const CommonArgs& a, double lo, double hi, int n) {
    const EngineParams p = resolve_params(cmd, a, false);
    const DerivedParams d = derive(p);
    if (!(lo > 0.0) || !(hi < 1.0) || !(lo < hi))
        throw ValidationError("need 0 < --eta-c-min < --eta-c-max < 1");
    if (n < 2)
        throw ValidationError("--n-points must be at least 2");

    std::vector<double> etas(n);
    for (int i = 0; i < n; ++i) etas[i] = lo + (hi - lo) * i / (n - 1);

    const fs::path out_dir(a.out_dir);
    const Manifest man = write_manifest(
        out_dir, "emp_curve", p, a.tol, a.margin,
        json{{"eta_c_min", lo}, {"eta_c_max", hi}, {"n_points", n}}, {"emp_curve.csv"});

    const EmpSweep sweep = emp_sweep(p, etas, default_scan_grid(d), a.margin);
    auto csv = open_output(out_dir / "emp_curve.csv", man.hash);
    csv << "eta_C,tau_h_star,tau_h_star_over_tr,P_max,eta_MP,eta_minus,eta_plus,"
           "in_regime,exceeded_upper_bound\n";
    for (const auto& pt : sweep.points) {
        csv << fmt(pt.eta_C) << "," << fmt(pt.tau_h_star) << ","
            << fmt(pt.tau_h_star_over_tr) << "," << fmt(pt.P_max) << ","
            << fmt(pt.eta_MP) << "," << fmt(pt.eta_minus) << "," << fmt(pt.eta_plus)
            << "," << (pt.in_regime ? "true" : "false") << ","
            << (pt.exceeded_upper_bound ? "true" : "false") << "\n";
    }
    for (double e : sweep.skipped_eta_C)
        std::cerr << "warning: eta_C = " << e << " skipped (no engine regime)\n";
    return 0;
}

int cmd_scaling(const CLI::App* cmd, const CommonArgs& a, const std::string& lo_s,
                const std::string& hi_s, int n) {
    const EngineParams p = resolve_params(cmd, a, true);
    const DerivedParams d = derive(p);
    const double lo = parse_duration(lo_s, d.t_r);
    const double hi = parse_duration(hi_s, d.t_r);
    if (!(lo < hi))
        throw ValidationError("--tau-min must be below --tau-max");
    if (n < 8)
        throw ValidationError("--n-points must be at least 8");

    const fs::path out_dir(a.out_dir);
    const Manifest man = write_manifest(
        out_dir, "scaling", p, a.tol, a.margin,
        json{{"tau_min", lo_s}, {"tau_max", hi_s}, {"n_points", n}},
        {"scaling.csv", "scaling.json"});

    const double p0 = equilibrium_population(p.omega_h_i, p.T_h);
    const BathContact bath{p.T_h, p.gamma_h};
    auto csv = open_output(out_dir / "scaling.csv", man.hash);
    csv << "tau,tau_over_tr,S_ir,S_ir_times_tau\n";
    const double step = std::log(hi / lo) / (n - 1);
    double sum_top = 0.0;
    int n_top = 0;
    for (int i = 0; i < n; ++i) {
        const double tau = lo * std::exp(step * i);
        const StrokeResult s =
            integrate_stroke(p0, {p.omega_h_i, p.omega_h_f, tau}, bath, a.tol);
        csv << fmt(tau) << "," << fmt(tau / d.t_r) << "," << fmt(s.S_ir) << ","
            << fmt(s.S_ir * tau) << "\n";
        if (tau >= hi / 10.0) {  // top decade of the grid
            sum_top += s.S_ir * tau;
            ++n_top;
        }
    }
    const double Sigma_fit = sum_top / n_top;
    const LowDissInputs coeff = high_T_coefficients(p);
    json j;
    j["Sigma_fit"] = Sigma_fit;
    j["Sigma_analytic"] = coeff.Sigma_h;
    j["ratio"] = Sigma_fit / coeff.Sigma_h;
    j["top_decade_points"] = n_top;
    auto js = open_output(out_dir / "scaling.json", man.hash);
    write_json_body(js, j);
    return 0;
}

int cmd_lowdiss(const CLI::App* cmd, const CommonArgs& a) {
    const EngineParams p = resolve_params(cmd, a, true);
    const DerivedParams d = derive(p);
    const fs::path out_dir(a.out_dir);
    const Manifest man = write_manifest(out_dir, "lowdiss", p, a.tol, a.margin, json{},
                                        {"lowdiss.json"});

    const LowDissInputs in = high_T_coefficients(p);
    const OptimalTimes times = ld_optimal_times(in);
    const DimensionlessTimes dt = ld_dimensionless_times(p);
    const EmpModel emp = ld_emp(in);
    const RegimeCheck rc = regime_check(p, a.margin);

    auto inf_safe = [](double v) -> json {
        if (std::isinf(v)) return "inf";
        return v;
    };
    json j;
    j["high_T_coefficients"] = {{"dS", in.dS},
                                {"Sigma_h", in.Sigma_h},
                                {"Sigma_c", in.Sigma_c},
                                {"high_T_suspect", high_T_suspect(p)}};
    j["optimal_times"] = {{"tau_h_star", times.tau_h_star},
                          {"tau_c_star", times.tau_c_star}};
    j["dimensionless_times"] = {{"tau_tilde_h_star", dt.tau_tilde_h_star},
                                {"tau_tilde_c_star", inf_safe(dt.tau_tilde_c_star)}};
    j["emp"] = {{"P_max", emp.P_max},
                {"eta_star", emp.eta_star},
                {"eta_minus", emp.eta_minus},
                {"eta_plus", emp.eta_plus}};
    j["regime"] = {{"threshold", rc.threshold},
                   {"margin", a.margin},
                   {"in_regime", rc.in_regime}};
    j["derived"] = {{"eta_C", d.eta_C}, {"delta", d.delta}, {"t_r", d.t_r}};
    auto js = open_output(out_dir / "lowdiss.json", man.hash);
    write_json_body(js, j);
    if (high_T_suspect(p))
        std::cerr << "warning: omega_h_i/T_h > 0.3; high-temperature "
                     "coefficients are dubious here\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-time Carnot cycle simulator for a two-level working substance"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("qcarnot ") + version);

    CommonArgs a_cycle, a_power, a_emp, a_scaling, a_lowdiss;
    std::string tau_list;
    std::string tau_min = "0.05tr", tau_max = "400tr";
    std::string s_tau_min = "0.05tr", s_tau_max = "400tr";
    int n_power = 120, n_emp = 25, n_scaling = 60;
    double eta_lo = 0.02, eta_hi = 0.6;

    CLI::App* c_cycle = app.add_subcommand("cycle", "run cycles at given tau_h values");
    add_common(c_cycle, a_cycle);
    std::string tau_c_arg;
    c_cycle->add_option("--tau-h", tau_list,
                        "comma-separated durations, e.g. 2tr,10tr,200tr")
        ->required();
    c_cycle->add_option("--tau-c", tau_c_arg,
                        "cold stroke duration (finite gamma_c; default: same as tau_h)");

    CLI::App* c_power =
        app.add_subcommand("power-sweep", "power vs tau_h at fixed temperatures");
    add_common(c_power, a_power);
    c_power->add_option("--tau-min", tau_min, "grid start")->capture_default_str();
    c_power->add_option("--tau-max", tau_max, "grid end")->capture_default_str();
    c_power->add_option("--n-points", n_power, "grid size")->capture_default_str();

    CLI::App* c_emp =
        app.add_subcommand("emp-curve", "efficiency at maximum power vs eta_C");
    add_common(c_emp, a_emp);
    c_emp->add_option("--eta-c-min", eta_lo, "smallest eta_C")->capture_default_str();
    c_emp->add_option("--eta-c-max", eta_hi, "largest eta_C")->capture_default_str();
    c_emp->add_option("--n-points", n_emp, "sweep size")->capture_default_str();

    CLI::App* c_scaling =
        app.add_subcommand("scaling", "irreversible entropy vs stroke time");
    add_common(c_scaling, a_scaling);
    c_scaling->add_option("--tau-min", s_tau_min, "grid start")->capture_default_str();
    c_scaling->add_option("--tau-max", s_tau_max, "grid end")->capture_default_str();
    c_scaling->add_option("--n-points", n_scaling, "grid size")->capture_default_str();

    CLI::App* c_lowdiss =
        app.add_subcommand("lowdiss", "analytic low-dissipation report");
    add_common(c_lowdiss, a_lowdiss);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (c_cycle->parsed()) return cmd_cycle(c_cycle, a_cycle, tau_list, tau_c_arg);
        if (c_power->parsed())
            return cmd_power_sweep(c_power, a_power, tau_min, tau_max, n_power);
        if (c_emp->parsed()) return cmd_emp_curve(c_emp, a_emp, eta_lo, eta_hi, n_emp);
        if (c_scaling->parsed())
            return cmd_scaling(c_scaling, a_scaling, s_tau_min, s_tau_max, n_scaling);
        if (c_lowdiss->parsed()) return cmd_lowdiss(c_lowdiss, a_lowdiss);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
