#include "commands.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>

#include "bosegas/errors.hpp"

namespace bosegas::cli {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kCommands = {"ideal", "solve", "tc",      "xi",   "slope",
                                            "hartree", "compare", "props", "sweep"};

// Keys outside the hash: where results go and how they are produced, not what they are.
const std::set<std::string> kUnhashed = {"output_dir"};

std::string units_line(double omega) {
    std::ostringstream os;
    os << "H = p^2 + omega^2 x^2/4 (mass 1/2), omega=" << std::setprecision(17) << omega
       << ", beta in inverse energy units, hbar=1 semiclassical, hbar=N^{-1/3} for Hartree runs";
    return os.str();
}

json base_config(const std::string& command) {
    json c;
    c["units"] = "";
    c["command"] = command;
    c["omega"] = 1.0;
    c["output_dir"] = "results";
    return c;
}

void put_beta(json& c) {
    c["beta"] = nullptr;      // absolute; null resolves to beta_ratio * beta_0(omega)
    c["beta_ratio"] = 2.0;
}

// hessian_sup = 1/4 passes the curvature bound at the default omega = 1
void put_potential(json& c, const char* spec = "gaussian:a=0.25,sigma=1") {
    c["potential"] = spec;
}

double beta_of(const json& c) {
    if (!c["beta"].is_null()) return c["beta"].get<double>();
    return c["beta_ratio"].get<double>() * beta_critical(c["omega"].get<double>());
}

SCOptions sc_options(const json& c) {
    SCOptions o;
    o.n_points = c["n_points"].get<int>();
    o.tol = c["tol"].get<double>();
    o.max_iter = c["max_iter"].get<int>();
    o.theta = c["theta"].get<double>();
    return o;
}

TcOptions tc_options(const json& c) {
    TcOptions o;
    o.n_points = c["n_points"].get<int>();
    o.tol = c["tol"].get<double>();
    o.max_iter = c["max_iter"].get<int>();
    return o;
}

HartreeOptions hartree_options(const json& c) {
    HartreeOptions o;
    o.grid_points = c["grid_points"].get<int>();
    o.tol = c["hartree_tol"].get<double>();
    o.max_iter = c["hartree_max_iter"].get<int>();
    return o;
}

void put_sc(json& c) {
    c["n_points"] = 512;
    c["tol"] = 1e-9;
    c["max_iter"] = 5000;
    c["theta"] = 0.5;
}

void put_tc(json& c) {
    c["n_points"] = 512;
    c["tol"] = 1e-10;
    c["max_iter"] = 2000;
}

void put_hartree(json& c) {
    c["grid_points"] = 2048;
    c["hartree_tol"] = 1e-9;
    c["hartree_max_iter"] = 200;
}

json density_block(const json& d) { return {{"r", d["r"]}, {"rho", d["rho"]}}; }

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

// ---- commands ----

json cmd_ideal(const json& c) {
    const double omega = c["omega"], beta = beta_of(c);
    const IdealState s = ideal_state(beta, omega, c["n_points"].get<int>());
    json p = to_json(s);
    p["beta0"] = beta_critical(omega);
    p["density"] = density_block(to_json(s.rho0));
    return p;
}

json cmd_solve(const json& c) {
    const double omega = c["omega"], beta = beta_of(c), lambda = c["lambda"];
    const Potential v = parse_potential_spec(c["potential"]);
    const SCState s = solve_selfconsistent(beta, omega, v, lambda, sc_options(c));
    json p = to_json(s);
    p["potential"] = v.name;
    p["beta0"] = beta_critical(omega);
    return p;
}

json cmd_tc(const json& c) {
    const double omega = c["omega"], lambda = c["lambda"];
    const Potential v = parse_potential_spec(c["potential"]);
    const TcResult r = find_tc(lambda, omega, v, tc_options(c));
    json p = to_json(r);
    const double b0 = beta_critical(omega);
    p["potential"] = v.name;
    p["beta0"] = b0;
    p["beta_c_over_beta0"] = r.beta_c / b0;
    return p;
}

json cmd_xi(const json& c) {
    const double omega = c["omega"];
    const Potential v = parse_potential_spec(c["potential"]);
    if (const ValidationReport rep = validate_assumption(v, omega); !rep.ok()) throw ValidationError(rep.summary());
    return {{"potential", v.name}, {"omega", omega}, {"xi", xi_coefficient(omega, v, c["xi_points"].get<int>())}};
}

json cmd_slope(const json& c) {
    const double omega = c["omega"];
    const Potential v = parse_potential_spec(c["potential"]);
    const auto lambdas = c["lambdas"].get<std::vector<double>>();
    const SlopeReport r = tc_slope_check(omega, v, lambdas, tc_options(c));
    json p = to_json(r);
    p["potential"] = v.name;
    return p;
}

json cmd_hartree(const json& c) {
    const double omega = c["omega"], beta = beta_of(c), lambda = c["lambda"];
    const Potential v = parse_potential_spec(c["potential"]);
    const HartreeState h = solve_hartree(c["N"].get<double>(), beta, omega, v, lambda, hartree_options(c));
    json p = to_json(h, 4);
    const ExcitedTrace et = excited_trace(h);
    p["excited_trace"] = et.trace;
    p["excited_trace_scaled"] = et.scaled;
    return p;
}

json cmd_compare(const json& c) {
    const double omega = c["omega"], beta = beta_of(c), lambda = c["lambda"];
    const Potential v = parse_potential_spec(c["potential"]);
    SCOptions so;
    const SCState sc = solve_selfconsistent(beta, omega, v, lambda, so);
    json rows = json::array();
    for (double N : c["Ns"].get<std::vector<double>>()) {
        const HartreeState h = solve_hartree(N, beta, omega, v, lambda, hartree_options(c));
        const DistanceReport d = compare_to_semiclassical(h, sc, c["n_samples"].get<int>());
        rows.push_back({{"N", N},
                        {"hbar", h.hbar},
                        {"N0_over_N", h.N0 / N},
                        {"g_sc", sc.g},
                        {"condensate_error", d.condensate_error},
                        {"husimi_parallel", d.husimi_parallel},
                        {"husimi_perpendicular", d.husimi_perpendicular},
                        {"husimi_discrepancy", d.husimi_discrepancy},
                        {"gap_over_hbar_omega", h.gap / (h.hbar * omega)},
                        {"hartree_iterations", h.iterations}});
    }
    return {{"beta", beta}, {"omega", omega}, {"lambda", lambda}, {"potential", v.name},
            {"g_sc", sc.g}, {"mu_sc", sc.mu}, {"rows", rows}};
}

json cmd_props(const json& c) {
    const std::string suite = c["suite"];
    const auto seed = c["seed"].get<std::uint64_t>();
    const int instances = c["instances"];
    std::vector<std::string> names;
    if (suite == "all") names = lab::suite_names();
    else names = {suite};
    json list = json::array();
    bool ok = true;
    for (const auto& n : names) {
        const lab::SuiteReport r = lab::run_suite(n, seed, instances);
        ok = ok && r.passed;
        list.push_back(to_json(r, c["with_values"].get<bool>()));
    }
    return {{"seed", seed}, {"passed", ok}, {"suites", list}};
}

// Collects rows from worker threads; rows land by index so output order is fixed.
class ResultWriter {
public:
    explicit ResultWriter(std::size_t n) : rows_(n) {}
    void put(std::size_t i, json row) {
        std::lock_guard<std::mutex> lock(m_);
        rows_[i] = std::move(row);
        ++done_;
        std::cerr << "sweep: " << done_ << "/" << rows_.size() << "\n";
    }
    json take() { return json(std::move(rows_)); }

private:
    std::mutex m_;
    std::vector<json> rows_;
    std::size_t done_ = 0;
};

json cmd_sweep(const json& c) {
    const double omega = c["omega"];
    const Potential v = parse_potential_spec(c["potential"]);
    const auto lambdas = c["lambdas"].get<std::vector<double>>();
    const auto ratios = c["beta_ratios"].get<std::vector<double>>();
    for (double l : lambdas) require_admissible(v, omega, l);
    const double b0 = beta_critical(omega);
    const std::size_t n = lambdas.size() * ratios.size();
    SCOptions so = sc_options(c);
    so.parallel = false;
    ResultWriter writer(n);
    int workers = c["workers"];
    if (workers <= 0) workers = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        const double lambda = lambdas[i / ratios.size()];
        const double beta = ratios[i % ratios.size()] * b0;
        json row = {{"lambda", lambda}, {"beta", beta}};
        try {
            const SCState s = solve_selfconsistent(beta, omega, v, lambda, so);
            row.update({{"g", s.g}, {"mu", s.mu}, {"free_energy", s.free_energy}, {"residual", s.residual},
                        {"iters", s.iterations}, {"converged", true}});
        } catch (const ConvergenceError& e) {
            row.update({{"g", nullptr}, {"mu", nullptr}, {"free_energy", nullptr}, {"residual", e.residual},
                        {"iters", e.iterations}, {"converged", false}});
        }
        writer.put(static_cast<std::size_t>(i), std::move(row));
    }
    return {{"omega", omega}, {"potential", v.name}, {"beta0", b0}, {"rows", writer.take()}};
}

// ---- CSV rendering from payloads ----

std::string csv_cell(const json& x) {
    if (x.is_null()) return "nan";
    if (x.is_number_float()) return fmt(x.get<double>());
    return x.dump();
}

std::string rows_csv(const json& rows, const std::vector<std::string>& cols) {
    std::ostringstream os;
    for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
    os << "\n";
    for (const auto& r : rows) {
        for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << csv_cell(r[cols[k]]);
        os << "\n";
    }
    return os.str();
}

std::string density_rows(const json& d) {
    json rows = json::array();
    const auto& r = d["r"];
    const auto& rho = d["rho"];
    for (std::size_t i = 0; i < r.size(); ++i) rows.push_back({{"r", r[i]}, {"rho", rho[i]}});
    return rows_csv(rows, {"r", "rho"});
}

std::string render_csv(const std::string& command, const json& p) {
    if (command == "sweep")
        return rows_csv(p["rows"], {"lambda", "beta", "g", "mu", "free_energy", "residual", "iters"});
    if (command == "slope") {
        json rows = json::array();
        const double b0 = p["beta0"];
        for (std::size_t i = 0; i < p["lambdas"].size(); ++i) {
            const double bc = p["beta_c"][i];
            rows.push_back({{"lambda", p["lambdas"][i]}, {"beta_c", bc}, {"beta_c_over_beta0", bc / b0},
                            {"slope_estimate", p["slopes"][i]}});
        }
        return rows_csv(rows, {"lambda", "beta_c", "beta_c_over_beta0", "slope_estimate"});
    }
    if (command == "compare")
        return rows_csv(p["rows"], {"N", "hbar", "N0_over_N", "g_sc", "condensate_error", "husimi_discrepancy",
                                    "gap_over_hbar_omega"});
    if (command == "props") {
        json rows = json::array();
        for (const auto& s : p["suites"])
            rows.push_back({{"suite", s["suite"]}, {"instances", s["instances"]}, {"min", s["min"]},
                            {"max", s["max"]}, {"passed", s["passed"]}});
        return rows_csv(rows, {"suite", "instances", "min", "max", "passed"});
    }
    if (p.contains("density")) return density_rows(p["density"]);
    return {};
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

void write_file(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << text;
    }
    fs::rename(tmp, path);
}

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(msg); }

}  // namespace

json default_config(const std::string& command) {
    json c = base_config(command);
    if (command == "ideal") {
        put_beta(c);
        c["n_points"] = 512;
    } else if (command == "solve") {
        put_beta(c);
        c["lambda"] = 0.05;
        put_potential(c);
        put_sc(c);
    } else if (command == "tc") {
        c["lambda"] = 0.05;
        put_potential(c);
        put_tc(c);
    } else if (command == "xi") {
        c["omega"] = 2.0;
        put_potential(c, "gaussian:a=1,sigma=1");
        c["xi_points"] = 1024;
    } else if (command == "slope") {
        c["omega"] = 2.0;
        c["lambdas"] = {0.04, 0.02, 0.01};
        put_potential(c, "gaussian:a=1,sigma=1");
        put_tc(c);
    } else if (command == "hartree") {
        put_beta(c);
        c["N"] = 1024;
        c["lambda"] = 0.05;
        put_potential(c);
        put_hartree(c);
    } else if (command == "compare") {
        c["omega"] = 2.0;  // coherent-state window matches the trap ground state
        put_beta(c);
        c["Ns"] = {1024, 4096};
        c["lambda"] = 0.0;
        put_potential(c);
        put_hartree(c);
        c["n_samples"] = 48;
    } else if (command == "props") {
        c["suite"] = "all";
        c["seed"] = 7;
        c["instances"] = -1;
        c["with_values"] = false;
    } else if (command == "sweep") {
        c["lambdas"] = {0.0, 0.01, 0.05};
        c["beta_ratios"] = {0.8, 0.9, 1.1, 1.25, 1.5};
        put_potential(c);
        put_sc(c);
        c["workers"] = 0;
    } else {
        bad("unknown command '" + command + "'");
    }
    return c;
}

void check_config(const json& c) {
    const std::string command = c.value("command", "");
    if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
        bad("unknown command '" + command + "'");
    const json ref = default_config(command);
    for (const auto& [k, val] : c.items())
        if (!ref.contains(k)) bad("key '" + k + "' does not apply to command " + command);
    for (const auto& [k, val] : ref.items())
        if (!c.contains(k)) bad("missing key '" + k + "'");
    if (!(c["omega"].is_number() && c["omega"].get<double>() > 0)) bad("omega must be positive");
    if (c.contains("beta") && !c["beta"].is_null() && !(c["beta"].get<double>() > 0)) bad("beta must be positive");
    if (c.contains("beta_ratio") && !(c["beta_ratio"].get<double>() > 0)) bad("beta_ratio must be positive");
    for (const char* k : {"tol", "hartree_tol"})
        if (c.contains(k) && !(c[k].get<double>() > 0)) bad(std::string(k) + " must be positive");
    for (const char* k : {"lambdas", "beta_ratios", "Ns"})
        if (c.contains(k) && (!c[k].is_array() || c[k].empty())) bad(std::string(k) + " must be a nonempty list");
    for (const char* k : {"n_points", "grid_points", "max_iter", "hartree_max_iter", "xi_points", "n_samples"})
        if (c.contains(k) && !(c[k].get<int>() > 0)) bad(std::string(k) + " must be positive");
    if (c.contains("lambda") && !(c["lambda"].get<double>() >= 0)) bad("lambda must be nonnegative");
    if (c.contains("theta") && !(c["theta"].get<double>() > 0 && c["theta"].get<double>() <= 1))
        bad("theta must lie in (0, 1]");
    if (c.contains("potential")) {
        const std::string spec = c["potential"];
        if (spec.rfind("table:", 0) == 0 && !fs::exists(spec.substr(6)))
            bad("potential table '" + spec.substr(6) + "' not found");
        try {
            parse_potential_spec(spec);
        } catch (const std::exception& e) {
            bad(std::string("potential: ") + e.what());
        }
    }
    if (c.contains("suite")) {
        const auto names = lab::suite_names();
        const std::string s = c["suite"];
        if (s != "all" && std::find(names.begin(), names.end(), s) == names.end()) bad("unknown suite '" + s + "'");
    }
}

std::string cache_key(const json& cfg) {
    nlohmann::json canon;  // sorted keys
    for (const auto& [k, val] : cfg.items())
        if (!kUnhashed.count(k) && k != "units") canon[k] = val;
    canon["version"] = kVersionTag;
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(canon.dump());
    return os.str();
}

fs::path cache_dir() {
    if (const char* env = std::getenv("BOSEGAS_CACHE_DIR"); env && *env) return env;
    return "cache";
}

json execute(const json& cfg) {
    const std::string command = cfg["command"];
    json body;
    if (command == "ideal") body = cmd_ideal(cfg);
    else if (command == "solve") body = cmd_solve(cfg);
    else if (command == "tc") body = cmd_tc(cfg);
    else if (command == "xi") body = cmd_xi(cfg);
    else if (command == "slope") body = cmd_slope(cfg);
    else if (command == "hartree") body = cmd_hartree(cfg);
    else if (command == "compare") body = cmd_compare(cfg);
    else if (command == "props") body = cmd_props(cfg);
    else if (command == "sweep") body = cmd_sweep(cfg);
    json p;
    p["units"] = cfg["units"];
    p["command"] = command;
    p["version"] = kVersionTag;
    for (auto& [k, val] : body.items()) p[k] = val;
    return p;
}

void write_artifacts(const json& cfg, const json& payload) {
    const fs::path out = cfg["output_dir"].get<std::string>();
    const std::string command = cfg["command"];
    write_file(out / (command + ".json"), payload.dump(2) + "\n");
    const std::string csv = render_csv(command, payload);
    if (!csv.empty()) write_file(out / (command + ".csv"), "# units: " + payload["units"].get<std::string>() + "\n" + csv);
}

json resolve(json cfg) {
    check_config(cfg);
    cfg["units"] = units_line(cfg["omega"]);
    if (cfg.contains("beta") && cfg["beta"].is_null()) cfg["beta"] = beta_of(cfg);
    return cfg;
}

int run(const json& cfg, bool use_cache) {
    const std::string command = cfg["command"];
    const fs::path cfile = cache_dir() / (cache_key(cfg) + ".json");
    json payload;
    bool hit = false;
    if (use_cache && fs::exists(cfile)) {
        std::ifstream in(cfile);
        const json entry = json::parse(in, nullptr, false);
        if (!entry.is_discarded() && entry.value("version", "") == kVersionTag && entry.contains("payload")) {
            payload = entry["payload"];
            hit = true;
        }
    }
    try {
        if (!hit) payload = execute(cfg);
    } catch (const ConvergenceError& e) {
        json diag = {{"units", cfg["units"]}, {"command", command}, {"error", e.what()},
                     {"residual", e.residual}, {"iterations", e.iterations}, {"config", cfg}};
        write_file(fs::path(cfg["output_dir"].get<std::string>()) / (command + "_diagnostics.json"),
                   diag.dump(2) + "\n");
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    if (!hit)
        write_file(cfile, json{{"key", cache_key(cfg)}, {"version", kVersionTag}, {"config", cfg}, {"payload", payload}}
                              .dump(2) + "\n");
    write_artifacts(cfg, payload);
    std::cerr << (hit ? "cache hit: " : "wrote cache: ") << cfile.string() << "\n";
    std::cout << payload.dump(2) << "\n";
    if (command == "props" && !payload["passed"].get<bool>()) return 1;
    return 0;
}

}  // namespace bosegas::cli
