#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "bosegas/errors.hpp"
#include "commands.hpp"

using bosegas::json;
namespace cli = bosegas::cli;

namespace {

// flag name -> config key; values are parsed against the type of the config default
const std::vector<std::pair<std::string, std::string>> kFlags = {
    {"--beta", "beta"},
    {"--beta-ratio", "beta_ratio"},
    {"--omega", "omega"},
    {"--lambda", "lambda"},
    {"--lambdas", "lambdas"},
    {"--beta-ratios", "beta_ratios"},
    {"--N", "N"},
    {"--Ns", "Ns"},
    {"--potential", "potential"},
    {"--n-points", "n_points"},
    {"--tol", "tol"},
    {"--max-iter", "max_iter"},
    {"--theta", "theta"},
    {"--grid-points", "grid_points"},
    {"--hartree-tol", "hartree_tol"},
    {"--hartree-max-iter", "hartree_max_iter"},
    {"--xi-points", "xi_points"},
    {"--n-samples", "n_samples"},
    {"--suite", "suite"},
    {"--seed", "seed"},
    {"--instances", "instances"},
    {"--with-values", "with_values"},
    {"--workers", "workers"},
    {"--output-dir", "output_dir"},
};

json parse_scalar(const std::string& key, const std::string& text, const json& like) {
    try {
        if (like.is_boolean()) {
            if (text == "true" || text == "1") return true;
            if (text == "false" || text == "0") return false;
            throw cli::ConfigError("expected true/false");
        }
        if (like.is_string()) return text;
        std::size_t used = 0;
        if (like.is_number_integer()) {
            const long long v = std::stoll(text, &used);
            if (used != text.size()) throw cli::ConfigError("trailing characters");
            return v;
        }
        const double v = std::stod(text, &used);
        if (used != text.size()) throw cli::ConfigError("trailing characters");
        return v;
    } catch (const std::exception& e) {
        throw cli::ConfigError("--" + key + ": cannot parse '" + text + "' (" + e.what() + ")");
    }
}

json parse_value(const std::string& key, const std::string& text, const json& like) {
    if (!like.is_array()) return parse_scalar(key, text, like.is_null() ? json(0.0) : like);
    json out = json::array();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_scalar(key, item, json(0.0)));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mean-field Bose gas in a harmonic trap: semiclassical solver, critical temperature, Hartree runs"};
    std::string command, config_path;
    bool dump = false, no_cache = false;
    app.add_option("command", command, "ideal | solve | tc | xi | slope | hartree | compare | props | sweep")
        ->required();
    app.add_option("--config", config_path, "JSON config; flags override its entries")->check(CLI::ExistingFile);
    app.add_flag("--dump-config", dump, "print the resolved config and exit");
    app.add_flag("--no-cache", no_cache, "recompute even when a cached result exists");
    std::map<std::string, std::string> raw;
    for (const auto& [flag, key] : kFlags) app.add_option(flag, raw[key]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        json cfg = cli::default_config(command);
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            const json file = json::parse(in, nullptr, false);
            if (file.is_discarded() || !file.is_object()) throw cli::ConfigError("config is not a JSON object");
            if (file.contains("command") && file["command"] != command)
                throw cli::ConfigError("config command does not match '" + command + "'");
            for (const auto& [k, v] : file.items()) cfg[k] = v;
        }
        for (const auto& [flag, key] : kFlags) {
            const std::string& text = raw[key];
            if (text.empty()) continue;
            if (!cfg.contains(key)) throw cli::ConfigError(flag + " does not apply to command " + command);
            cfg[key] = parse_value(key, text, cfg[key]);
        }
        cfg = cli::resolve(std::move(cfg));
        if (dump) {
            std::cout << cfg.dump(2) << "\n";
            return 0;
        }
        return cli::run(cfg, !no_cache);
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bosegas::ValidationError& e) {
        std::cerr << "potential rejected: " << e.what() << "\n";
        return 4;
    } catch (const bosegas::ConvergenceError& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return 3;
    } catch (const bosegas::DomainError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const bosegas::PreconditionError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
