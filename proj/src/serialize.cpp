#include "bosegas/serialize.hpp"

#include <iomanip>
#include <sstream>

namespace bosegas {

json to_json(const RadialDensity& d) {
    return {{"r", d.grid ? d.grid->r : std::vector<double>{}}, {"rho", d.values}, {"point_mass", d.point_mass}};
}

json to_json(const ValidationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"omega", r.omega}, {"ok", r.ok()}, {"checks", checks}};
}

json to_json(const IdealState& s) {
    return {{"beta", s.beta}, {"omega", s.omega}, {"g0", s.g0}, {"mu0", s.mu0}, {"free_energy", s.free_energy}};
}

json to_json(const SCState& s) {
    return {{"beta", s.beta},
            {"omega", s.omega},
            {"lambda", s.lambda},
            {"g", s.g},
            {"mu", s.mu},
            {"free_energy", s.free_energy},
            {"residual", s.residual},
            {"el_residual", s.el_residual},
            {"iterations", s.iterations},
            {"conv0", s.conv0},
            {"density", to_json(s.rho_thermal)},
            {"w_eff", s.w_eff}};
}

json to_json(const TcResult& r) {
    return {{"lambda", r.lambda},
            {"beta_c", r.beta_c},
            {"iterations", r.iterations},
            {"residual", r.residual},
            {"bracket", {r.bracket.first, r.bracket.second}},
            {"density", to_json(r.rho_c)}};
}

json to_json(const SlopeReport& r) {
    return {{"beta0", r.beta0},
            {"lambdas", r.lambdas},
            {"beta_c", r.beta_c},
            {"slopes", r.slopes},
            {"extrapolated_slope", r.extrapolated},
            {"xi", r.xi},
            {"relative_deviation", r.relative_deviation}};
}

json to_json(const HartreeState& s, int head) {
    json spec = json::array();
    for (const auto& c : s.channels) {
        json lv = json::array();
        for (std::size_t n = 0; n < c.count() && static_cast<int>(n) < head; ++n)
            lv.push_back({{"e", c.energies[n]}, {"occupation", c.occupations[n]}});
        spec.push_back({{"l", c.ell}, {"levels", c.count()}, {"lowest", lv}});
        if (spec.size() >= 8) break;
    }
    return {{"N", s.N},
            {"hbar", s.hbar},
            {"beta", s.beta},
            {"omega", s.omega},
            {"lambda", s.lambda},
            {"potential", s.potential.name},
            {"mu", s.mu},
            {"e0", s.e0},
            {"e_cut", s.e_cut},
            {"N0", s.N0},
            {"condensate_fraction", s.N0 / s.N},
            {"gap", s.gap},
            {"gap_over_hbar_omega", s.gap / (s.hbar * s.omega)},
            {"free_energy", s.free_energy},
            {"residual", s.residual},
            {"iterations", s.iterations},
            {"tail_occupation", s.tail_occupation},
            {"channels", s.channels.size()},
            {"modes", s.mode_count()},
            {"spectrum_head", spec},
            {"density", to_json(s.rho)}};
}

json to_json(const HusimiSlice& s) {
    json rows = json::array();
    for (const auto& x : s.samples)
        rows.push_back({{"ray", x.ray == RayKind::Parallel ? "parallel" : "perpendicular"},
                        {"s", x.s},
                        {"p", x.p},
                        {"q", x.q},
                        {"value", x.value}});
    return {{"window", s.window}, {"phi", s.phi}, {"samples", rows}};
}

json to_json(const DistanceReport& r) {
    return {{"condensate_error", r.condensate_error},
            {"husimi_parallel", r.husimi_parallel},
            {"husimi_perpendicular", r.husimi_perpendicular},
            {"husimi_discrepancy", r.husimi_discrepancy},
            {"note", "Husimi discrepancy sampled on two phase-space rays, not the full L1 norm"},
            {"slice", to_json(r.slice)},
            {"gamma_sc", r.gamma_sc}};
}

json to_json(const lab::SuiteReport& r, bool with_values) {
    json j = {{"suite", r.name},
              {"quantity", r.quantity},
              {"criterion", r.criterion},
              {"threshold", r.threshold},
              {"instances", r.instances},
              {"seed", r.seed},
              {"min", r.min_value},
              {"max", r.max_value},
              {"passed", r.passed}};
    if (with_values) j["values"] = r.values;
    return j;
}

std::string density_csv(const RadialDensity& d) {
    std::ostringstream os;
    os << std::setprecision(17) << "r,rho\n";
    for (std::size_t i = 0; i < d.values.size(); ++i) os << d.grid->r[i] << ',' << d.values[i] << '\n';
    return os.str();
}

}  // namespace bosegas
