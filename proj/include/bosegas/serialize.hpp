#pragma once

#include <string>

#include "json.hpp"

#include "bosegas/critical_temperature.hpp"
#include "bosegas/hartree_radial.hpp"
#include "bosegas/ideal_gas.hpp"
#include "bosegas/inequality_lab.hpp"
#include "bosegas/sc_solver.hpp"

namespace bosegas {

using json = nlohmann::ordered_json;

json to_json(const RadialDensity& d);
json to_json(const ValidationReport& r);
json to_json(const IdealState& s);
json to_json(const SCState& s);
json to_json(const TcResult& r);
json to_json(const SlopeReport& r);
// spectrum head (lowest levels per channel), N0, mu, gap and the density on the grid
json to_json(const HartreeState& s, int head = 4);
json to_json(const HusimiSlice& s);
json to_json(const DistanceReport& r);
json to_json(const lab::SuiteReport& r, bool with_values = false);

// "r,rho" rows
std::string density_csv(const RadialDensity& d);

}  // namespace bosegas
