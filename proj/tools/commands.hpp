#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "bosegas/serialize.hpp"

namespace bosegas::cli {

inline constexpr const char* kVersionTag = "bosegas-0.1.0";

// Malformed or inconsistent configuration (exit status 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Default config for a command; every key can be overridden from a config file or a flag.
json default_config(const std::string& command);

// Structural checks: known command, nonempty grids, positive tolerances, readable table files.
// Throws ValidationError on bad input, except for potential admissibility which surfaces later.
void check_config(const json& cfg);

// check_config, then fill the units line and a null beta.
json resolve(json cfg);

// Keys that do not affect the result payload are left out of the hash.
std::string cache_key(const json& cfg);
std::filesystem::path cache_dir();

// Executes the command, returns the primary payload ("units" first).
json execute(const json& cfg);

// Writes results/<command>.json and, where defined, results/<command>.csv.
void write_artifacts(const json& cfg, const json& payload);

// Full run with caching and exit-code mapping.
int run(const json& cfg, bool use_cache);

}  // namespace bosegas::cli
