#pragma once

#include <map>

#include "orbsieve/factor.hpp"
#include "orbsieve/polynomial.hpp"
#include "orbsieve/preset.hpp"

namespace orbsieve::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes of the run() entry point.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitIncomplete = 3;  // effort bounds hit; partial outputs written

// Config-file or validation failure with a line-precise message.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything a run needs, collected from the config file plus flag overrides.
// `raw` keeps the effective key/value pairs verbatim; every output artifact
// embeds them in its metadata header.
struct RunConfig {
    std::string subcommand;

    std::string preset_name = "lubotzky";
    std::optional<orbits::GroupPreset> custom_preset;

    std::string f_spec = "product";
    std::vector<BigInt> x0;
    std::vector<BigInt> root;  // apollonian root quadruple
    BigInt bound;              // apollonian curvature ceiling
    std::uint64_t prime_min = 2;
    std::uint64_t prime_max = 0;
    std::uint64_t z = 0;
    std::vector<std::uint32_t> k_grid;
    std::uint32_t samples = 1000;
    std::uint32_t r_max = 30;
    std::uint64_t seed = 1;
    FactorEffort effort;
    std::size_t enum_cap = 4'000'000;
    std::size_t bfs_cap = 2'000'000;
    std::pair<std::uint64_t, std::uint64_t> range{0, 0};  // sieve input range
    std::string input_path;                               // sieve input file
    std::string out_dir = ".";
    std::string resume_path;
    unsigned workers = 1;

    std::map<std::string, std::string> raw;  // effective settings, echoed into outputs

    orbits::GroupPreset resolve_preset() const;
    Polynomial resolve_polynomial(std::size_t nvars) const;
    void validate() const;  // throws ConfigError before any computation
    bool cfg_needs_input() const;
};

// Parse "key = value" lines ('#' comments, repeated keys where documented).
// Throws ConfigError with "<path>:<line>: <reason>".
RunConfig parse_config_file(const std::string& path);
void apply_config_line(RunConfig& cfg, const std::string& line, const std::string& where);

int run(const RunConfig& cfg);

}  // namespace orbsieve::cli
