#ifndef PODES_CORE_SCENARIO_HPP
#define PODES_CORE_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "forcing.hpp"
#include "grid.hpp"
#include "params.hpp"
#include "state.hpp"

namespace podes {

/// One fully-specified run: parameters, forcing, initial-data presets,
/// grid, time window and output destinations.  Parsed from an INI-style
/// file with sections [params], [forcing], [initial], [grid], [time],
/// [output], [rng].
struct Scenario {
    PhysicalParams params;
    bool eta_auto = true;  ///< eta = midpoint of the admissible window

    ForcingSpec forcing;

    // initial-data presets: zero | sine_mode:k[,amp] |
    // gaussian_bump:center,width,amp | poly:c0,c1,... ; f0 additionally
    // supports separable:<xpreset>|one and separable:<xpreset>|exp
    std::string u0 = "zero", u1 = "zero", phi0 = "zero", phi1 = "zero", f0 = "zero";

    std::size_t N = 100, M = 41;

    double t_end = 30.0;
    double cfl = 0.5;
    std::size_t out_every = 1;
    double dt_override = 0.0;

    std::string out_dir = "out";
    std::vector<std::string> formats = {"csv", "json"};
    std::uint64_t seed = 0xC0FFEE;
};

Scenario default_scenario();

Scenario parse_scenario_file(const std::string& path);
Scenario parse_scenario_text(const std::string& text);

/// Applies a dotted-path override such as "params.mu2=0.3",
/// "forcing.kind=zero", "grid.N=40" or "initial.phi0=sine_mode:1,0.1".
/// Throws std::invalid_argument for unknown keys or malformed values.
void apply_override(Scenario& s, const std::string& key_equals_value);

/// Resolved physical parameters (eta_auto replaced by the window midpoint).
PhysicalParams resolved_params(const Scenario& s);

GridSpec scenario_grid(const Scenario& s);

InitialData make_initial_data(const Scenario& s);

/// Canonical serialization (re-parseable scenario file).
std::string canonical_text(const Scenario& s);

/// FNV-1a 64-bit hash of the canonical serialization.
std::uint64_t scenario_hash(const Scenario& s);
std::string scenario_hash_hex(const Scenario& s);

ValidationReport validate_scenario(const Scenario& s);

} // namespace podes

#endif
