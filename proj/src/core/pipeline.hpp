#ifndef PODES_CORE_PIPELINE_HPP
#define PODES_CORE_PIPELINE_HPP

#include <functional>
#include <ostream>
#include <string>

#include "scenario.hpp"

namespace podes {

// Exit codes shared by the C API and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBlowup = 3;
inline constexpr int kExitResourceCap = 4;
inline constexpr int kExitInternal = 5;

/// Dense eigensolve cap for cmd_spectrum.
inline constexpr std::size_t kSpectrumDimCap = 5000;

/// Runs the scenario and writes diagnostics CSV / summary JSON / binary
/// final state into scenario.out_dir according to scenario.formats.
/// `message` receives a one-line status (error description on failure).
int cmd_run(const Scenario& scn, std::string* message,
            const std::function<bool()>& interrupted = {});

/// Assembles the generator and writes the eigenvalue CSV and abscissa JSON.
int cmd_spectrum(const Scenario& scn, std::string* message);

/// Runs the verification battery, printing one pass/fail line per
/// criterion to `os`.
int cmd_verify(const Scenario& scn, std::ostream& os, std::string* message);

} // namespace podes

#endif
