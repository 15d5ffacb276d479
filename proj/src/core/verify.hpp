#ifndef PODES_CORE_VERIFY_HPP
#define PODES_CORE_VERIFY_HPP

#include <string>
#include <vector>

#include "scenario.hpp"

namespace podes {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CriterionResult> criteria;
    int exit_code = 0;          ///< 0 all pass, 1 criterion failed, 2 hypothesis gate
    std::string gate_message;   ///< set when the hypothesis gate fired
};

/// Runs the per-scenario verification battery: completion and energy
/// monotonicity, the dissipation inequality, exponential fit quality, the
/// history-buffer delay oracle, spectral decay-rate agreement, generator
/// dissipativity, and the Lyapunov-functional equivalence/decay check.
/// Scenarios violating the structural hypotheses (or mu2 >= mu1) are gated
/// out with exit code 2 before any computation.
VerifyReport verify_scenario(const Scenario& scn);

} // namespace podes

#endif
