#ifndef PODES_CORE_ANALYSIS_HPP
#define PODES_CORE_ANALYSIS_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace podes {

struct DecayFit {
    double gamma = 0.0;  ///< fitted rate; positive for decay
    double C = 0.0;      ///< fitted prefactor
    double r2 = 0.0;     ///< coefficient of determination (0 when undefined)
    double t0 = 0.0, t1 = 0.0;
    std::size_t used_samples = 0;
};

/// Least squares on (t, ln E) over [t0, t1]; samples below
/// floor = 1e-14 * E(0) are excluded.  Throws std::runtime_error when all
/// samples sit at the floor, std::invalid_argument with fewer than 10
/// usable samples.
DecayFit fit_decay_rate(const std::vector<double>& times,
                        const std::vector<double>& energies, double t0, double t1);

struct ConvergenceLevel {
    std::size_t N = 0;
    std::size_t M = 0;
    double dt = 0.0;  // 0 = auto
};

struct ConvergenceResult {
    std::vector<double> errors;  ///< successive level differences
    std::vector<double> orders;  ///< log2 ratios
    bool exact = false;          ///< all differences at rounding level
    bool pre_asymptotic = false; ///< non-monotone error sequence
};

ConvergenceResult orders_from_errors(const std::vector<double>& errors);

struct SweepRow {
    double value = 0.0;
    double defect = 0.0;  ///< rho/mu - J/delta
    bool equal_speed = false;
    bool skipped = false;  ///< scenario inadmissible
    double gamma_fit = 0.0;
    double r2 = 0.0;
    double abscissa = 0.0;
    double CE = 0.0;
    std::size_t violations = 0;
};

} // namespace podes

#endif
