#ifndef PODES_CORE_PARAMS_HPP
#define PODES_CORE_PARAMS_HPP

#include <string>
#include <vector>

namespace podes {

/// Coefficient tuple of the porous-elastic system with delayed damping on
/// the volume-fraction equation.  All coefficients except b are strictly
/// positive; b is a non-zero real with b^2 <= mu*xi.
struct PhysicalParams {
    double rho  = 1.0;   ///< mass density
    double mu   = 1.0;   ///< elastic modulus
    double J    = 1.0;   ///< equilibrated inertia
    double delta = 1.0;  ///< porous stiffness
    double xi   = 1.0;   ///< porous coupling
    double b    = 0.5;   ///< elastic/porous coupling (non-zero, may be negative)
    double mu1  = 0.5;   ///< frictional damping gain
    double mu2  = 0.25;  ///< delayed damping gain
    double tau  = 1.0;   ///< delay length
    double eta  = 0.5;   ///< delay-channel energy weight
};

struct ValidationReport {
    bool admissible = false;          ///< all structural hypotheses hold
    bool strict_mu2_lt_mu1 = false;   ///< hypothesis of the decay theorem
    bool equal_wave_speeds = false;   ///< rho/mu == J/delta (rel. tol 1e-12)
    bool eta_degenerate = false;      ///< eta window collapsed (C_E = 0)
    std::vector<std::string> violations;
};

/// Checks every structural hypothesis and never throws; callers decide what
/// to do with an inadmissible parameter set.
ValidationReport validate_params(const PhysicalParams& p);

/// Admissible eta window (tau*mu2, tau*(2*mu1 - mu2)).  May be empty
/// (lo > hi) when mu2 > mu1.
struct EtaInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return lo > hi; }
    /// Midpoint tau*mu1; this is also the maximizer of the dissipation
    /// constant C_E.
    double midpoint() const { return 0.5 * (lo + hi); }
};

EtaInterval admissible_eta_interval(const PhysicalParams& p);

/// C_E = min{mu1 - mu2/2 - eta/(2 tau), eta/(2 tau) - mu2/2}.
double dissipation_constant(const PhysicalParams& p);

} // namespace podes

#endif
