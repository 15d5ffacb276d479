#ifndef PODES_CORE_DIAGNOSTICS_HPP
#define PODES_CORE_DIAGNOSTICS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "forcing.hpp"
#include "grid.hpp"
#include "params.hpp"
#include "state.hpp"

namespace podes {

enum class Quadrature { trapezoid, midpoint };

struct DiagnosticsConfig {
    /// Poincare constant for (0,1) with Dirichlet data; sharp value 1/pi^2.
    double cp = 0.10132118364233778;
    Quadrature quadrature = Quadrature::trapezoid;
};

// Composite quadrature over interior nodes.  With zero Dirichlet endpoints
// the trapezoid rule reduces to h * sum; the midpoint variant averages
// adjacent nodes over the N+1 intervals.
double integrate_nodal(const std::vector<double>& a, const GridSpec& g,
                       Quadrature q = Quadrature::trapezoid);

/// Interval differences (a_{k+1}-a_k)/h over the N+1 cells, with implicit
/// zero boundary values.  These are the gradient samples used by every
/// gradient integral, chosen so that the discrete energy balance against
/// the solver stencils is exact.
std::vector<double> interval_gradient(const std::vector<double>& a, double h);

/// Interval averages (a_k + a_{k+1})/2 matching interval_gradient.
std::vector<double> interval_average(const std::vector<double>& a);

/// Nodal central first difference with zero ghost values (same stencil as
/// the solver's D1); used by the pointwise functionals I3, B1, B2.
std::vector<double> nodal_gradient(const std::vector<double>& a, double h);

/// h * sum of squares: the discrete L^2(0,1) norm of a nodal field.
double l2_normsq_nodal(const std::vector<double>& a, const GridSpec& g);

/// Squared L^2 norm of the delay channel, rectangle rule in y over the
/// rows j = 1..M-1 (the slaved inflow row is excluded; this makes the
/// discrete transport dissipation identity exact).
double z_normsq(const SimState& s, const GridSpec& g);

/// h * sum of squares of the outflow row z(., 1).
double z_outflow_normsq(const SimState& s, const GridSpec& g);

struct EnergyBreakdown {
    double kinetic_u = 0.0;       // rho/2 int v^2
    double kinetic_phi = 0.0;     // J/2 int psi^2
    double porous_grad = 0.0;     // delta/2 int phi_x^2
    double elastic_grad = 0.0;    // mu/2 int u_x^2
    double coupling = 0.0;        // b int u_x phi
    double porous_zero = 0.0;     // xi/2 int phi^2
    double forcing_potential = 0.0;  // int fhat(phi)
    double delay_channel = 0.0;   // eta/2 int int z^2
    double total = 0.0;
};

EnergyBreakdown energy(const SimState& s, const PhysicalParams& p, const ForcingSpec& f,
                       const DiagnosticsConfig& cfg = {});

/// Weighted state norm squared: same quadratic form as the energy without
/// the forcing potential, so h_normsq == 2*E exactly when f == 0.
double h_normsq(const SimState& s, const PhysicalParams& p,
                const DiagnosticsConfig& cfg = {});

struct DissipationReport {
    double CE = 0.0;
    bool degenerate = false;       ///< CE <= 0; check degrades to monotonicity
    double worst_margin = 0.0;     ///< min over intervals of rhs - lhs (>= 0 is good)
    std::size_t violations = 0;
    std::size_t intervals = 0;
};

/// Checks dE/dt <= -C_E (||psi||^2 + ||z(.,1)||^2) + tol on consecutive
/// sample pairs, the quadratic terms averaged over the pair endpoints.
/// Throws std::invalid_argument for fewer than 3 samples.
DissipationReport dissipation_check(const std::vector<double>& times,
                                    const std::vector<double>& energies,
                                    const std::vector<double>& psi_normsq,
                                    const std::vector<double>& z1_normsq,
                                    const PhysicalParams& p, double tol);

/// w(x) = -(b/mu) int_0^x phi by cumulative trapezoid; w(0) = 0 by
/// construction and |w(1)| is returned as a residual (zero only for
/// zero-mean phi).
struct EllipticW {
    std::vector<double> w;  // interior nodes
    double boundary_residual = 0.0;
};
EllipticW solve_w(const std::vector<double>& phi, const PhysicalParams& p,
                  const GridSpec& g);

struct LyapunovConfig {
    double Mw = 0.0;
    double Nw = 0.0;
    double eps = 0.0;
    double lam2 = 0.0;
    double lam2t = 0.0;
    double beta = 0.0;
    double c1 = 0.0;  ///< constant of the f(phi)*phi bound; k0 * cp here
};

double beta_constant(const PhysicalParams& p);

/// Throws std::invalid_argument naming the first violated smallness
/// condition of the decay-theorem recipe.
void validate_lyapunov_config(const PhysicalParams& p, const DiagnosticsConfig& cfg,
                              const LyapunovConfig& lcfg);

struct LyapunovComponents {
    double I1 = 0.0, I2 = 0.0, I3 = 0.0, I4 = 0.0;
    double B1 = 0.0, B2 = 0.0;   // the two q-weighted boundary-control terms
    double w_boundary_residual = 0.0;
};

LyapunovComponents lyapunov_components(const SimState& s, const PhysicalParams& p,
                                       const DiagnosticsConfig& cfg,
                                       const LyapunovConfig& lcfg);

/// L = M*E + (sqrt(xi)/8) beta I1 + N I2 + I3 + B1 + B2 + I4.
double lyapunov(const SimState& s, const PhysicalParams& p, const ForcingSpec& f,
                const DiagnosticsConfig& cfg, const LyapunovConfig& lcfg);

/// Deterministic constant recipe from the decay-theorem proof: every
/// "small enough" takes half its cap, every "large enough" 1.1x its floor.
/// Requires mu2 < mu1 and C_E > 0; throws std::invalid_argument otherwise.
LyapunovConfig auto_lyapunov_config(const PhysicalParams& p, const ForcingSpec& f,
                                    const DiagnosticsConfig& cfg = {});

} // namespace podes

#endif
