#ifndef PODES_CORE_SOLVER_HPP
#define PODES_CORE_SOLVER_HPP

#include <functional>
#include <string>
#include <vector>

#include "forcing.hpp"
#include "grid.hpp"
#include "params.hpp"
#include "state.hpp"

namespace podes {

// Difference stencils shared by the time stepper and the generator matrix
// assembly.  Both D1 and D2 assume zero Dirichlet ghost values; D1 is the
// second-order central first difference.
void apply_d1(const std::vector<double>& a, std::vector<double>& out, double h);
void apply_d2(const std::vector<double>& a, std::vector<double>& out, double h);

/// First-order upwind y-derivative of the delay channel:
/// dz[i][j] = -(z[i][j] - z[i][j-1]) / (tau*dy) for j >= 1, with the inflow
/// value z[i][0] taken from psi.  dz[i][0] is left untouched by this call.
void transport_rhs(const SimState& s, const GridSpec& g, double tau, SimState& ds);

/// Semi-discrete right-hand side of the transformed system.  The slaved
/// inflow row receives dz[i][0] = dpsi[i] so that RK stage combinations
/// preserve z(.,0) = psi identically.
void rhs(const SimState& s, const PhysicalParams& p, const ForcingSpec& f,
         const GridSpec& g, SimState& ds);

/// CFL-limited step bound from the two wave speeds and the y-transport
/// speed 1/tau.
double stable_dt(const GridSpec& g, const PhysicalParams& p, double cfl);

/// Classical four-stage explicit step; re-imposes the inflow identity and
/// throws std::runtime_error("blow-up detected ...") on non-finite or
/// oversized entries.
SimState step_rk4(const SimState& s, double dt, const PhysicalParams& p,
                  const ForcingSpec& f, const GridSpec& g,
                  double blowup_threshold = 1e12);

struct RunOptions {
    double t_end = 10.0;
    double cfl = 0.5;
    std::size_t out_every = 1;
    bool store_states = false;
    double dt_override = 0.0;  ///< 0 = use stable_dt
    double blowup_threshold = 1e12;
    std::function<bool()> interrupted;  ///< polled once per step when set
};

/// Time series of sampled states; diagnostic columns are attached by the
/// observers in diagnostics.hpp.
struct Trajectory {
    std::vector<double> times;
    std::vector<SimState> states;  // only when store_states
    double dt = 0.0;
    bool blew_up = false;
    bool incomplete = false;
    std::vector<std::string> warnings;
};

using SampleObserver = std::function<void(double t, const SimState&)>;

/// Integrates from the given state to t_end, invoking the observer every
/// out_every steps (and at t=0 and the final time).  A blow-up terminates
/// the run and is recorded on the trajectory instead of propagating.
Trajectory run(const SimState& initial, const PhysicalParams& p, const ForcingSpec& f,
               const GridSpec& g, const RunOptions& opts,
               const SampleObserver& observer = {});

/// Independent delay oracle: integrates the untransformed system keeping a
/// ring buffer of per-stage psi values over exactly one delay interval, so
/// the delayed term is read at t - tau without interpolation.  Requires a
/// commensurate step dt = tau/K; when dt_override is zero the largest
/// commensurate stable step is chosen.  States carry z = 0.
Trajectory history_buffer_reference_run(const InitialData& d, const PhysicalParams& p,
                                        const ForcingSpec& f, const GridSpec& g,
                                        const RunOptions& opts,
                                        const SampleObserver& observer = {});

} // namespace podes

#endif
