#ifndef PODES_CORE_STUDY_HPP
#define PODES_CORE_STUDY_HPP

#include <string>
#include <vector>

#include "analysis.hpp"
#include "scenario.hpp"

namespace podes {

/// Spatial refinement study on the linearized scenario: nested grids
/// N, 2N+1, 4N+3, ... share nodes, so level differences are formed on the
/// coarse nodes directly.  dt is held at the finest level's stable step so
/// the temporal and delay-channel error components cancel in differences.
ConvergenceResult spatial_convergence(const Scenario& base,
                                      const std::vector<std::size_t>& Ns,
                                      double t_end);

/// Richardson study in dt at fixed grid (linearized scenario); runs with
/// dt, dt/2, dt/4 and returns orders of the packed-state differences.
ConvergenceResult temporal_convergence(const Scenario& base, double t_end);

/// Pure delay-channel study: the inflow is a frozen smooth profile
/// g(x, t), the exact solution is g(x, t - tau*y).  Returns orders in dy
/// (first-order upwind, expected ~1).
ConvergenceResult transport_convergence(double tau, const std::vector<std::size_t>& Ms,
                                        double t_end);

/// One row per value of the swept key; inadmissible rows are marked
/// skipped.  Rows are computed concurrently and merged by input order.
std::vector<SweepRow> sweep(const Scenario& base, const std::string& key,
                            const std::vector<double>& values);

/// delta values spanning rho/mu - J/delta over [-0.5, 0.5].
std::vector<double> delta_values_for_defect_span(const Scenario& base,
                                                 std::size_t points = 11);

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     const std::string& hash_hex);

} // namespace podes

#endif
