#ifndef PODES_CORE_STATE_HPP
#define PODES_CORE_STATE_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "grid.hpp"

namespace podes {

/// Grid samples of (u, u_t, phi, phi_t) at interior x-nodes plus the delay
/// field z on the full (x,y) grid.  Boundary values of u and phi are
/// implicit zeros and never stored; the inflow row z(.,0) duplicates psi
/// and is re-imposed after every integrator stage.
struct SimState {
    double t = 0.0;
    std::vector<double> u, v, phi, psi;  // length N
    std::vector<double> z;               // N*M, row-major: z[i*M + j]

    SimState() = default;
    explicit SimState(const GridSpec& g)
        : u(g.N, 0.0), v(g.N, 0.0), phi(g.N, 0.0), psi(g.N, 0.0), z(g.N * g.M, 0.0) {}

    double& zat(std::size_t i, std::size_t j, const GridSpec& g) { return z[i * g.M + j]; }
    double zat(std::size_t i, std::size_t j, const GridSpec& g) const { return z[i * g.M + j]; }

    void impose_inflow(const GridSpec& g) {
        for (std::size_t i = 0; i < g.N; ++i) z[i * g.M] = psi[i];
    }

    bool finite() const;

    // Linear-space operations used by the time integrator.
    void scale_add(double a, const SimState& other);  // *this += a*other
    static SimState axpy(const SimState& base, double a, const SimState& dir);
};

/// Initial data as closed-form functions; u0..phi1 on [0,1] with zero
/// endpoint values, f0(x,s) the phi_t history for s in (-tau, 0].
struct InitialData {
    std::function<double(double)> u0, u1, phi0, phi1;
    std::function<double(double, double)> f0;  // (x, s) with s <= 0
};

/// Samples the data on the grid, fills z(x_i, y_j, 0) = f0(x_i, -tau*y_j)
/// and forces the inflow identity z(.,0) = psi.  Non-finite samples raise
/// std::runtime_error naming the node.  If |f0(x,0) - phi1(x)| exceeds
/// compat_tol at some node, a warning string is appended to warnings.
SimState sample_initial_data(const InitialData& d, const GridSpec& g, double tau,
                             std::vector<std::string>* warnings = nullptr,
                             double compat_tol = 1e-8);

} // namespace podes

#endif
