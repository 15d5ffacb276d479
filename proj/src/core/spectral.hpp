#ifndef PODES_CORE_SPECTRAL_HPP
#define PODES_CORE_SPECTRAL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "grid.hpp"
#include "params.hpp"
#include "state.hpp"

namespace podes {

/// Dense discretization of the linear generator together with the weight
/// matrix of the discrete H-inner product.  Block ordering of the state
/// vector: (u, v, phi, psi, z rows y_1..y_{M-1}); the inflow row y_0 is
/// eliminated through the domain condition z(.,0) = psi, so psi appears in
/// the first z-row stencil exactly as in the time stepper.
struct GeneratorMatrix {
    Eigen::MatrixXd A;
    Eigen::MatrixXd Wh;
    GridSpec grid;
    PhysicalParams params;

    Eigen::Index dim() const { return A.rows(); }
};

GeneratorMatrix assemble_generator(const GridSpec& g, const PhysicalParams& p);

/// Flattens a SimState into the generator's block ordering.
Eigen::VectorXd pack_state(const SimState& s, const GridSpec& g);
SimState unpack_state(const Eigen::VectorXd& x, const GridSpec& g);

/// Max over random states of the weighted Rayleigh quotient
/// <AU,U>_H / <U,U>_H.  Non-positive (up to rounding) for admissible
/// parameters: the discrete scheme satisfies the dissipativity identity
/// exactly.
double dissipativity_check(const GeneratorMatrix& gm, std::size_t trials,
                           std::uint64_t seed = 0xC0FFEE);

std::vector<std::complex<double>> spectrum(const GeneratorMatrix& gm);

double spectral_abscissa(const std::vector<std::complex<double>>& eigs);

/// Rightmost eigenvalue together with the real part of its eigenvector,
/// normalized to unit H-norm.  Starting a run from `shape` makes the
/// energy decay at exactly twice |Re lambda|, which is what the
/// solver-vs-eigensolve consistency check compares.
struct SpectralMode {
    std::complex<double> lambda;
    Eigen::VectorXd shape;
};

SpectralMode rightmost_mode(const GeneratorMatrix& gm);

} // namespace podes

#endif
