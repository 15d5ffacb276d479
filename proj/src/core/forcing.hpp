#ifndef PODES_CORE_FORCING_HPP
#define PODES_CORE_FORCING_HPP

#include <functional>
#include <stdexcept>

namespace podes {

enum class ForcingKind { power_law, zero, custom_table };

/// Nonlinear forcing f on the volume-fraction equation together with its
/// potential fhat(s) = int_0^s f.  The certified family is the power law
/// f(s) = k0 |s|^theta s, for which the potential is closed-form and the
/// sign conditions 0 <= fhat(s) <= f(s) s hold.
struct ForcingSpec {
    ForcingKind kind = ForcingKind::power_law;
    double k0 = 1.0;
    double theta = 1.0;
    /// Only used for custom_table; must satisfy f(s)*s >= 0.
    std::function<double(double)> table;
};

double forcing_eval(const ForcingSpec& spec, double s);

/// Exact antiderivative for power_law; adaptive quadrature (abs tol 1e-12)
/// for custom_table.  Throws std::invalid_argument if a custom table
/// violates f(s)*s >= 0 on the integration path.
double forcing_potential(const ForcingSpec& spec, double s);

} // namespace podes

#endif
