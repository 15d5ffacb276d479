#include "state.hpp"

#include <cmath>
#include <stdexcept>

namespace podes {

bool SimState::finite() const {
    auto ok = [](const std::vector<double>& a) {
        for (double x : a)
            if (!std::isfinite(x)) return false;
        return true;
    };
    return ok(u) && ok(v) && ok(phi) && ok(psi) && ok(z);
}

void SimState::scale_add(double a, const SimState& other) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
        u[i] += a * other.u[i];
        v[i] += a * other.v[i];
        phi[i] += a * other.phi[i];
        psi[i] += a * other.psi[i];
    }
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += a * other.z[i];
}

SimState SimState::axpy(const SimState& base, double a, const SimState& dir) {
    SimState out = base;
    out.scale_add(a, dir);
    return out;
}

SimState sample_initial_data(const InitialData& d, const GridSpec& g, double tau,
                             std::vector<std::string>* warnings, double compat_tol) {
    SimState s(g);
    double worst_compat = 0.0;
    for (std::size_t i = 0; i < g.N; ++i) {
        const double x = g.x(i + 1);
        s.u[i] = d.u0 ? d.u0(x) : 0.0;
        s.v[i] = d.u1 ? d.u1(x) : 0.0;
        s.phi[i] = d.phi0 ? d.phi0(x) : 0.0;
        s.psi[i] = d.phi1 ? d.phi1(x) : 0.0;
        for (std::size_t j = 0; j < g.M; ++j)
            s.zat(i, j, g) = d.f0 ? d.f0(x, -tau * g.y(j)) : 0.0;
        if (d.f0)
            worst_compat = std::max(worst_compat, std::abs(d.f0(x, 0.0) - s.psi[i]));
        if (!std::isfinite(s.u[i]) || !std::isfinite(s.v[i]) || !std::isfinite(s.phi[i]) ||
            !std::isfinite(s.psi[i]))
            throw std::runtime_error("initial data not finite at x = " + std::to_string(x));
        for (std::size_t j = 0; j < g.M; ++j)
            if (!std::isfinite(s.zat(i, j, g)))
                throw std::runtime_error("history not finite at (x, y) = (" +
                                         std::to_string(x) + ", " + std::to_string(g.y(j)) + ")");
    }
    if (worst_compat > compat_tol && warnings)
        warnings->push_back("history/phi1 compatibility violated at t=0: max |f0(x,0)-phi1(x)| = " +
                            std::to_string(worst_compat));
    s.impose_inflow(g);
    return s;
}

} // namespace podes
