#include "params.hpp"

#include <cmath>

namespace podes {

ValidationReport validate_params(const PhysicalParams& p) {
    ValidationReport r;
    auto positive = [&r](double v, const char* name) {
        if (!(v > 0.0)) r.violations.push_back(std::string(name) + " > 0");
    };
    positive(p.rho, "rho");
    positive(p.mu, "mu");
    positive(p.J, "J");
    positive(p.delta, "delta");
    positive(p.xi, "xi");
    positive(p.mu1, "mu1");
    positive(p.mu2, "mu2");
    positive(p.tau, "tau");
    positive(p.eta, "eta");
    if (p.b == 0.0) r.violations.push_back("b != 0");
    if (!(p.b * p.b <= p.mu * p.xi)) r.violations.push_back("b^2 <= mu*xi");

    const EtaInterval win = admissible_eta_interval(p);
    if (!(p.eta >= win.lo)) r.violations.push_back("eta >= tau*mu2");
    if (!(p.eta <= win.hi)) r.violations.push_back("eta <= tau*(2*mu1 - mu2)");

    r.admissible = r.violations.empty();
    r.strict_mu2_lt_mu1 = p.mu2 < p.mu1;
    r.eta_degenerate = r.admissible && dissipation_constant(p) <= 0.0;

    const double lhs = p.rho / p.mu;
    const double rhs = p.J / p.delta;
    r.equal_wave_speeds =
        std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), std::abs(rhs));
    return r;
}

EtaInterval admissible_eta_interval(const PhysicalParams& p) {
    return {p.tau * p.mu2, p.tau * (2.0 * p.mu1 - p.mu2)};
}

double dissipation_constant(const PhysicalParams& p) {
    const double a = p.mu1 - 0.5 * p.mu2 - p.eta / (2.0 * p.tau);
    const double b = p.eta / (2.0 * p.tau) - 0.5 * p.mu2;
    return std::min(a, b);
}

} // namespace podes
