#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace podes {

double integrate_nodal(const std::vector<double>& a, const GridSpec& g, Quadrature q) {
    double s = 0.0;
    if (q == Quadrature::trapezoid) {
        for (double x : a) s += x;
    } else {
        // midpoint: averages over the N+1 intervals with zero endpoints
        double prev = 0.0;
        for (double x : a) {
            s += 0.5 * (prev + x);
            prev = x;
        }
        s += 0.5 * prev;
    }
    return s * g.h;
}

std::vector<double> interval_gradient(const std::vector<double>& a, double h) {
    const std::size_t n = a.size();
    std::vector<double> d(n + 1);
    double prev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        d[k] = (a[k] - prev) / h;
        prev = a[k];
    }
    d[n] = (0.0 - prev) / h;
    return d;
}

std::vector<double> interval_average(const std::vector<double>& a) {
    const std::size_t n = a.size();
    std::vector<double> m(n + 1);
    double prev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        m[k] = 0.5 * (prev + a[k]);
        prev = a[k];
    }
    m[n] = 0.5 * prev;
    return m;
}

std::vector<double> nodal_gradient(const std::vector<double>& a, double h) {
    const std::size_t n = a.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = (i == 0) ? 0.0 : a[i - 1];
        const double right = (i + 1 == n) ? 0.0 : a[i + 1];
        d[i] = (right - left) / (2.0 * h);
    }
    return d;
}

double l2_normsq_nodal(const std::vector<double>& a, const GridSpec& g) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return s * g.h;
}

double z_normsq(const SimState& s, const GridSpec& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i < g.N; ++i) {
        const double* zi = &s.z[i * g.M];
        for (std::size_t j = 1; j < g.M; ++j) acc += zi[j] * zi[j];
    }
    return acc * g.h * g.dy;
}

double z_outflow_normsq(const SimState& s, const GridSpec& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i < g.N; ++i) {
        const double v = s.zat(i, g.M - 1, g);
        acc += v * v;
    }
    return acc * g.h;
}

namespace {

double integrate_sq(const std::vector<double>& a, const GridSpec& g, Quadrature q) {
    if (q == Quadrature::trapezoid) {
        double s = 0.0;
        for (double x : a) s += x * x;
        return s * g.h;
    }
    double s = 0.0, prev = 0.0;
    for (double x : a) {
        const double m = 0.5 * (prev + x);
        s += m * m;
        prev = x;
    }
    s += 0.25 * prev * prev;
    return s * g.h;
}

} // namespace

EnergyBreakdown energy(const SimState& s, const PhysicalParams& p, const ForcingSpec& f,
                       const DiagnosticsConfig& cfg) {
    GridSpec g;
    g.N = s.u.size();
    g.M = s.z.size() / std::max<std::size_t>(g.N, 1);
    g.h = 1.0 / static_cast<double>(g.N + 1);
    g.dy = 1.0 / static_cast<double>(g.M - 1);

    EnergyBreakdown e;
    e.kinetic_u = 0.5 * p.rho * integrate_sq(s.v, g, cfg.quadrature);
    e.kinetic_phi = 0.5 * p.J * integrate_sq(s.psi, g, cfg.quadrature);
    e.porous_zero = 0.5 * p.xi * integrate_sq(s.phi, g, cfg.quadrature);

    const std::vector<double> du = interval_gradient(s.u, g.h);
    const std::vector<double> dphi = interval_gradient(s.phi, g.h);
    const std::vector<double> phibar = interval_average(s.phi);
    double gu = 0.0, gphi = 0.0, cross = 0.0;
    for (std::size_t k = 0; k <= g.N; ++k) {
        gu += du[k] * du[k];
        gphi += dphi[k] * dphi[k];
        cross += du[k] * phibar[k];
    }
    e.elastic_grad = 0.5 * p.mu * gu * g.h;
    e.porous_grad = 0.5 * p.delta * gphi * g.h;
    e.coupling = p.b * cross * g.h;

    if (f.kind != ForcingKind::zero) {
        double fp = 0.0;
        for (double x : s.phi) fp += forcing_potential(f, x);
        e.forcing_potential = fp * g.h;
    }
    e.delay_channel = 0.5 * p.eta * z_normsq(s, g);
    e.total = e.kinetic_u + e.kinetic_phi + e.porous_grad + e.elastic_grad + e.coupling +
              e.porous_zero + e.forcing_potential + e.delay_channel;
    return e;
}

double h_normsq(const SimState& s, const PhysicalParams& p, const DiagnosticsConfig& cfg) {
    ForcingSpec none;
    none.kind = ForcingKind::zero;
    return 2.0 * energy(s, p, none, cfg).total;
}

DissipationReport dissipation_check(const std::vector<double>& times,
                                    const std::vector<double>& energies,
                                    const std::vector<double>& psi_normsq,
                                    const std::vector<double>& z1_normsq,
                                    const PhysicalParams& p, double tol) {
    if (times.size() < 3) throw std::invalid_argument("dissipation check: trajectory too short");
    DissipationReport r;
    r.CE = dissipation_constant(p);
    const double ce = std::max(r.CE, 0.0);
    r.degenerate = r.CE <= 0.0;
    r.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double dtk = times[k + 1] - times[k];
        const double lhs = (energies[k + 1] - energies[k]) / dtk;
        const double q = 0.5 * (psi_normsq[k] + psi_normsq[k + 1] + z1_normsq[k] +
                                z1_normsq[k + 1]);
        const double rhs = -ce * q + tol;
        const double margin = rhs - lhs;
        r.worst_margin = std::min(r.worst_margin, margin);
        if (margin < 0.0) ++r.violations;
        ++r.intervals;
    }
    return r;
}

EllipticW solve_w(const std::vector<double>& phi, const PhysicalParams& p,
                  const GridSpec& g) {
    EllipticW out;
    out.w.resize(g.N);
    const double c = -p.b / p.mu;
    double acc = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < g.N; ++i) {
        acc += 0.5 * (prev + phi[i]) * g.h;
        out.w[i] = c * acc;
        prev = phi[i];
    }
    acc += 0.5 * prev * g.h;  // last interval up to x = 1
    out.boundary_residual = std::abs(c * acc);
    return out;
}

double beta_constant(const PhysicalParams& p) {
    return 1.0 / (3.0 * (p.mu * p.xi / (p.b * p.b) - 1.0) + 1.0);
}

void validate_lyapunov_config(const PhysicalParams& p, const DiagnosticsConfig& cfg,
                              const LyapunovConfig& lcfg) {
    const double sx = std::sqrt(p.xi);
    const double beta = beta_constant(p);
    if (std::abs(lcfg.beta - beta) > 1e-12 * std::max(1.0, std::abs(beta)))
        throw std::invalid_argument("lyapunov config: beta does not match its definition");
    if (!(lcfg.lam2 > 0.0 && lcfg.lam2 < p.delta / p.mu2))
        throw std::invalid_argument("lyapunov config: lambda2 < delta/mu2 violated");
    const double eps_cap =
        std::min((sx / 8.0) / (p.xi / 4.0 + 3.0 * p.xi / p.mu + 6.0 * p.xi / (p.b * p.b)),
                 sx * p.mu * beta / 64.0);
    if (!(lcfg.eps > 0.0 && lcfg.eps <= eps_cap))
        throw std::invalid_argument("lyapunov config: epsilon smallness cap violated");
    if (!(lcfg.lam2t > 0.0 && lcfg.lam2t < sx * beta / (32.0 * lcfg.Nw * cfg.cp)))
        throw std::invalid_argument("lyapunov config: lambda2~ smallness cap violated");
    if (!(lcfg.Nw > 0.0) || !(lcfg.Mw > 0.0))
        throw std::invalid_argument("lyapunov config: weights must be positive");
}

LyapunovComponents lyapunov_components(const SimState& s, const PhysicalParams& p,
                                       const DiagnosticsConfig& cfg,
                                       const LyapunovConfig& lcfg) {
    GridSpec g;
    g.N = s.u.size();
    g.M = s.z.size() / std::max<std::size_t>(g.N, 1);
    g.h = 1.0 / static_cast<double>(g.N + 1);
    g.dy = 1.0 / static_cast<double>(g.M - 1);

    LyapunovComponents out;
    const double sx = std::sqrt(p.xi);

    double i1 = 0.0, phisq = 0.0;
    for (std::size_t i = 0; i < g.N; ++i) {
        i1 -= p.rho * s.u[i] * s.v[i] + p.J * s.phi[i] * s.psi[i];
        phisq += s.phi[i] * s.phi[i];
    }
    out.I1 = i1 * g.h - 0.5 * p.mu1 * phisq * g.h;

    const EllipticW ew = solve_w(s.phi, p, g);
    out.w_boundary_residual = ew.boundary_residual;
    double i2 = 0.0;
    for (std::size_t i = 0; i < g.N; ++i)
        i2 += p.J * s.psi[i] * s.phi[i] + p.rho * s.v[i] * ew.w[i];
    out.I2 = i2 * g.h + 0.5 * p.mu1 * phisq * g.h;

    const std::vector<double> ux = nodal_gradient(s.u, g.h);
    const std::vector<double> phix = nodal_gradient(s.phi, g.h);
    double i3 = 0.0;
    for (std::size_t i = 0; i < g.N; ++i) {
        const double S = (p.b / sx) * ux[i] + sx * s.phi[i];
        i3 += p.J * S * s.psi[i] + (p.b * p.J / sx) * phix[i] * s.v[i];
    }
    out.I3 = i3 * g.h;

    // I4: trapezoid in y over the stored rows (inflow row included).
    double i4 = 0.0;
    for (std::size_t i = 0; i < g.N; ++i) {
        const double* zi = &s.z[i * g.M];
        for (std::size_t j = 0; j < g.M; ++j) {
            const double wgt = (j == 0 || j + 1 == g.M) ? 0.5 : 1.0;
            const double e = std::exp(-2.0 * p.tau * g.y(j));
            i4 += wgt * e * zi[j] * zi[j];
        }
    }
    out.I4 = i4 * g.h * g.dy;

    double b1 = 0.0, b2 = 0.0;
    for (std::size_t i = 0; i < g.N; ++i) {
        const double q = 2.0 - 4.0 * g.x(i + 1);
        b1 += q * s.psi[i] * phix[i];
        b2 += q * s.v[i] * ux[i];
    }
    out.B1 = (p.J * p.delta / (4.0 * lcfg.eps)) * b1 * g.h;
    out.B2 = (p.rho * lcfg.eps / p.mu) * b2 * g.h;
    return out;
}

double lyapunov(const SimState& s, const PhysicalParams& p, const ForcingSpec& f,
                const DiagnosticsConfig& cfg, const LyapunovConfig& lcfg) {
    validate_lyapunov_config(p, cfg, lcfg);
    const EnergyBreakdown e = energy(s, p, f, cfg);
    const LyapunovComponents c = lyapunov_components(s, p, cfg, lcfg);
    const double sx = std::sqrt(p.xi);
    return lcfg.Mw * e.total + (sx / 8.0) * lcfg.beta * c.I1 + lcfg.Nw * c.I2 + c.I3 +
           c.B1 + c.B2 + c.I4;
}

LyapunovConfig auto_lyapunov_config(const PhysicalParams& p, const ForcingSpec& f,
                                    const DiagnosticsConfig& cfg) {
    if (!(p.mu2 < p.mu1))
        throw std::invalid_argument("auto lyapunov config requires mu2 < mu1");
    const double CE = dissipation_constant(p);
    if (!(CE > 0.0))
        throw std::invalid_argument("auto lyapunov config requires C_E > 0 (adjust eta)");

    LyapunovConfig c;
    const double sx = std::sqrt(p.xi);
    const double cp = cfg.cp;
    c.beta = beta_constant(p);
    const double k0 = (f.kind == ForcingKind::power_law) ? f.k0 : 0.0;
    c.c1 = k0 * cp;

    c.lam2 = 0.5 * p.delta / p.mu2;
    c.eps = 0.5 * std::min((sx / 8.0) / (p.xi / 4.0 + 3.0 * p.xi / p.mu +
                                          6.0 * p.xi / (p.b * p.b)),
                           sx * p.mu * c.beta / 64.0);

    const double rhsN =
        (sx * c.beta / 8.0) *
            (p.delta + c.eps + c.c1 +
             (2.0 * p.xi * p.xi * cp / (p.b * p.b)) * (p.mu - p.b * p.b / p.xi)) +
        p.xi * p.xi * cp / (12.0 * sx) + 6.0 * k0 / sx + p.delta * p.delta / (2.0 * c.eps) +
        p.delta * p.delta / (4.0 * c.eps * c.eps) + 0.5 * p.delta * p.delta + p.xi / p.mu +
        2.0 * p.xi * p.xi * cp * c.eps / p.mu + 4.0 * p.xi * p.xi * cp * c.eps / (p.b * p.b);
    c.Nw = 1.1 * rhsN / (p.delta - p.mu2 * c.lam2);

    c.lam2t = 0.5 * sx * c.beta / (32.0 * c.Nw * cp);

    const double pos_psi = -sx * c.beta * p.J / 8.0 +
                           c.Nw * (p.J + p.rho * p.b * p.b / (4.0 * p.mu * p.mu * c.lam2t)) +
                           p.J * sx + p.mu1 * p.mu1 / sx + p.J * p.delta / (2.0 * c.eps) +
                           p.mu1 * p.mu1 / (4.0 * c.eps * c.eps) + 1.0 / p.tau;
    const double pos_z = p.mu2 * p.mu2 * cp / (32.0 * c.eps) +
                         c.Nw * p.mu2 * p.mu2 * cp / (4.0 * c.lam2) + p.mu2 * p.mu2 / sx +
                         p.mu2 * p.mu2 / (4.0 * c.eps * c.eps) -
                         std::exp(2.0 * p.tau) / p.tau;
    const double floorM = std::max({(pos_psi + 0.01) / CE, (pos_z + 0.01) / CE, 1.0});
    c.Mw = 1.1 * floorM;
    return c;
}

} // namespace podes
