#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/diagnostics.hpp"
#include "core/solver.hpp"

using namespace podes;

namespace {
constexpr double kPi = 3.14159265358979323846;

SimState random_state(const GridSpec& g, std::mt19937_64& rng, double amp = 1.0) {
    std::normal_distribution<double> nd(0.0, amp);
    SimState s(g);
    for (std::size_t i = 0; i < g.N; ++i) {
        s.u[i] = nd(rng);
        s.v[i] = nd(rng);
        s.phi[i] = nd(rng);
        s.psi[i] = nd(rng);
    }
    for (auto& z : s.z) z = nd(rng);
    s.impose_inflow(g);
    return s;
}
} // namespace

TEST_CASE("energy of special states") {
    const PhysicalParams p0;
    ForcingSpec f;
    SUBCASE("zero state") {
        const GridSpec g = build_grid(20, 5);
        const EnergyBreakdown e = energy(SimState(g), p0, f);
        CHECK(e.total == 0.0);
        CHECK(e.kinetic_u == 0.0);
        CHECK(e.delay_channel == 0.0);
    }
    SUBCASE("v = sin(pi x), rho = 2 gives E = 1/2") {
        PhysicalParams p = p0;
        p.rho = 2.0;
        const GridSpec g = build_grid(100, 5);
        SimState s(g);
        for (std::size_t i = 0; i < g.N; ++i) s.v[i] = std::sin(kPi * g.x(i + 1));
        const EnergyBreakdown e = energy(s, p, f);
        CHECK(e.kinetic_u == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(e.total == doctest::Approx(0.5).epsilon(1e-6));
    }
}

TEST_CASE("completed-square identity of the elastic-porous quadratic form") {
    // mu a^2 + 2 b a c + xi c^2 == (b/sqrt(xi) a + sqrt(xi) c)^2 + (mu - b^2/xi) a^2
    const PhysicalParams p;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    for (int k = 0; k < 1000; ++k) {
        const double a = nd(rng), c = nd(rng);
        const double direct = p.mu * a * a + 2.0 * p.b * a * c + p.xi * c * c;
        const double S = (p.b / std::sqrt(p.xi)) * a + std::sqrt(p.xi) * c;
        const double square = S * S + (p.mu - p.b * p.b / p.xi) * a * a;
        CHECK(direct == doctest::Approx(square).epsilon(1e-12));
    }
}

TEST_CASE("h-norm properties") {
    const PhysicalParams p;
    const GridSpec g = build_grid(24, 7);
    std::mt19937_64 rng(11);
    SUBCASE("zero state") { CHECK(h_normsq(SimState(g), p) == 0.0); }
    SUBCASE("equals twice the energy when f = zero") {
        ForcingSpec lin;
        lin.kind = ForcingKind::zero;
        for (int k = 0; k < 50; ++k) {
            const SimState s = random_state(g, rng);
            CHECK(h_normsq(s, p) ==
                  doctest::Approx(2.0 * energy(s, p, lin).total).epsilon(1e-14));
        }
    }
    SUBCASE("positive semidefinite under b^2 <= mu xi") {
        for (int k = 0; k < 10000; ++k)
            CHECK(h_normsq(random_state(g, rng), p) >= 0.0);
    }
    SUBCASE("energy dominates half the norm (nonnegative potential)") {
        ForcingSpec f;  // power law
        for (int k = 0; k < 200; ++k) {
            const SimState s = random_state(g, rng);
            CHECK(energy(s, p, f).total >= 0.5 * h_normsq(s, p) - 1e-12);
        }
    }
}

TEST_CASE("gradient bound via the completed square and Poincare") {
    // int u_x^2 <= (3 xi/b^2) int S^2 + (2 xi^2 cp / b^2) int phi_x^2
    const PhysicalParams p;
    const DiagnosticsConfig cfg;
    const GridSpec g = build_grid(40, 5);
    std::mt19937_64 rng(17);
    for (int k = 0; k < 500; ++k) {
        const SimState s = random_state(g, rng);
        const auto ux = interval_gradient(s.u, g.h);
        const auto px = interval_gradient(s.phi, g.h);
        const auto pb = interval_average(s.phi);
        double lhs = 0.0, ss = 0.0, gp = 0.0;
        for (std::size_t i = 0; i <= g.N; ++i) {
            lhs += ux[i] * ux[i];
            const double S = (p.b / std::sqrt(p.xi)) * ux[i] + std::sqrt(p.xi) * pb[i];
            ss += S * S;
            gp += px[i] * px[i];
        }
        const double rhs = (3.0 * p.xi / (p.b * p.b)) * ss +
                           (2.0 * p.xi * p.xi * cfg.cp / (p.b * p.b)) * gp;
        CHECK(lhs * g.h <= rhs * g.h + 1e-9);
    }
}

TEST_CASE("dissipation check") {
    PhysicalParams p;
    SUBCASE("zero trajectory") {
        const std::vector<double> t{0, 1, 2, 3}, z(4, 0.0);
        const DissipationReport r = dissipation_check(t, z, z, z, p, 0.0);
        CHECK(r.violations == 0);
        CHECK(r.worst_margin == doctest::Approx(0.0));
    }
    SUBCASE("degenerate C_E falls back to monotonicity") {
        p.mu1 = p.mu2 = 0.5;
        p.eta = p.tau * p.mu2;
        CHECK(dissipation_constant(p) == doctest::Approx(0.0));
        const std::vector<double> t{0, 1, 2};
        const std::vector<double> E{1.0, 0.9, 0.85}, q{1.0, 1.0, 1.0};
        const DissipationReport r = dissipation_check(t, E, q, q, p, 1e-6);
        CHECK(r.degenerate);
        CHECK(r.violations == 0);  // decreasing E passes despite q > 0
    }
    SUBCASE("too short") {
        const std::vector<double> t{0, 1}, E{1, 1};
        CHECK_THROWS_AS((void)dissipation_check(t, E, E, E, p, 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("auxiliary elliptic solution w") {
    const PhysicalParams p;  // b = 0.5, mu = 1
    const GridSpec g = build_grid(100, 5);
    SUBCASE("zero-mean phi gives vanishing boundary residual") {
        std::vector<double> phi(g.N);
        for (std::size_t i = 0; i < g.N; ++i) phi[i] = std::sin(2.0 * kPi * g.x(i + 1));
        const EllipticW ew = solve_w(phi, p, g);
        double err = 0.0;
        for (std::size_t i = 0; i < g.N; ++i) {
            const double exact =
                -(p.b / p.mu) * (1.0 - std::cos(2.0 * kPi * g.x(i + 1))) / (2.0 * kPi);
            err = std::max(err, std::abs(ew.w[i] - exact));
        }
        CHECK(err <= 1e-4);
        CHECK(ew.boundary_residual <= 1e-4);
    }
    SUBCASE("constant phi leaves an O(b/mu) residual") {
        // phi has implicit zero boundary values, so the first trapezoid cell
        // contributes h/2 and the cumulative integral is x - h/2.
        const std::vector<double> phi(g.N, 1.0);
        const EllipticW ew = solve_w(phi, p, g);
        for (std::size_t i = 0; i < g.N; ++i)
            CHECK(ew.w[i] ==
                  doctest::Approx(-(p.b / p.mu) * (g.x(i + 1) - 0.5 * g.h))
                      .epsilon(1e-12));
        CHECK(ew.boundary_residual ==
              doctest::Approx((p.b / p.mu) * (1.0 - g.h)).epsilon(1e-12));
    }
    SUBCASE("zero phi") {
        const EllipticW ew = solve_w(std::vector<double>(g.N, 0.0), p, g);
        for (double w : ew.w) CHECK(w == 0.0);
        CHECK(ew.boundary_residual == 0.0);
    }
}

TEST_CASE("lyapunov functional pieces") {
    const PhysicalParams p;
    const DiagnosticsConfig cfg;
    ForcingSpec lin;
    lin.kind = ForcingKind::zero;
    const LyapunovConfig lcfg = auto_lyapunov_config(p, lin, cfg);

    SUBCASE("zero state gives zero everywhere") {
        const GridSpec g = build_grid(20, 9);
        const LyapunovComponents c = lyapunov_components(SimState(g), p, cfg, lcfg);
        CHECK(c.I1 == 0.0);
        CHECK(c.I4 == 0.0);
        CHECK(lyapunov(SimState(g), p, lin, cfg, lcfg) == 0.0);
    }
    SUBCASE("z identically one isolates the exponential y-integral") {
        const GridSpec g = build_grid(40, 41);
        SimState s(g);
        for (auto& z : s.z) z = 1.0;  // deliberately not inflow-consistent
        const LyapunovComponents c = lyapunov_components(s, p, cfg, lcfg);
        const double exact = (1.0 - std::exp(-2.0 * p.tau)) / (2.0 * p.tau);
        // x-quadrature of 1 over interior nodes misses the two boundary
        // half-cells, so compare against (N/(N+1)) * exact
        const double expect = exact * static_cast<double>(g.N) / (g.N + 1.0);
        CHECK(c.I4 == doctest::Approx(expect).epsilon(1e-3));
    }
    SUBCASE("I1 vanishes when u and phi vanish") {
        const GridSpec g = build_grid(20, 9);
        SimState s(g);
        for (std::size_t i = 0; i < g.N; ++i)
            s.v[i] = s.psi[i] = std::sin(kPi * g.x(i + 1));
        s.impose_inflow(g);
        CHECK(lyapunov_components(s, p, cfg, lcfg).I1 == 0.0);
    }
    SUBCASE("linearity in the M weight") {
        const GridSpec g = build_grid(20, 9);
        std::mt19937_64 rng(5);
        const SimState s = random_state(g, rng, 0.3);
        LyapunovConfig doubled = lcfg;
        doubled.Mw *= 2.0;
        const double l1 = lyapunov(s, p, lin, cfg, lcfg);
        const double l2 = lyapunov(s, p, lin, cfg, doubled);
        const double E = energy(s, p, lin, cfg).total;
        CHECK(l2 - l1 == doctest::Approx(lcfg.Mw * E).epsilon(1e-10));
    }
}

TEST_CASE("lyapunov config validation and the automatic recipe") {
    const PhysicalParams p;
    const DiagnosticsConfig cfg;
    ForcingSpec lin;
    lin.kind = ForcingKind::zero;

    SUBCASE("auto config passes its own invariants") {
        const LyapunovConfig c = auto_lyapunov_config(p, lin, cfg);
        CHECK_NOTHROW(validate_lyapunov_config(p, cfg, c));
        CHECK(c.Mw > 0.0);
        CHECK(c.Nw > 0.0);
    }
    SUBCASE("mu2 >= mu1 is rejected") {
        PhysicalParams bad = p;
        bad.mu2 = bad.mu1;
        bad.eta = bad.tau * bad.mu1;
        CHECK_THROWS_AS((void)auto_lyapunov_config(bad, lin, cfg),
                        std::invalid_argument);
    }
    SUBCASE("violated smallness condition is named") {
        LyapunovConfig c = auto_lyapunov_config(p, lin, cfg);
        c.lam2 = 2.0 * p.delta / p.mu2;
        CHECK_THROWS_WITH_AS((void)validate_lyapunov_config(p, cfg, c),
                             doctest::Contains("lambda2"), std::invalid_argument);
    }
    SUBCASE("beta depends only on the coercivity ratio mu*xi/b^2") {
        PhysicalParams q = p;
        q.rho *= 4.0;
        q.mu *= 4.0;
        q.J *= 4.0;
        q.delta *= 4.0;
        q.xi *= 4.0;
        q.b *= 4.0;  // b^2 scales like mu*xi
        CHECK(beta_constant(q) == doctest::Approx(beta_constant(p)).epsilon(1e-14));
    }
}
