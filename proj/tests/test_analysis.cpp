#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/analysis.hpp"
#include "core/study.hpp"

using namespace podes;

namespace {
std::vector<double> linspace_times(double t1, double dt) {
    std::vector<double> t;
    for (double x = 0.0; x <= t1 + 1e-12; x += dt) t.push_back(x);
    return t;
}
} // namespace

TEST_CASE("exact exponential is recovered to rounding") {
    const auto t = linspace_times(10.0, 0.1);
    std::vector<double> E;
    for (double x : t) E.push_back(2.0 * std::exp(-0.3 * x));
    const DecayFit f = fit_decay_rate(t, E, 0.0, 10.0);
    CHECK(f.gamma == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(f.C == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f.used_samples == t.size());
}

TEST_CASE("small multiplicative ripple perturbs the rate mildly") {
    const auto t = linspace_times(10.0, 0.05);
    std::vector<double> E;
    for (double x : t)
        E.push_back(std::exp(-0.3 * x) * (1.0 + 0.01 * std::sin(5.0 * x)));
    const DecayFit f = fit_decay_rate(t, E, 0.0, 10.0);
    CHECK(std::abs(f.gamma - 0.3) <= 0.01);
    CHECK(f.r2 >= 0.999);
}

TEST_CASE("constant series yields zero rate and r2 = 0") {
    const auto t = linspace_times(5.0, 0.1);
    const std::vector<double> E(t.size(), 3.5);
    const DecayFit f = fit_decay_rate(t, E, 0.0, 5.0);
    CHECK(f.gamma == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.r2 == 0.0);
}

TEST_CASE("fit window selects samples, not indices") {
    const auto t = linspace_times(20.0, 0.1);
    std::vector<double> E;
    for (double x : t) E.push_back(std::exp(-0.4 * x));
    const DecayFit a = fit_decay_rate(t, E, 5.0, 15.0);
    // shifting both series in time leaves the slope untouched
    std::vector<double> ts;
    for (double x : t) ts.push_back(x + 7.0);
    const DecayFit b = fit_decay_rate(ts, E, 12.0, 22.0);
    CHECK(a.gamma == doctest::Approx(b.gamma).epsilon(1e-12));
    CHECK(a.used_samples == b.used_samples);
}

TEST_CASE("scaling the energy changes C but not gamma") {
    const auto t = linspace_times(8.0, 0.1);
    std::vector<double> E, E2;
    for (double x : t) {
        E.push_back(std::exp(-0.25 * x));
        E2.push_back(2.0 * E.back());
    }
    const DecayFit a = fit_decay_rate(t, E, 0.0, 8.0);
    const DecayFit b = fit_decay_rate(t, E2, 0.0, 8.0);
    CHECK(a.gamma == doctest::Approx(b.gamma).epsilon(1e-10));
    CHECK(b.C == doctest::Approx(2.0 * a.C).epsilon(1e-10));
}

TEST_CASE("degenerate inputs are rejected with distinct exceptions") {
    SUBCASE("too few samples") {
        const std::vector<double> t{0, 1, 2}, E{1, 0.5, 0.25};
        CHECK_THROWS_AS((void)fit_decay_rate(t, E, 0.0, 2.0), std::invalid_argument);
    }
    SUBCASE("all samples at the floor") {
        const auto t = linspace_times(10.0, 0.1);
        std::vector<double> E(t.size(), 1e-30);
        E.front() = 1.0;  // sets the floor, then everything is below it
        CHECK_THROWS_AS((void)fit_decay_rate(t, E, 5.0, 10.0), std::runtime_error);
    }
    SUBCASE("reversed window") {
        const auto t = linspace_times(10.0, 0.1);
        CHECK_THROWS_AS((void)fit_decay_rate(t, t, 5.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("orders_from_errors") {
    SUBCASE("clean second order") {
        const ConvergenceResult r = orders_from_errors({1.0, 0.25, 0.0625});
        REQUIRE(r.orders.size() == 2);
        CHECK(r.orders[0] == doctest::Approx(2.0));
        CHECK(r.orders[1] == doctest::Approx(2.0));
        CHECK_FALSE(r.exact);
        CHECK_FALSE(r.pre_asymptotic);
    }
    SUBCASE("rounding-level differences are flagged exact") {
        const ConvergenceResult r = orders_from_errors({1e-15, 5e-16});
        CHECK(r.exact);
        CHECK(r.orders.empty());
    }
    SUBCASE("non-monotone sequence is flagged pre-asymptotic") {
        const ConvergenceResult r = orders_from_errors({1.0, 2.0, 0.5});
        CHECK(r.pre_asymptotic);
    }
}

TEST_CASE("parameter sweep rows") {
    Scenario base = default_scenario();
    base.t_end = 4.0;
    base.N = 24;
    base.M = 9;

    SUBCASE("mu2 sweep marks non-decaying rows skipped") {
        // eta_auto keeps eta at the window midpoint; rows with mu2 >= mu1
        // fall outside the strict decay hypothesis and are skipped.
        const std::vector<SweepRow> rows =
            sweep(base, "params.mu2", {0.25, 0.4, 0.5, 0.8});
        REQUIRE(rows.size() == 4);
        CHECK_FALSE(rows[0].skipped);
        CHECK_FALSE(rows[1].skipped);
        CHECK(rows[2].skipped);  // mu2 = mu1: window degenerates to a point
        CHECK(rows[3].skipped);  // mu2 > mu1: empty window
        CHECK(rows[0].CE == doctest::Approx(0.125));
        CHECK(rows[1].CE == doctest::Approx(0.05));
        CHECK(rows[2].CE == doctest::Approx(0.0));
        CHECK(rows[0].violations == 0);
        CHECK(rows[1].violations == 0);
        CHECK(rows[0].value == doctest::Approx(0.25));
    }
    SUBCASE("delta sweep reports the wave-speed defect") {
        const std::vector<double> deltas = delta_values_for_defect_span(base, 3);
        REQUIRE(deltas.size() == 3);
        const std::vector<SweepRow> rows = sweep(base, "params.delta", deltas);
        CHECK(rows[0].defect == doctest::Approx(-0.5).epsilon(1e-9));
        CHECK(rows[1].defect == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(rows[2].defect == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(rows[1].equal_speed);
        CHECK_FALSE(rows[0].equal_speed);
        for (const auto& r : rows) {
            CHECK_FALSE(r.skipped);
            CHECK(r.gamma_fit > 0.0);
            CHECK(r.abscissa < 0.0);
        }
    }
}
