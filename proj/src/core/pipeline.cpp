#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "analysis.hpp"
#include "diagnostics.hpp"
#include "io.hpp"
#include "solver.hpp"
#include "spectral.hpp"
#include "verify.hpp"

namespace podes {

namespace {

bool wants(const Scenario& scn, const std::string& format) {
    return std::find(scn.formats.begin(), scn.formats.end(), format) !=
           scn.formats.end();
}

std::string join_violations(const ValidationReport& r) {
    std::ostringstream os;
    os << "validation failed:";
    for (const auto& v : r.violations) os << " " << v << ";";
    return os.str();
}

} // namespace

int cmd_run(const Scenario& scn, std::string* message,
            const std::function<bool()>& interrupted) {
    try {
        const PhysicalParams p = resolved_params(scn);
        const ValidationReport vr = validate_params(p);
        if (!vr.admissible) {
            if (message) *message = join_violations(vr);
            return kExitValidation;
        }

        const GridSpec g = scenario_grid(scn);
        std::vector<std::string> warnings;
        const SimState s0 =
            sample_initial_data(make_initial_data(scn), g, p.tau, &warnings);

        DiagnosticsRecorder rec(p, scn.forcing);
        bool lyap = false;
        if (vr.strict_mu2_lt_mu1 && dissipation_constant(p) > 0.0) {
            try {
                ForcingSpec lin;
                lin.kind = ForcingKind::zero;
                rec.enable_lyapunov(auto_lyapunov_config(p, lin));
                lyap = true;
            } catch (const std::exception& e) {
                warnings.push_back(std::string("lyapunov disabled: ") + e.what());
            }
        }

        RunOptions opts;
        opts.t_end = scn.t_end;
        opts.cfl = scn.cfl;
        opts.out_every = scn.out_every;
        opts.dt_override = scn.dt_override;
        opts.store_states = wants(scn, "bin");
        opts.interrupted = interrupted;
        const Trajectory traj = run(s0, p, scn.forcing, g, opts, rec.observer());
        warnings.insert(warnings.end(), traj.warnings.begin(), traj.warnings.end());

        std::filesystem::create_directories(scn.out_dir);
        const std::string hash = scenario_hash_hex(scn);
        const DiagnosticSeries& S = rec.series;

        if (wants(scn, "csv"))
            write_diagnostics_csv(scn.out_dir + "/diagnostics.csv", S, hash);
        if (wants(scn, "bin") && !traj.states.empty())
            write_state_binary(scn.out_dir + "/final_state.bin", traj.states.back(), g);

        if (wants(scn, "json")) {
            RunSummary sum;
            sum.E0 = S.E.empty() ? 0.0 : S.E.front();
            sum.Efinal = S.E.empty() ? 0.0 : S.E.back();
            sum.CE = dissipation_constant(p);
            sum.N = g.N;
            sum.M = g.M;
            sum.dt = traj.dt;
            sum.blew_up = traj.blew_up;
            sum.incomplete = traj.incomplete;
            sum.warnings = warnings;
            if (!traj.blew_up && !traj.incomplete) {
                try {
                    const DecayFit fit = fit_decay_rate(S.t, S.E, 0.25 * scn.t_end,
                                                        0.75 * scn.t_end);
                    sum.gamma_fit = fit.gamma;
                    sum.r2 = fit.r2;
                } catch (const std::exception&) {
                }
                try {
                    const double tol = 10.0 *
                                       (g.h * g.h + g.dy + std::pow(traj.dt, 4)) *
                                       sum.E0;
                    sum.worst_dissipation_margin =
                        dissipation_check(S.t, S.E, S.psi_normsq, S.z1_normsq, p, tol)
                            .worst_margin;
                } catch (const std::exception&) {
                }
            }
            if (lyap) {
                double g1 = 0.0, g2 = 0.0, wmax = 0.0;
                const double floor = 1e-14 * sum.E0;
                bool first = true;
                for (std::size_t k = 0; k < S.E.size(); ++k) {
                    wmax = std::max(wmax, std::abs(S.w_residual[k]));
                    if (!(S.E[k] > floor)) continue;
                    const double r = S.L[k] / S.E[k];
                    g1 = first ? r : std::min(g1, r);
                    g2 = first ? r : std::max(g2, r);
                    first = false;
                }
                sum.gamma1_emp = g1;
                sum.gamma2_emp = g2;
                sum.w_boundary_residual_max = wmax;
            }
            write_summary_json(scn.out_dir + "/summary.json", sum, hash);
        }

        if (traj.blew_up) {
            if (message)
                *message = traj.warnings.empty() ? "blow-up" : traj.warnings.back();
            return kExitBlowup;
        }
        if (message) *message = traj.incomplete ? "interrupted; partial output" : "ok";
        return kExitOk;
    } catch (const std::exception& e) {
        if (message) *message = e.what();
        return kExitInternal;
    }
}

int cmd_spectrum(const Scenario& scn, std::string* message) {
    try {
        const PhysicalParams p = resolved_params(scn);
        const ValidationReport vr = validate_params(p);
        if (!vr.admissible) {
            if (message) *message = join_violations(vr);
            return kExitValidation;
        }
        const GridSpec g = scenario_grid(scn);
        const std::size_t dim = 4 * g.N + g.N * (g.M - 1);
        if (dim > kSpectrumDimCap) {
            if (message)
                *message = "generator dimension " + std::to_string(dim) +
                           " exceeds dense eigensolve cap " +
                           std::to_string(kSpectrumDimCap);
            return kExitResourceCap;
        }
        const GeneratorMatrix gm = assemble_generator(g, p);
        const auto eigs = spectrum(gm);

        std::filesystem::create_directories(scn.out_dir);
        const std::string hash = scenario_hash_hex(scn);
        write_eigenvalues_csv(scn.out_dir + "/eigenvalues.csv", eigs, hash);
        write_abscissa_json(scn.out_dir + "/abscissa.json", spectral_abscissa(eigs),
                            g.N, g.M, hash);
        if (message) *message = "ok";
        return kExitOk;
    } catch (const std::exception& e) {
        if (message) *message = e.what();
        return kExitInternal;
    }
}

int cmd_verify(const Scenario& scn, std::ostream& os, std::string* message) {
    try {
        const VerifyReport rep = verify_scenario(scn);
        if (rep.exit_code == kExitValidation) {
            os << "[GATE] " << rep.gate_message << "\n";
            if (message) *message = rep.gate_message;
            return kExitValidation;
        }
        for (const auto& c : rep.criteria)
            os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " — " << c.detail
               << "\n";
        if (message) *message = rep.exit_code == 0 ? "all criteria passed"
                                                   : "criterion failed";
        return rep.exit_code;
    } catch (const std::exception& e) {
        if (message) *message = e.what();
        return kExitInternal;
    }
}

} // namespace podes
