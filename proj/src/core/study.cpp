#include "study.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <stdexcept>

#include "diagnostics.hpp"
#include "io.hpp"
#include "solver.hpp"
#include "spectral.hpp"

namespace podes {

namespace {

// Commensurate step: largest dt <= dt0 with t_end an exact multiple.
double fit_step(double dt0, double t_end) {
    const auto n = static_cast<std::size_t>(std::ceil(t_end / dt0 - 1e-12));
    return t_end / static_cast<double>(n);
}

SimState final_state(const Scenario& scn, const GridSpec& g, const PhysicalParams& p,
                     const ForcingSpec& f, double t_end, double dt) {
    const InitialData d = make_initial_data(scn);
    const SimState s0 = sample_initial_data(d, g, p.tau);
    RunOptions opts;
    opts.t_end = t_end;
    opts.cfl = scn.cfl;
    opts.dt_override = dt;
    opts.out_every = 1u << 30;  // only t=0 and the final sample
    opts.store_states = true;
    const Trajectory traj = run(s0, p, f, g, opts);
    if (traj.blew_up || traj.states.empty())
        throw std::runtime_error("convergence study: run failed");
    return traj.states.back();
}

} // namespace

ConvergenceResult spatial_convergence(const Scenario& base,
                                      const std::vector<std::size_t>& Ns,
                                      double t_end) {
    if (Ns.size() < 3) throw std::invalid_argument("spatial study: need >= 3 levels");
    for (std::size_t k = 0; k + 1 < Ns.size(); ++k)
        if (Ns[k + 1] != 2 * Ns[k] + 1)
            throw std::invalid_argument("spatial study: levels must satisfy N -> 2N+1");

    Scenario scn = base;
    scn.forcing.kind = ForcingKind::zero;
    const PhysicalParams p = resolved_params(scn);

    // One shared step, stable on the finest grid, so the temporal and
    // delay-channel error components cancel in level differences.
    const GridSpec gf = build_grid(Ns.back(), scn.M);
    const double dt = fit_step(scn.cfl * stable_dt(gf, p, 1.0), t_end);

    std::vector<std::vector<double>> phis;
    for (std::size_t N : Ns) {
        const GridSpec g = build_grid(N, scn.M);
        phis.push_back(final_state(scn, g, p, scn.forcing, t_end, dt).phi);
    }

    std::vector<double> errors;
    for (std::size_t k = 0; k + 1 < Ns.size(); ++k) {
        const double hc = 1.0 / static_cast<double>(Ns[k] + 1);
        double s = 0.0;
        for (std::size_t i = 0; i < Ns[k]; ++i) {
            const double diff = phis[k][i] - phis[k + 1][2 * i + 1];
            s += diff * diff;
        }
        errors.push_back(std::sqrt(hc * s));
    }
    return orders_from_errors(errors);
}

ConvergenceResult temporal_convergence(const Scenario& base, double t_end) {
    Scenario scn = base;
    scn.forcing.kind = ForcingKind::zero;
    const PhysicalParams p = resolved_params(scn);
    const GridSpec g = scenario_grid(scn);
    const double dt0 = fit_step(scn.cfl * stable_dt(g, p, 1.0), t_end);

    std::vector<SimState> finals;
    for (int lvl = 0; lvl < 3; ++lvl)
        finals.push_back(final_state(scn, g, p, scn.forcing, t_end,
                                     dt0 / static_cast<double>(1 << lvl)));

    auto statedist = [&g](const SimState& a, const SimState& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.N; ++i) {
            const double du = a.u[i] - b.u[i], dv = a.v[i] - b.v[i];
            const double dp = a.phi[i] - b.phi[i], dq = a.psi[i] - b.psi[i];
            s += du * du + dv * dv + dp * dp + dq * dq;
        }
        for (std::size_t k = 0; k < a.z.size(); ++k) {
            const double dz = a.z[k] - b.z[k];
            s += dz * dz;
        }
        return std::sqrt(s);
    };
    return orders_from_errors({statedist(finals[0], finals[1]),
                               statedist(finals[1], finals[2])});
}

ConvergenceResult transport_convergence(double tau, const std::vector<std::size_t>& Ms,
                                        double t_end) {
    if (Ms.size() < 3) throw std::invalid_argument("transport study: need >= 3 levels");
    const std::size_t N = 8;
    auto inflow = [](double x, double t) {
        return std::sin(3.141592653589793 * x) * std::cos(1.7 * t);
    };

    std::vector<double> errors;
    for (std::size_t M : Ms) {
        const GridSpec g = build_grid(N, M);
        // Rows j = 1..M-1 evolve; the inflow row is a prescribed function of
        // time, evaluated at each stage time.
        std::vector<double> z(N * g.M);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < g.M; ++j)
                z[i * g.M + j] = inflow(g.x(i + 1), -tau * g.y(j));

        auto deriv = [&](const std::vector<double>& zz, double t, std::vector<double>& dz) {
            for (std::size_t i = 0; i < N; ++i) {
                dz[i * g.M] = 0.0;
                for (std::size_t j = 1; j < g.M; ++j) {
                    const double left = (j == 1) ? inflow(g.x(i + 1), t)
                                                 : zz[i * g.M + j - 1];
                    dz[i * g.M + j] = -(zz[i * g.M + j] - left) / (tau * g.dy);
                }
            }
        };

        const double dt = fit_step(0.5 * tau * g.dy, t_end);
        const auto nsteps = static_cast<std::size_t>(std::llround(t_end / dt));
        std::vector<double> k1(z.size()), k2(z.size()), k3(z.size()), k4(z.size()),
            tmp(z.size());
        double t = 0.0;
        for (std::size_t n = 0; n < nsteps; ++n) {
            deriv(z, t, k1);
            for (std::size_t q = 0; q < z.size(); ++q) tmp[q] = z[q] + 0.5 * dt * k1[q];
            deriv(tmp, t + 0.5 * dt, k2);
            for (std::size_t q = 0; q < z.size(); ++q) tmp[q] = z[q] + 0.5 * dt * k2[q];
            deriv(tmp, t + 0.5 * dt, k3);
            for (std::size_t q = 0; q < z.size(); ++q) tmp[q] = z[q] + dt * k3[q];
            deriv(tmp, t + dt, k4);
            for (std::size_t q = 0; q < z.size(); ++q)
                z[q] += (dt / 6.0) * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
            t += dt;
        }

        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 1; j < g.M; ++j) {
                const double diff =
                    z[i * g.M + j] - inflow(g.x(i + 1), t_end - tau * g.y(j));
                s += diff * diff;
            }
        errors.push_back(std::sqrt(g.h * g.dy * s));
    }
    return orders_from_errors(errors);
}

namespace {

SweepRow sweep_row(Scenario scn, const std::string& key, double value) {
    SweepRow row;
    row.value = value;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    apply_override(scn, key + "=" + buf);

    const PhysicalParams p = resolved_params(scn);
    const ValidationReport rep = validate_params(p);
    row.defect = p.rho / p.mu - p.J / p.delta;
    row.equal_speed = rep.equal_wave_speeds;
    row.CE = dissipation_constant(p);
    if (!rep.admissible || !rep.strict_mu2_lt_mu1) {
        row.skipped = true;
        return row;
    }

    const GridSpec g = scenario_grid(scn);
    const SimState s0 = sample_initial_data(make_initial_data(scn), g, p.tau);
    DiagnosticsRecorder rec(p, scn.forcing);
    RunOptions opts;
    opts.t_end = scn.t_end;
    opts.cfl = scn.cfl;
    opts.out_every = scn.out_every;
    opts.dt_override = scn.dt_override;
    const Trajectory traj = run(s0, p, scn.forcing, g, opts, rec.observer());
    if (traj.blew_up) {
        row.skipped = true;
        return row;
    }

    const auto& s = rec.series;
    const double tol =
        10.0 * (g.h * g.h + g.dy + std::pow(traj.dt, 4)) * s.E.front();
    row.violations = dissipation_check(s.t, s.E, s.psi_normsq, s.z1_normsq, p, tol)
                         .violations;
    try {
        const DecayFit fit =
            fit_decay_rate(s.t, s.E, 0.25 * scn.t_end, 0.75 * scn.t_end);
        row.gamma_fit = fit.gamma;
        row.r2 = fit.r2;
    } catch (const std::exception&) {
        row.gamma_fit = 0.0;
        row.r2 = 0.0;
    }

    row.abscissa =
        spectral_abscissa(spectrum(assemble_generator(build_grid(40, 11), p)));
    return row;
}

} // namespace

std::vector<SweepRow> sweep(const Scenario& base, const std::string& key,
                            const std::vector<double>& values) {
    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(values.size());
    for (double v : values)
        jobs.push_back(std::async(std::launch::async, sweep_row, base, key, v));
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
}

std::vector<double> delta_values_for_defect_span(const Scenario& base,
                                                 std::size_t points) {
    const PhysicalParams p = resolved_params(base);
    std::vector<double> vals;
    for (std::size_t k = 0; k < points; ++k) {
        const double defect =
            -0.5 + static_cast<double>(k) / static_cast<double>(points - 1);
        const double denom = p.rho / p.mu - defect;
        if (denom <= 0.0)
            throw std::invalid_argument("delta sweep: defect span leaves delta > 0 range");
        vals.push_back(p.J / denom);
    }
    return vals;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     const std::string& hash_hex) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "# scenario %s\n", hash_hex.c_str());
    std::fprintf(f, "value,defect,equal_speed,skipped,gamma_fit,r2,abscissa,CE,violations\n");
    for (const auto& r : rows)
        std::fprintf(f, "%.17g,%.17g,%d,%d,%.17g,%.17g,%.17g,%.17g,%zu\n", r.value,
                     r.defect, r.equal_speed ? 1 : 0, r.skipped ? 1 : 0, r.gamma_fit,
                     r.r2, r.abscissa, r.CE, r.violations);
    std::fclose(f);
}

} // namespace podes
