#include "solver.hpp"

#include <cmath>
#include <stdexcept>

namespace podes {

void apply_d1(const std::vector<double>& a, std::vector<double>& out, double h) {
    const std::size_t n = a.size();
    out.resize(n);
    const double inv2h = 0.5 / h;
    for (std::size_t i = 0; i < n; ++i) {
        const double left = (i == 0) ? 0.0 : a[i - 1];
        const double right = (i + 1 == n) ? 0.0 : a[i + 1];
        out[i] = (right - left) * inv2h;
    }
}

void apply_d2(const std::vector<double>& a, std::vector<double>& out, double h) {
    const std::size_t n = a.size();
    out.resize(n);
    const double invh2 = 1.0 / (h * h);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = (i == 0) ? 0.0 : a[i - 1];
        const double right = (i + 1 == n) ? 0.0 : a[i + 1];
        out[i] = (left - 2.0 * a[i] + right) * invh2;
    }
}

void transport_rhs(const SimState& s, const GridSpec& g, double tau, SimState& ds) {
    const double c = 1.0 / (tau * g.dy);
    for (std::size_t i = 0; i < g.N; ++i) {
        const double* zi = &s.z[i * g.M];
        double* di = &ds.z[i * g.M];
        double prev = s.psi[i];  // domain condition z(.,0) = psi
        for (std::size_t j = 1; j < g.M; ++j) {
            di[j] = -c * (zi[j] - prev);
            prev = zi[j];
        }
    }
}

void rhs(const SimState& s, const PhysicalParams& p, const ForcingSpec& f,
         const GridSpec& g, SimState& ds) {
    if (ds.u.size() != g.N) ds = SimState(g);
    ds.t = 1.0;  // d(t)/dt

    static thread_local std::vector<double> d2u, d1phi, d2phi, d1u;
    apply_d2(s.u, d2u, g.h);
    apply_d1(s.phi, d1phi, g.h);
    apply_d2(s.phi, d2phi, g.h);
    apply_d1(s.u, d1u, g.h);

    const bool linear = (f.kind == ForcingKind::zero);
    for (std::size_t i = 0; i < g.N; ++i) {
        ds.u[i] = s.v[i];
        ds.v[i] = (p.mu / p.rho) * d2u[i] + (p.b / p.rho) * d1phi[i];
        ds.phi[i] = s.psi[i];
        double a = (p.delta / p.J) * d2phi[i] - (p.b / p.J) * d1u[i] -
                   (p.xi / p.J) * s.phi[i] - (p.mu1 / p.J) * s.psi[i] -
                   (p.mu2 / p.J) * s.zat(i, g.M - 1, g);
        if (!linear) a -= forcing_eval(f, s.phi[i]) / p.J;
        ds.psi[i] = a;
    }
    transport_rhs(s, g, p.tau, ds);
    // slave the inflow row so stage combinations keep z(.,0) = psi
    for (std::size_t i = 0; i < g.N; ++i) ds.z[i * g.M] = ds.psi[i];

    for (std::size_t i = 0; i < g.N; ++i)
        if (!std::isfinite(ds.v[i]) || !std::isfinite(ds.psi[i]))
            throw std::runtime_error("rhs produced non-finite value at node " +
                                     std::to_string(i + 1));
}

double stable_dt(const GridSpec& g, const PhysicalParams& p, double cfl) {
    const double cu = std::sqrt(p.mu / p.rho);
    const double cphi = std::sqrt(p.delta / p.J);
    const double m = std::min({g.h / cu, g.h / cphi, p.tau * g.dy});
    return cfl * m;
}

namespace {

void check_state(const SimState& s, double t, double threshold) {
    auto bad = [threshold](const std::vector<double>& a) {
        for (double x : a)
            if (!std::isfinite(x) || std::abs(x) > threshold) return true;
        return false;
    };
    if (bad(s.u) || bad(s.v) || bad(s.phi) || bad(s.psi) || bad(s.z))
        throw std::runtime_error("blow-up detected at t = " + std::to_string(t));
}

} // namespace

SimState step_rk4(const SimState& s, double dt, const PhysicalParams& p,
                  const ForcingSpec& f, const GridSpec& g, double blowup_threshold) {
    SimState k1(g), k2(g), k3(g), k4(g);
    rhs(s, p, f, g, k1);
    SimState y = SimState::axpy(s, 0.5 * dt, k1);
    rhs(y, p, f, g, k2);
    y = SimState::axpy(s, 0.5 * dt, k2);
    rhs(y, p, f, g, k3);
    y = SimState::axpy(s, dt, k3);
    rhs(y, p, f, g, k4);

    SimState out = s;
    const double w = dt / 6.0;
    out.scale_add(w, k1);
    out.scale_add(2.0 * w, k2);
    out.scale_add(2.0 * w, k3);
    out.scale_add(w, k4);
    out.t = s.t + dt;
    out.impose_inflow(g);
    check_state(out, out.t, blowup_threshold);
    return out;
}

Trajectory run(const SimState& initial, const PhysicalParams& p, const ForcingSpec& f,
               const GridSpec& g, const RunOptions& opts, const SampleObserver& observer) {
    Trajectory traj;
    double dt = opts.dt_override > 0.0 ? opts.dt_override : stable_dt(g, p, opts.cfl);
    const std::size_t nsteps = static_cast<std::size_t>(std::ceil(opts.t_end / dt - 1e-9));
    dt = opts.t_end / static_cast<double>(nsteps);
    traj.dt = dt;

    SimState s = initial;
    s.impose_inflow(g);

    auto sample = [&](const SimState& st) {
        traj.times.push_back(st.t);
        if (opts.store_states) traj.states.push_back(st);
        if (observer) observer(st.t, st);
    };
    sample(s);
    for (std::size_t n = 0; n < nsteps; ++n) {
        if (opts.interrupted && opts.interrupted()) {
            traj.incomplete = true;
            traj.warnings.push_back("run interrupted; partial trajectory");
            break;
        }
        try {
            s = step_rk4(s, dt, p, f, g, opts.blowup_threshold);
        } catch (const std::runtime_error& e) {
            traj.blew_up = true;
            traj.warnings.push_back(e.what());
            break;
        }
        if ((n + 1) % opts.out_every == 0 || n + 1 == nsteps) sample(s);
    }
    return traj;
}

namespace {

// Right-hand side of the untransformed system; the delayed damping value
// is supplied per node.
void rhs_delayed(const SimState& s, const std::vector<double>& delayed_psi,
                 const PhysicalParams& p, const ForcingSpec& f, const GridSpec& g,
                 SimState& ds) {
    static thread_local std::vector<double> d2u, d1phi, d2phi, d1u;
    apply_d2(s.u, d2u, g.h);
    apply_d1(s.phi, d1phi, g.h);
    apply_d2(s.phi, d2phi, g.h);
    apply_d1(s.u, d1u, g.h);
    const bool linear = (f.kind == ForcingKind::zero);
    for (std::size_t i = 0; i < g.N; ++i) {
        ds.u[i] = s.v[i];
        ds.v[i] = (p.mu / p.rho) * d2u[i] + (p.b / p.rho) * d1phi[i];
        ds.phi[i] = s.psi[i];
        double a = (p.delta / p.J) * d2phi[i] - (p.b / p.J) * d1u[i] -
                   (p.xi / p.J) * s.phi[i] - (p.mu1 / p.J) * s.psi[i] -
                   (p.mu2 / p.J) * delayed_psi[i];
        if (!linear) a -= forcing_eval(f, s.phi[i]) / p.J;
        ds.psi[i] = a;
    }
}

} // namespace

Trajectory history_buffer_reference_run(const InitialData& d, const PhysicalParams& p,
                                        const ForcingSpec& f, const GridSpec& g,
                                        const RunOptions& opts,
                                        const SampleObserver& observer) {
    Trajectory traj;
    double dt;
    std::size_t K;
    if (opts.dt_override > 0.0) {
        const double ratio = p.tau / opts.dt_override;
        K = static_cast<std::size_t>(std::llround(ratio));
        if (K == 0 || std::abs(ratio - static_cast<double>(K)) > 1e-9)
            throw std::invalid_argument(
                "history run requires dt commensurate with tau; use dt = tau/K "
                "for an integer K");
        dt = p.tau / static_cast<double>(K);
    } else {
        const double target = stable_dt(g, p, opts.cfl);
        K = static_cast<std::size_t>(std::ceil(p.tau / target - 1e-12));
        dt = p.tau / static_cast<double>(K);
    }
    traj.dt = dt;
    const std::size_t nsteps = static_cast<std::size_t>(std::ceil(opts.t_end / dt - 1e-9));

    SimState s(g);
    std::vector<std::string> warn;
    {
        SimState full = sample_initial_data(d, g, p.tau, &warn);
        s.u = full.u;
        s.v = full.v;
        s.phi = full.phi;
        s.psi = full.psi;
        s.t = 0.0;
    }
    traj.warnings = warn;

    // Ring buffer: for each of the last K steps, psi evaluated at the four
    // RK stage states.  Stage times of step n are t_n + c*dt with
    // c = {0, 1/2, 1/2, 1}, so the delayed value at stage i of step n is
    // the stage-i entry of step n-K.
    std::vector<std::vector<std::vector<double>>> ring(
        K, std::vector<std::vector<double>>(4, std::vector<double>(g.N, 0.0)));

    auto history_at = [&](double t_minus_tau, std::vector<double>& out) {
        for (std::size_t i = 0; i < g.N; ++i)
            out[i] = d.f0 ? d.f0(g.x(i + 1), t_minus_tau) : 0.0;
    };

    auto sample = [&](const SimState& st) {
        traj.times.push_back(st.t);
        if (opts.store_states) traj.states.push_back(st);
        if (observer) observer(st.t, st);
    };
    sample(s);

    static const double cs[4] = {0.0, 0.5, 0.5, 1.0};
    std::vector<double> delayed(g.N);
    SimState k1(g), k2(g), k3(g), k4(g);
    SimState* ks[4] = {&k1, &k2, &k3, &k4};

    for (std::size_t n = 0; n < nsteps; ++n) {
        const double t = static_cast<double>(n) * dt;
        auto& slot = ring[n % K];
        SimState stage = s;
        for (int si = 0; si < 4; ++si) {
            if (si == 1) stage = SimState::axpy(s, 0.5 * dt, k1);
            if (si == 2) stage = SimState::axpy(s, 0.5 * dt, k2);
            if (si == 3) stage = SimState::axpy(s, dt, k3);
            if (n >= K) {
                delayed = ring[(n - K) % K][si];
            } else {
                history_at(t + cs[si] * dt - p.tau, delayed);
            }
            rhs_delayed(stage, delayed, p, f, g, *ks[si]);
            slot[si] = stage.psi;  // record before the slot is needed K steps later
        }
        const double w = dt / 6.0;
        s.scale_add(w, k1);
        s.scale_add(2.0 * w, k2);
        s.scale_add(2.0 * w, k3);
        s.scale_add(w, k4);
        s.t = t + dt;
        try {
            for (double x : s.psi)
                if (!std::isfinite(x) || std::abs(x) > opts.blowup_threshold)
                    throw std::runtime_error("blow-up detected at t = " + std::to_string(s.t));
        } catch (const std::runtime_error& e) {
            traj.blew_up = true;
            traj.warnings.push_back(e.what());
            break;
        }
        if ((n + 1) % opts.out_every == 0 || n + 1 == nsteps) sample(s);
    }
    return traj;
}

} // namespace podes
