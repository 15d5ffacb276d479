#ifndef PODES_CORE_IO_HPP
#define PODES_CORE_IO_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "solver.hpp"

namespace podes {

/// Per-sample diagnostic columns collected during a run.
struct DiagnosticSeries {
    std::vector<double> t, E, L, I1, I2, I3, I4, B1, B2;
    std::vector<double> hnorm, u_t_normsq, psi_normsq, z1_normsq, w_residual;
    bool has_lyapunov = false;
};

/// Observer that evaluates the energy (and optionally the Lyapunov
/// functional) at every sampled state.
class DiagnosticsRecorder {
public:
    DiagnosticsRecorder(const PhysicalParams& p, const ForcingSpec& f,
                        const DiagnosticsConfig& cfg = {})
        : p_(p), f_(f), cfg_(cfg) {}

    void enable_lyapunov(const LyapunovConfig& lcfg) {
        lcfg_ = lcfg;
        series.has_lyapunov = true;
    }

    void operator()(double t, const SimState& s);

    SampleObserver observer() {
        return [this](double t, const SimState& s) { (*this)(t, s); };
    }

    DiagnosticSeries series;

private:
    PhysicalParams p_;
    ForcingSpec f_;
    DiagnosticsConfig cfg_;
    std::optional<LyapunovConfig> lcfg_;
};

/// CSV with a `# scenario <hash>` comment line, a header row and one row
/// per sample.
void write_diagnostics_csv(const std::string& path, const DiagnosticSeries& s,
                           const std::string& hash_hex);

struct RunSummary {
    double E0 = 0.0, Efinal = 0.0;
    double gamma_fit = 0.0, r2 = 0.0;
    double CE = 0.0;
    double worst_dissipation_margin = 0.0;
    double gamma1_emp = 0.0, gamma2_emp = 0.0;
    double w_boundary_residual_max = 0.0;
    std::size_t N = 0, M = 0;
    double dt = 0.0;
    bool blew_up = false;
    bool incomplete = false;
    std::vector<std::string> warnings;
};

void write_summary_json(const std::string& path, const RunSummary& s,
                        const std::string& hash_hex);

void write_eigenvalues_csv(const std::string& path,
                           const std::vector<std::complex<double>>& eigs,
                           const std::string& hash_hex);

void write_abscissa_json(const std::string& path, double abscissa, std::size_t n,
                         std::size_t m, const std::string& hash_hex);

/// Flat binary snapshot: a 64-byte header holding a space-padded JSON
/// object {"N":..,"M":..,"t":..}, then u, v, phi, psi (N doubles each) and
/// z (N*M doubles, row-major), little-endian.
void write_state_binary(const std::string& path, const SimState& s, const GridSpec& g);
SimState read_state_binary(const std::string& path, GridSpec* g_out = nullptr);

/// Verifies the `# scenario <hash>` (CSV) or "scenario_hash" (JSON) marker
/// of an emitted artifact; throws std::runtime_error on mismatch.
void check_artifact_hash(const std::string& path, const std::string& hash_hex);

} // namespace podes

#endif
