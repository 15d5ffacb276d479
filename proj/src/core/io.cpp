#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace podes {

void DiagnosticsRecorder::operator()(double t, const SimState& s) {
    GridSpec g;
    g.N = s.u.size();
    g.M = s.z.size() / std::max<std::size_t>(g.N, 1);
    g.h = 1.0 / static_cast<double>(g.N + 1);
    g.dy = 1.0 / static_cast<double>(g.M - 1);

    const EnergyBreakdown e = energy(s, p_, f_, cfg_);
    series.t.push_back(t);
    series.E.push_back(e.total);
    series.hnorm.push_back(2.0 * (e.total - e.forcing_potential));
    series.u_t_normsq.push_back(l2_normsq_nodal(s.v, g));
    series.psi_normsq.push_back(l2_normsq_nodal(s.psi, g));
    series.z1_normsq.push_back(z_outflow_normsq(s, g));
    if (lcfg_) {
        const LyapunovComponents c = lyapunov_components(s, p_, cfg_, *lcfg_);
        const double sx = std::sqrt(p_.xi);
        series.I1.push_back(c.I1);
        series.I2.push_back(c.I2);
        series.I3.push_back(c.I3);
        series.I4.push_back(c.I4);
        series.B1.push_back(c.B1);
        series.B2.push_back(c.B2);
        series.w_residual.push_back(c.w_boundary_residual);
        series.L.push_back(lcfg_->Mw * e.total + (sx / 8.0) * lcfg_->beta * c.I1 +
                           lcfg_->Nw * c.I2 + c.I3 + c.B1 + c.B2 + c.I4);
    } else {
        series.I1.push_back(0.0);
        series.I2.push_back(0.0);
        series.I3.push_back(0.0);
        series.I4.push_back(0.0);
        series.B1.push_back(0.0);
        series.B2.push_back(0.0);
        series.w_residual.push_back(0.0);
        series.L.push_back(0.0);
    }
}

void write_diagnostics_csv(const std::string& path, const DiagnosticSeries& s,
                           const std::string& hash_hex) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "# scenario %s\n", hash_hex.c_str());
    std::fprintf(f,
                 "t,E,L,I1,I2,I3,I4,B1,B2,normsq_u_t,normsq_phi_t,normsq_z1,"
                 "w_residual\n");
    for (std::size_t k = 0; k < s.t.size(); ++k)
        std::fprintf(f,
                     "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                     "%.17g,%.17g,%.17g,%.17g\n",
                     s.t[k], s.E[k], s.L[k], s.I1[k], s.I2[k], s.I3[k], s.I4[k],
                     s.B1[k], s.B2[k], s.u_t_normsq[k], s.psi_normsq[k],
                     s.z1_normsq[k], s.w_residual[k]);
    std::fclose(f);
}

void write_summary_json(const std::string& path, const RunSummary& s,
                        const std::string& hash_hex) {
    nlohmann::json j;
    j["scenario_hash"] = hash_hex;
    j["E0"] = s.E0;
    j["Efinal"] = s.Efinal;
    j["gamma_fit"] = s.gamma_fit;
    j["r2"] = s.r2;
    j["CE"] = s.CE;
    j["worst_dissipation_margin"] = s.worst_dissipation_margin;
    j["gamma1_emp"] = s.gamma1_emp;
    j["gamma2_emp"] = s.gamma2_emp;
    j["w_boundary_residual_max"] = s.w_boundary_residual_max;
    j["N"] = s.N;
    j["M"] = s.M;
    j["dt"] = s.dt;
    j["blew_up"] = s.blew_up;
    j["incomplete"] = s.incomplete;
    j["warnings"] = s.warnings;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

void write_eigenvalues_csv(const std::string& path,
                           const std::vector<std::complex<double>>& eigs,
                           const std::string& hash_hex) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "# scenario %s\n", hash_hex.c_str());
    std::fprintf(f, "re,im\n");
    for (const auto& e : eigs) std::fprintf(f, "%.17g,%.17g\n", e.real(), e.imag());
    std::fclose(f);
}

void write_abscissa_json(const std::string& path, double abscissa, std::size_t n,
                         std::size_t m, const std::string& hash_hex) {
    nlohmann::json j;
    j["abscissa"] = abscissa;
    j["n"] = n;
    j["m"] = m;
    j["params_hash"] = hash_hex;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

void write_state_binary(const std::string& path, const SimState& s, const GridSpec& g) {
    char header[64];
    std::memset(header, ' ', sizeof(header));
    const std::string j = nlohmann::json{{"N", g.N}, {"M", g.M}, {"t", s.t}}.dump();
    if (j.size() > sizeof(header))
        throw std::runtime_error("binary snapshot header does not fit in 64 bytes");
    std::memcpy(header, j.data(), j.size());

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(header, sizeof(header));
    auto dump = [&out](const std::vector<double>& a) {
        out.write(reinterpret_cast<const char*>(a.data()),
                  static_cast<std::streamsize>(a.size() * sizeof(double)));
    };
    dump(s.u);
    dump(s.v);
    dump(s.phi);
    dump(s.psi);
    dump(s.z);
}

SimState read_state_binary(const std::string& path, GridSpec* g_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    char header[64];
    in.read(header, sizeof(header));
    const auto j = nlohmann::json::parse(std::string(header, sizeof(header)));
    GridSpec g = build_grid(j.at("N").get<std::size_t>(), j.at("M").get<std::size_t>());
    SimState s(g);
    s.t = j.at("t").get<double>();
    auto load = [&in](std::vector<double>& a) {
        in.read(reinterpret_cast<char*>(a.data()),
                static_cast<std::streamsize>(a.size() * sizeof(double)));
    };
    load(s.u);
    load(s.v);
    load(s.phi);
    load(s.psi);
    load(s.z);
    if (!in) throw std::runtime_error("truncated snapshot: " + path);
    if (g_out) *g_out = g;
    return s;
}

void check_artifact_hash(const std::string& path, const std::string& hash_hex) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string head((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (head.find(hash_hex) == std::string::npos)
        throw std::runtime_error("artifact " + path +
                                 " does not carry scenario hash " + hash_hex);
}

} // namespace podes
