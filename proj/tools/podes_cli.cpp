#include <atomic>
#include <csignal>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "podes.h"

namespace {

std::atomic<bool> g_interrupted{false};

void on_sigint(int) { g_interrupted.store(true); }

int poll_interrupt(void*) { return g_interrupted.load() ? 1 : 0; }

void print_line(const char* line, void*) { std::printf("%s\n", line); }

struct CommonOpts {
    std::string scenario_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--scenario", o.scenario_path, "Scenario file (INI)");
    cmd->add_option("--out", o.out_dir, "Output directory");
    cmd->add_option("--seed", o.seed, "Seed for randomized checks")
        ->each([&o](const std::string&) { o.seed_set = true; });
    cmd->add_option("--override", o.overrides,
                    "Dotted-path override, e.g. params.mu2=0.3 (repeatable)");
}

podes_scenario* build_scenario(const CommonOpts& o) {
    char msg[512];
    podes_scenario* s = nullptr;
    if (!o.scenario_path.empty()) {
        s = podes_scenario_load(o.scenario_path.c_str(), msg, sizeof(msg));
        if (!s) {
            std::fprintf(stderr, "error: %s\n", msg);
            return nullptr;
        }
    } else {
        s = podes_scenario_default();
    }
    for (const auto& kv : o.overrides) {
        if (podes_scenario_override(s, kv.c_str(), msg, sizeof(msg)) != 0) {
            std::fprintf(stderr, "error: bad override '%s': %s\n", kv.c_str(), msg);
            podes_scenario_free(s);
            return nullptr;
        }
    }
    if (!o.out_dir.empty()) podes_scenario_set_out_dir(s, o.out_dir.c_str());
    if (o.seed_set) podes_scenario_set_seed(s, o.seed);
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Porous-elastic system with delayed damping: simulation, "
                 "spectrum and verification"};
    app.require_subcommand(1);

    CommonOpts run_o, spec_o, ver_o;
    CLI::App* run_cmd =
        app.add_subcommand("run", "Integrate a scenario and emit diagnostics");
    add_common(run_cmd, run_o);
    CLI::App* spec_cmd = app.add_subcommand(
        "spectrum", "Eigenvalues and spectral abscissa of the linear generator");
    add_common(spec_cmd, spec_o);
    CLI::App* ver_cmd =
        app.add_subcommand("verify", "Run the verification battery (pass/fail table)");
    add_common(ver_cmd, ver_o);

    CLI11_PARSE(app, argc, argv);

    char msg[512] = {0};
    int rc = 5;
    if (run_cmd->parsed()) {
        std::signal(SIGINT, on_sigint);
        podes_scenario* s = build_scenario(run_o);
        if (!s) return 2;
        char hash[32];
        podes_scenario_hash(s, hash, sizeof(hash));
        std::fprintf(stderr, "running scenario %s\n", hash);
        rc = podes_run(s, poll_interrupt, nullptr, msg, sizeof(msg));
        podes_scenario_free(s);
        std::fprintf(stderr, "%s\n", msg);
    } else if (spec_cmd->parsed()) {
        podes_scenario* s = build_scenario(spec_o);
        if (!s) return 2;
        rc = podes_spectrum(s, msg, sizeof(msg));
        podes_scenario_free(s);
        std::fprintf(stderr, "%s\n", msg);
    } else if (ver_cmd->parsed()) {
        podes_scenario* s = build_scenario(ver_o);
        if (!s) return 2;
        rc = podes_verify(s, print_line, nullptr, msg, sizeof(msg));
        podes_scenario_free(s);
        std::fprintf(stderr, "%s\n", msg);
    }
    return rc;
}
