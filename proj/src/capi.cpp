#include "podes.h"

#include <cstring>
#include <sstream>
#include <string>

#include "core/pipeline.hpp"
#include "core/scenario.hpp"

struct podes_scenario {
    podes::Scenario scn;
};

namespace {

void put_msg(char* msg, size_t msglen, const std::string& text) {
    if (!msg || msglen == 0) return;
    const size_t n = std::min(text.size(), msglen - 1);
    std::memcpy(msg, text.data(), n);
    msg[n] = '\0';
}

} // namespace

extern "C" {

podes_scenario* podes_scenario_default(void) {
    return new podes_scenario{podes::default_scenario()};
}

podes_scenario* podes_scenario_load(const char* path, char* msg, size_t msglen) {
    try {
        return new podes_scenario{podes::parse_scenario_file(path ? path : "")};
    } catch (const std::exception& e) {
        put_msg(msg, msglen, e.what());
        return nullptr;
    }
}

podes_scenario* podes_scenario_parse(const char* text, char* msg, size_t msglen) {
    try {
        return new podes_scenario{podes::parse_scenario_text(text ? text : "")};
    } catch (const std::exception& e) {
        put_msg(msg, msglen, e.what());
        return nullptr;
    }
}

int podes_scenario_override(podes_scenario* s, const char* key_equals_value,
                            char* msg, size_t msglen) {
    if (!s || !key_equals_value) {
        put_msg(msg, msglen, "null argument");
        return podes::kExitValidation;
    }
    try {
        podes::apply_override(s->scn, key_equals_value);
        return podes::kExitOk;
    } catch (const std::exception& e) {
        put_msg(msg, msglen, e.what());
        return podes::kExitValidation;
    }
}

int podes_scenario_set_out_dir(podes_scenario* s, const char* dir) {
    if (!s || !dir) return podes::kExitValidation;
    s->scn.out_dir = dir;
    return podes::kExitOk;
}

int podes_scenario_set_seed(podes_scenario* s, uint64_t seed) {
    if (!s) return podes::kExitValidation;
    s->scn.seed = seed;
    return podes::kExitOk;
}

int podes_scenario_hash(const podes_scenario* s, char* buf, size_t buflen) {
    if (!s) return podes::kExitValidation;
    put_msg(buf, buflen, podes::scenario_hash_hex(s->scn));
    return podes::kExitOk;
}

void podes_scenario_free(podes_scenario* s) { delete s; }

int podes_validate(const podes_scenario* s, char* msg, size_t msglen) {
    if (!s) return podes::kExitValidation;
    const podes::ValidationReport r =
        podes::validate_params(podes::resolved_params(s->scn));
    if (r.admissible) {
        put_msg(msg, msglen, "admissible");
        return podes::kExitOk;
    }
    std::ostringstream os;
    for (const auto& v : r.violations) os << v << "; ";
    put_msg(msg, msglen, os.str());
    return podes::kExitValidation;
}

int podes_run(const podes_scenario* s, podes_interrupt_cb interrupted, void* user,
              char* msg, size_t msglen) {
    if (!s) return podes::kExitValidation;
    std::string m;
    std::function<bool()> poll;
    if (interrupted) poll = [interrupted, user]() { return interrupted(user) != 0; };
    const int rc = podes::cmd_run(s->scn, &m, poll);
    put_msg(msg, msglen, m);
    return rc;
}

int podes_spectrum(const podes_scenario* s, char* msg, size_t msglen) {
    if (!s) return podes::kExitValidation;
    std::string m;
    const int rc = podes::cmd_spectrum(s->scn, &m);
    put_msg(msg, msglen, m);
    return rc;
}

int podes_verify(const podes_scenario* s, podes_line_cb sink, void* user, char* msg,
                 size_t msglen) {
    if (!s) return podes::kExitValidation;
    std::ostringstream table;
    std::string m;
    const int rc = podes::cmd_verify(s->scn, table, &m);
    if (sink) {
        std::istringstream lines(table.str());
        std::string line;
        while (std::getline(lines, line)) sink(line.c_str(), user);
    }
    put_msg(msg, msglen, m);
    return rc;
}

const char* podes_version(void) { return "1.0.0"; }

} // extern "C"
