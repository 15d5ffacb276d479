#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include <podes.h>

namespace fs = std::filesystem;

namespace {
std::string tmp_dir(const char* tag) {
    const fs::path d = fs::temp_directory_path() / (std::string("podes_capi_") + tag);
    fs::remove_all(d);
    return d.string();
}
} // namespace

TEST_CASE("version string") {
    REQUIRE(podes_version() != nullptr);
    CHECK(std::strlen(podes_version()) > 0);
}

TEST_CASE("default scenario validates clean") {
    podes_scenario* s = podes_scenario_default();
    REQUIRE(s != nullptr);
    char msg[256] = {0};
    CHECK(podes_validate(s, msg, sizeof msg) == 0);

    char hash[32] = {0};
    CHECK(podes_scenario_hash(s, hash, sizeof hash) == 0);
    CHECK(std::strlen(hash) == 16);
    podes_scenario_free(s);
}

TEST_CASE("override handling") {
    podes_scenario* s = podes_scenario_default();
    char msg[256] = {0};
    CHECK(podes_scenario_override(s, "params.mu2=0.3", msg, sizeof msg) == 0);
    CHECK(podes_scenario_override(s, "params.bogus=1", msg, sizeof msg) == 2);
    CHECK(std::strlen(msg) > 0);
    podes_scenario_free(s);
}

TEST_CASE("parse rejects malformed text with a message") {
    char msg[256] = {0};
    podes_scenario* s = podes_scenario_parse("[params]\nbogus = 1\n", msg, sizeof msg);
    CHECK(s == nullptr);
    CHECK(std::strlen(msg) > 0);

    s = podes_scenario_parse("[grid]\nN = 40\n", msg, sizeof msg);
    REQUIRE(s != nullptr);
    podes_scenario_free(s);
}

TEST_CASE("hypothesis violation maps to exit code 2") {
    podes_scenario* s = podes_scenario_default();
    char msg[256] = {0};
    REQUIRE(podes_scenario_override(s, "params.b=1.5", msg, sizeof msg) == 0);
    CHECK(podes_validate(s, msg, sizeof msg) == 2);
    CHECK(std::string(msg).find("b^2 <= mu*xi") != std::string::npos);
    podes_scenario_free(s);
}

TEST_CASE("run produces artifacts and returns 0") {
    podes_scenario* s = podes_scenario_default();
    char msg[256] = {0};
    REQUIRE(podes_scenario_override(s, "grid.N=24", msg, sizeof msg) == 0);
    REQUIRE(podes_scenario_override(s, "grid.M=9", msg, sizeof msg) == 0);
    REQUIRE(podes_scenario_override(s, "time.t_end=1.0", msg, sizeof msg) == 0);
    const std::string dir = tmp_dir("run");
    REQUIRE(podes_scenario_set_out_dir(s, dir.c_str()) == 0);
    REQUIRE(podes_scenario_set_seed(s, 7) == 0);

    CHECK(podes_run(s, nullptr, nullptr, msg, sizeof msg) == 0);
    CHECK(fs::exists(fs::path(dir) / "diagnostics.csv"));
    CHECK(fs::exists(fs::path(dir) / "summary.json"));
    podes_scenario_free(s);
}

TEST_CASE("blow-up is reported as exit code 3") {
    podes_scenario* s = podes_scenario_default();
    char msg[256] = {0};
    REQUIRE(podes_scenario_override(s, "grid.N=24", msg, sizeof msg) == 0);
    REQUIRE(podes_scenario_override(s, "grid.M=9", msg, sizeof msg) == 0);
    REQUIRE(podes_scenario_override(s, "time.cfl=5.0", msg, sizeof msg) == 0);
    REQUIRE(podes_scenario_override(s, "time.t_end=30.0", msg, sizeof msg) == 0);
    REQUIRE(podes_scenario_set_out_dir(s, tmp_dir("blowup").c_str()) == 0);
    CHECK(podes_run(s, nullptr, nullptr, msg, sizeof msg) == 3);
    podes_scenario_free(s);
}

TEST_CASE("spectrum command and its resource cap") {
    char msg[256] = {0};
    SUBCASE("small grid succeeds") {
        podes_scenario* s = podes_scenario_default();
        REQUIRE(podes_scenario_override(s, "grid.N=16", msg, sizeof msg) == 0);
        REQUIRE(podes_scenario_override(s, "grid.M=5", msg, sizeof msg) == 0);
        const std::string dir = tmp_dir("spec");
        REQUIRE(podes_scenario_set_out_dir(s, dir.c_str()) == 0);
        CHECK(podes_spectrum(s, msg, sizeof msg) == 0);
        CHECK(fs::exists(fs::path(dir) / "eigenvalues.csv"));
        CHECK(fs::exists(fs::path(dir) / "abscissa.json"));
        podes_scenario_free(s);
    }
    SUBCASE("oversized dense problem hits the cap") {
        podes_scenario* s = podes_scenario_default();
        // dim = 4N + N(M-1) = 800 + 8000 > 5000
        REQUIRE(podes_scenario_override(s, "grid.N=200", msg, sizeof msg) == 0);
        REQUIRE(podes_scenario_override(s, "grid.M=41", msg, sizeof msg) == 0);
        CHECK(podes_spectrum(s, msg, sizeof msg) == 4);
        podes_scenario_free(s);
    }
}

TEST_CASE("verify gate on an inadmissible scenario") {
    podes_scenario* s = podes_scenario_default();
    char msg[256] = {0};
    REQUIRE(podes_scenario_override(s, "params.mu2=0.8", msg, sizeof msg) == 0);
    int lines = 0;
    const int rc = podes_verify(
        s,
        [](const char*, void* user) { ++*static_cast<int*>(user); }, &lines, msg,
        sizeof msg);
    CHECK(rc == 2);
    CHECK(lines >= 1);  // the gate message itself is emitted
    podes_scenario_free(s);
}
