#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

const std::string kCli = SYNAPTIC_CLI_PATH;
const std::string kData = SYNAPTIC_DATA_DIR;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return kData + "/" + name; }

} // namespace

TEST_CASE("spectral") {
    const auto r = run("spectral " + data("matrix_diag.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("breakpoints: 1 2 5") != std::string::npos);
    CHECK(r.out.find("L = 1, U = 5") != std::string::npos);
}

TEST_CASE("smear") {
    const auto r = run("smear " + data("observable_pvm.json") + " " + data("kernel_bsc.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("sharp: no") != std::string::npos);

    // mismatched kernel source
    const auto bad =
        run("smear " + data("observable_trine.json") + " " + data("kernel_bsc.json"));
    CHECK(bad.exit_code == 1);

    // invalid kernel rows
    const auto badk =
        run("smear " + data("observable_pvm.json") + " " + data("kernel_bad.json"));
    CHECK(badk.exit_code == 1);
}

TEST_CASE("decompose") {
    const auto r = run("decompose " + data("observable_diag_povm.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("sharp observable") != std::string::npos);

    // non-commuting range is a refusal, not a crash
    const auto trine = run("decompose " + data("observable_trine.json"));
    CHECK(trine.exit_code == 2);
    const auto trine_json =
        run("--format structured decompose " + data("observable_trine.json"));
    CHECK(trine_json.exit_code == 2);
    CHECK(trine_json.out.find("\"commutator_norm\"") != std::string::npos);
}

TEST_CASE("funcalc") {
    const auto r = run("funcalc " + data("matrix_diag.json") + " --fn square");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("norm 25") != std::string::npos);

    // log of a non-positive matrix fails validation
    const auto bad = run("funcalc " + data("matrix_qubit.json") + " --fn log");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("joint") {
    const auto r = run("joint " + data("matrix_diag.json") + " " + data("matrix_diag.json") +
                       " --g sum");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("outcomes: 2 4 10") != std::string::npos);

    const auto bad = run("joint " + data("matrix_diag.json") + " " + data("matrix_qubit.json"));
    CHECK(bad.exit_code != 0);
}

TEST_CASE("ea-check") {
    for (const auto& name : {"ea_boolean4.json", "ea_chain3.json", "ea_mo2.json"}) {
        const auto r = run("ea-check " + data(name));
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("EA1-EA4 PASS") != std::string::npos);
    }
    const auto b = run("ea-check " + data("ea_boolean4.json"));
    CHECK(b.out.find("Boolean: yes") != std::string::npos);
    const auto m = run("ea-check " + data("ea_mo2.json"));
    CHECK(m.out.find("MV: no") != std::string::npos);

    const auto broken = run("ea-check " + data("ea_broken.json"));
    CHECK(broken.exit_code == 1);
    CHECK(broken.out.find("FAIL") != std::string::npos);
}

TEST_CASE("verify") {
    const auto ok = run("verify --matrix " + data("matrix_diag.json") + " --observable " +
                        data("observable_trine.json") + " --kernel " +
                        data("kernel_identity.json") + " --ea " + data("ea_boolean4.json"));
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("commuting range no") != std::string::npos);

    const auto bad = run("verify --kernel " + data("kernel_bad.json"));
    CHECK(bad.exit_code == 1);
}

TEST_CASE("io errors exit with code 3") {
    CHECK(run("spectral /nonexistent.json").exit_code == 3);
    CHECK(run("spectral " + data("matrix_invalid.json")).exit_code == 3);
}

TEST_CASE("structured output is valid and deterministic") {
    const std::string cmd = "--format structured --seed 7 decompose " +
                            data("observable_diag_povm.json");
    const auto r1 = run(cmd);
    const auto r2 = run(cmd);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.out.find("\"command\": \"decompose\"") != std::string::npos);

    const auto s1 = run("--format structured spectral " + data("matrix_qubit.json"));
    const auto s2 = run("--format structured spectral " + data("matrix_qubit.json"));
    CHECK(s1.out == s2.out);
}
