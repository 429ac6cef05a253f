#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
    int status;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(PGX_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf;
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("info reports a catalog group") {
    auto r = run("info \"Phi8(32)\" --p 5 --no-meta");
    CHECK(r.status == 0);
    CHECK(r.out.find("M(G):       1") != std::string::npos);
    CHECK(r.out.find("Z25") != std::string::npos);
    CHECK(r.out.find("capable:    no") != std::string::npos);
}

TEST_CASE("info --json carries the schema field") {
    auto r = run("info \"Phi2(111)\" --p 5 --json --no-meta");
    CHECK(r.status == 0);
    CHECK(r.out.find("\"schema\": 1") != std::string::npos);
    CHECK(r.out.find("\"capable\": true") != std::string::npos);
}

TEST_CASE("info output is deterministic with --no-meta") {
    auto a = run("info \"Phi6(221)d0\" --p 5 --json --no-meta");
    auto b = run("info \"Phi6(221)d0\" --p 5 --json --no-meta");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("table p3 has two data rows") {
    auto r = run("table --order p3 --p 7 --format csv --no-meta");
    CHECK(r.status == 0);
    int lines = 0;
    for (char c : r.out) lines += c == '\n';
    CHECK(lines == 3);  // header + two groups
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("table --order p9 --p 5").status == 2);
    CHECK(run("info NoSuchGroup --p 5").status == 2);
    CHECK(run("verify --scope bogus").status == 2);
}

TEST_CASE("verify exit code contract on a passing scope") {
    auto r = run("verify --scope theorem-p3p4 --p 5");
    CHECK(r.status == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("12 passed, 0 failed") != std::string::npos);
}
