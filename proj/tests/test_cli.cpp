// End-to-end checks of the command-line tool: exit-code contract, the
// human-readable output for the benchmark pair, and byte-identical JSON
// round-trips.  The binary path arrives through BIELL_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include "biell/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out; // stdout and stderr merged
};

RunResult run_cli(const std::string& args)
{
    const std::string cmd = std::string(BIELL_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    r.exit_code = WEXITSTATUS(status);
    return r;
}

bool contains(const std::string& hay, const std::string& needle)
{
    return hay.find(needle) != std::string::npos;
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& text)
{
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
    return p;
}

} // namespace

TEST_CASE("reduction classification of the benchmark pair at 11")
{
    for (const char* label : {"33.a2", "198.a2"}) {
        auto r = run_cli(std::string("curve reduction ") + label + " -p 11");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.out, "split multiplicative"));
        CHECK(contains(r.out, "p = 11"));
        CHECK(contains(r.out, "v(j) = -2"));
    }
    auto good = run_cli("curve reduction 33.a2 -p 5");
    CHECK(good.exit_code == 0);
    CHECK(contains(good.out, "good"));
}

TEST_CASE("universal cycle verification reports order and budget")
{
    auto t1 = run_cli("cycles verify --type 1 --universal");
    CHECK(t1.exit_code == 0);
    CHECK(contains(t1.out, "order 2"));
    CHECK(contains(t1.out, "budget 4"));
    CHECK(contains(t1.out, "2 divides 4"));

    auto t5 = run_cli("cycles verify --type 5 --universal");
    CHECK(t5.exit_code == 0);
    CHECK(contains(t5.out, "order 3"));
    CHECK(contains(t5.out, "budget 9"));

    CHECK(run_cli("cycles verify --type 2 --universal").exit_code == 2);
    CHECK(run_cli("cycles verify --type 1").exit_code == 2); // no mode chosen
    CHECK(run_cli("cycles verify --type 1 --universal --fp 7").exit_code == 2);
    CHECK(run_cli("cycles verify --type 1 --fp 7").exit_code == 2); // no curves
}

TEST_CASE("finite-field instances stay within the certified budget")
{
    auto t1 = run_cli("cycles verify --type 1 --fp 7 --curve1 33.a2 "
                      "--curve2 198.a2");
    CHECK(t1.exit_code == 0);
    CHECK(contains(t1.out, "type 1 at p = 7"));
    CHECK(contains(t1.out, "divides 4"));

    auto t5 = run_cli("cycles verify --type 5 --fp 7 --curve1 0,1 "
                      "--curve2 0,8");
    CHECK(t5.exit_code == 0);
    CHECK(contains(t5.out, "divides 9"));
}

TEST_CASE("exponent bounds across the classification table")
{
    const long expected[8] = {0, 8, 16, 16, 32, 27, 81, 24};
    for (int t = 1; t <= 7; ++t) {
        auto r = run_cli("surface bound --type " + std::to_string(t));
        CHECK(r.exit_code == 0);
        CHECK(contains(r.out, "type " + std::to_string(t) + " exponent bound " +
                                  std::to_string(expected[t]) + " (verified)"));
    }
    CHECK(run_cli("surface bound --type 8").exit_code == 2);
}

TEST_CASE("cover chains match the lattice")
{
    auto c4 = run_cli("surface covers --type 4");
    CHECK(c4.exit_code == 0);
    CHECK(contains(c4.out, "type 3 covers type 4 with degree 2"));
    CHECK(contains(c4.out, "type 1 covers type 3 with degree 2"));
    CHECK(contains(c4.out, "total degree 4 down to type 1"));

    auto c1 = run_cli("surface covers --type 1");
    CHECK(c1.exit_code == 0);
    CHECK(contains(c1.out, "none"));

    auto c7 = run_cli("surface covers --type 7");
    CHECK(contains(c7.out, "type 1 covers type 7 with degree 3"));
}

TEST_CASE("replay exit codes separate pass, refuted and malformed")
{
    auto pass = run_cli("cycles replay --script type1_main");
    CHECK(pass.exit_code == 0);
    CHECK(contains(pass.out, "PASS"));
    CHECK(contains(pass.out, "certified: 4 z[P, Q] => 0"));

    // weaken the claim of the exported script: steps stay licensed, the
    // combination no longer follows
    std::string text = read_file(
        std::filesystem::path(BIELL_DATA_DIR) / "scripts" / "type1_main.txt");
    const auto at = text.find("claim 4");
    REQUIRE(at != std::string::npos);
    text.replace(at, 7, "claim 2");
    auto weak = run_cli("cycles replay --script " +
                        write_temp("weak_claim.txt", text).string());
    CHECK(weak.exit_code == 1);
    CHECK(contains(weak.out, "FAIL at combination"));

    auto garbled = run_cli("cycles replay --script " +
                           write_temp("garbled.txt", "nonsense\n").string());
    CHECK(garbled.exit_code == 2);
    CHECK(contains(garbled.out, "line 1"));

    auto missing = run_cli("cycles replay --script no_such_script");
    CHECK(missing.exit_code == 2);
    CHECK(contains(missing.out, "type1_main")); // lists the built-ins
}

TEST_CASE("obstruction witness for the benchmark pair")
{
    auto r = run_cli("brauer witness --e1 33.a2 --e2 198.a2 -p 11");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "|Hom_Gal| = 16"));
    CHECK(contains(r.out, "|H2| = 4"));
    CHECK(contains(r.out, "witnesses = 2"));
    CHECK(contains(r.out, "Q_11"));
    CHECK(contains(r.out, "non-isogeny: certified at p = 2"));
    CHECK(contains(r.out, "conclusion: nontrivial order-2 obstruction class"));

    auto good = run_cli("brauer witness --e1 33.a2 --e2 198.a2 -p 5");
    CHECK(good.exit_code == 2);
    CHECK(contains(good.out, "good reduction"));
    CHECK(contains(good.out, "2-divisible"));

    // identical curves: the witness exists but non-isogeny cannot be
    // certified, so the verdict is conditional (still exit 0)
    auto cond = run_cli("brauer witness --e1 33.a2 --e2 33.a2 -p 11 --json");
    CHECK(cond.exit_code == 0);
    CHECK(contains(cond.out, "\"verdict\": \"conditional\""));
}

TEST_CASE("catalog checking and the curve resolver")
{
    auto ok = run_cli(std::string("catalog check ") + BIELL_DATA_DIR +
                      "/catalog.jsonl");
    CHECK(ok.exit_code == 0);
    CHECK(contains(ok.out, "2 valid entries"));
    CHECK(contains(ok.out, "33.a2"));

    auto bad = run_cli("catalog check " +
                       write_temp("bad_catalog.jsonl", "{\"label\": 3}\n")
                           .string());
    CHECK(bad.exit_code == 2);

    // inline coefficients, short and long form
    CHECK(run_cli("curve info 0,1").exit_code == 0);
    auto lf = run_cli("curve torsion 0,-1,1,0,0");
    CHECK(lf.exit_code == 0);
    CHECK(contains(lf.out, "structure trivial"));

    // a custom catalog through the environment resolves new labels
    auto cat = write_temp("env_catalog.jsonl",
                          "{\"label\": \"unit.t\", \"a\": [0, 1]}\n");
    setenv(biell::kCatalogEnv, cat.string().c_str(), 1);
    auto env = run_cli("curve info unit.t");
    unsetenv(biell::kCatalogEnv);
    CHECK(env.exit_code == 0);
    CHECK(contains(env.out, "unit.t"));

    auto unknown = run_cli("curve info nosuch.label");
    CHECK(unknown.exit_code == 2);
    CHECK(contains(unknown.out, "33.a2")); // names the built-in labels
}

TEST_CASE("usage errors exit with code 2 and print usage")
{
    auto flag = run_cli("curve reduction 33.a2 -p 11 --frobnicate");
    CHECK(flag.exit_code == 2);
    CHECK(contains(flag.out, "Usage"));

    auto sub = run_cli("frobnicate");
    CHECK(sub.exit_code == 2);

    auto none = run_cli("");
    CHECK(none.exit_code == 2);

    auto help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK(contains(help.out, "curve"));
    CHECK(contains(help.out, "cycles"));

    auto version = run_cli("--version");
    CHECK(version.exit_code == 0);
    CHECK(contains(version.out, biell::kVersion));
}

TEST_CASE("JSON reports round-trip byte-identically")
{
    const char* cmds[] = {
        "curve info 33.a2",
        "curve reduction 198.a2 -p 11",
        "curve count 33.a2 -p 7",
        "surface table",
        "surface bound --type 4",
        "cycles verify --type 1 --universal",
        "cycles replay --script type5_main",
        "brauer witness --e1 33.a2 --e2 198.a2 -p 11",
    };
    for (const char* cmd : cmds) {
        CAPTURE(cmd);
        auto r = run_cli(std::string(cmd) + " --json");
        CHECK(r.exit_code == 0);
        const json doc = json::parse(r.out);
        CHECK(doc.at("result").is_object());
        CHECK(doc.at("provenance").at("tool") == "biell");
        CHECK(doc.at("provenance").at("version") == biell::kVersion);
        CHECK(doc.at("verdict") == "verified");
        CHECK(doc.dump(2) + "\n" == r.out);
    }

    // error reports in JSON mode carry the same envelope
    auto err = run_cli("brauer witness --e1 33.a2 --e2 198.a2 -p 5 --json");
    CHECK(err.exit_code == 2);
    const json edoc = json::parse(err.out);
    CHECK(edoc.at("verdict") == "error");
    CHECK(contains(edoc.at("result").at("message").get<std::string>(),
                   "2-divisible"));
    CHECK(edoc.dump(2) + "\n" == err.out);
}

TEST_CASE("JSON payload carries the structured witness data")
{
    auto r = run_cli("brauer witness --e1 33.a2 --e2 198.a2 -p 11 --json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    const json& res = doc.at("result");
    CHECK(res.at("hom_count") == 16);
    CHECK(res.at("h2_count") == 4);
    CHECK(res.at("witness_count") == 2);
    CHECK(res.at("working_field") == "Q_11");
    CHECK(res.at("conclusion") == true);
    CHECK(res.at("conditional") == false);
    CHECK(res.at("witness") == json::array({{0, 0}, {1, 0}}));
    CHECK(res.at("nonisogeny").at("p") == 2);
}
