#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_bin() {
    const char* p = std::getenv("SCDF_CLI_BIN");
    REQUIRE(p != nullptr);
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = cli_bin() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("sweep emits the fixed header and one row per point per method") {
    RunResult r = run("sweep --quantity outage --preset symmetric --relays 2 "
                      "--snr-stop 8 --snr-step 4 --mc-samples 2000 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("snr_db,method,value,std_error,n_samples,seed\n", 0) == 0);
    CHECK(count_lines(r.out) == 1 + 3 * 2); // header + 3 points x 2 methods
    // analytic rows leave the MC columns empty
    CHECK(r.out.find(",analytic,") != std::string::npos);
    CHECK(r.out.find(",,,\n") != std::string::npos);
    CHECK(r.out.find(",montecarlo,") != std::string::npos);
}

TEST_CASE("reruns are byte-identical") {
    std::string args = "sweep --quantity capacity --preset symmetric --relays 3 "
                       "--snr-stop 10 --snr-step 5 --mc-samples 5000 --seed 42";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
    // a different seed changes the Monte-Carlo column
    RunResult c = run("sweep --quantity capacity --preset symmetric --relays 3 "
                      "--snr-stop 10 --snr-step 5 --mc-samples 5000 --seed 43");
    CHECK(c.out != a.out);
}

TEST_CASE("validate writes identical files for the same seed") {
    std::string f1 = "/tmp/scdf_cli_v1.csv", f2 = "/tmp/scdf_cli_v2.csv";
    std::string args = "validate --preset symmetric --relays 2 --snr-stop 6 "
                       "--snr-step 6 --mc-samples 5000 --seed 9 --out ";
    CHECK(run(args + f1).exit_code == 0);
    CHECK(run(args + f2).exit_code == 0);
    std::string c1 = read_file(f1), c2 = read_file(f2);
    CHECK(!c1.empty());
    CHECK(c1 == c2);
    std::remove(f1.c_str());
    std::remove(f2.c_str());
}

TEST_CASE("config file round-trips through show-config") {
    std::string path = "/tmp/scdf_cli_cfg.json";
    {
        std::ofstream out(path);
        out << R"({"antennas":1,"gamma_th":1.5,"relays":[
                    {"s_relay_ant1":{"m":2,"omega":4.0},
                     "relay_dest":{"m":1,"omega":2.0}}]})";
    }
    RunResult r = run("show-config --config " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"antennas\": 1") != std::string::npos);
    CHECK(r.out.find("\"omega\": 4.0") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("error paths use the documented exit codes") {
    // config errors -> 2
    CHECK(run("sweep --config /does/not/exist.json").exit_code == 2);
    CHECK(run("sweep --preset bogus").exit_code == 2);
    CHECK(run("sweep --snr-step 0").exit_code == 2);
    CHECK(run("sweep --quantity outage --methods none").exit_code == 2);
    // non-integer Nakagami m in a config file -> 2
    std::string path = "/tmp/scdf_cli_badm.json";
    {
        std::ofstream out(path);
        out << R"({"relays":[{"s_relay_ant1":{"m":1.5,"omega":1.0}}]})";
    }
    RunResult r = run("sweep --config " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("error: config:") != std::string::npos);
    std::remove(path.c_str());
    // analytic SEP on a non-i.i.d. config -> 4, message names the MC fallback
    RunResult u = run("sweep --quantity sep --preset asymmetric --methods analytic");
    CHECK(u.exit_code == 4);
    CHECK(u.out.find("montecarlo") != std::string::npos);
    // unknown flag -> 2, single-line error
    RunResult f = run("sweep --frobnicate");
    CHECK(f.exit_code == 2);
    CHECK(count_lines(f.out) == 1);
}

TEST_CASE("power-compare table shape") {
    RunResult r = run("power-compare --preset rayleigh-symmetric --relays 2 "
                      "--ptot-start 1 --ptot-stop 2 --ptot-step 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("p_tot,equal,adaptive,numeric,cubic\n", 0) == 0);
    CHECK(r.out.find("# max_db_saving_numeric_vs_equal,") != std::string::npos);
    // cubic column omitted for m > 1
    RunResult n = run("power-compare --preset symmetric --relays 2 "
                      "--ptot-start 1 --ptot-stop 1 --ptot-step 1");
    CHECK(n.exit_code == 0);
    CHECK(n.out.rfind("p_tot,equal,adaptive,numeric\n", 0) == 0);
}

TEST_CASE("antenna-compare columns cover K=1..5 at both antenna counts") {
    RunResult r = run("antenna-compare --snr-stop 4 --snr-step 4");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string header;
    std::getline(is, header);
    CHECK(header ==
          "snr_db,k1_ant1,k1_ant2,k2_ant1,k2_ant2,k3_ant1,k3_ant2,"
          "k4_ant1,k4_ant2,k5_ant1,k5_ant2");
    CHECK(count_lines(r.out) == 3);
}
