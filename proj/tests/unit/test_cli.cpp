#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "wallach/io.hpp"

#ifndef WALLACH_CLI_PATH
#error "WALLACH_CLI_PATH must be defined"
#endif

namespace fs = std::filesystem;
using namespace wallach;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(WALLACH_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("wallach_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("sample-curve writes unit-volume rows") {
    const auto r = run("sample-curve --curve s3 --t-min 0.01 --t-max 100 --n 500");
    REQUIRE(r.code == 0);
    const auto table = io::read_csv(r.out);
    CHECK(table.header == std::vector<std::string>{"t", "x1", "x2", "x3"});
    REQUIRE(table.rows.size() == 500);
    for (const auto& row : table.rows) CHECK(std::abs(row[1] * row[2] * row[3] - 1) <= 1e-12);
}

TEST_CASE("sample-curve domain errors") {
    CHECK(run("sample-curve --curve l3 --a 0.2").code == 2);
    CHECK(run("sample-curve --curve l3 --a 0.2 --force-kahler --n 3").code == 0);
    CHECK(run("sample-curve --curve l3 --a 1/6 --n 3").code == 0);
    CHECK(run("sample-curve --curve r1i").code == 2);
    CHECK(run("sample-curve --curve q7").code == 2);
    CHECK(run("sample-curve --curve s1 --untrimmed").code == 2);
    CHECK(run("sample-curve --curve r1i --a 0.3 --t-max 0.5").code == 2);
    CHECK(run("sample-curve --curve s1 --format xml").code == 2);
}

TEST_CASE("sample-curve r branch reaches P_12") {
    const auto r = run("sample-curve --curve r1i --a 0.125 --t-max 0.125 --n 20");
    REQUIRE(r.code == 0);
    const auto last = io::read_csv(r.out).rows.back();
    CHECK(last[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(last[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(last[3] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("sample-curve json and file output") {
    TempDir dir;
    const auto out = dir.path / "curve.json";
    REQUIRE(run("sample-curve --curve I2 --n 4 --format json --out " + out.string()).code == 0);
    const auto j = io::json::parse(slurp(out));
    CHECK(j["schema_version"] == "1");
    CHECK(j["payload_kind"] == "curve_samples");
    CHECK(j["payload"]["samples"].size() == 4);
}

TEST_CASE("integrate") {
    TempDir dir;
    const auto out = dir.path / "traj.csv";
    REQUIRE(run("integrate --x0 1,1,1 --a 0.3 --t-end 5 --out " + out.string()).code == 0);
    const auto table = io::read_csv(slurp(out));
    CHECK(table.header == std::vector<std::string>{"time", "x1", "x2", "x3", "volume_drift"});
    for (const auto& row : table.rows) {
        for (int c = 1; c <= 3; ++c) CHECK(std::abs(row[c] - 1) <= 1e-12);
    }

    const auto blow = dir.path / "blow.json";
    const auto r = run("integrate --x0 0.95,0.92,1.145 --a 0.166666 --t-end 30 --events --format json --out " +
                       blow.string());
    CHECK(r.code == 3);
    const auto j = io::json::parse(slurp(blow));
    CHECK(j["payload"]["termination"] == "blow_up");
    int gamma_events = 0;
    for (const auto& e : j["payload"]["events"]) gamma_events += e["kind"] == "gamma_zero";
    CHECK(gamma_events >= 1);

    const auto keep = dir.path / "keep.csv";
    REQUIRE(run("integrate --x0 0.9,1.0,1.2 --a 0.3 --t-end 50 --events --out " + keep.string()).code == 0);
    const auto ev = io::read_csv(slurp(dir.path / "keep.csv.events.csv"));
    CHECK(ev.header.front() == "time");
    CHECK(slurp(dir.path / "keep.csv.events.csv").find("lambda_zero") == std::string::npos);

    CHECK(run("integrate --x0 1,1 --a 0.3").code == 2);
    CHECK(run("integrate --x0 1,1,1 --a 0.6").code == 2);
    CHECK(run("integrate --x0 1,1,1 --a 0.3 --dt 0.1 --rel-tol 1e-8").code == 2);
    CHECK(run("integrate --x0 1,1,1 --a 0.3 --method euler").code == 2);
    CHECK(run("integrate --x0 1,1,1 --a 0.3 --method rk4 --dt 0.1 --t-end 1 --store-every 2").code == 0);
}

TEST_CASE("classify") {
    auto r = run("classify --x 1,1,1 --a 0.166667");
    REQUIRE(r.code == 0);
    CHECK(io::json::parse(r.out)["payload"]["label"] == "PositiveSectional");
    r = run("classify --x 1,1,10 --a 0.166667");
    REQUIRE(r.code == 0);
    CHECK(io::json::parse(r.out)["payload"]["label"] == "MixedRicci");
    CHECK(run("classify --x 0,1,1").code == 2);
}

TEST_CASE("equilibria") {
    auto r = run("equilibria --a 0.166667");
    REQUIRE(r.code == 0);
    auto eq = io::json::parse(r.out)["payload"]["equilibria"];
    REQUIRE(eq.size() == 4);
    CHECK(eq[0]["kind"] == "UnstableNode");
    for (int k = 1; k <= 3; ++k) CHECK(eq[k]["kind"] == "HyperbolicSaddle");
    for (const auto& e : eq) CHECK(e["in_sigma_r"] == true);
    CHECK(eq[0]["in_sigma_s"] == true);
    for (int k = 1; k <= 3; ++k) CHECK(eq[k]["in_sigma_s"] == false);
    r = run("equilibria --a 0.25");
    eq = io::json::parse(r.out)["payload"]["equilibria"];
    REQUIRE(eq.size() == 1);
    CHECK(eq[0]["kind"] == "DegenerateLinearZero");
    CHECK(io::json::parse(run("equilibria --a 0.3").out)["payload"]["equilibria"][0]["kind"] == "StableNode");
    CHECK(run("equilibria --a 0.5").code == 2);
}

TEST_CASE("verify") {
    TempDir dir;
    CHECK(run("verify --suite theorem1").code == 0);
    const auto a = dir.path / "a.json", b = dir.path / "b.json";
    CHECK(run("verify --suite inclusion --a 0.45 --seed 7 --out " + a.string()).code == 0);
    CHECK(run("verify --suite inclusion --a 0.45 --seed 7 --out " + b.string()).code == 0);
    CHECK(slurp(a) == slurp(b));
    const auto j = io::json::parse(slurp(a));
    CHECK(j["payload"]["passed"] == true);
    CHECK(run("verify --suite kahler --a 0.2").code == 2);
    CHECK(run("verify --suite kahler --a 1/6").code == 0);
    CHECK(run("verify --suite bogus").code == 2);
}
