#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "dowq/family.hpp"
#include "dowq/json_io.hpp"

using namespace dowq;

namespace {

struct CliRun {
    int exit_code = -1;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    const char* bin = std::getenv("DOWQ_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "DOWQ_CLI must point at the built binary");
    CliRun r;
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("poset json round trip") {
    FinitePoset p = build_family(FamilySpec{3, 2, 1, 1, {}});
    json j = poset_to_json(p);
    CHECK(j["schema"] == "v1");
    FinitePoset back = poset_from_json(j);
    CHECK(back.size() == p.size());
    // identical serialization regardless of construction order
    CHECK(poset_to_json(back).dump() == j.dump());
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y)
            CHECK(p.leq(x, y) == back.leq(back.index_of(p.key(x)), back.index_of(p.key(y))));
}

TEST_CASE("cli dowling") {
    CliRun r = run_cli("dowling --n 3 --r 2 --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["mobius"] == "-15");
    CHECK(j["size"] == 24);
    CHECK(j["closed_form"]["match"] == true);

    CliRun pi = run_cli("dowling --n 3 --r 1 --format json");
    CHECK(json::parse(pi.out)["mobius"] == "-6");

    CliRun small = run_cli("dowling --n 2 --r 2 --d 2 --k 2 --format json");
    json js = json::parse(small.out);
    CHECK(js["size"] == 3);
}

TEST_CASE("cli rejects invalid specs with exit 2") {
    CliRun r = run_cli("dowling --n 3 --r 3 --d 2 --k 2 --format json");
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli eigen single and exceptional") {
    CliRun r = run_cli("eigen --r 1 --p 1 --n 4 --m 2 --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["case"] == 2);
    CHECK(j["iso"] == true);
    CHECK(j["mobius"] == "-1");

    CliRun q = run_cli("eigen --r 2 --p 1 --n 2 --m 1 --format json");
    json jq = json::parse(q.out);
    CHECK(jq["case"] == 6);
    CHECK(jq["target"].get<std::string>().find("Q_2(2)") == 0);

    CliRun ex = run_cli("eigen --r 2 --p 1 --n 2 --m 1 --exceptional");
    CHECK(ex.exit_code == 3);
}

TEST_CASE("cli series values") {
    CliRun r = run_cli("series mu-dde --r 1 --d 2 --e 0 --T 5 --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["mu"].size() == 6);
    CHECK(j["mu"][1] == "0");
    CHECK(j["mu"][2] == "-1");
    CHECK(j["mu"][3] == "24");
    CHECK(j["mu"][4] == "-918");
    CHECK(j["mu"][5] == "54560");
}

TEST_CASE("cli homology") {
    CliRun r = run_cli("homology --n 3 --r 2 --proper --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["minus_one"] == "0");
    REQUIRE(j["betti"].size() == 2);
    CHECK(j["betti"][0] == "0");
    CHECK(j["betti"][1] == "15");
}

TEST_CASE("cli shell-check") {
    CliRun r = run_cli("shell-check --n 4 --r 2 --d 2 --k 2 --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["status"] == "certified");
    CHECK(j.contains("certificate"));
}

TEST_CASE("cli shell-check by search") {
    CliRun r = run_cli("shell-check --n 3 --r 2 --ordering search --format json");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["status"] == "certified");
}

TEST_CASE("cli json output is byte-deterministic") {
    CliRun a = run_cli("dowling --n 3 --r 2 --format json");
    CliRun b = run_cli("dowling --n 3 --r 2 --format json");
    CHECK(a.out == b.out);
}
