#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "zpwalk/error.hpp"
#include "zpwalk/report.hpp"
#include "zpwalk/selftest.hpp"

using namespace zpwalk;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "zpwalk");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto dir = fs::temp_directory_path() / "zpwalk_cli_test";
    fs::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << text;
    return path.string();
}

const std::string kTriangle = "p 3\nvertices 3\nedge 0 1\nedge 0 2\nedge 1 2\n";
const std::string kPair = "p 3\nvertices 5\nedge 0 1 2\nedge 2 3 4\n";

}  // namespace

TEST_CASE("triangle commands") {
    const auto tri = write_temp("triangle.hg", kTriangle);

    auto r = run({"reach", tri, "--from", "1,1,1", "--to", "2,2,2", "--mode", "oracle"});
    CHECK(r.code == 1);
    CHECK(r.out.rfind("unreachable\n", 0) == 0);

    r = run({"reach", tri, "--from", "1,1,1", "--to", "2,2,2", "--mode", "algebraic"});
    CHECK(r.code == 2);
    CHECK(r.err.find("NotGood") != std::string::npos);

    r = run({"check-good", tri});
    CHECK(r.code == 1);
    CHECK(r.out.find("good=false") != std::string::npos);
    std::size_t small = 0;
    for (std::size_t at = r.out.find("SmallEdge"); at != std::string::npos; at = r.out.find("SmallEdge", at + 1)) ++small;
    CHECK(small == 3);

    r = run({"reach", tri, "--from", "1,0,0", "--to", "0,2,2", "--necessary-only"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("inconclusive", 0) == 0);

    r = run({"reach", tri, "--from", "1,1,1", "--to", "0,0,0", "--allow-nongood", "--witness"});
    CHECK(r.code == 0);
    CHECK(r.out.find("v 0 e") != std::string::npos);

    r = run({"orbit", tri, "--from", "1,1,1", "--list"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("states 8\n", 0) == 0);
}

TEST_CASE("decisions, schedules and verification") {
    const auto pair = write_temp("pair.hg", kPair);
    auto r = run({"reach", pair, "--from", "1,0,0,0,0", "--to", "0,1,1,0,0"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("reachable\n", 0) == 0);

    const auto five = write_temp("five.hg", "p 3\nvertices 5\nedge 0 1 2 3 4\n");
    r = run({"reach", five, "--from", "1,0,0,0,0", "--to", "1,1,0,0,0"});
    CHECK(r.code == 1);
    CHECK(r.out.rfind("unreachable\n", 0) == 0);

    r = run({"recur", pair, "--from", "1,0,0,0,0", "--to", "0,0,0,0,0"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("recurrent\n", 0) == 0);

    r = run({"classify", pair, "--state", "0,0,0,0,0"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("RecurrentOrInaccessible", 0) == 0);

    r = run({"schedule", pair, "--from", "1,0,0,0,0", "--to", "2,1,0,2,2"});
    REQUIRE(r.code == 0);
    const auto sched = write_temp("pair.sched", r.out);
    r = run({"verify", pair, "--from", "1,0,0,0,0", "--to", "2,1,0,2,2", "--schedule", sched});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("verified", 0) == 0);
    r = run({"verify", pair, "--from", "1,0,0,0,0", "--to", "2,1,0,2,0", "--schedule", sched});
    CHECK(r.code == 1);
    const auto bad = write_temp("bad.sched", "v 0 e 0\nv 0 e 0\n");
    r = run({"verify", pair, "--from", "1,0,0,0,0", "--to", "0,0,0,0,0", "--schedule", bad});
    CHECK(r.code == 1);
    CHECK(r.out.rfind("illegal move", 0) == 0);

    r = run({"schedule", pair, "--from", "1,0,0,0,0", "--to", "2,2,2,2,2"});
    CHECK(r.code == 1);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    const auto pair = write_temp("pair.hg", kPair);
    CHECK(run({"reach", pair, "--from", "1,0,0"}).code == 2);
    CHECK(run({"reach", pair, "--from", "1,0,0", "--to", "0,0,0"}).code == 2);
    CHECK(run({"reach", pair, "--from", "1,0,0,0,0", "--to", "0,0,0,0,0", "--mode", "quick"}).code == 2);
    CHECK(run({"reach", "/nonexistent.hg", "--from", "1", "--to", "1"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    const auto five = write_temp("prime.hg", "p 4\nvertices 3\nedge 0 1 2\n");
    CHECK(run({"reach", five, "--from", "1,0,0", "--to", "0,1,1", "--mode", "algebraic"}).code == 2);
}

TEST_CASE("resource bounds") {
    const auto big = write_temp("big.hg", "p 5\nvertices 9\nedge 0 1 2 3 4 5 6 7 8\n");
    CHECK(run({"orbit", big, "--from", "1,0,0,0,0,0,0,0,0", "--max-states", "100"}).code == 3);
}

TEST_CASE("generator command") {
    auto r = run({"gen", "-n", "5", "-m", "2", "--seed", "1"});
    CHECK(r.code == 0);
    const auto inst = parse_hypergraph(r.out);
    CHECK(is_good(inst.graph).good);
    CHECK(run({"gen", "-n", "3", "-m", "2"}).code == 1);
}

TEST_CASE("selftest command") {
    const auto tri = write_temp("triangle.hg", kTriangle);
    auto r = run({"selftest", "--max-n", "5", "--include", tri, "--allow-nongood", "--necessary-only", "--json"});
    CHECK(r.code == 0);
    const auto rep = report_from_json(Json::parse(r.out));
    CHECK(rep.answer == "pass");
    CHECK(rep.stats["nongood_divergences"].get<std::size_t>() > 0);
    CHECK(rep.stats["mismatches"].get<std::size_t>() == 0);
    CHECK(run({"selftest", "--max-n", "5", "--include", tri}).code == 2);

    SelftestConfig empty;
    empty.family_max_n = 0;
    empty.family_max_m = 0;
    const auto e = selftest(empty);
    CHECK(e.graphs == 0);
    CHECK(e.passed());
}

TEST_CASE("json reports round-trip") {
    const auto pair = write_temp("pair.hg", kPair);
    const std::vector<std::vector<std::string>> commands{
        {"check-good", pair},
        {"reach", pair, "--from", "1,0,0,0,0", "--to", "0,1,1,0,0", "--witness"},
        {"reach", pair, "--from", "1,0,0,0,0", "--to", "1,1,0,0,0"},
        {"reach", pair, "--from", "1,0,0,0,0", "--to", "2,2,2,2,2"},
        {"recur", pair, "--from", "1,0,0,0,0", "--to", "0,1,1,0,0"},
        {"classify", pair, "--state", "1,1,1,0,0"},
        {"orbit", pair, "--from", "1,0,0,0,0", "--list"},
        {"schedule", pair, "--from", "1,0,0,0,0", "--to", "0,1,1,0,0"},
        {"gen", "-n", "7", "-m", "3"}};
    for (auto args : commands) {
        args.push_back("--json");
        const auto r = run(args);
        const auto j = Json::parse(r.out);
        for (const char* key : {"command", "input_digest", "answer", "method", "certificate", "stats"}) {
            CHECK(j.contains(key));
        }
        const auto rep = report_from_json(j);
        CHECK(rep.command == args[0]);
        CHECK(to_json(rep) == j);
        CHECK(report_from_json(Json::parse(to_json(rep).dump())) == rep);
        CHECK(run(args).out == r.out);
    }

    const std::vector<Certificate> certs{ResidueVector{1, 0, 2}, Schedule{{0, 1}, {2, 0}}, UnsolvabilityRank{2, 3},
                                         OrbitExhausted{8}, NoPredecessor{}};
    for (const auto& c : certs) CHECK(certificate_from_json(Json::parse(certificate_to_json(c).dump())) == c);
    CHECK_THROWS_AS(report_from_json(Json::parse("{\"command\": 3}")), Error);
    CHECK(input_digest("a") != input_digest("b"));
    CHECK(input_digest("a").size() == 16);
}
