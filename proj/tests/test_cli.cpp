#include "sdpkit/survey.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sdpkit;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("verify") {
    auto r = run({"verify", "@C8xC2-seed"});
    CHECK(r.code == exit_code::kSuccess);
    CHECK(has(r.out, "(16,6,2)"));
    r = run({"verify", "C8 | 1, x"});
    CHECK(r.code == exit_code::kNegative);
    r = run({"verify", "C8xC2 | 1, q"});
    CHECK(r.code == exit_code::kUsage);
    CHECK(has(r.err, "q"));
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == exit_code::kUsage);
    CHECK(run({"frobnicate"}).code == exit_code::kUsage);
    CHECK(run({"iso", "@C4-trivial"}).code == exit_code::kUsage);
    CHECK(run({"--format", "xml", "catalog"}).code == exit_code::kUsage);
    CHECK(run({"verify", "/nonexistent/file.ds"}).code == exit_code::kUsage);
}

TEST_CASE("sdp") {
    auto r = run({"sdp", "@C8xC2-seed"});
    CHECK(r.code == exit_code::kSuccess);
    r = run({"sdp", "--symplectic", "2"});
    CHECK(r.code == exit_code::kSuccess);
}

TEST_CASE("product reports the fixing condition") {
    auto r = run({"product", "@C8xC2-seed", "@C4-trivial", "--phi", "z->z^5,w->w"});
    CHECK(r.code == exit_code::kSuccess);
    CHECK(has(r.out, "(64,28,12)"));
    CHECK(has(r.out, "fixes: yes"));
    r = run({"product", "@C8xC2-seed", "@C4-trivial", "--phi", "z->z^3,w->w"});
    CHECK(r.code == exit_code::kSuccess);
    CHECK(has(r.out, "fixes: no"));
    r = run({"product", "@C8xC2-seed", "@C4-trivial", "--phi", "z->w,w->z"});
    CHECK(r.code == exit_code::kUsage);
}

TEST_CASE("iso verdicts map to exit codes") {
    CHECK(run({"iso", "@C2^4-product", "symplectic:2"}).code == exit_code::kSuccess);
    std::string non_sdp;
    for (const auto& d : enumerate_difference_sets(parse_group("C8xC2"), 6)) {
        if (!has_sdp(develop(d)).holds) {
            non_sdp = serialize_ds(d);
            break;
        }
    }
    const auto r = run({"iso", non_sdp, "symplectic:2"});
    CHECK(r.code == exit_code::kNegative);
    CHECK(has(r.out, "separated by two_rank"));
    // Shapes differ.
    CHECK(run({"iso", "@C8xC2-seed", "symplectic:1"}).code == exit_code::kUsage);
}

TEST_CASE("homomorphism enumeration and its guard") {
    const auto r = run({"enum-homs", "C4", "C8xC2"});
    CHECK(r.code == exit_code::kSuccess);
    CHECK(has(r.out, "16 homomorphisms C4 -> Aut(C8xC2)"));
    CHECK(run({"enum-homs", "C2", "C128"}).code == exit_code::kFeasibility);
    CHECK(run({"catalog", "--groupings", "32"}).code == exit_code::kUsage);
}

TEST_CASE("catalog and groupings") {
    auto r = run({"catalog"});
    CHECK(r.code == exit_code::kSuccess);
    CHECK(has(r.out, "C8xC2-seed [paper]"));
    r = run({"catalog", "--groupings", "64"});
    CHECK(r.code == exit_code::kSuccess);
    CHECK(has(r.out, "24 groupings of 64"));
}

TEST_CASE("table writes artifacts") {
    const auto dir = std::filesystem::temp_directory_path() / "sdpkit-cli-test";
    std::filesystem::remove_all(dir);
    auto r = run({"--format", "csv", "--out", dir.string(), "table", "@C8xC2-seed", "@C4-trivial"});
    CHECK(r.code == exit_code::kSuccess);
    std::vector<std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) files.push_back(e.path().filename().string());
    CHECK(!files.empty());
    std::filesystem::remove_all(dir);
}

TEST_CASE("a trivial H gives a single class") {
    const auto r = run({"table", "@C8xC2-seed", "C1 | 1"});
    CHECK(r.code == exit_code::kSuccess);
    CHECK(has(r.out, "1 class"));
}

TEST_CASE("a design is isomorphic to itself by the identity") {
    const auto r = run({"iso", "@C8xC2-seed", "@C8xC2-seed"});
    CHECK(r.code == exit_code::kSuccess);
    CHECK(has(r.out, "rows: 0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15\n"));
}
