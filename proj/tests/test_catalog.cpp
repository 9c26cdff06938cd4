#include "oracles.hpp"
#include "sdpkit/catalog.hpp"
#include "sdpkit/errors.hpp"

#include <doctest.h>

using namespace sdpkit;

TEST_CASE("builtin entries re-verify on load") {
    const auto entries = builtin_catalog();
    REQUIRE(entries.size() >= 6);
    for (const auto& e : entries) {
        CAPTURE(e.name);
        CHECK(e.sdp);
        CHECK(e.ds.params() == menon_params(e.ds.group()->order()));
        CHECK(e.sdp == oracle::sdp(oracle::to_plain(develop(e.ds).matrix)));
        CHECK(e.members.size() == e.ds.members().size());
    }
    CHECK(find_builtin("C8xC2-seed")->provenance == Provenance::Paper);
    CHECK(find_builtin("C4xC4-product")->provenance == Provenance::Derived);
    CHECK_FALSE(find_builtin("nope"));
}

TEST_CASE("provenance names") {
    for (auto p : {Provenance::Paper, Provenance::Derived, Provenance::User}) CHECK(parse_provenance(to_string(p)) == p);
    CHECK_FALSE(parse_provenance("folklore"));
}

TEST_CASE("catalog text round trip") {
    const auto entries = builtin_catalog();
    const auto text = serialize_catalog(entries);
    const auto back = parse_catalog(text);
    REQUIRE(back.size() == entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        CHECK(back[i].name == entries[i].name);
        CHECK(back[i].provenance == entries[i].provenance);
        CHECK(back[i].ds == entries[i].ds);
        CHECK(back[i].members == entries[i].members);
        CHECK(back[i].sdp == entries[i].sdp);
    }
    CHECK(serialize_catalog(back) == text);
}

TEST_CASE("stored SDP flags never override the scan") {
    const auto g = parse_group("C8xC2");
    std::string line;
    for (const auto& d : enumerate_difference_sets(g, 6)) {
        if (!has_sdp(develop(d)).holds) {
            line = serialize_ds(d);
            break;
        }
    }
    REQUIRE(!line.empty());
    const auto entries = parse_catalog("forged [user] sdp=yes : " + line + "\n");
    REQUIRE(entries.size() == 1);
    CHECK_FALSE(entries[0].sdp);
}

TEST_CASE("ds lines") {
    const auto d = parse_ds_line("C8xC2 | 1, x, x^2, x^5, y, x^6*y  # worked set");
    CHECK(d.params() == DesignParams{16, 6, 2});
    CHECK(serialize_ds(d) == "C8xC2 | 1, x, x^2, x^5, y, x^6*y");
    CHECK(parse_ds_line(serialize_ds(d)) == d);

    const auto file = parse_ds_file("# seeds\n\nC4 | 1\nC2xC2 | x\n");
    REQUIRE(file.size() == 2);
    CHECK(file[1].params() == DesignParams{4, 1, 0});
}

TEST_CASE("ds parse errors carry positions") {
    try {
        (void)parse_ds_file("C4 | 1\nC8xC2 | 1, q\n");
        FAIL("expected an error");
    } catch (const UnknownGeneratorError& e) {
        CHECK(e.symbol() == "q");
        CHECK(e.line() == 2);
        CHECK(e.column() == 12);
    }
    try {
        (void)parse_ds_file("\nC4 1\n");
        FAIL("expected an error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_ds_file("C8 | 1, x\n"), NotADifferenceSetError);
    CHECK_THROWS_AS(parse_catalog("broken line without colon\n"), ParseError);
    CHECK_THROWS_AS(parse_catalog("x [nonsense] : C4 | 1\n"), ParseError);
}

TEST_CASE("report CSV round trip") {
    Report report;
    report.title = "demo";
    report.rows.push_back({1, 16, 10, true, "z->z,w->w/z->z,w->w", {}});
    report.rows.push_back({2, 40, 12, false, "z->z^5,w->w/z->z*w,w->w", {}});
    const auto csv = emit_report(report, ReportFormat::Csv);
    CHECK(csv.rfind(std::string(kReportCsvHeader) + "\n", 0) == 0);
    CHECK(parse_report_csv(csv) == report.rows);

    CHECK(parse_report_csv(emit_report(Report{}, ReportFormat::Csv)).empty());
    CHECK(emit_report(Report{}, ReportFormat::Csv) == std::string(kReportCsvHeader) + "\n");
    CHECK_THROWS_AS(parse_report_csv("a,b\n"), ParseError);
    CHECK_THROWS_AS(parse_report_csv(std::string(kReportCsvHeader) + "\n1,2,3,maybe,x\n"), ParseError);
    CHECK_THROWS_AS(parse_report_csv(std::string(kReportCsvHeader) + "\n1,2,3\n"), ParseError);
}

TEST_CASE("text report layout") {
    Report report;
    report.rows.push_back({1, 4, 8, true, "z->z^5,w->w", {{"φ_x(z) = z^5, φ_x(w) = w", "φ_x(z) = z, φ_x(w) = w"}}});
    const auto text = emit_report(report, ReportFormat::Text);
    CHECK(text.find("Design 1   Rank: 8   Total Designs: 4   SDP: yes") != std::string::npos);
    CHECK(text.find("x ↦ φ_x(z) = z^5, φ_x(w) = w") != std::string::npos);
    CHECK(text.find("1 class") != std::string::npos);
}
