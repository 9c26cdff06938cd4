#include "sdpkit/catalog.hpp"

#include "sdpkit/errors.hpp"
#include "sdpkit/product.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sdpkit {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Paper:
            return "paper";
        case Provenance::Derived:
            return "derived";
        case Provenance::User:
            return "user";
    }
    return "user";
}

std::optional<Provenance> parse_provenance(std::string_view text) {
    if (text == "paper") return Provenance::Paper;
    if (text == "derived") return Provenance::Derived;
    if (text == "user") return Provenance::User;
    return std::nullopt;
}

namespace {

bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string_view strip_comment(std::string_view line) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

struct ParsedLine {
    DifferenceSet ds;
    std::vector<std::string> words;
};

// `column_base` is the 1-based column of line[0] in the enclosing input.
ParsedLine parse_ds_text(std::string_view line, std::size_t line_number, std::size_t column_base) {
    line = strip_comment(line);
    const auto bar = line.find('|');
    if (bar == std::string_view::npos) {
        throw ParseError("expected '|' between the group and its members", line_number, column_base + line.size());
    }
    GroupPtr g;
    try {
        g = parse_group(line.substr(0, bar));
    } catch (const ParseError& e) {
        throw ParseError(e.what(), line_number, column_base + e.column() - 1);
    }

    ParsedLine out;
    std::vector<Element> members;
    std::size_t start = bar + 1;
    while (true) {
        const auto comma = line.find(',', start);
        const auto end = comma == std::string_view::npos ? line.size() : comma;
        const auto word = line.substr(start, end - start);
        members.push_back(parse_word(*g, word, primary_generator_names(), line_number, column_base + start));
        out.words.emplace_back(trim(word));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    out.ds = verify_difference_set(g, std::move(members));
    return out;
}

CatalogEntry load_entry(std::string name, Provenance provenance, std::string_view ds_line) {
    CatalogEntry e;
    e.name = std::move(name);
    e.provenance = provenance;
    try {
        auto parsed = parse_ds_text(ds_line, 1, 1);
        e.group_spec = parsed.ds.group()->spec();
        e.members = std::move(parsed.words);
        e.ds = std::move(parsed.ds);
    } catch (const Error& err) {
        throw CatalogCorruptionError("catalog entry " + e.name + ": " + err.what());
    }
    e.sdp = has_sdp(develop(e.ds)).holds;
    return e;
}

std::string member_words(const DifferenceSet& d) {
    std::string out;
    for (std::size_t i = 0; i < d.members().size(); ++i) {
        if (i != 0) out += ", ";
        out += d.group()->word(d.members()[i]);
    }
    return out;
}

}  // namespace

std::string serialize_ds(const DifferenceSet& d) { return d.group()->spec() + " | " + member_words(d); }

DifferenceSet parse_ds_line(std::string_view line, std::size_t line_number) {
    return parse_ds_text(line, line_number, 1).ds;
}

std::vector<DifferenceSet> parse_ds_file(std::string_view text) {
    std::vector<DifferenceSet> sets;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (blank(strip_comment(lines[i]))) continue;
        sets.push_back(parse_ds_text(lines[i], i + 1, 1).ds);
    }
    return sets;
}

std::vector<CatalogEntry> builtin_catalog() {
    std::vector<CatalogEntry> entries;
    entries.push_back(load_entry("C4-trivial", Provenance::Paper, "C4 | 1"));
    entries.push_back(load_entry("C2^2-trivial", Provenance::Paper, "C2xC2 | 1"));
    entries.push_back(load_entry("C8xC2-seed", Provenance::Paper, "C8xC2 | 1, x, x^2, x^5, y, x^6*y"));

    const DifferenceSet c4 = entries[0].ds;
    const DifferenceSet klein = entries[1].ds;
    auto derived = [&](std::string name, const DifferenceSet& d1, const DifferenceSet& d2) {
        entries.push_back(load_entry(std::move(name), Provenance::Derived,
                                     serialize_ds(product_ds(make_product_spec(d1, d2)))));
    };
    derived("C2^4-product", klein, klein);
    derived("C4xC4-product", c4, c4);
    derived("C4xC2^2-product", c4, klein);

    for (const auto& e : entries) {
        if (!e.sdp) throw CatalogCorruptionError("catalog entry " + e.name + " fails the SDP scan");
    }
    return entries;
}

std::optional<CatalogEntry> find_builtin(std::string_view name) {
    for (auto& e : builtin_catalog()) {
        if (e.name == name) return std::move(e);
    }
    return std::nullopt;
}

std::string serialize_catalog(const std::vector<CatalogEntry>& entries) {
    std::string out;
    for (const auto& e : entries) {
        out += e.name + " [" + to_string(e.provenance) + "] sdp=" + (e.sdp ? "yes" : "no") + " : " + e.group_spec +
               " | ";
        for (std::size_t i = 0; i < e.members.size(); ++i) {
            if (i != 0) out += ", ";
            out += e.members[i];
        }
        out += '\n';
    }
    return out;
}

std::vector<CatalogEntry> parse_catalog(std::string_view text) {
    std::vector<CatalogEntry> entries;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = strip_comment(lines[i]);
        if (blank(line)) continue;
        const std::size_t line_number = i + 1;
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError("expected ':' after the entry name", line_number, 1);

        std::istringstream head{std::string(line.substr(0, colon))};
        std::string name;
        std::string token;
        Provenance provenance = Provenance::User;
        head >> name;
        if (name.empty()) throw ParseError("missing entry name", line_number, 1);
        while (head >> token) {
            if (token.size() > 2 && token.front() == '[' && token.back() == ']') {
                const auto p = parse_provenance(std::string_view(token).substr(1, token.size() - 2));
                if (!p) throw ParseError("unknown provenance " + token, line_number, 1);
                provenance = *p;
            } else if (token.rfind("sdp=", 0) != 0) {
                throw ParseError("unexpected token '" + token + "'", line_number, 1);
            }
        }

        CatalogEntry e;
        e.name = std::move(name);
        e.provenance = provenance;
        auto parsed = parse_ds_text(line.substr(colon + 1), line_number, colon + 2);
        e.group_spec = parsed.ds.group()->spec();
        e.members = std::move(parsed.words);
        e.ds = std::move(parsed.ds);
        e.sdp = has_sdp(develop(e.ds)).holds;
        entries.push_back(std::move(e));
    }
    return entries;
}

// --- reports ---------------------------------------------------------------------

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> csv_split(std::string_view line, std::size_t line_number) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    if (quoted) throw ParseError("unterminated quoted field", line_number, line.size() + 1);
    return fields;
}

std::size_t csv_count(const std::string& s, std::size_t line_number) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
        throw ParseError("expected a count, got '" + s + "'", line_number, 1);
    }
    return std::stoul(s);
}

}  // namespace

std::string emit_report(const Report& report, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::Csv) {
        out += kReportCsvHeader;
        out += '\n';
        for (const auto& r : report.rows) {
            out += std::to_string(r.class_id) + ',' + std::to_string(r.size) + ',' + std::to_string(r.two_rank) + ',' +
                   (r.sdp ? "yes" : "no") + ',' + csv_field(r.representative_hom_spec) + '\n';
        }
        return out;
    }

    if (!report.title.empty()) out += report.title + "\n\n";
    const auto names = primary_generator_names();
    for (const auto& r : report.rows) {
        out += "Design " + std::to_string(r.class_id) + "   Rank: " + std::to_string(r.two_rank) +
               "   Total Designs: " + std::to_string(r.size) + "   SDP: " + (r.sdp ? "yes" : "no") + '\n';
        out += "  representative: " + r.representative_hom_spec + '\n';
        for (std::size_t g = 0; g < r.images.size(); ++g) {
            const std::string lead = "  " + names[g] + " ↦ ";
            for (std::size_t i = 0; i < r.images[g].size(); ++i) {
                out += (i == 0 ? lead : std::string(lead.size() - 2, ' ')) + r.images[g][i] + '\n';
            }
        }
        out += '\n';
    }
    out += std::to_string(report.rows.size()) + (report.rows.size() == 1 ? " class\n" : " classes\n");
    return out;
}

std::vector<ReportRow> parse_report_csv(std::string_view csv) {
    const auto lines = split_lines(csv);
    if (lines.empty() || trim(lines[0]) != kReportCsvHeader) {
        throw ParseError("expected the header " + std::string(kReportCsvHeader), 1, 1);
    }
    std::vector<ReportRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto line = lines[i];
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        const auto f = csv_split(line, i + 1);
        if (f.size() != 5) throw ParseError("expected 5 fields, got " + std::to_string(f.size()), i + 1, 1);
        if (f[3] != "yes" && f[3] != "no") throw ParseError("sdp must be yes or no", i + 1, 1);
        ReportRow r;
        r.class_id = csv_count(f[0], i + 1);
        r.size = csv_count(f[1], i + 1);
        r.two_rank = csv_count(f[2], i + 1);
        r.sdp = f[3] == "yes";
        r.representative_hom_spec = f[4];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string emit_witnesses(const ClassificationReport& report, const std::vector<std::string>& labels) {
    std::string out;
    auto join = [](const std::vector<std::uint32_t>& p) {
        std::string s;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i != 0) s += ' ';
            s += std::to_string(p[i]);
        }
        return s;
    };
    for (std::size_t c = 0; c < report.classes.size(); ++c) {
        const auto& cls = report.classes[c];
        for (std::size_t m = 0; m < cls.members.size(); ++m) {
            const auto idx = cls.members[m];
            out += "class " + std::to_string(c + 1) + " member " + std::to_string(idx);
            if (idx < labels.size()) out += " " + labels[idx];
            out += " -> representative " + std::to_string(cls.representative) + '\n';
            out += "rows: " + join(cls.witnesses[m].row_perm) + '\n';
            out += "cols: " + join(cls.witnesses[m].col_perm) + '\n';
        }
    }
    return out;
}

std::string emit_separations(const ClassificationReport& report) {
    std::string out;
    for (std::size_t a = 0; a < report.classes.size(); ++a) {
        for (std::size_t b = a + 1; b < report.classes.size(); ++b) {
            auto field = separating_field(report.classes[a].invariant, report.classes[b].invariant);
            if (field.empty()) field = "search";
            out += "Design " + std::to_string(a + 1) + " / Design " + std::to_string(b + 1) + ": " + field + '\n';
        }
    }
    return out;
}

}  // namespace sdpkit
