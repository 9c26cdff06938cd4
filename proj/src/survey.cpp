#include "sdpkit/survey.hpp"

#include "sdpkit/errors.hpp"
#include "sdpkit/product.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace sdpkit {

TableResult run_table(const DifferenceSet& dn, const DifferenceSet& dh, const ClassifyOptions& options) {
    TableResult result;
    result.homs = homomorphisms_to_aut(dh.group(), dn.group());
    result.designs.reserve(result.homs.size());
    for (const auto& phi : result.homs) result.designs.push_back(develop(product_ds(make_product_spec(dn, dh, phi))).matrix);
    result.classification = classify(result.designs, options);

    std::vector<std::string> labels;
    for (const auto& phi : result.homs) labels.push_back(phi.spec());
    result.report = classification_report(result.classification, result.designs, labels,
                                          "N = " + dn.group()->spec() + ", H = " + dh.group()->spec() + ", " +
                                              std::to_string(result.homs.size()) + " homomorphisms H -> Aut(N)");

    for (std::size_t c = 0; c < result.report.rows.size(); ++c) {
        const auto& cls = result.classification.classes[c];
        auto& row = result.report.rows[c];
        const std::size_t gens = dh.group()->generators().size();
        std::vector<std::set<std::string>> seen(gens);
        for (auto m : cls.members) {
            const auto lines = describe_homomorphism(result.homs[m]);
            for (std::size_t g = 0; g < gens; ++g) seen[g].insert(lines[g]);
        }
        row.images.clear();
        for (auto& s : seen) row.images.emplace_back(s.begin(), s.end());
    }
    return result;
}

Report classification_report(const ClassificationReport& classification, const std::vector<BitMatrix>& designs,
                             const std::vector<std::string>& labels, std::string title) {
    Report report;
    report.title = std::move(title);
    for (std::size_t c = 0; c < classification.classes.size(); ++c) {
        const auto& cls = classification.classes[c];
        ReportRow row;
        row.class_id = c + 1;
        row.size = cls.members.size();
        row.two_rank = cls.invariant.two_rank;
        row.sdp = has_sdp(designs[cls.representative]).holds;
        row.representative_hom_spec =
            cls.representative < labels.size() ? labels[cls.representative] : std::to_string(cls.representative);
        report.rows.push_back(std::move(row));
    }
    return report;
}

// --- command line ----------------------------------------------------------------

namespace {

struct Settings {
    std::size_t jobs = 0;
    std::string format = "text";
    std::string out_dir;
    std::uint64_t budget = kDefaultSearchBudget;

    ReportFormat report_format() const { return format == "csv" ? ReportFormat::Csv : ReportFormat::Text; }
    ClassifyOptions classify_options() const { return ClassifyOptions{budget, jobs}; }
};

struct NamedSet {
    std::string label;
    DifferenceSet ds;
};

struct NamedDesign {
    std::string label;
    BitMatrix matrix;
    std::optional<DifferenceSet> ds;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool looks_like_matrix(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream head(line);
        std::size_t r = 0;
        std::size_t c = 0;
        std::string rest;
        return static_cast<bool>(head >> r >> c) && !(head >> rest);
    }
    return false;
}

// "@name" for a builtin entry, an inline "<group> | <words>" line, or a .ds file.
std::vector<NamedSet> load_sets(const std::string& arg) {
    if (!arg.empty() && arg.front() == '@') {
        auto e = find_builtin(std::string_view(arg).substr(1));
        if (!e) throw ParameterError("no catalog entry named " + arg.substr(1));
        return {NamedSet{e->name, e->ds}};
    }
    if (!std::filesystem::exists(arg) && arg.find('|') != std::string::npos) {
        return {NamedSet{arg, parse_ds_line(arg)}};
    }
    std::vector<NamedSet> out;
    for (auto& d : parse_ds_file(read_file(arg))) out.push_back(NamedSet{serialize_ds(d), std::move(d)});
    if (out.empty()) throw ParameterError(arg + " holds no difference sets");
    return out;
}

DifferenceSet load_one_set(const std::string& arg) {
    auto sets = load_sets(arg);
    if (sets.size() != 1) throw ParameterError(arg + " holds " + std::to_string(sets.size()) + " sets, expected one");
    return std::move(sets.front().ds);
}

// Adds "symplectic:n" and 0/1 matrix files to the set sources.
std::vector<NamedDesign> load_designs(const std::string& arg) {
    if (arg.rfind("symplectic:", 0) == 0) {
        const auto n = std::stoul(arg.substr(11));
        return {NamedDesign{arg, symplectic_matrix(n), std::nullopt}};
    }
    if (std::filesystem::exists(arg) && arg.front() != '@') {
        const auto text = read_file(arg);
        if (looks_like_matrix(text)) return {NamedDesign{arg, bit_matrix_from_text(text), std::nullopt}};
    }
    std::vector<NamedDesign> out;
    for (auto& s : load_sets(arg)) out.push_back(NamedDesign{s.label, develop(s.ds).matrix, s.ds});
    return out;
}

void emit(const Settings& settings, const std::string& file, const std::string& text, std::ostream& out) {
    if (settings.out_dir.empty()) {
        out << text;
        return;
    }
    std::filesystem::create_directories(settings.out_dir);
    const auto path = std::filesystem::path(settings.out_dir) / file;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParameterError("cannot write " + path.string());
    f << text;
    out << "wrote " << path.string() << '\n';
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join_perm(const std::vector<std::uint32_t>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i != 0) s += ' ';
        s += std::to_string(p[i]);
    }
    return s;
}

int cmd_verify(const std::vector<std::string>& inputs, std::ostream& out) {
    int code = exit_code::kSuccess;
    for (const auto& input : inputs) {
        try {
            for (const auto& s : load_sets(input)) {
                const auto auto_corr = signed_autocorrelation(s.ds);
                const auto v = static_cast<std::int64_t>(s.ds.params().v);
                out << serialize_ds(s.ds) << '\n';
                out << "parameters: " << to_string(s.ds.params()) << '\n';
                out << "difference set: yes\n";
                out << "D D^(-1) = " << v << "*1: " << yes_no(auto_corr.is_scalar(v)) << '\n';
                if (!s.ds.group()->is_two_group()) out << "note: " << s.ds.group()->spec() << " is not a 2-group\n";
            }
        } catch (const NotADifferenceSetError& e) {
            out << input << '\n' << "difference set: no\n" << e.what() << '\n';
            code = exit_code::kNegative;
        }
    }
    return code;
}

int cmd_sdp(const std::vector<std::string>& inputs, std::optional<std::size_t> symplectic, std::ostream& out) {
    std::vector<NamedDesign> designs;
    if (symplectic) designs.push_back(NamedDesign{"symplectic:" + std::to_string(*symplectic),
                                                  symplectic_matrix(*symplectic), std::nullopt});
    for (const auto& in : inputs) {
        for (auto& d : load_designs(in)) designs.push_back(std::move(d));
    }
    if (designs.empty()) throw ParameterError("sdp: nothing to check");
    int code = exit_code::kSuccess;
    for (const auto& d : designs) {
        const auto report = has_sdp(d.matrix);
        const auto screen = sdp_rank_screen(d.matrix);
        std::size_t bent = 0;
        std::size_t bent_applicable = 0;
        const std::size_t cols = d.matrix.cols();
        if (cols > 0 && std::has_single_bit(cols) && std::countr_zero(cols) % 2 == 0) {
            bent_applicable = d.matrix.rows();
            for (std::size_t i = 0; i < d.matrix.rows(); ++i) bent += is_bent(d.matrix.row(i)) ? 1 : 0;
        }
        out << d.label << '\n';
        out << "points: " << d.matrix.cols() << ", blocks: " << d.matrix.rows() << '\n';
        out << "two_rank: " << rank2(d.matrix) << '\n';
        out << "rank screen (2n+2): " << (screen.holds ? "pass" : "fail") << '\n';
        if (bent_applicable != 0) out << "bent rows: " << bent << "/" << bent_applicable << '\n';
        out << "SDP: " << (report.holds ? "holds" : "fails") << '\n';
        if (report.witness) {
            const auto& w = *report.witness;
            out << "witness: rows " << w.i << ", " << w.j << ", " << w.k << " sum to " << w.sum.to_string()
                << ", neither a block nor a block complement\n";
            code = exit_code::kNegative;
        }
    }
    return code;
}

int cmd_product(const std::string& a, const std::string& b, const std::string& phi_spec, const Settings& settings,
                std::ostream& out) {
    const auto d1 = load_one_set(a);
    const auto d2 = load_one_set(b);
    std::optional<HomomorphismToAut> phi;
    if (!phi_spec.empty()) phi = parse_phi(d2.group(), d1.group(), phi_spec);
    const auto spec = make_product_spec(d1, d2, phi);
    const auto d = product_ds(spec);
    const auto dev = develop(d);
    const auto sdp = has_sdp(dev);
    emit(settings, "product.ds", serialize_ds(d) + '\n', out);
    out << "parameters: " << to_string(d.params()) << '\n';
    out << "two_rank: " << two_rank(dev) << '\n';
    out << "SDP: " << (sdp.holds ? "holds" : "fails") << '\n';
    if (phi) {
        const auto direct = make_product_spec(d1, d2);
        out << "fixes: " << yes_no(fixes_ds(*phi, d1)) << '\n';
        out << "fixes (every element of H): " << yes_no(fixes_ds_everywhere(*phi, d1)) << '\n';
        out << "developments equal: " << yes_no(developments_equal(spec, direct)) << '\n';
    }
    return exit_code::kSuccess;
}

int cmd_enum_homs(const std::string& h_spec, const std::string& n_spec, const Settings& settings, std::ostream& out) {
    const auto h = parse_group(h_spec);
    const auto n = parse_group(n_spec);
    const auto homs = homomorphisms_to_aut(h, n);
    std::string text;
    if (settings.report_format() == ReportFormat::Csv) {
        text = "index,spec\n";
        for (std::size_t i = 0; i < homs.size(); ++i) text += std::to_string(i) + ",\"" + homs[i].spec() + "\"\n";
    } else {
        for (std::size_t i = 0; i < homs.size(); ++i) {
            text += std::to_string(i) + ": " + homs[i].spec() + '\n';
        }
        text += std::to_string(homs.size()) + " homomorphisms " + h->spec() + " -> Aut(" + n->spec() + ")\n";
    }
    emit(settings, settings.report_format() == ReportFormat::Csv ? "homs.csv" : "homs.txt", text, out);
    return exit_code::kSuccess;
}

int finish_classification(const ClassificationReport& cls, const Report& report,
                          const std::vector<std::string>& labels, const Settings& settings, std::ostream& out) {
    const bool csv = settings.report_format() == ReportFormat::Csv;
    emit(settings, csv ? "report.csv" : "report.txt", emit_report(report, settings.report_format()), out);
    if (!settings.out_dir.empty()) emit(settings, "witnesses.txt", emit_witnesses(cls, labels), out);
    if (!csv && cls.classes.size() > 1) {
        const auto text = emit_separations(cls);
        if (settings.out_dir.empty()) out << "\nseparated by\n";
        emit(settings, "separations.txt", text, out);
    }
    if (!cls.resolved()) {
        out << "unresolved: the search budget ran out for at least one comparison\n";
        return exit_code::kFeasibility;
    }
    return exit_code::kSuccess;
}

int cmd_table(const std::string& n_arg, const std::string& h_arg, const Settings& settings, std::ostream& out) {
    const auto dn = load_one_set(n_arg);
    const auto dh = load_one_set(h_arg);
    const auto result = run_table(dn, dh, settings.classify_options());
    std::vector<std::string> labels;
    for (const auto& phi : result.homs) labels.push_back(phi.spec());
    return finish_classification(result.classification, result.report, labels, settings, out);
}

int cmd_classify(const std::vector<std::string>& inputs, const Settings& settings, std::ostream& out) {
    std::vector<BitMatrix> designs;
    std::vector<std::string> labels;
    for (const auto& in : inputs) {
        for (auto& d : load_designs(in)) {
            designs.push_back(std::move(d.matrix));
            labels.push_back(std::move(d.label));
        }
    }
    const auto cls = classify(designs, settings.classify_options());
    const auto report =
        classification_report(cls, designs, labels, std::to_string(designs.size()) + " designs");
    return finish_classification(cls, report, labels, settings, out);
}

int cmd_iso(const std::string& a_arg, const std::string& b_arg, const Settings& settings, std::ostream& out) {
    auto a = load_designs(a_arg);
    auto b = load_designs(b_arg);
    if (a.size() != 1 || b.size() != 1) throw ParameterError("iso: each argument must name exactly one design");
    const auto r = are_isomorphic(a.front().matrix, b.front().matrix, settings.budget);
    switch (r.verdict) {
        case IsoResult::Verdict::Isomorphic:
            out << "isomorphic\n";
            emit(settings, "witness.txt",
                 "rows: " + join_perm(r.witness->row_perm) + "\ncols: " + join_perm(r.witness->col_perm) + '\n', out);
            return exit_code::kSuccess;
        case IsoResult::Verdict::NotIsomorphic:
            out << "not isomorphic (separated by " << r.separated_by << ")\n";
            return exit_code::kNegative;
        case IsoResult::Verdict::Indeterminate:
            out << "indeterminate after " << r.nodes << " search nodes\n";
            return exit_code::kFeasibility;
    }
    return exit_code::kInternal;
}

int cmd_catalog(std::optional<std::size_t> groupings, const Settings& settings, std::ostream& out) {
    const auto entries = builtin_catalog();
    if (groupings) {
        std::vector<CatalogSet> sets;
        for (const auto& e : entries) sets.push_back(CatalogSet{e.ds, e.sdp});
        const auto report = grouping_report(*groupings, sets);
        std::string text;
        for (const auto& g : report.groupings) {
            std::string name;
            for (std::size_t i = 0; i < g.factors.size(); ++i) name += (i ? " x " : "") + g.factors[i].group_spec;
            text += name + ": " + (g.produces_sdp ? "SDP-producing" : "no product SDP set") + " (" + g.basis + ")\n";
        }
        text += std::to_string(report.groupings.size()) + " groupings of " + std::to_string(*groupings) + '\n';
        emit(settings, "groupings.txt", text, out);
        return exit_code::kSuccess;
    }
    std::string text;
    if (settings.report_format() == ReportFormat::Csv) {
        text = "name,provenance,group,parameters,sdp\n";
        for (const auto& e : entries) {
            text += e.name + ',' + to_string(e.provenance) + ',' + e.group_spec + ",\"" + to_string(e.ds.params()) +
                    "\"," + yes_no(e.sdp) + '\n';
        }
    } else {
        text = serialize_catalog(entries);
    }
    emit(settings, settings.report_format() == ReportFormat::Csv ? "catalog.csv" : "catalog.txt", text, out);
    return exit_code::kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Difference sets, symmetric designs and the symmetric difference property"};
    app.name("sdpkit");
    app.require_subcommand(1);
    Settings settings;
    app.add_option("--jobs", settings.jobs, "Worker threads (0 = all cores)");
    app.add_option("--format", settings.format, "Report format")->check(CLI::IsMember({"text", "csv"}));
    app.add_option("--out", settings.out_dir, "Write artifacts into this directory");
    app.add_option("--budget", settings.budget, "Isomorphism search nodes per comparison");

    std::vector<std::string> inputs;
    std::string first;
    std::string second;
    std::string phi;
    std::optional<std::size_t> symplectic_n;
    std::size_t n = 0;
    std::optional<std::size_t> groupings;

    auto* verify = app.add_subcommand("verify", "Verify difference sets and their signed autocorrelation");
    verify->add_option("sets", inputs, ".ds files, @catalog names or inline lines")->required();
    auto* sdp = app.add_subcommand("sdp", "Check the symmetric difference property");
    sdp->add_option("designs", inputs, ".ds, matrix, @name or symplectic:n");
    sdp->add_option("--symplectic", symplectic_n, "Check symplectic_matrix(n)");
    auto* dev = app.add_subcommand("develop", "Print the incidence matrix of a development");
    dev->add_option("set", first)->required();
    auto* prod = app.add_subcommand("product", "Product construction of two difference sets");
    prod->add_option("first", first)->required();
    prod->add_option("second", second)->required();
    prod->add_option("--phi", phi, "Homomorphism from the second group into Aut(first)");
    auto* homs = app.add_subcommand("enum-homs", "Enumerate homomorphisms H -> Aut(N)");
    homs->add_option("H", first)->required();
    homs->add_option("N", second)->required();
    auto* table = app.add_subcommand("table", "Classify the developments over every N x|_phi H");
    table->add_option("N-set", first)->required();
    table->add_option("H-set", second)->required();
    auto* iso = app.add_subcommand("iso", "Test two designs for isomorphism");
    iso->add_option("A", first)->required();
    iso->add_option("B", second)->required();
    auto* cls = app.add_subcommand("classify", "Classify designs up to isomorphism");
    cls->add_option("designs", inputs)->required();
    auto* symp = app.add_subcommand("symplectic", "Print symplectic_matrix(n)");
    symp->add_option("n", n)->required();
    auto* cat = app.add_subcommand("catalog", "List the builtin catalog");
    cat->add_option("--groupings", groupings, "Report the catalog groupings of v");

    for (auto* sub : {verify, sdp, dev, prod, homs, table, iso, cls, symp, cat}) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::kSuccess : exit_code::kUsage;
    }

    try {
        if (*verify) return cmd_verify(inputs, out);
        if (*sdp) return cmd_sdp(inputs, symplectic_n, out);
        if (*dev) {
            emit(settings, "matrix.txt", to_text(develop(load_one_set(first)).matrix), out);
            return exit_code::kSuccess;
        }
        if (*prod) return cmd_product(first, second, phi, settings, out);
        if (*homs) return cmd_enum_homs(first, second, settings, out);
        if (*table) return cmd_table(first, second, settings, out);
        if (*iso) return cmd_iso(first, second, settings, out);
        if (*cls) return cmd_classify(inputs, settings, out);
        if (*symp) {
            emit(settings, "matrix.txt", to_text(symplectic_matrix(n)), out);
            return exit_code::kSuccess;
        }
        if (*cat) return cmd_catalog(groupings, settings, out);
    } catch (const NotADifferenceSetError& e) {
        err << "not a difference set: " << e.what() << '\n';
        return exit_code::kNegative;
    } catch (const FeasibilityError& e) {
        err << "guard exceeded: " << e.what() << '\n';
        return exit_code::kFeasibility;
    } catch (const InternalFault& e) {
        err << "internal fault: " << e.what() << '\n';
        return exit_code::kInternal;
    } catch (const CatalogCorruptionError& e) {
        err << "catalog corruption: " << e.what() << '\n';
        return exit_code::kInternal;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kUsage;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kUsage;
    } catch (const std::exception& e) {
        err << "internal fault: " << e.what() << '\n';
        return exit_code::kInternal;
    }
    return exit_code::kUsage;
}

}  // namespace sdpkit
