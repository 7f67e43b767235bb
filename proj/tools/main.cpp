// Command-line front end: parses diagram/context documents, drives the
// engine, renders text or canonical JSON reports.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "strop/json_io.hpp"

namespace {

using namespace strop;

struct CommonOpts {
    std::string context_path;
    std::string in_path;
    std::string diagram;
    std::string format = "text";
    bool strict = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_input = true) {
    cmd->add_option("--context", o.context_path, "brane context JSON file");
    if (needs_input) cmd->add_option("--in", o.in_path, "input document JSON file");
    cmd->add_option("--diagram", o.diagram, "operate on a single named diagram");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--strict", o.strict, "exit 1 on negative domain verdicts");
}

InputDocument load_document(const CommonOpts& o) {
    if (o.in_path.empty()) fail("SemanticError", "--in is required for this subcommand");
    return parse_document(read_file(o.in_path));
}

BraneContext load_context(const CommonOpts& o, const InputDocument& doc) {
    if (!o.context_path.empty()) return parse_context_text(read_file(o.context_path));
    if (doc.context) return *doc.context;
    fail("SemanticError", "a brane context is required (--context or document context)");
}

SewingDiagram build_sewing(const DiagramEntry& e) {
    if (e.kind != DiagramKind::Sewing)
        fail("SemanticError", "diagram '" + e.name + "' is not a sewing diagram");
    return extend(e.edges, e.moves);
}

DiagramEntry entry_from_sewing(std::string name, const SewingDiagram& t) {
    DiagramEntry e;
    e.name = std::move(name);
    e.kind = DiagramKind::Sewing;
    e.edges = t.source;
    e.moves = t.moves;
    return e;
}

AnalysisReport analyze_saddle(const BraneContext& ctx, const DiagramEntry& e) {
    SaddleDiagram d = build_saddle(ctx, e.edges, e.points);
    AnalysisReport rep;
    rep.degree_shift = saddle_degree_shift(ctx, d);
    rep.classification = CobordismCase::CaseIV_V;
    for (std::size_t i = 0; i < d.point_labels.size(); ++i)
        if (d.point_labels[i].empty) {
            rep.vanishing.vanishes = true;
            rep.vanishing.reasons.push_back("empty interaction label " +
                                            fi_label_string(d.point_labels[i]) + " at point " +
                                            std::to_string(i));
        }
    for (const auto& e2 : d.target.edges)
        rep.target.factors.push_back(full_factor(e2.tail_label, e2.head_label));
    for (const auto& c : d.constant_components)
        rep.target.factors.push_back(meet_factor({c}, c.labels.empty() ? kTop : c.labels.front(),
                                                 c.labels.empty() ? kTop : c.labels.back()));
    if (rep.vanishing.vanishes)
        rep.target.factors = {zero_factor("", "")};
    return rep;
}

std::vector<const DiagramEntry*> selected(const InputDocument& doc, const CommonOpts& o) {
    std::vector<const DiagramEntry*> out;
    if (!o.diagram.empty()) {
        out.push_back(&find_diagram(doc, o.diagram));
    } else {
        for (const auto& d : doc.diagrams) out.push_back(&d);
    }
    return out;
}

int run_validate(const CommonOpts& o) {
    InputDocument doc = load_document(o);
    std::optional<BraneContext> ctx;
    if (!o.context_path.empty() || doc.context) ctx = load_context(o, doc);
    bool all_ok = true;
    for (const DiagramEntry* e : selected(doc, o)) {
        try {
            if (e->kind == DiagramKind::Sewing) {
                SewingDiagram t = build_sewing(*e);
                auto bad = validate(t.mid);
                for (const auto& b : bad) std::cout << e->name << ": " << b << "\n";
                all_ok = all_ok && bad.empty();
                if (bad.empty()) std::cout << e->name << ": ok\n";
            } else if (e->kind == DiagramKind::Saddle) {
                if (!ctx) fail("SemanticError", "saddle diagrams need a brane context");
                build_saddle(*ctx, e->edges, e->points);
                std::cout << e->name << ": ok\n";
            } else {
                if (ctx)
                    for (const auto& l : e->arc_labels) ctx->brane(l);
                std::cout << e->name << ": ok\n";
            }
        } catch (const Error& err) {
            std::cout << e->name << ": invalid [" << err.code() << "] " << err.what() << "\n";
            all_ok = false;
        }
    }
    return all_ok ? 0 : (o.strict ? 1 : 0);
}

int run_compose(const CommonOpts& o, const std::string& base, const std::string& elem) {
    InputDocument doc = load_document(o);
    SewingDiagram t = build_sewing(find_diagram(doc, base));
    SewingDiagram t2 = build_sewing(find_diagram(doc, elem));
    SewingDiagram composed = compose(t, t2);
    InputDocument out;
    out.diagrams.push_back(entry_from_sewing(base + "." + elem, composed));
    std::cout << render_document(out);
    return 0;
}

int run_decompose(const CommonOpts& o) {
    InputDocument doc = load_document(o);
    if (o.diagram.empty()) fail("SemanticError", "--diagram is required");
    SewingDiagram t = build_sewing(find_diagram(doc, o.diagram));
    InputDocument out;
    int i = 0;
    for (const SewingDiagram& e : decompose(t))
        out.diagrams.push_back(entry_from_sewing(o.diagram + ".t" + std::to_string(++i), e));
    std::cout << render_document(out);
    return 0;
}

int run_canonical(const CommonOpts& o) {
    InputDocument doc = load_document(o);
    if (o.diagram.empty()) fail("SemanticError", "--diagram is required");
    SewingDiagram t = build_sewing(find_diagram(doc, o.diagram));
    CanonicalDecomposition cd = canonical_decomposition(t);
    InputDocument out;
    out.diagrams.push_back(entry_from_sewing(o.diagram + ".merge", cd.t1));
    out.diagrams.push_back(entry_from_sewing(o.diagram + ".core", cd.t3));
    out.diagrams.push_back(entry_from_sewing(o.diagram + ".split", cd.t2));
    std::cout << render_document(out);
    return 0;
}

int run_normalize(const CommonOpts& o) {
    InputDocument doc = load_document(o);
    BraneContext ctx = load_context(o, doc);
    for (const DiagramEntry* e : selected(doc, o)) {
        if (o.diagram.empty() && e->kind != DiagramKind::Sewing) continue;
        NormalForm nf = normal_form(ctx, build_sewing(*e));
        std::cout << e->name << " " << digest(nf) << "\n";
    }
    return 0;
}

int run_equivalent(const CommonOpts& o, const std::string& a, const std::string& b) {
    InputDocument doc = load_document(o);
    BraneContext ctx = load_context(o, doc);
    SewingDiagram ta = build_sewing(find_diagram(doc, a));
    SewingDiagram tb = build_sewing(find_diagram(doc, b));
    Equivalence eq = check_equivalent(ctx, ta, tb);
    std::cout << (eq.equivalent ? "equivalent" : "not equivalent")
              << (eq.ambiguous ? " (label-preserving matching)" : "") << "\n";
    return (!eq.equivalent && o.strict) ? 1 : 0;
}

int run_analyze(const CommonOpts& o) {
    InputDocument doc = load_document(o);
    BraneContext ctx = load_context(o, doc);
    bool vanished = false;
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const DiagramEntry* e : selected(doc, o)) {
        AnalysisReport rep;
        if (e->kind == DiagramKind::Sewing) rep = analyze(ctx, build_sewing(*e));
        else if (e->kind == DiagramKind::Saddle) rep = analyze_saddle(ctx, *e);
        else rep = disc_operation_target(ctx, e->arc_labels);
        vanished = vanished || rep.vanishing.vanishes;
        if (o.format == "json") {
            nlohmann::ordered_json j;
            j["diagram"] = e->name;
            j["report"] = report_to_json(rep);
            out.push_back(std::move(j));
        } else {
            std::cout << "== " << e->name << " ==\n" << report_to_text(rep);
        }
    }
    if (o.format == "json") std::cout << out.dump(2) << "\n";
    return (vanished && o.strict) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic calculus for open-closed string operations on disc cobordisms"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string name_a, name_b;
    CobordismSignature sig;

    CLI::App* validate = app.add_subcommand("validate", "parse and validate a document");
    add_common(validate, o);

    CLI::App* compose = app.add_subcommand("compose", "compose a diagram with an elementary one");
    add_common(compose, o);
    compose->add_option("base", name_a, "diagram acting first")->required();
    compose->add_option("next", name_b, "elementary diagram acting second")->required();

    CLI::App* decomp = app.add_subcommand("decompose", "split into elementary diagrams");
    add_common(decomp, o);

    CLI::App* canon = app.add_subcommand("canonical", "merge/core/split three-stage form");
    add_common(canon, o);

    CLI::App* normalize = app.add_subcommand("normalize", "print normal-form digests");
    add_common(normalize, o);

    CLI::App* equivalent = app.add_subcommand("equivalent", "compare two diagrams");
    add_common(equivalent, o);
    equivalent->add_option("first", name_a)->required();
    equivalent->add_option("second", name_b)->required();

    CLI::App* analyze = app.add_subcommand("analyze", "degree/vanishing/constancy reports");
    add_common(analyze, o);

    CLI::App* classify = app.add_subcommand("classify", "nonvanishing classification");
    add_common(classify, o, false);
    classify->add_option("--genus", sig.genus);
    classify->add_option("--windows", sig.windows);
    classify->add_option("--closed-in", sig.closed_in);
    classify->add_option("--closed-out", sig.closed_out);
    classify->add_option("--boundary-components", sig.boundary_components);
    classify->add_option("--open-in", sig.open_in);
    classify->add_option("--open-out", sig.open_out);
    classify->add_option("--open-out-boundaries", sig.open_out_boundaries);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return run_validate(o);
        if (compose->parsed()) return run_compose(o, name_a, name_b);
        if (decomp->parsed()) return run_decompose(o);
        if (canon->parsed()) return run_canonical(o);
        if (normalize->parsed()) return run_normalize(o);
        if (equivalent->parsed()) return run_equivalent(o, name_a, name_b);
        if (analyze->parsed()) return run_analyze(o);
        if (classify->parsed()) {
            CobordismCase c = classify_cobordism(sig);
            std::cout << strop::to_string(c) << "\n";
            return (c == CobordismCase::Vanishes && o.strict) ? 1 : 0;
        }
    } catch (const strop::Error& e) {
        std::cerr << "error [" << e.code() << "] " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error " << e.what() << "\n";
        return 2;
    }
    return 2;
}
