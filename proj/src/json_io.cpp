#include "strop/json_io.hpp"

#include <fstream>
#include <sstream>

#include "strop/errors.hpp"

namespace strop {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail("SchemaError", path + ": expected an object");
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& path) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || it.key() == k;
        if (!ok) fail("SchemaError", path + ": unknown field '" + it.key() + "'");
    }
}

int get_int(const json& j, const char* key, const std::string& path, bool required = true,
            int fallback = 0) {
    if (!j.contains(key)) {
        if (required) fail("SchemaError", path + ": missing field '" + key + "'");
        return fallback;
    }
    if (!j[key].is_number_integer()) fail("SchemaError", path + "." + key + ": expected an integer");
    return j[key].get<int>();
}

std::string get_str(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) fail("SchemaError", path + ": missing field '" + key + "'");
    if (!j[key].is_string()) fail("SchemaError", path + "." + key + ": expected a string");
    return j[key].get<std::string>();
}

Rational parse_position(const std::string& s, const std::string& path, bool allow_ends) {
    Rational r;
    try {
        r = Rational::parse(s);
    } catch (const Error&) {
        fail("SchemaError", path + ": cannot parse rational '" + s + "'");
    }
    bool ok = allow_ends ? !(r < kZero) && !(kOne < r) : kZero < r && r < kOne;
    if (!ok)
        fail("SemanticError", path + ": position " + s + " outside " +
                                  (allow_ends ? std::string("[0,1]") : std::string("(0,1)")));
    return r;
}

EndRef parse_end_ref(const std::string& s, int edge_count, const std::string& path) {
    auto dot = s.find('.');
    if (s.size() < 4 || s[0] != 'e' || dot == std::string::npos)
        fail("SchemaError", path + ": expected 'e<i>.head' or 'e<i>.tail', got '" + s + "'");
    std::string which = s.substr(dot + 1);
    if (which != "head" && which != "tail")
        fail("SchemaError", path + ": expected 'e<i>.head' or 'e<i>.tail', got '" + s + "'");
    int edge = 0;
    try {
        edge = std::stoi(s.substr(1, dot - 1));
    } catch (const std::exception&) {
        fail("SchemaError", path + ": bad edge index in '" + s + "'");
    }
    if (edge < 0 || edge >= edge_count)
        fail("SemanticError", path + ": edge index out of range in '" + s + "'");
    return EndRef{edge, which == "head"};
}

std::string render_end_ref(const EndRef& r) {
    return "e" + std::to_string(r.edge) + (r.head ? ".head" : ".tail");
}

int parse_half(const std::string& s, char sign, int edge_count, const std::string& path) {
    if (s.size() < 2 || s[0] != 'e' || s.back() != sign)
        fail("SchemaError", path + ": expected 'e<i>" + std::string(1, sign) + "', got '" + s + "'");
    int edge = 0;
    try {
        edge = std::stoi(s.substr(1, s.size() - 2));
    } catch (const std::exception&) {
        fail("SchemaError", path + ": bad edge index in '" + s + "'");
    }
    if (edge < 0 || edge >= edge_count)
        fail("SemanticError", path + ": edge index out of range in '" + s + "'");
    return edge;
}

EdgeUnion parse_edges(const json& j, const std::string& path) {
    if (!j.is_array()) fail("SchemaError", path + ": expected an array");
    EdgeUnion g;
    int idx = 0;
    for (const auto& e : j) {
        std::string p = path + "[" + std::to_string(idx++) + "]";
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            fail("SchemaError", p + ": expected [tail_label, head_label]");
        std::string t = e[0].get<std::string>(), h = e[1].get<std::string>();
        if (t.empty() || h.empty()) fail("SemanticError", p + ": labels must be nonempty");
        g.edges.push_back(OrientedEdge{t, h});
    }
    return g;
}

std::vector<Move> parse_moves(const json& j, int edge_count, const std::string& path) {
    if (!j.is_array()) fail("SchemaError", path + ": expected an array");
    std::vector<Move> moves;
    int idx = 0;
    for (const auto& m : j) {
        std::string p = path + "[" + std::to_string(idx++) + "]";
        require_object(m, p);
        std::string type = get_str(m, "type", p);
        if (type == "I") {
            check_keys(m, {"type", "a", "b"}, p);
            moves.push_back(MoveTypeI{parse_end_ref(get_str(m, "a", p), edge_count, p + ".a"),
                                      parse_end_ref(get_str(m, "b", p), edge_count, p + ".b")});
        } else if (type == "II") {
            check_keys(m, {"type", "edge", "at", "label"}, p);
            int edge = get_int(m, "edge", p);
            if (edge < 0 || edge >= edge_count)
                fail("SemanticError", p + ".edge: edge index out of range");
            std::string label = get_str(m, "label", p);
            if (label.empty()) fail("SemanticError", p + ".label: must be nonempty");
            moves.push_back(MoveTypeII{edge, parse_position(get_str(m, "at", p), p + ".at", false),
                                       label});
        } else if (type == "III") {
            check_keys(m, {"type", "end", "edge", "at"}, p);
            int edge = get_int(m, "edge", p);
            if (edge < 0 || edge >= edge_count)
                fail("SemanticError", p + ".edge: edge index out of range");
            moves.push_back(MoveTypeIII{parse_end_ref(get_str(m, "end", p), edge_count, p + ".end"),
                                        edge,
                                        parse_position(get_str(m, "at", p), p + ".at", false)});
        } else {
            fail("SchemaError", p + ".type: expected 'I', 'II' or 'III'");
        }
    }
    return moves;
}

std::vector<InteractionPoint> parse_points(const json& j, int edge_count,
                                           const std::string& path) {
    if (!j.is_array()) fail("SchemaError", path + ": expected an array");
    std::vector<InteractionPoint> points;
    int idx = 0;
    for (const auto& pj : j) {
        std::string p = path + "[" + std::to_string(idx++) + "]";
        require_object(pj, p);
        check_keys(pj, {"participants", "perm"}, p);
        if (!pj.contains("participants") || !pj["participants"].is_array())
            fail("SchemaError", p + ".participants: expected an array");
        InteractionPoint pt;
        int pi = 0;
        for (const auto& part : pj["participants"]) {
            std::string pp = p + ".participants[" + std::to_string(pi++) + "]";
            if (!part.is_array() || part.size() != 2 || !part[0].is_number_integer() ||
                !part[1].is_string())
                fail("SchemaError", pp + ": expected [edge_index, position_string]");
            int edge = part[0].get<int>();
            if (edge < 0 || edge >= edge_count)
                fail("SemanticError", pp + ": edge index out of range");
            pt.participants.emplace_back(
                edge, parse_position(part[1].get<std::string>(), pp, true));
        }
        if (pj.contains("perm")) {
            if (!pj["perm"].is_array()) fail("SchemaError", p + ".perm: expected an array");
            int qi = 0;
            for (const auto& pr : pj["perm"]) {
                std::string pp = p + ".perm[" + std::to_string(qi++) + "]";
                if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
                    fail("SchemaError", pp + ": expected [in_half, out_half]");
                pt.perm.emplace_back(parse_half(pr[0].get<std::string>(), '-', edge_count, pp),
                                     parse_half(pr[1].get<std::string>(), '+', edge_count, pp));
            }
        }
        points.push_back(std::move(pt));
    }
    return points;
}

}  // namespace

BraneContext parse_context(const json& j) {
    require_object(j, "context");
    check_keys(j, {"ambient_dim", "branes", "empty_intersections"}, "context");
    int d = get_int(j, "ambient_dim", "context");
    if (d < 1) fail("SemanticError", "context.ambient_dim: must be >= 1");
    BraneContext ctx(d);
    if (j.contains("branes")) {
        if (!j["branes"].is_array()) fail("SchemaError", "context.branes: expected an array");
        int idx = 0;
        for (const auto& bj : j["branes"]) {
            std::string p = "context.branes[" + std::to_string(idx++) + "]";
            require_object(bj, p);
            check_keys(bj, {"id", "dim", "betti"}, p);
            Brane b;
            b.id = get_str(bj, "id", p);
            b.dim = get_int(bj, "dim", p);
            if (bj.contains("betti")) {
                if (!bj["betti"].is_array()) fail("SchemaError", p + ".betti: expected an array");
                std::vector<int> betti;
                for (const auto& v : bj["betti"]) {
                    if (!v.is_number_integer())
                        fail("SchemaError", p + ".betti: expected integers");
                    betti.push_back(v.get<int>());
                }
                b.betti = std::move(betti);
            }
            try {
                ctx.add_brane(std::move(b));
            } catch (const Error& e) {
                fail("SemanticError", p + ": " + e.what());
            }
        }
    }
    if (j.contains("empty_intersections")) {
        if (!j["empty_intersections"].is_array())
            fail("SchemaError", "context.empty_intersections: expected an array");
        int idx = 0;
        for (const auto& mj : j["empty_intersections"]) {
            std::string p = "context.empty_intersections[" + std::to_string(idx++) + "]";
            if (!mj.is_array()) fail("SchemaError", p + ": expected an array of labels");
            std::vector<std::string> labels;
            for (const auto& l : mj) {
                if (!l.is_string()) fail("SchemaError", p + ": expected strings");
                labels.push_back(l.get<std::string>());
            }
            try {
                ctx.declare_empty(std::move(labels));
            } catch (const Error& e) {
                fail("SemanticError", p + ": " + e.what());
            }
        }
    }
    return ctx;
}

BraneContext parse_context_text(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        fail("ParseError", e.what());
    }
    return parse_context(j);
}

InputDocument parse_document(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        fail("ParseError", e.what());
    }
    require_object(j, "$");
    check_keys(j, {"context", "diagrams"}, "$");
    InputDocument doc;
    if (j.contains("context")) doc.context = parse_context(j["context"]);
    if (j.contains("diagrams")) {
        if (!j["diagrams"].is_array()) fail("SchemaError", "diagrams: expected an array");
        int idx = 0;
        for (const auto& dj : j["diagrams"]) {
            std::string p = "diagrams[" + std::to_string(idx++) + "]";
            require_object(dj, p);
            DiagramEntry entry;
            entry.name = get_str(dj, "name", p);
            std::string kind = get_str(dj, "kind", p);
            if (kind == "sewing") {
                check_keys(dj, {"name", "kind", "edges", "moves"}, p);
                if (!dj.contains("edges")) fail("SchemaError", p + ": missing field 'edges'");
                entry.kind = DiagramKind::Sewing;
                entry.edges = parse_edges(dj["edges"], p + ".edges");
                if (dj.contains("moves"))
                    entry.moves = parse_moves(dj["moves"], entry.edges.size(), p + ".moves");
            } else if (kind == "saddle") {
                check_keys(dj, {"name", "kind", "edges", "points"}, p);
                if (!dj.contains("edges")) fail("SchemaError", p + ": missing field 'edges'");
                entry.kind = DiagramKind::Saddle;
                entry.edges = parse_edges(dj["edges"], p + ".edges");
                if (dj.contains("points"))
                    entry.points = parse_points(dj["points"], entry.edges.size(), p + ".points");
            } else if (kind == "disc") {
                check_keys(dj, {"name", "kind", "arc_labels"}, p);
                entry.kind = DiagramKind::Disc;
                if (!dj.contains("arc_labels") || !dj["arc_labels"].is_array())
                    fail("SchemaError", p + ".arc_labels: expected an array");
                for (const auto& l : dj["arc_labels"]) {
                    if (!l.is_string()) fail("SchemaError", p + ".arc_labels: expected strings");
                    entry.arc_labels.push_back(l.get<std::string>());
                }
                if (entry.arc_labels.empty() || entry.arc_labels.size() % 2 != 0)
                    fail("SemanticError", p + ".arc_labels: need a positive even count");
            } else {
                fail("SchemaError", p + ".kind: expected 'sewing', 'saddle' or 'disc'");
            }
            doc.diagrams.push_back(std::move(entry));
        }
    }
    return doc;
}

std::string render_document(const InputDocument& doc) {
    ojson out;
    if (doc.context) {
        const BraneContext& ctx = *doc.context;
        ojson cj;
        cj["ambient_dim"] = ctx.ambient_dim();
        cj["branes"] = ojson::array();
        for (const auto& [id, b] : ctx.branes()) {
            if (id == kTop && !b.betti) continue;  // implicit ambient entry
            ojson bj;
            bj["id"] = b.id;
            bj["dim"] = b.dim;
            if (b.betti) bj["betti"] = *b.betti;
            cj["branes"].push_back(std::move(bj));
        }
        cj["empty_intersections"] = ojson::array();
        for (const auto& m : ctx.declared_empty()) cj["empty_intersections"].push_back(m);
        out["context"] = std::move(cj);
    }
    out["diagrams"] = ojson::array();
    for (const auto& d : doc.diagrams) {
        ojson dj;
        dj["name"] = d.name;
        if (d.kind == DiagramKind::Sewing) {
            dj["kind"] = "sewing";
            dj["edges"] = ojson::array();
            for (const auto& e : d.edges.edges) dj["edges"].push_back({e.tail_label, e.head_label});
            dj["moves"] = ojson::array();
            for (const auto& mv : d.moves) {
                ojson mj;
                if (const auto* m = std::get_if<MoveTypeI>(&mv)) {
                    mj["type"] = "I";
                    mj["a"] = render_end_ref(m->a);
                    mj["b"] = render_end_ref(m->b);
                } else if (const auto* m = std::get_if<MoveTypeII>(&mv)) {
                    mj["type"] = "II";
                    mj["edge"] = m->edge;
                    mj["at"] = m->at.str();
                    mj["label"] = m->label;
                } else if (const auto* m = std::get_if<MoveTypeIII>(&mv)) {
                    mj["type"] = "III";
                    mj["end"] = render_end_ref(m->end);
                    mj["edge"] = m->at_edge;
                    mj["at"] = m->at.str();
                }
                dj["moves"].push_back(std::move(mj));
            }
        } else if (d.kind == DiagramKind::Saddle) {
            dj["kind"] = "saddle";
            dj["edges"] = ojson::array();
            for (const auto& e : d.edges.edges) dj["edges"].push_back({e.tail_label, e.head_label});
            dj["points"] = ojson::array();
            for (const auto& pt : d.points) {
                ojson pj;
                pj["participants"] = ojson::array();
                for (const auto& [e, pos] : pt.participants)
                    pj["participants"].push_back(ojson::array({e, pos.str()}));
                if (!pt.perm.empty()) {
                    pj["perm"] = ojson::array();
                    for (const auto& [a, b] : pt.perm)
                        pj["perm"].push_back(ojson::array(
                            {"e" + std::to_string(a) + "-", "e" + std::to_string(b) + "+"}));
                }
                dj["points"].push_back(std::move(pj));
            }
        } else {
            dj["kind"] = "disc";
            dj["arc_labels"] = d.arc_labels;
        }
        out["diagrams"].push_back(std::move(dj));
    }
    return out.dump(2) + "\n";
}

const DiagramEntry& find_diagram(const InputDocument& doc, const std::string& name) {
    for (const auto& d : doc.diagrams)
        if (d.name == name) return d;
    fail("UnknownDiagram", "no diagram named '" + name + "'");
}

nlohmann::ordered_json report_to_json(const AnalysisReport& rep) {
    ojson j;
    j["degree_shift"] = rep.degree_shift;
    j["vanishing"] = {{"verdict", rep.vanishing.vanishes ? "vanishes" : "may_be_nonzero"},
                      {"reasons", rep.vanishing.reasons}};
    j["target"] = ojson::array();
    for (const auto& f : rep.target.factors) {
        ojson fj;
        switch (f.kind) {
            case FactorKind::Full:
                fj["kind"] = "full";
                fj["space"] = {f.from, f.to};
                break;
            case FactorKind::ConstImage:
                fj["kind"] = "constant_image";
                fj["space"] = {f.from, f.to};
                fj["submanifold"] = f.members[0].labels;
                break;
            case FactorKind::Meet: {
                fj["kind"] = "meet";
                fj["space"] = {f.from, f.to};
                fj["members"] = ojson::array();
                for (const auto& m : f.members) fj["members"].push_back(m.labels);
                break;
            }
            case FactorKind::Zero:
                fj["kind"] = "zero";
                break;
        }
        j["target"].push_back(std::move(fj));
    }
    if (!rep.target.notes.empty()) j["notes"] = rep.target.notes;
    if (rep.value) {
        j["value"] = {{"base", rep.value->base.labels},
                      {"degree", rep.value->degree},
                      {"factors", rep.value->factors},
                      {"zero", rep.value->zero}};
    }
    if (rep.classification) j["classification"] = to_string(*rep.classification);
    return j;
}

std::string report_to_text(const AnalysisReport& rep) {
    std::ostringstream os;
    os << "degree shift: " << rep.degree_shift << "\n";
    os << "vanishing: " << (rep.vanishing.vanishes ? "vanishes" : "may be nonzero") << "\n";
    for (const auto& r : rep.vanishing.reasons) os << "  reason: " << r << "\n";
    os << "target:\n";
    for (const auto& f : rep.target.factors) {
        os << "  ";
        auto members = [&]() {
            std::string s;
            for (std::size_t i = 0; i < f.members.size(); ++i) {
                if (i) s += " meet ";
                s += fi_label_string(f.members[i]);
            }
            return s;
        };
        switch (f.kind) {
            case FactorKind::Full:
                os << "full H(P_{" << f.from << "," << f.to << "})";
                break;
            case FactorKind::ConstImage:
                os << "const[" << members() << "] in P_{" << f.from << "," << f.to << "}";
                break;
            case FactorKind::Meet:
                os << "meet[" << members() << "] in P_{" << f.from << "," << f.to << "}";
                break;
            case FactorKind::Zero:
                os << "zero";
                break;
        }
        os << "\n";
    }
    for (const auto& n : rep.target.notes) os << "note: " << n << "\n";
    if (rep.value)
        os << "value: diagonal class over " << fi_label_string(rep.value->base) << " in degree "
           << rep.value->degree << (rep.value->zero ? " (zero)" : "") << "\n";
    if (rep.classification) os << "classification: " << to_string(*rep.classification) << "\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("IOError", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace strop
