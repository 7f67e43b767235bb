#include "strop/normal_form.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "json.hpp"
#include "strop/errors.hpp"

namespace strop {

namespace {

struct SlideSite {
    bool at_head = false;
    int mid_vertex = -1;
};

/// Positions for end vertices slid off their degree-3 vertices: strictly
/// before every fixed crossing for a tail slide, strictly after for a head
/// slide, chosen so all positions on the edge stay distinct.
std::pair<Rational, Rational> slide_positions(const std::vector<Rational>& fixed) {
    Rational lo = fixed.empty() ? Rational(1, 2) : *std::min_element(fixed.begin(), fixed.end()) / Rational(2);
    Rational hi_base = fixed.empty() ? lo : std::max(*std::max_element(fixed.begin(), fixed.end()), lo);
    Rational hi = (hi_base + kOne) / Rational(2);
    return {lo, hi};
}

std::string saddle_digest(const SaddleDiagram& d) {
    std::string s = "edges:";
    for (const auto& e : d.target.edges) s += e.tail_label + ">" + e.head_label + ";";
    s += "points:" + std::to_string(d.points.size());
    return s;
}

std::string component_digest(const CyclicComponent& c) {
    std::string s = "m=" + std::to_string(c.m) + ":";
    for (const auto& w : c.word) s += w + ",";
    return s;
}

CyclicComponent canonical_rotation(int m, std::vector<std::string> word, std::vector<int> cycle) {
    CyclicComponent best;
    best.m = m;
    for (int r = 0; r < m; ++r) {
        std::vector<std::string> w(2 * m);
        std::vector<int> cy(m);
        for (int i = 0; i < 2 * m; ++i) w[i] = word[(2 * r + i) % (2 * m)];
        for (int i = 0; i < m; ++i) cy[i] = cycle[(r + i) % m];
        if (r == 0 || w < best.word || (w == best.word && cy < best.edge_cycle)) {
            best.word = std::move(w);
            best.edge_cycle = std::move(cy);
        }
    }
    return best;
}

/// Connected parts of a saddle source, edges linked through shared points.
std::vector<std::vector<int>> saddle_components(const SaddleDiagram& d) {
    int m = d.source.size();
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& p : d.points)
        for (std::size_t i = 1; i < p.participants.size(); ++i) {
            int a = find(p.participants[0].first), b = find(p.participants[i].first);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::map<int, std::vector<int>> groups;
    for (int e = 0; e < m; ++e) groups[find(e)].push_back(e);
    std::vector<std::vector<int>> out;
    for (auto& [root, edges] : groups) out.push_back(std::move(edges));
    return out;
}

SaddleDiagram restrict_saddle(const BraneContext& ctx, const SaddleDiagram& d,
                              const std::vector<int>& edges) {
    std::map<int, int> local;
    EdgeUnion sub;
    for (int e : edges) {
        local[e] = sub.size();
        sub.edges.push_back(d.source.edges[e]);
    }
    std::vector<InteractionPoint> pts;
    for (const auto& p : d.points) {
        if (!local.count(p.participants[0].first)) continue;
        InteractionPoint q;
        for (const auto& [e, pos] : p.participants) q.participants.emplace_back(local.at(e), pos);
        for (const auto& [a, b] : p.perm) q.perm.emplace_back(local.at(a), local.at(b));
        pts.push_back(std::move(q));
    }
    return build_saddle(ctx, std::move(sub), std::move(pts));
}

}  // namespace

SaddleDiagram deform_to_saddle(const BraneContext& ctx, const SewingDiagram& t3) {
    std::vector<const GraphVertex*> joints;
    for (const auto& v : t3.mid.vertices) {
        if (!v.alive) continue;
        if (v.prov == VertexProv::TypeI || v.prov == VertexProv::TypeII)
            fail("ShapeError", "diagram still has degree-2 vertices");
        if (v.prov == VertexProv::Merged3) joints.push_back(&v);
    }

    int m = t3.source.size();
    std::vector<std::vector<Rational>> fixed(m);
    for (const GraphVertex* v : joints) fixed[v->src_edge].push_back(v->pos);

    std::vector<InteractionPoint> points;
    for (const GraphVertex* v : joints) {
        EndRef er = end_ref_of_id(v->merged_ends[0]);
        auto [lo, hi] = slide_positions(fixed[er.edge]);
        InteractionPoint p;
        p.participants.emplace_back(v->src_edge, v->pos);
        p.participants.emplace_back(er.edge, er.head ? hi : lo);
        points.push_back(std::move(p));
    }
    return build_saddle(ctx, t3.source, std::move(points));
}

CyclicComponent collapse_simultaneous(const BraneContext& ctx, const SaddleDiagram& d,
                                      const std::vector<int>& edge_ids) {
    (void)ctx;
    if (!d.simple) fail("ShapeError", "collapse requires a simple diagram");
    if (saddle_components(d).size() != 1) fail("Disconnected", "configuration is not connected");

    int m = d.source.size();
    auto global = [&](int e) { return edge_ids.empty() ? e : edge_ids.at(e); };

    if (m == 1) {
        CyclicComponent c;
        c.m = 1;
        c.word = {d.source.edges[0].tail_label, d.source.edges[0].head_label};
        c.edge_cycle = {global(0)};
        return c;
    }

    // chain_end sends each incoming string to the string whose head its
    // recombined output reaches; its inverse walks the circle forwards.
    std::vector<int> inv(m, -1);
    for (int j = 0; j < m; ++j) {
        if (d.chain_end[j] < 0 || inv[d.chain_end[j]] != -1)
            fail("ShapeError", "recombination is not a single cycle");
        inv[d.chain_end[j]] = j;
    }
    std::vector<int> cycle;
    std::vector<bool> seen(m, false);
    for (int cur = 0; !seen[cur]; cur = inv[cur]) {
        seen[cur] = true;
        cycle.push_back(cur);
    }
    if (static_cast<int>(cycle.size()) != m)
        fail("ShapeError", "recombination is not a single cycle");

    std::vector<std::string> word;
    std::vector<int> ids;
    for (int e : cycle) {
        word.push_back(d.source.edges[e].tail_label);
        word.push_back(d.source.edges[e].head_label);
        ids.push_back(global(e));
    }
    return canonical_rotation(m, std::move(word), std::move(ids));
}

namespace {

SaddleDiagram materialize(const BraneContext& ctx, const CyclicComponent& c,
                          const std::vector<Rational>& positions) {
    EdgeUnion strings;
    for (int k = 0; k < c.m; ++k)
        strings.edges.push_back(OrientedEdge{c.word[2 * k], c.word[2 * k + 1]});
    if (c.m == 1) return build_saddle(ctx, std::move(strings), {});
    InteractionPoint p;
    for (int k = 0; k < c.m; ++k) p.participants.emplace_back(k, positions[k]);
    for (int k = 0; k < c.m; ++k) p.perm.emplace_back(k, (k + c.m - 1) % c.m);
    return build_saddle(ctx, std::move(strings), {std::move(p)});
}

}  // namespace

SaddleDiagram simultaneous_diagram(const BraneContext& ctx, const CyclicComponent& c) {
    return materialize(ctx, c, std::vector<Rational>(c.m, Rational(1, 2)));
}

SaddleDiagram corner_specialize(const BraneContext& ctx, const CyclicComponent& c,
                                const std::vector<int>& eps) {
    if (static_cast<int>(eps.size()) != c.m) fail("ShapeError", "corner vector has wrong length");
    std::vector<Rational> pos;
    for (int b : eps) {
        if (b != 0 && b != 1) fail("ShapeError", "corner vector entries must be 0 or 1");
        pos.push_back(Rational(b));
    }
    return materialize(ctx, c, pos);
}

NormalForm normal_form(const BraneContext& ctx, const SewingDiagram& t, DeformationTrace* trace) {
    // Positive boundary: every component of the diagram must emit a string.
    {
        auto comp = t.mid.component_ids();
        std::vector<int> roots, covered;
        for (int c : comp)
            if (c >= 0) roots.push_back(c);
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        for (const auto& chain : t.back_map)
            if (!chain.empty()) covered.push_back(comp[t.mid.segments[chain[0]].tail]);
        std::sort(covered.begin(), covered.end());
        covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
        if (covered != roots) fail("NoOutgoing", "a component has no outgoing string");
    }

    CanonicalDecomposition cd = canonical_decomposition(t);
    NormalForm nf;

    for (int e = 0; e < cd.t1.target.size(); ++e) {
        MergeRecord rec;
        const auto& chain = cd.t1.back_map[e];
        for (std::size_t j = 0; j < chain.size(); ++j) {
            rec.source_edges.push_back(cd.t1.mid.segments[chain[j]].src_edge);
            if (j + 1 < chain.size())
                rec.glue_labels.push_back(cd.t1.mid.vertex(cd.t1.mid.segments[chain[j]].head).label);
        }
        nf.pre.push_back(std::move(rec));
    }

    SaddleDiagram saddle = deform_to_saddle(ctx, cd.t3);
    if (trace)
        trace->steps.push_back(DeformationStep{1, "core stage", saddle_digest(saddle)});
    for (const auto& edges : saddle_components(saddle)) {
        SaddleDiagram sub = restrict_saddle(ctx, saddle, edges);
        CyclicComponent c = collapse_simultaneous(ctx, sub, edges);
        if (trace)
            trace->steps.push_back(DeformationStep{2, saddle_digest(sub), component_digest(c)});
        nf.core.push_back(std::move(c));
    }
    std::sort(nf.core.begin(), nf.core.end(), [](const CyclicComponent& a, const CyclicComponent& b) {
        return *std::min_element(a.edge_cycle.begin(), a.edge_cycle.end()) <
               *std::min_element(b.edge_cycle.begin(), b.edge_cycle.end());
    });

    for (int e = 0; e < cd.t2.source.size(); ++e) {
        std::vector<std::pair<Rational, std::string>> splits;
        for (const auto& v : cd.t2.mid.vertices)
            if (v.alive && v.prov == VertexProv::TypeII && v.src_edge == e)
                splits.emplace_back(v.pos, v.label);
        std::sort(splits.begin(), splits.end());
        SplitRecord rec;
        for (auto& [pos, label] : splits) rec.labels.push_back(label);
        nf.post.push_back(std::move(rec));
    }
    return nf;
}

std::string digest(const NormalForm& nf, bool include_edge_ids) {
    nlohmann::ordered_json j;
    j["pre"] = nlohmann::ordered_json::array();
    for (const auto& r : nf.pre) {
        nlohmann::ordered_json rec;
        if (include_edge_ids) rec["edges"] = r.source_edges;
        rec["glue"] = r.glue_labels;
        j["pre"].push_back(std::move(rec));
    }
    j["core"] = nlohmann::ordered_json::array();
    for (const auto& c : nf.core) {
        nlohmann::ordered_json rec;
        rec["m"] = c.m;
        rec["word"] = c.word;
        if (include_edge_ids) rec["cycle"] = c.edge_cycle;
        j["core"].push_back(std::move(rec));
    }
    j["post"] = nlohmann::ordered_json::array();
    for (const auto& r : nf.post) j["post"].push_back(r.labels);
    if (!include_edge_ids) {
        // without edge ids the record order inherited from the source edge
        // numbering is meaningless, so compare as sorted multisets
        for (const char* key : {"pre", "core", "post"}) {
            auto& arr = j[key];
            std::sort(arr.begin(), arr.end(),
                      [](const nlohmann::ordered_json& a, const nlohmann::ordered_json& b) {
                          return a.dump() < b.dump();
                      });
        }
    }
    return j.dump();
}

Equivalence check_equivalent(const BraneContext& ctx, const SewingDiagram& a,
                             const SewingDiagram& b) {
    Equivalence r;
    if (a.source == b.source) {
        r.equivalent = digest(normal_form(ctx, a)) == digest(normal_form(ctx, b));
    } else if (same_edges_unordered(a.source, b.source)) {
        r.ambiguous = true;
        r.equivalent = digest(normal_form(ctx, a), false) == digest(normal_form(ctx, b), false);
    }
    return r;
}

}  // namespace strop
