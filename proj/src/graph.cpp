#include "strop/graph.hpp"

#include <algorithm>
#include <numeric>

#include "strop/errors.hpp"

namespace strop {

EdgeUnion make_edge_union(const std::vector<std::pair<std::string, std::string>>& pairs) {
    EdgeUnion g;
    for (const auto& [t, h] : pairs) {
        if (t.empty() || h.empty()) fail("BadLabel", "edge labels must be nonempty tokens");
        g.edges.push_back(OrientedEdge{t, h});
    }
    return g;
}

bool same_edges_unordered(const EdgeUnion& a, const EdgeUnion& b) {
    auto key = [](const EdgeUnion& u) {
        std::vector<std::pair<std::string, std::string>> v;
        for (const auto& e : u.edges) v.emplace_back(e.tail_label, e.head_label);
        std::sort(v.begin(), v.end());
        return v;
    };
    return key(a) == key(b);
}

const GraphVertex& SewingGraph::vertex(int id) const {
    if (id < 0 || id >= static_cast<int>(vertices.size()))
        fail("IllegalMove", "vertex id " + std::to_string(id) + " out of range");
    return vertices[id];
}

GraphVertex& SewingGraph::vertex(int id) {
    return const_cast<GraphVertex&>(static_cast<const SewingGraph&>(*this).vertex(id));
}

int SewingGraph::in_degree(int vertex_id) const {
    int n = 0;
    for (const auto& s : segments) n += (s.head == vertex_id);
    return n;
}

int SewingGraph::out_degree(int vertex_id) const {
    int n = 0;
    for (const auto& s : segments) n += (s.tail == vertex_id);
    return n;
}

int SewingGraph::degree(int vertex_id) const { return in_degree(vertex_id) + out_degree(vertex_id); }

std::vector<int> SewingGraph::component_ids() const {
    std::vector<int> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& s : segments) {
        int a = find(s.tail), b = find(s.head);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> comp(vertices.size(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].alive) comp[i] = find(static_cast<int>(i));
    return comp;
}

int SewingGraph::component_of(int vertex_id) const { return component_ids()[vertex_id]; }

std::vector<int> SewingGraph::live_vertices() const {
    std::vector<int> out;
    for (const auto& v : vertices)
        if (v.alive) out.push_back(v.id);
    return out;
}

int SewingGraph::find_insertion(int src_edge, const Rational& pos) const {
    for (const auto& v : vertices)
        if (v.alive && (v.prov == VertexProv::TypeII || v.prov == VertexProv::Merged3) &&
            v.src_edge == src_edge && v.pos == pos)
            return v.id;
    return -1;
}

std::vector<std::string> SewingGraph::signature() const {
    std::vector<std::string> sig;
    for (const auto& v : vertices) {
        if (!v.alive) continue;
        switch (v.prov) {
            case VertexProv::End:
                break;
            case VertexProv::TypeI: {
                sig.push_back("I(" + std::to_string(v.merged_ends[0]) + "," +
                              std::to_string(v.merged_ends[1]) + ")");
                break;
            }
            case VertexProv::TypeII:
                sig.push_back("II(" + std::to_string(v.src_edge) + "," + v.pos.str() + "," + v.label + ")");
                break;
            case VertexProv::Merged3:
                sig.push_back("III(" + std::to_string(v.merged_ends[0]) + ";" +
                              std::to_string(v.src_edge) + "," + v.pos.str() + ")");
                break;
        }
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

SewingGraph graph_from_edges(const EdgeUnion& g) {
    SewingGraph h;
    for (int i = 0; i < g.size(); ++i) {
        GraphVertex tail{2 * i, g.edges[i].tail_label, VertexProv::End, true, -1, kZero, {}};
        GraphVertex head{2 * i + 1, g.edges[i].head_label, VertexProv::End, true, -1, kZero, {}};
        h.vertices.push_back(std::move(tail));
        h.vertices.push_back(std::move(head));
        h.segments.push_back(Segment{i, kZero, kOne, 2 * i, 2 * i + 1});
    }
    return h;
}

namespace {

/// Merge vertex b into vertex a (a keeps the smaller id).
void merge_vertices(SewingGraph& g, int a, int b) {
    if (a > b) std::swap(a, b);
    for (auto& s : g.segments) {
        if (s.tail == b) s.tail = a;
        if (s.head == b) s.head = a;
    }
    g.vertices[b].alive = false;
}

void apply_type1(SewingGraph& g, const MoveTypeI& m) {
    int a = end_vertex_id(m.a);
    int b = end_vertex_id(m.b);
    const GraphVertex& va = g.vertex(a);
    const GraphVertex& vb = g.vertex(b);
    if (!va.alive || !vb.alive || va.prov != VertexProv::End)
        fail("IllegalMove", "type I: vertex already identified");
    if (vb.prov != VertexProv::End) fail("IllegalMove", "type I: vertex already identified");
    if (g.degree(a) != 1 || g.degree(b) != 1) fail("IllegalMove", "type I: not an end vertex");
    bool a_head = g.in_degree(a) == 1;
    bool b_head = g.in_degree(b) == 1;
    if (a_head == b_head) fail("IllegalMove", "type I: need one head and one tail vertex");
    if (va.label != vb.label) fail("IllegalMove", "type I: label mismatch");
    auto comp = g.component_ids();
    if (comp[a] == comp[b]) fail("IllegalMove", "type I: vertices in the same component");
    int keep = std::min(a, b);
    merge_vertices(g, a, b);
    GraphVertex& v = g.vertex(keep);
    v.prov = VertexProv::TypeI;
    v.merged_ends = {std::min(a, b), std::max(a, b)};
}

void apply_type2(SewingGraph& g, const MoveTypeII& m) {
    if (m.label.empty()) fail("IllegalMove", "type II: empty label");
    if (!(kZero < m.at && m.at < kOne))
        fail("IllegalMove", "type II: position must be strictly interior");
    int seg = -1;
    for (std::size_t i = 0; i < g.segments.size(); ++i) {
        const Segment& s = g.segments[i];
        if (s.src_edge == m.edge && s.lo < m.at && m.at < s.hi) {
            seg = static_cast<int>(i);
            break;
        }
    }
    if (seg < 0) {
        if (m.edge < 0 || g.find_insertion(m.edge, m.at) >= 0 ||
            std::none_of(g.segments.begin(), g.segments.end(),
                         [&](const Segment& s) { return s.src_edge == m.edge; }))
            fail("IllegalMove", "type II: position coincides with a vertex or edge is missing");
        fail("IllegalMove", "type II: position not interior to any segment");
    }
    int vid = static_cast<int>(g.vertices.size());
    g.vertices.push_back(GraphVertex{vid, m.label, VertexProv::TypeII, true, m.edge, m.at, {}});
    Segment right = g.segments[seg];
    g.segments[seg].hi = m.at;
    g.segments[seg].head = vid;
    right.lo = m.at;
    right.tail = vid;
    g.segments.push_back(right);
}

void apply_type3(SewingGraph& g, const MoveTypeIII& m) {
    int a = end_vertex_id(m.end);
    const GraphVertex& va = g.vertex(a);
    if (!va.alive || va.prov != VertexProv::End || g.degree(a) != 1)
        fail("IllegalMove", "type III: not an end vertex");
    int b = g.find_insertion(m.at_edge, m.at);
    if (b < 0) fail("IllegalMove", "type III: no inserted vertex at the given site");
    const GraphVertex& vb = g.vertex(b);
    if (vb.prov != VertexProv::TypeII)
        fail("IllegalMove", "type III: target vertex is not a plain degree-2 insertion");
    if (va.label != vb.label) fail("IllegalMove", "type III: label mismatch");
    auto comp = g.component_ids();
    if (comp[a] == comp[b]) fail("IllegalMove", "type III: vertices in the same component");
    int keep = std::min(a, b);
    int src_edge = vb.src_edge;
    Rational pos = vb.pos;
    merge_vertices(g, a, b);
    GraphVertex& v = g.vertex(keep);
    v.prov = VertexProv::Merged3;
    v.merged_ends = {a};
    v.src_edge = src_edge;
    v.pos = pos;
}

}  // namespace

SewingGraph apply_move(const SewingGraph& g, const Move& m) {
    SewingGraph out = g;
    std::visit(
        [&out](const auto& mv) {
            using T = std::decay_t<decltype(mv)>;
            if constexpr (std::is_same_v<T, MoveTypeI>) apply_type1(out, mv);
            else if constexpr (std::is_same_v<T, MoveTypeII>) apply_type2(out, mv);
            else apply_type3(out, mv);
        },
        m);
    return out;
}

std::vector<std::string> validate(const SewingGraph& g) {
    std::vector<std::string> bad;
    int live = 0;
    for (const auto& v : g.vertices) live += v.alive;
    // Forest check: V - E = number of components.
    std::vector<int> comp = g.component_ids();
    std::vector<int> roots;
    for (int c : comp)
        if (c >= 0) roots.push_back(c);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    if (live - static_cast<int>(g.segments.size()) != static_cast<int>(roots.size()))
        bad.push_back("not a forest (undirected cycle present)");
    for (const auto& v : g.vertices) {
        if (!v.alive) continue;
        int in = g.in_degree(v.id);
        int out = g.out_degree(v.id);
        int deg = in + out;
        if (deg > 3) bad.push_back("vertex " + std::to_string(v.id) + " has degree > 3");
        if ((deg == 2 || deg == 3) && (in == 0 || out == 0))
            bad.push_back("vertex " + std::to_string(v.id) + " of degree " + std::to_string(deg) +
                          " is a sink or a source");
        switch (v.prov) {
            case VertexProv::End:
                if (deg > 1) bad.push_back("end vertex " + std::to_string(v.id) + " has degree > 1");
                break;
            case VertexProv::TypeI:
            case VertexProv::TypeII:
                if (deg != 2)
                    bad.push_back("degree-2 provenance vertex " + std::to_string(v.id) +
                                  " has degree " + std::to_string(deg));
                break;
            case VertexProv::Merged3:
                if (deg != 3)
                    bad.push_back("merged vertex " + std::to_string(v.id) + " has degree " +
                                  std::to_string(deg));
                break;
        }
    }
    return bad;
}

VertexCensus vertex_census(const SewingGraph& g) {
    VertexCensus c;
    for (const auto& v : g.vertices) {
        if (!v.alive) continue;
        if (v.prov == VertexProv::TypeI) ++c.p1;
        else if (v.prov == VertexProv::TypeII) ++c.p2;
        else if (v.prov == VertexProv::Merged3) ++c.p3;
    }
    return c;
}

int component_count(const SewingGraph& g) {
    auto comp = g.component_ids();
    std::vector<int> roots;
    for (int c : comp)
        if (c >= 0) roots.push_back(c);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return static_cast<int>(roots.size());
}

}  // namespace strop
