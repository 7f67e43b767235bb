#include "strop/saddle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "strop/errors.hpp"

namespace strop {

namespace {

struct EdgeTrack {
    // Participation sites along one source edge, sorted by position.
    std::vector<std::pair<Rational, int>> sites;  // (position, point index)

    int site_index(const Rational& pos) const {
        for (std::size_t i = 0; i < sites.size(); ++i)
            if (sites[i].first == pos) return static_cast<int>(i);
        return -1;
    }
};

}  // namespace

SaddleDiagram build_saddle(const BraneContext& ctx, EdgeUnion source,
                           std::vector<InteractionPoint> points) {
    SaddleDiagram d;
    d.source = std::move(source);
    d.points = std::move(points);

    int m = d.source.size();
    std::vector<EdgeTrack> tracks(m);
    d.simple = true;

    for (std::size_t pi = 0; pi < d.points.size(); ++pi) {
        auto& p = d.points[pi];
        if (p.participants.size() < 2)
            fail("FixedString", "an interaction point needs at least 2 participants");
        std::vector<int> edges_here;
        for (const auto& [e, pos] : p.participants) {
            if (e < 0 || e >= m) fail("BadPoint", "participant edge out of range");
            if (pos < kZero || kOne < pos)
                fail("BadPoint", "participant position outside [0,1]");
            if (std::count(edges_here.begin(), edges_here.end(), e))
                fail("LoopCreated", "an edge participates twice at one point");
            edges_here.push_back(e);
            if (tracks[e].site_index(pos) >= 0)
                fail("BadPoint", "two points share a position on one edge");
            tracks[e].sites.emplace_back(pos, static_cast<int>(pi));
            if (pos == kZero || pos == kOne) d.simple = false;
        }
        if (p.participants.size() != 2) d.simple = false;

        if (p.perm.empty() && p.participants.size() == 2) {
            p.perm = {{edges_here[0], edges_here[1]}, {edges_here[1], edges_here[0]}};
        }
        std::vector<int> ins, outs;
        for (const auto& [a, b] : p.perm) {
            if (a == b) fail("FixedString", "half-edge permutation fixes a string");
            ins.push_back(a);
            outs.push_back(b);
        }
        auto sorted_edges = edges_here;
        std::sort(sorted_edges.begin(), sorted_edges.end());
        std::sort(ins.begin(), ins.end());
        std::sort(outs.begin(), outs.end());
        if (ins != sorted_edges || outs != sorted_edges)
            fail("BadPoint", "half-edge permutation is not a bijection on the participants");

        // Label: transversal intersection of the participating vertex labels.
        std::vector<std::string> vertex_labels;
        for (const auto& [e, pos] : p.participants) {
            if (pos == kZero) vertex_labels.push_back(d.source.edges[e].tail_label);
            else if (pos == kOne) vertex_labels.push_back(d.source.edges[e].head_label);
        }
        d.point_labels.push_back(ctx.intersect(vertex_labels));
    }
    for (auto& t : tracks) std::sort(t.sites.begin(), t.sites.end());

    // Acyclicity of the configuration, checked on the quotient multigraph
    // where every point is a node and every between-points piece is an arc.
    {
        std::vector<int> parent(d.points.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& t : tracks) {
            for (std::size_t i = 0; i + 1 < t.sites.size(); ++i) {
                int a = find(t.sites[i].second);
                int b = find(t.sites[i + 1].second);
                if (a == b) fail("LoopCreated", "configuration contains a loop");
                parent[a] = b;
            }
        }
    }

    // Recombine: walk piece chains. Piece i of edge j covers
    // [site[i-1], site[i]] with virtual sites at 0 and 1.
    auto piece_bounds = [&](int edge, int i) {
        const auto& s = tracks[edge].sites;
        Rational lo = i == 0 ? kZero : s[i - 1].first;
        Rational hi = i == static_cast<int>(s.size()) ? kOne : s[i].first;
        return std::make_pair(lo, hi);
    };
    auto perm_at = [&](int point, int in_edge) {
        for (const auto& [a, b] : d.points[point].perm)
            if (a == in_edge) return b;
        fail("BadPoint", "half-edge permutation missing an entry");
    };

    d.chain_end.assign(m, -1);
    for (int j = 0; j < m; ++j) {
        int edge = j, piece = 0;
        bool degenerate = true;
        int last_point = -1;
        while (true) {
            auto [lo, hi] = piece_bounds(edge, piece);
            if (lo < hi) degenerate = false;
            if (piece == static_cast<int>(tracks[edge].sites.size())) break;  // reached the head
            int point = tracks[edge].sites[piece].second;
            last_point = point;
            int next_edge = perm_at(point, edge);
            int site = -1;
            for (std::size_t i = 0; i < tracks[next_edge].sites.size(); ++i)
                if (tracks[next_edge].sites[i].second == point) site = static_cast<int>(i);
            if (site < 0)
                fail("BadPoint", "permutation target does not participate at the point");
            edge = next_edge;
            piece = site + 1;
        }
        d.chain_end[j] = edge;
        if (degenerate) {
            d.constant_components.push_back(d.point_labels[last_point]);
        } else {
            d.target.edges.push_back(OrientedEdge{d.source.edges[j].tail_label,
                                                  d.source.edges[edge].head_label});
        }
    }
    return d;
}

int interaction_codimension(const BraneContext& ctx, const InteractionPoint& p) {
    int k = 0, r = 0;
    for (const auto& [e, pos] : p.participants) {
        if (pos == kZero || pos == kOne) ++r;
        else ++k;
    }
    return ctx.ambient_dim() * (k + r - 1);
}

int saddle_degree_shift(const BraneContext& ctx, const SaddleDiagram& d) {
    int total = 0;
    for (const auto& p : d.points) total += interaction_codimension(ctx, p);
    return -total;
}

int sewing_degree_shift(const BraneContext& ctx, const SewingDiagram& t) {
    int d = ctx.ambient_dim();
    int total = 0;
    for (const auto& v : t.mid.vertices) {
        if (!v.alive) continue;
        switch (v.prov) {
            case VertexProv::End:
                break;
            case VertexProv::TypeI:
                total += ctx.brane(v.label).dim;
                break;
            case VertexProv::TypeII:
                total += d - ctx.brane(v.label).dim;
                break;
            case VertexProv::Merged3:
                total += d;
                break;
        }
    }
    return -total;
}

}  // namespace strop
