#include "strop/sewing.hpp"

#include <algorithm>

#include "strop/errors.hpp"

namespace strop {

namespace {

Rational chain_coordinate(int index, const Rational& local, int chain_len) {
    // Chains are parametrized with equal-length segments: breakpoints at i/k.
    return (Rational(index) + local) / Rational(chain_len);
}

/// Computes G' from H. Each vertex of H either joins its incident segments
/// into a longer string or cuts them apart:
///   type (I) degree-2: erase, join in-segment to out-segment
///   type (II) degree-2: split into two labeled ends (cut both sides)
///   degree-3, third edge e1 pointing in: join e1 to the outgoing half, cut
///     the incoming half at the vertex
///   degree-3, third edge e1 pointing out: join the incoming half to e1, cut
///     the outgoing half at the vertex
void derive_target(SewingDiagram& d) {
    const SewingGraph& h = d.mid;
    int n = static_cast<int>(h.segments.size());
    std::vector<int> succ(n, -1), pred(n, -1);
    auto link = [&](int a, int b) {
        succ[a] = b;
        pred[b] = a;
    };

    for (const auto& v : h.vertices) {
        if (!v.alive) continue;
        std::vector<int> in, out;
        for (int s = 0; s < n; ++s) {
            if (h.segments[s].head == v.id) in.push_back(s);
            if (h.segments[s].tail == v.id) out.push_back(s);
        }
        if (v.prov == VertexProv::TypeI) {
            link(in.at(0), out.at(0));
        } else if (v.prov == VertexProv::Merged3) {
            // e2/e3 are the halves of the pass-through edge; e1 is the edge
            // whose end vertex was merged here (always a different source edge).
            int e2 = -1, e3 = -1, e1 = -1;
            bool e1_in = false;
            for (int s : in) {
                if (h.segments[s].src_edge == v.src_edge) e2 = s;
                else { e1 = s; e1_in = true; }
            }
            for (int s : out) {
                if (h.segments[s].src_edge == v.src_edge) e3 = s;
                else e1 = s;
            }
            if (e1 < 0 || e2 < 0 || e3 < 0) fail("BadGraph", "malformed degree-3 vertex");
            if (e1_in) link(e1, e3);
            else link(e2, e1);
        }
        // End and TypeII vertices cut; nothing to link.
    }

    struct Chain {
        int src_edge;
        Rational lo;
        std::vector<int> segs;
    };
    std::vector<Chain> chains;
    for (int s = 0; s < n; ++s) {
        if (pred[s] != -1) continue;
        Chain c{h.segments[s].src_edge, h.segments[s].lo, {}};
        for (int cur = s; cur != -1; cur = succ[cur]) c.segs.push_back(cur);
        chains.push_back(std::move(c));
    }
    std::sort(chains.begin(), chains.end(), [](const Chain& a, const Chain& b) {
        if (a.src_edge != b.src_edge) return a.src_edge < b.src_edge;
        return a.lo < b.lo;
    });

    d.target.edges.clear();
    d.back_map.clear();
    d.target_end_h.clear();
    for (const auto& c : chains) {
        int tail_v = h.segments[c.segs.front()].tail;
        int head_v = h.segments[c.segs.back()].head;
        d.target.edges.push_back(OrientedEdge{h.vertex(tail_v).label, h.vertex(head_v).label});
        d.back_map.push_back(c.segs);
        d.target_end_h.emplace_back(tail_v, head_v);
    }
}

EndRef unique_target_end(const SewingDiagram& t, int mid_vertex) {
    auto ends = target_ends_of_vertex(t, mid_vertex);
    if (ends.size() != 1)
        fail("BadGraph", "expected a unique target end under vertex " + std::to_string(mid_vertex));
    return ends[0];
}

}  // namespace

SewingDiagram extend(const EdgeUnion& source, std::vector<Move> moves) {
    SewingDiagram d;
    d.source = source;
    d.moves = std::move(moves);
    d.mid = graph_from_edges(source);
    for (const Move& m : d.moves) d.mid = apply_move(d.mid, m);
    derive_target(d);
    return d;
}

bool is_elementary(const SewingDiagram& t) {
    return t.moves.size() == 1 && !std::holds_alternative<MoveTypeIII>(t.moves[0]);
}

std::optional<std::pair<int, Rational>> source_point_to_target(const SewingDiagram& t, int edge,
                                                              const Rational& pos) {
    for (int e = 0; e < t.target.size(); ++e) {
        const auto& chain = t.back_map[e];
        int k = static_cast<int>(chain.size());
        for (int j = 0; j < k; ++j) {
            const Segment& s = t.mid.segments[chain[j]];
            if (s.src_edge == edge && s.lo < pos && pos < s.hi) {
                Rational local = (pos - s.lo) / (s.hi - s.lo);
                return std::make_pair(e, chain_coordinate(j, local, k));
            }
        }
    }
    return std::nullopt;
}

std::optional<std::pair<int, Rational>> target_point_to_source(const SewingDiagram& t, int edge,
                                                              const Rational& pos) {
    if (edge < 0 || edge >= t.target.size()) fail("BadGraph", "target edge out of range");
    if (!(kZero < pos && pos < kOne)) return std::nullopt;
    const auto& chain = t.back_map[edge];
    int k = static_cast<int>(chain.size());
    Rational x = pos * Rational(k);
    if (x.den == 1) return std::nullopt;  // breakpoint: sits under a vertex of H
    int j = static_cast<int>(x.num / x.den);
    Rational local = x - Rational(j);
    const Segment& s = t.mid.segments[chain[j]];
    return std::make_pair(s.src_edge, s.lo + local * (s.hi - s.lo));
}

int target_end_vertex(const SewingDiagram& t, const EndRef& r) {
    if (r.edge < 0 || r.edge >= t.target.size()) fail("BadGraph", "target edge out of range");
    return r.head ? t.target_end_h[r.edge].second : t.target_end_h[r.edge].first;
}

std::vector<EndRef> target_ends_of_vertex(const SewingDiagram& t, int mid_vertex) {
    std::vector<EndRef> out;
    for (int e = 0; e < t.target.size(); ++e) {
        if (t.target_end_h[e].first == mid_vertex) out.push_back(EndRef{e, false});
        if (t.target_end_h[e].second == mid_vertex) out.push_back(EndRef{e, true});
    }
    return out;
}

std::vector<Move> mirror_moves(const SewingDiagram& t) {
    std::vector<Move> out;
    // Reading the diagram from G': insertion vertices become identifications,
    // identification vertices become insertions, degree-3 vertices need both.
    for (const auto& v : t.mid.vertices) {
        if (!v.alive) continue;
        if (v.prov == VertexProv::End) continue;

        // Interior chain breakpoint under v, if the extension joined through it.
        std::optional<std::pair<int, Rational>> interior;
        for (int e = 0; e < t.target.size() && !interior; ++e) {
            const auto& chain = t.back_map[e];
            int k = static_cast<int>(chain.size());
            for (int j = 0; j + 1 < k; ++j) {
                if (t.mid.segments[chain[j]].head == v.id) {
                    interior = std::make_pair(e, Rational(j + 1, k));
                    break;
                }
            }
        }

        if (v.prov == VertexProv::TypeI) {
            out.push_back(MoveTypeII{interior->first, interior->second, v.label});
        } else if (v.prov == VertexProv::TypeII) {
            auto ends = target_ends_of_vertex(t, v.id);
            if (ends.size() != 2) fail("BadGraph", "split vertex without two target ends");
            out.push_back(MoveTypeI{ends[0], ends[1]});
        } else {
            EndRef cut = unique_target_end(t, v.id);
            out.push_back(MoveTypeII{interior->first, interior->second, v.label});
            out.push_back(MoveTypeIII{cut, interior->first, interior->second});
        }
    }
    return out;
}

SewingDiagram compose(const SewingDiagram& t, const SewingDiagram& t2) {
    if (!is_elementary(t2)) fail("NotComposable", "second diagram is not elementary");
    if (!(t2.source == t.target))
        fail("NotComposable", "source of the elementary diagram does not match the target");

    Move lifted;
    if (const auto* m = std::get_if<MoveTypeI>(&t2.moves[0])) {
        int ha = target_end_vertex(t, m->a);
        int hb = target_end_vertex(t, m->b);
        if (ha == hb)
            fail("NotComposable", "identified vertices map to the same vertex of H");
        const GraphVertex& va = t.mid.vertex(ha);
        const GraphVertex& vb = t.mid.vertex(hb);
        if (va.prov == VertexProv::End && vb.prov == VertexProv::End) {
            lifted = MoveTypeI{end_ref_of_id(ha), end_ref_of_id(hb)};
        } else if (va.prov == VertexProv::End && vb.prov == VertexProv::TypeII) {
            lifted = MoveTypeIII{end_ref_of_id(ha), vb.src_edge, vb.pos};
        } else if (vb.prov == VertexProv::End && va.prov == VertexProv::TypeII) {
            lifted = MoveTypeIII{end_ref_of_id(hb), va.src_edge, va.pos};
        } else {
            fail("NotComposable", "identification in H is not a legal type (I)/(III) step");
        }
    } else if (const auto* m = std::get_if<MoveTypeII>(&t2.moves[0])) {
        auto p = target_point_to_source(t, m->edge, m->at);
        if (!p) fail("NotComposable", "insertion point maps onto an existing vertex of H");
        lifted = MoveTypeII{p->first, p->second, m->label};
    } else {
        fail("NotComposable", "second diagram is not elementary");
    }

    std::vector<Move> moves = t.moves;
    moves.push_back(lifted);
    try {
        return extend(t.source, std::move(moves));
    } catch (const Error& e) {
        fail("NotComposable", e.what());
    }
}

std::vector<SewingDiagram> decompose(const SewingDiagram& t) {
    std::vector<SewingDiagram> out;
    std::vector<Move> prefix;
    SewingDiagram prev = extend(t.source, {});
    for (const Move& mv : t.moves) {
        Move em;
        if (const auto* m = std::get_if<MoveTypeI>(&mv)) {
            em = MoveTypeI{unique_target_end(prev, end_vertex_id(m->a)),
                           unique_target_end(prev, end_vertex_id(m->b))};
        } else if (const auto* m = std::get_if<MoveTypeII>(&mv)) {
            auto p = source_point_to_target(prev, m->edge, m->at);
            if (!p) fail("BadGraph", "insertion point not free in the running diagram");
            em = MoveTypeII{p->first, p->second, m->label};
        } else {
            const auto& m3 = std::get<MoveTypeIII>(mv);
            EndRef ea = unique_target_end(prev, end_vertex_id(m3.end));
            int v = prev.mid.find_insertion(m3.at_edge, m3.at);
            if (v < 0) fail("BadGraph", "merge site missing in the running diagram");
            auto halves = target_ends_of_vertex(prev, v);
            // Pick the split half of opposite polarity so the elementary step
            // is a legal head/tail identification.
            EndRef eb{};
            bool found = false;
            for (const auto& h : halves)
                if (h.head != ea.head) { eb = h; found = true; }
            if (!found) fail("BadGraph", "no matching split half for merge");
            em = MoveTypeI{ea, eb};
        }
        out.push_back(extend(prev.target, {em}));
        prefix.push_back(mv);
        prev = extend(t.source, prefix);
    }
    return out;
}

CanonicalDecomposition canonical_decomposition(const SewingDiagram& t) {
    std::vector<Move> m1;
    for (const Move& mv : t.moves)
        if (std::holds_alternative<MoveTypeI>(mv)) m1.push_back(mv);
    SewingDiagram t1 = extend(t.source, m1);

    std::vector<Move> m3;
    for (const Move& mv : t.moves) {
        const auto* m = std::get_if<MoveTypeIII>(&mv);
        if (!m) continue;
        int v = t.mid.find_insertion(m->at_edge, m->at);
        if (v < 0) fail("BadGraph", "merge site missing from replayed graph");
        auto p = source_point_to_target(t1, m->at_edge, m->at);
        if (!p) fail("BadGraph", "merge site not interior after stage 1");
        EndRef er = unique_target_end(t1, end_vertex_id(m->end));
        m3.push_back(MoveTypeII{p->first, p->second, t.mid.vertex(v).label});
        m3.push_back(MoveTypeIII{er, p->first, p->second});
    }
    SewingDiagram t3 = extend(t1.target, m3);

    std::vector<Move> m2;
    for (const Move& mv : t.moves) {
        const auto* m = std::get_if<MoveTypeII>(&mv);
        if (!m) continue;
        int v = t.mid.find_insertion(m->edge, m->at);
        if (v < 0 || t.mid.vertex(v).prov != VertexProv::TypeII) continue;  // consumed by a merge
        auto p1 = source_point_to_target(t1, m->edge, m->at);
        if (!p1) fail("BadGraph", "split site not interior after stage 1");
        auto p2 = source_point_to_target(t3, p1->first, p1->second);
        if (!p2) fail("BadGraph", "split site not interior after stage 3");
        m2.push_back(MoveTypeII{p2->first, p2->second, m->label});
    }
    SewingDiagram t2 = extend(t3.target, m2);

    return CanonicalDecomposition{std::move(t1), std::move(t3), std::move(t2)};
}

EdgeCountRelation edge_count_relation(const SewingDiagram& t) {
    EdgeCountRelation r;
    VertexCensus c = vertex_census(t.mid);
    r.e = t.source.size();
    r.e_prime = t.target.size();
    r.p1 = c.p1;
    r.p2 = c.p2;
    r.p3 = c.p3;
    r.holds = r.e_prime == r.e + r.p2 - r.p1;
    return r;
}

bool structurally_equal(const SewingDiagram& a, const SewingDiagram& b) {
    return a.source == b.source && a.mid.signature() == b.mid.signature() && a.target == b.target;
}

}  // namespace strop
