#pragma once

#include <string>
#include <variant>
#include <vector>

#include "strop/rational.hpp"

namespace strop {

/// Disjoint union of oriented labeled edges; the role of both G and G'.
struct OrientedEdge {
    std::string tail_label;
    std::string head_label;

    friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

struct EdgeUnion {
    std::vector<OrientedEdge> edges;

    int size() const { return static_cast<int>(edges.size()); }

    friend bool operator==(const EdgeUnion&, const EdgeUnion&) = default;
};

EdgeUnion make_edge_union(const std::vector<std::pair<std::string, std::string>>& pairs);

/// Multiset comparison of labeled edges, used where edge order is not part of
/// the identity (e.g. the round-trip involution check).
bool same_edges_unordered(const EdgeUnion& a, const EdgeUnion& b);

/// Reference to an end vertex of a source edge.
struct EndRef {
    int edge = 0;
    bool head = false;

    friend bool operator==(const EndRef&, const EndRef&) = default;
};

/// Identify two end vertices from different components (same label, one head
/// and one tail).
struct MoveTypeI {
    EndRef a;
    EndRef b;
};

/// Insert a labeled vertex at an interior point of a source edge. Position is
/// in the coordinates of the original edge, so move order does not change it.
struct MoveTypeII {
    int edge = 0;
    Rational at;
    std::string label;
};

/// Identify an end vertex with a previously inserted degree-2 vertex (named by
/// its insertion site) in another component.
struct MoveTypeIII {
    EndRef end;
    int at_edge = 0;
    Rational at;
};

using Move = std::variant<MoveTypeI, MoveTypeII, MoveTypeIII>;

enum class VertexProv { End, TypeI, TypeII, Merged3 };

struct GraphVertex {
    int id = 0;
    std::string label;
    VertexProv prov = VertexProv::End;
    bool alive = true;

    // TypeII / Merged3: the insertion site.
    int src_edge = -1;
    Rational pos;
    // TypeI / Merged3: original end-vertex ids identified into this vertex.
    std::vector<int> merged_ends;
};

/// One segment of a subdivided source edge: the interval [lo,hi] of edge
/// src_edge, running from vertex tail to vertex head.
struct Segment {
    int src_edge = 0;
    Rational lo;
    Rational hi;
    int tail = 0;
    int head = 0;
};

/// Sewing graph H, built by replaying moves over an EdgeUnion. Every edge of H
/// is a segment of exactly one source edge, which keeps the extension rules
/// and all point correspondences exact.
struct SewingGraph {
    std::vector<GraphVertex> vertices;  // indexed by id; merged slots marked dead
    std::vector<Segment> segments;

    const GraphVertex& vertex(int id) const;
    GraphVertex& vertex(int id);

    int degree(int vertex_id) const;
    int in_degree(int vertex_id) const;
    int out_degree(int vertex_id) const;

    /// Component id per live vertex (undirected reachability), keyed by vertex id.
    std::vector<int> component_ids() const;
    int component_of(int vertex_id) const;

    /// Live vertex ids in increasing order.
    std::vector<int> live_vertices() const;

    /// Id of the degree-2 vertex inserted at (edge,pos), or -1.
    int find_insertion(int src_edge, const Rational& pos) const;

    /// Iso-invariant fingerprint over the fixed source: sorted vertex
    /// footprints. Two replays over the same EdgeUnion give structurally equal
    /// graphs iff the signatures match.
    std::vector<std::string> signature() const;
};

SewingGraph graph_from_edges(const EdgeUnion& g);

/// Stable id scheme: tail of source edge i is 2i, head is 2i+1.
inline int end_vertex_id(const EndRef& r) { return 2 * r.edge + (r.head ? 1 : 0); }
inline EndRef end_ref_of_id(int id) { return EndRef{id / 2, id % 2 == 1}; }

SewingGraph apply_move(const SewingGraph& g, const Move& m);

std::vector<std::string> validate(const SewingGraph& g);

/// (p1, p2, p3): degree-2 type (I), degree-2 type (II), degree-3 counts.
struct VertexCensus {
    int p1 = 0;
    int p2 = 0;
    int p3 = 0;
};
VertexCensus vertex_census(const SewingGraph& g);

int component_count(const SewingGraph& g);

}  // namespace strop
