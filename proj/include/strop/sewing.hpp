#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "strop/graph.hpp"

namespace strop {

/// A sewing diagram G -> H <- G'. H is replayed from the move list; G' and the
/// correspondence data are derived by the canonical extension rules.
struct SewingDiagram {
    EdgeUnion source;
    std::vector<Move> moves;
    SewingGraph mid;
    EdgeUnion target;

    /// Per target edge: the chain of mid segment indices it traverses.
    std::vector<std::vector<int>> back_map;
    /// Per target edge: mid vertex ids under its tail and head vertices.
    std::vector<std::pair<int, int>> target_end_h;
};

SewingDiagram extend(const EdgeUnion& source, std::vector<Move> moves);

inline SewingDiagram trivial_diagram(const EdgeUnion& g) { return extend(g, {}); }

bool is_elementary(const SewingDiagram& t);

/// Interior point of source edge -> point of the target edge whose chain
/// covers it, in chain coordinates (chains are parametrized by equal-length
/// segments). Absent when the point sits under a vertex of H.
std::optional<std::pair<int, Rational>> source_point_to_target(const SewingDiagram& t, int edge,
                                                              const Rational& pos);

/// Inverse direction; absent when the target point is a chain breakpoint.
std::optional<std::pair<int, Rational>> target_point_to_source(const SewingDiagram& t, int edge,
                                                              const Rational& pos);

/// Mid vertex sitting under the given end of a target edge.
int target_end_vertex(const SewingDiagram& t, const EndRef& r);

/// Target end refs mapping to the given mid vertex (a split insertion vertex
/// has two, everything else at most one).
std::vector<EndRef> target_ends_of_vertex(const SewingDiagram& t, int mid_vertex);

/// The move list realizing the reverse reading G' -> H <- G of the diagram.
std::vector<Move> mirror_moves(const SewingDiagram& t);

/// T2 acts after T (T'' = T2 . T); T2 must be elementary with source equal to
/// T's target.
SewingDiagram compose(const SewingDiagram& t, const SewingDiagram& t2);

std::vector<SewingDiagram> decompose(const SewingDiagram& t);

struct CanonicalDecomposition {
    SewingDiagram t1;  // merges only (type I degree-2 vertices)
    SewingDiagram t3;  // degree-1/3 forest core
    SewingDiagram t2;  // splits only (type II degree-2 vertices)
};
CanonicalDecomposition canonical_decomposition(const SewingDiagram& t);

struct EdgeCountRelation {
    int e = 0;
    int e_prime = 0;
    int p1 = 0;
    int p2 = 0;
    int p3 = 0;
    bool holds = false;  // e' == e + p2 - p1
};
EdgeCountRelation edge_count_relation(const SewingDiagram& t);

/// Structural equality over a common source: same source, same mid vertex
/// footprints, same target.
bool structurally_equal(const SewingDiagram& a, const SewingDiagram& b);

}  // namespace strop
