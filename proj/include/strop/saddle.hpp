#pragma once

#include <vector>

#include "strop/brane.hpp"
#include "strop/sewing.hpp"

namespace strop {

/// One interaction site. A position of 0 or 1 means the tail/head vertex of
/// the edge participates; anything in between is an interior crossing.
struct InteractionPoint {
    std::vector<std::pair<int, Rational>> participants;  // (edge, position)
    /// Fixed-point-free bijection sending the incoming half of an edge to the
    /// outgoing half of another participant, as (in edge, out edge) pairs.
    /// May be left empty for 2-participant points (the swap is canonical).
    std::vector<std::pair<int, int>> perm;
};

struct SaddleDiagram {
    EdgeUnion source;
    std::vector<InteractionPoint> points;
    EdgeUnion target;  // non-degenerate recombined strings
    /// Single-vertex components of G', labeled by their point's intersection.
    std::vector<FormalIntersection> constant_components;
    std::vector<FormalIntersection> point_labels;  // per point
    bool simple = false;

    /// Composite recombination: source edge j starts the target component that
    /// ends on edge chain_end[j]; degenerate components hold -1..., see cpp.
    std::vector<int> chain_end;
};

SaddleDiagram build_saddle(const BraneContext& ctx, EdgeUnion source,
                           std::vector<InteractionPoint> points);

int interaction_codimension(const BraneContext& ctx, const InteractionPoint& p);

int saddle_degree_shift(const BraneContext& ctx, const SaddleDiagram& d);

int sewing_degree_shift(const BraneContext& ctx, const SewingDiagram& t);

}  // namespace strop
