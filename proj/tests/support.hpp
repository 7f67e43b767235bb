#pragma once

// Shared helpers for the test binaries: deterministic random generation of
// brane contexts and legal move sequences, plus an independent linear-algebra
// oracle for generic intersection dimensions.

#include <random>
#include <string>
#include <vector>

#include "strop/brane.hpp"
#include "strop/sewing.hpp"

namespace support {

using Rng = std::mt19937;

inline const std::vector<std::string> kLabels = {"A", "B", "C", "D", "E", "F"};

inline strop::BraneContext random_context(Rng& rng, int d) {
    strop::BraneContext ctx(d);
    for (const auto& l : kLabels) {
        strop::Brane b;
        b.id = l;
        b.dim = static_cast<int>(rng() % (d + 1));
        ctx.add_brane(std::move(b));
    }
    return ctx;
}

/// A context where nothing ever vanishes: every brane is the whole manifold.
inline strop::BraneContext fat_context(int d = 2) {
    strop::BraneContext ctx(d);
    for (const auto& l : kLabels) ctx.add_brane(strop::Brane{l, d, std::nullopt});
    return ctx;
}

inline strop::EdgeUnion random_edges(Rng& rng, int max_edges) {
    int n = 1 + static_cast<int>(rng() % max_edges);
    strop::EdgeUnion g;
    // a small label pool keeps identification moves likely to be legal
    for (int i = 0; i < n; ++i)
        g.edges.push_back(strop::OrientedEdge{kLabels[rng() % 3], kLabels[rng() % 3]});
    return g;
}

/// Draws one random move proposal against the current graph state; legality
/// is still checked by the caller via the real replay.
inline strop::Move random_move_proposal(Rng& rng, int edge_count,
                                        const strop::SewingGraph& h) {
    auto rand_end = [&] {
        return strop::EndRef{static_cast<int>(rng() % edge_count), rng() % 2 == 0};
    };
    auto rand_pos = [&] {
        return strop::Rational(1 + static_cast<int>(rng() % 7), 8);
    };
    int kind = static_cast<int>(rng() % 3);
    if (kind == 2) {
        // aim the merge at an existing insertion vertex when there is one
        std::vector<const strop::GraphVertex*> sites;
        for (int id : h.live_vertices())
            if (h.vertex(id).prov == strop::VertexProv::TypeII)
                sites.push_back(&h.vertex(id));
        if (!sites.empty()) {
            const strop::GraphVertex* s = sites[rng() % sites.size()];
            return strop::Move{strop::MoveTypeIII{rand_end(), s->src_edge, s->pos}};
        }
        kind = static_cast<int>(rng() % 2);
    }
    if (kind == 0) return strop::Move{strop::MoveTypeI{rand_end(), rand_end()}};
    return strop::Move{strop::MoveTypeII{static_cast<int>(rng() % edge_count), rand_pos(),
                                         kLabels[rng() % 3]}};
}

/// Random legal move sequence, built by rejection sampling against the real
/// replay. Returns fewer than max_moves when proposals keep failing.
inline std::vector<strop::Move> random_moves(Rng& rng, const strop::EdgeUnion& g,
                                             int max_moves) {
    std::vector<strop::Move> moves;
    strop::SewingGraph h = strop::graph_from_edges(g);
    int want = static_cast<int>(rng() % (max_moves + 1));
    for (int i = 0; i < want; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < 60 && !placed; ++attempt) {
            strop::Move m = random_move_proposal(rng, g.size(), h);
            try {
                h = strop::apply_move(h, m);
                moves.push_back(m);
                placed = true;
            } catch (const strop::Error&) {
            }
        }
        if (!placed) break;
    }
    return moves;
}

// ---- generic-intersection oracle ----------------------------------------

/// Rank of a row-major matrix by Gaussian elimination with partial pivoting.
inline int matrix_rank(std::vector<std::vector<double>> a) {
    if (a.empty()) return 0;
    std::size_t rows = a.size(), cols = a[0].size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        for (std::size_t r = row + 1; r < rows; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-9) continue;
        std::swap(a[piv], a[row]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row) continue;
            double f = a[r][col] / a[row][col];
            for (std::size_t c = col; c < cols; ++c) a[r][c] -= f * a[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

/// Dimension of the intersection of generic linear subspaces of R^d with the
/// given dimensions, computed as the nullity of stacked random constraint
/// systems. Independent of the engine's arithmetic.
inline int generic_intersection_dim(Rng& rng, int d, const std::vector<int>& dims) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> constraints;
    for (int k : dims)
        for (int r = 0; r < d - k; ++r) {
            std::vector<double> row(d);
            for (double& x : row) x = gauss(rng);
            constraints.push_back(std::move(row));
        }
    if (constraints.empty()) return d;
    return d - matrix_rank(std::move(constraints));
}

}  // namespace support
