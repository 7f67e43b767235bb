#pragma once

#include <string>
#include <vector>

#include "strop/saddle.hpp"

namespace strop {

/// One simultaneous-interaction component: m strings meeting at a single
/// point, stored as the cyclic word of the 2m arc labels around the circle in
/// its canonical (lexicographically minimal) rotation. edge_cycle holds the
/// participating source-edge ids of the core stage, aligned with the word.
struct CyclicComponent {
    int m = 1;
    std::vector<std::string> word;
    std::vector<int> edge_cycle;

    friend bool operator==(const CyclicComponent&, const CyclicComponent&) = default;
};

/// How one merged string of the pre stage was glued from source edges.
struct MergeRecord {
    std::vector<int> source_edges;
    std::vector<std::string> glue_labels;

    friend bool operator==(const MergeRecord&, const MergeRecord&) = default;
};

/// Ordered split labels applied to one string in the post stage.
struct SplitRecord {
    std::vector<std::string> labels;

    friend bool operator==(const SplitRecord&, const SplitRecord&) = default;
};

struct NormalForm {
    std::vector<MergeRecord> pre;       // per core-source string
    std::vector<CyclicComponent> core;  // ordered by smallest participating edge
    std::vector<SplitRecord> post;      // per core-target string

    friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

struct DeformationStep {
    int kind = 0;  // 1: vertex slide to saddle, 2: collapse to one point
    std::string before;
    std::string after;
};

struct DeformationTrace {
    std::vector<DeformationStep> steps;
};

/// Slides the merged end vertex off every degree-3 vertex, turning it into a
/// simple interior crossing of the two edges involved.
SaddleDiagram deform_to_saddle(const BraneContext& ctx, const SewingDiagram& t3);

/// Brings all crossings of a connected simple diagram together into one
/// simultaneous point and reads off the cyclic structure. edge_ids, when
/// given, renames local edge indices for the stored cycle.
CyclicComponent collapse_simultaneous(const BraneContext& ctx, const SaddleDiagram& d,
                                      const std::vector<int>& edge_ids = {});

/// The collapsed component materialized as a one-point interior diagram.
SaddleDiagram simultaneous_diagram(const BraneContext& ctx, const CyclicComponent& c);

/// Specializes the simultaneous point to the corner eps of the parameter
/// cube: string k participates at its endpoint eps[k].
SaddleDiagram corner_specialize(const BraneContext& ctx, const CyclicComponent& c,
                                const std::vector<int>& eps);

NormalForm normal_form(const BraneContext& ctx, const SewingDiagram& t,
                       DeformationTrace* trace = nullptr);

std::string digest(const NormalForm& nf, bool include_edge_ids = true);

struct Equivalence {
    bool equivalent = false;
    /// Set when the sources agree only up to reordering, so the verdict rests
    /// on the label-preserving matching.
    bool ambiguous = false;
};
Equivalence check_equivalent(const BraneContext& ctx, const SewingDiagram& a,
                             const SewingDiagram& b);

}  // namespace strop
