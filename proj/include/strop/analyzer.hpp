#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strop/normal_form.hpp"

namespace strop {

enum class FactorKind { Full, ConstImage, Meet, Zero };

/// One tensor factor of a target subgroup: a subgroup of H_*(P_{from,to}).
struct Factor {
    FactorKind kind = FactorKind::Full;
    std::string from;
    std::string to;
    /// ConstImage: one intersection; Meet: several, all mapped in by constant
    /// strings. Empty for Full/Zero.
    std::vector<FormalIntersection> members;

    friend bool operator==(const Factor&, const Factor&) = default;
};

Factor full_factor(std::string from, std::string to);
Factor zero_factor(std::string from, std::string to);
/// Builds ConstImage/Meet/Zero from candidate members with simplification
/// (dedupe, single member collapses to ConstImage, empty member forces Zero).
Factor meet_factor(std::vector<FormalIntersection> members, std::string from, std::string to);

/// Tensor product of factors across the outgoing strings, with free-form
/// caveats (e.g. unsupported splittings).
struct TargetDescriptor {
    std::vector<Factor> factors;
    std::vector<std::string> notes;

    bool is_zero() const;

    friend bool operator==(const TargetDescriptor& a, const TargetDescriptor& b) {
        return a.factors == b.factors;
    }
};

struct Vanishing {
    bool vanishes = false;
    std::vector<std::string> reasons;
};

/// A diagonal constant class: the image of the fundamental class of `base`
/// spread across `factors` tensor slots.
struct ConstClassValue {
    FormalIntersection base;
    int factors = 1;
    int degree = 0;
    bool zero = false;
};

enum class CobordismCase { CaseI, CaseII_III, CaseIV_V, Vanishes };
std::string to_string(CobordismCase c);

/// "I∩J∩K" style rendering; the ambient label for the empty multiset.
std::string fi_label_string(const FormalIntersection& fi);

struct AnalysisReport {
    int degree_shift = 0;
    Vanishing vanishing;
    TargetDescriptor target;
    std::optional<ConstClassValue> value;
    std::optional<CobordismCase> classification;
};

/// Splitting P_{JK} along I: images land in constant strings over J∩I and
/// I∩K. Splitting along the ambient label carries no constancy claim and is
/// reported as Full with a note.
TargetDescriptor coproduct_target(const BraneContext& ctx, const std::string& i,
                                  const std::string& j, const std::string& k);

struct ProductResult {
    TargetDescriptor target;
    int out_degree = 0;
};
/// Product with a fundamental class: side=left is [I∩J] * a for a in P_{JK},
/// side=right is a * [J∩K] for a in P_{IJ}; either way the output lives in
/// constant strings over I∩K inside P_{IK}.
enum class Side { Left, Right };
ProductResult product_with_fundamental(const BraneContext& ctx, Side side, const std::string& i,
                                       const std::string& j, const std::string& k,
                                       int input_degree);

/// Product along the shared label of two constant-image subgroups: constant
/// strings over A and over B concatenate only at common points, landing in
/// constant strings over A cap B inside P_{from,to}.
Factor constant_image_product(const BraneContext& ctx, const FormalIntersection& a,
                              const FormalIntersection& b, const std::string& from,
                              const std::string& to);

TargetDescriptor iterated_coproduct_target(const BraneContext& ctx, const std::string& i,
                                           const std::string& j,
                                           const std::vector<std::string>& ks);
int iterated_coproduct_shift(const BraneContext& ctx, const std::vector<std::string>& ks);

/// Closed-form value of the operation of a disc with only outgoing strings:
/// the diagonal image of the fundamental class of I cap K_1 ... cap K_r.
ConstClassValue outgoing_only_value(const BraneContext& ctx, const std::string& i,
                                    const std::vector<std::string>& ks);

/// Constancy analysis of the alternating disc with 2m boundary arcs.
AnalysisReport disc_operation_target(const BraneContext& ctx,
                                     const std::vector<std::string>& arc_labels);

AnalysisReport analyze(const BraneContext& ctx, const SewingDiagram& t);

struct CobordismSignature {
    int genus = 0;
    int windows = 0;
    int closed_in = 0;
    int closed_out = 0;
    int boundary_components = 1;
    int open_in = 0;
    int open_out = 0;
    /// Number of boundary components carrying outgoing open strings.
    int open_out_boundaries = 0;
};
CobordismCase classify_cobordism(const CobordismSignature& sig);

}  // namespace strop
