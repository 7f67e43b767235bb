#include "strop/analyzer.hpp"

#include <algorithm>

#include "strop/errors.hpp"

namespace strop {

std::string fi_label_string(const FormalIntersection& fi) {
    if (fi.labels.empty()) return kTop;
    std::string s;
    for (std::size_t i = 0; i < fi.labels.size(); ++i) {
        if (i) s += "∩";
        s += fi.labels[i];
    }
    return s;
}

namespace {

void collapse_to_zero(AnalysisReport& rep) {
    rep.vanishing.vanishes = true;
    rep.target.factors = {Factor{FactorKind::Zero, "", "", {}}};
}

}  // namespace

Factor full_factor(std::string from, std::string to) {
    return Factor{FactorKind::Full, std::move(from), std::move(to), {}};
}

Factor zero_factor(std::string from, std::string to) {
    return Factor{FactorKind::Zero, std::move(from), std::move(to), {}};
}

Factor meet_factor(std::vector<FormalIntersection> members, std::string from, std::string to) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Factor f;
    f.from = std::move(from);
    f.to = std::move(to);
    f.members = std::move(members);
    bool any_empty = std::any_of(f.members.begin(), f.members.end(),
                                 [](const FormalIntersection& m) { return m.empty; });
    if (f.members.empty()) f.kind = FactorKind::Full;
    else if (any_empty) f.kind = FactorKind::Zero;  // members kept as witnesses
    else if (f.members.size() == 1) f.kind = FactorKind::ConstImage;
    else f.kind = FactorKind::Meet;
    return f;
}

bool TargetDescriptor::is_zero() const {
    return std::any_of(factors.begin(), factors.end(),
                       [](const Factor& f) { return f.kind == FactorKind::Zero; });
}

std::string to_string(CobordismCase c) {
    switch (c) {
        case CobordismCase::CaseI: return "CaseI";
        case CobordismCase::CaseII_III: return "CaseII_III";
        case CobordismCase::CaseIV_V: return "CaseIV_V";
        case CobordismCase::Vanishes: return "Vanishes";
    }
    return "?";
}

TargetDescriptor coproduct_target(const BraneContext& ctx, const std::string& i,
                                  const std::string& j, const std::string& k) {
    ctx.brane(i);
    ctx.brane(j);
    ctx.brane(k);
    TargetDescriptor td;
    if (i == kTop) {
        // Splitting along the ambient manifold sits outside the brane family;
        // no constancy statement is available.
        td.factors.push_back(full_factor(j, i));
        td.factors.push_back(full_factor(i, k));
        td.notes.push_back("splitting along the ambient label carries no constancy claim");
        return td;
    }
    td.factors.push_back(meet_factor({ctx.intersect({j, i})}, j, i));
    td.factors.push_back(meet_factor({ctx.intersect({i, k})}, i, k));
    return td;
}

ProductResult product_with_fundamental(const BraneContext& ctx, Side side, const std::string& i,
                                       const std::string& j, const std::string& k,
                                       int input_degree) {
    if (input_degree < 0) fail("BadDegree", "input degree must be >= 0");
    FormalIntersection fund =
        side == Side::Left ? ctx.intersect({i, j}) : ctx.intersect({j, k});
    FormalIntersection ik = ctx.intersect({i, k});
    ProductResult r;
    r.out_degree = input_degree + fund.dim - ctx.brane(j).dim;
    bool zero = ik.empty || fund.empty || r.out_degree < 0 || r.out_degree > ik.dim;
    if (zero) r.target.factors.push_back(zero_factor(i, k));
    else r.target.factors.push_back(meet_factor({ik}, i, k));
    return r;
}

Factor constant_image_product(const BraneContext& ctx, const FormalIntersection& a,
                              const FormalIntersection& b, const std::string& from,
                              const std::string& to) {
    // Set union of the participating labels: the shared constraint is
    // idempotent here, unlike a perturbed self-intersection.
    std::vector<std::string> labels = a.labels;
    labels.insert(labels.end(), b.labels.begin(), b.labels.end());
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return meet_factor({ctx.intersect(labels)}, from, to);
}

TargetDescriptor iterated_coproduct_target(const BraneContext& ctx, const std::string& i,
                                           const std::string& j,
                                           const std::vector<std::string>& ks) {
    if (ks.empty()) fail("ShapeError", "iterated coproduct needs at least one splitting label");
    std::vector<std::string> left{i}, right = ks;
    left.insert(left.end(), ks.begin(), ks.end());
    right.push_back(j);
    FormalIntersection head = ctx.intersect(left);   // I cap K_1 ... K_r
    FormalIntersection tail = ctx.intersect(right);  // K_1 ... K_r cap J

    TargetDescriptor td;
    td.factors.push_back(meet_factor({head}, i, ks.front()));
    for (std::size_t idx = 0; idx + 1 < ks.size(); ++idx)
        td.factors.push_back(meet_factor({head, tail}, ks[idx], ks[idx + 1]));
    td.factors.push_back(meet_factor({tail}, ks.back(), j));
    if (td.is_zero())
        td.factors = {Factor{FactorKind::Zero, "", "", {}}};
    return td;
}

int iterated_coproduct_shift(const BraneContext& ctx, const std::vector<std::string>& ks) {
    int s = 0;
    for (const auto& k : ks) s -= ctx.ambient_dim() - ctx.brane(k).dim;
    return s;
}

ConstClassValue outgoing_only_value(const BraneContext& ctx, const std::string& i,
                                    const std::vector<std::string>& ks) {
    std::vector<std::string> labels{i};
    labels.insert(labels.end(), ks.begin(), ks.end());
    ConstClassValue v;
    v.base = ctx.intersect(labels);
    v.factors = static_cast<int>(ks.size()) + 1;
    v.degree = v.base.dim;
    v.zero = v.base.empty;
    return v;
}

AnalysisReport disc_operation_target(const BraneContext& ctx,
                                     const std::vector<std::string>& arc_labels) {
    if (arc_labels.empty() || arc_labels.size() % 2 != 0)
        fail("OddArcCount", "need a positive even number of arc labels");
    for (const auto& l : arc_labels) ctx.brane(l);
    int m = static_cast<int>(arc_labels.size()) / 2;

    AnalysisReport rep;
    rep.classification = CobordismCase::CaseIV_V;
    if (m == 1) {
        rep.target.factors.push_back(full_factor(arc_labels[0], arc_labels[1]));
        return rep;
    }
    rep.degree_shift = -(m - 1) * ctx.ambient_dim();

    // Corner intersections K_eps over the full cube; any empty one kills the
    // whole operation, not just its own meet.
    std::vector<FormalIntersection> corner(std::size_t(1) << m);
    for (int eps = 0; eps < (1 << m); ++eps) {
        std::vector<std::string> labels;
        for (int j = 1; j <= m; ++j) {
            int bit = (eps >> (j - 1)) & 1;
            labels.push_back(arc_labels[2 * j - 2 + bit]);
        }
        corner[eps] = ctx.intersect(labels);
        if (corner[eps].empty) {
            std::string bits;
            for (int j = 1; j <= m; ++j) bits += char('0' + ((eps >> (j - 1)) & 1));
            rep.vanishing.vanishes = true;
            rep.vanishing.reasons.push_back("empty corner intersection " + fi_label_string(corner[eps]) +
                                            " at eps=(" + bits + ")");
        }
    }

    for (int k = 1; k <= m; ++k) {
        std::vector<FormalIntersection> members;
        for (int eps = 0; eps < (1 << m); ++eps) {
            bool k_on = (eps >> (k - 1)) & 1;
            bool next_off = !((eps >> (k % m)) & 1);
            if (k_on && next_off) members.push_back(corner[eps]);
        }
        rep.target.factors.push_back(
            meet_factor(std::move(members), arc_labels[(2 * k) % (2 * m)], arc_labels[2 * k - 1]));
    }
    if (rep.vanishing.vanishes) collapse_to_zero(rep);
    return rep;
}

AnalysisReport analyze(const BraneContext& ctx, const SewingDiagram& t) {
    NormalForm nf = normal_form(ctx, t);
    CanonicalDecomposition cd = canonical_decomposition(t);
    int d = ctx.ambient_dim();

    AnalysisReport rep;
    rep.classification = CobordismCase::CaseIV_V;

    for (const auto& rec : nf.pre)
        for (const auto& l : rec.glue_labels) rep.degree_shift -= ctx.brane(l).dim;
    for (const auto& rec : nf.post)
        for (const auto& l : rec.labels) rep.degree_shift -= d - ctx.brane(l).dim;

    // Core-stage target edge whose string ends on the head of source edge l.
    auto ending_at = [&](int l) {
        for (int e = 0; e < cd.t3.target.size(); ++e)
            if (cd.t3.target_end_h[e].second == 2 * l + 1) return e;
        fail("BadGraph", "no core output ends at the expected vertex");
    };

    auto refine = [&](const Factor& f, const std::vector<std::string>& splits) {
        if (splits.empty()) {
            rep.target.factors.push_back(f);
            return;
        }
        // Post-stage splitting factors through the iterated-coproduct target.
        TargetDescriptor td = iterated_coproduct_target(ctx, f.from, f.to, splits);
        if (td.is_zero()) {
            rep.vanishing.vanishes = true;
            rep.vanishing.reasons.push_back("empty intersection while splitting P_{" + f.from +
                                            "," + f.to + "}");
        }
        for (auto& g : td.factors) rep.target.factors.push_back(std::move(g));
        for (auto& n : td.notes) rep.target.notes.push_back(std::move(n));
    };

    for (const CyclicComponent& c : nf.core) {
        if (c.m == 1) {
            Factor base = full_factor(c.word[0], c.word[1]);
            refine(base, nf.post[ending_at(c.edge_cycle[0])].labels);
            continue;
        }
        AnalysisReport sub = disc_operation_target(ctx, c.word);
        rep.degree_shift += sub.degree_shift;
        if (sub.vanishing.vanishes) {
            rep.vanishing.vanishes = true;
            for (auto& r : sub.vanishing.reasons) rep.vanishing.reasons.push_back(std::move(r));
            rep.target.factors.push_back(zero_factor("", ""));
            continue;
        }
        for (int k = 1; k <= c.m; ++k) {
            int l = c.edge_cycle[(k - 1) % c.m];
            refine(sub.target.factors[k - 1], nf.post[ending_at(l)].labels);
        }
    }

    if (rep.vanishing.vanishes) {
        auto notes = rep.target.notes;
        collapse_to_zero(rep);
        rep.target.notes = std::move(notes);
    }
    return rep;
}

CobordismCase classify_cobordism(const CobordismSignature& s) {
    if (s.genus < 0 || s.windows < 0 || s.closed_in < 0 || s.closed_out < 0 ||
        s.boundary_components < 0 || s.open_in < 0 || s.open_out < 0 ||
        s.open_out_boundaries < 0)
        fail("BadSignature", "signature entries must be >= 0");
    if (s.open_out == 0 && s.open_out_boundaries != 0)
        fail("BadSignature", "no outgoing open strings but nonzero carrying boundaries");
    if (s.open_out > 0 &&
        (s.open_out_boundaries < 1 || s.open_out_boundaries > s.boundary_components ||
         s.open_out_boundaries > s.open_out))
        fail("BadSignature", "carrying boundary count out of range");
    if ((s.open_in > 0 || s.open_out > 0) && s.boundary_components < 1)
        fail("BadSignature", "open strings need a boundary component");

    if (s.genus > 0) return CobordismCase::Vanishes;
    if (s.windows == 1 && s.open_in == 0 && s.open_out == 0 && s.closed_out == 1)
        return CobordismCase::CaseI;
    if (s.windows == 0 && s.open_out == 0 && (s.closed_out == 1 || s.closed_out == 2))
        return CobordismCase::CaseII_III;
    if (s.windows == 0 && s.closed_out == 0 && s.open_out >= 1 && s.open_out_boundaries == 1)
        return CobordismCase::CaseIV_V;
    return CobordismCase::Vanishes;
}

}  // namespace strop
