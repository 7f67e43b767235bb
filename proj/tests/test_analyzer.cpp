#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "strop/analyzer.hpp"
#include "support.hpp"

using namespace strop;

namespace {

/// Branes named K1..K6 plus I,J,Q, all of dimension `bdim` in ambient `d`.
BraneContext corner_ctx(int d = 8, int bdim = 4) {
    BraneContext ctx(d);
    for (const char* l : {"K1", "K2", "K3", "K4", "K5", "K6", "I", "J", "Q", "L"})
        ctx.add_brane(Brane{l, bdim, std::nullopt});
    return ctx;
}

Factor const_im(const BraneContext& ctx, std::vector<std::string> labels, std::string from,
                std::string to) {
    return meet_factor({ctx.intersect(labels)}, std::move(from), std::move(to));
}

}  // namespace

TEST_CASE("coproduct splits into two constant-image factors") {
    BraneContext ctx = corner_ctx();
    TargetDescriptor td = coproduct_target(ctx, "I", "J", "L");
    REQUIRE(td.factors.size() == 2);
    CHECK(td.factors[0] == const_im(ctx, {"I", "J"}, "J", "I"));
    CHECK(td.factors[1] == const_im(ctx, {"I", "L"}, "I", "L"));
    // splitting along the ambient label carries no constancy claim
    TargetDescriptor amb = coproduct_target(ctx, kTop, "J", "L");
    CHECK(amb.factors[0].kind == FactorKind::Full);
    CHECK(amb.factors[1].kind == FactorKind::Full);
    CHECK_FALSE(amb.notes.empty());
}

TEST_CASE("product with a fundamental class: degree and target") {
    BraneContext ctx = corner_ctx(8, 6);
    // a * [J cap L] for a in P_{IJ}: degree drops by dim J - dim(J cap L)
    ProductResult r = product_with_fundamental(ctx, Side::Right, "I", "J", "L", 3);
    int dim_jl = ctx.intersect({"J", "L"}).dim;  // 6+6-8 = 4
    CHECK(r.out_degree == 3 + dim_jl - 6);
    REQUIRE(r.target.factors.size() == 1);
    CHECK(r.target.factors[0] == const_im(ctx, {"I", "L"}, "I", "L"));
    // degree falling below zero kills the class
    ProductResult low = product_with_fundamental(ctx, Side::Right, "I", "J", "L", 0);
    CHECK(low.target.factors[0].kind == FactorKind::Zero);
    // declared-empty landing space kills it too
    BraneContext ctx2 = corner_ctx();
    ctx2.declare_empty({"I", "L"});
    ProductResult dead = product_with_fundamental(ctx2, Side::Right, "I", "J", "L", 5);
    CHECK(dead.target.factors[0].kind == FactorKind::Zero);
    CHECK_THROWS_AS(product_with_fundamental(ctx, Side::Left, "I", "J", "L", -1), Error);
}

TEST_CASE("constant-image product lands over the union of constraints") {
    BraneContext ctx = corner_ctx(8, 6);
    Factor f = constant_image_product(ctx, ctx.intersect({"I", "K1"}),
                                      ctx.intersect({"K1", "Q"}), "I", "Q");
    CHECK(f == const_im(ctx, {"I", "K1", "Q"}, "I", "Q"));
}

TEST_CASE("three-factor product chain stays constant over the triple intersection") {
    // a * [J cap K1] in P_{IJ} and [K1 cap L] * b in P_{LQ}, multiplied along
    // K1, give a constant class over I cap K1 cap Q.
    BraneContext ctx = corner_ctx(6, 5);
    ProductResult left = product_with_fundamental(ctx, Side::Right, "I", "J", "K1", 3);
    ProductResult right = product_with_fundamental(ctx, Side::Left, "K1", "L", "Q", 3);
    REQUIRE(left.target.factors[0].kind == FactorKind::ConstImage);
    REQUIRE(right.target.factors[0].kind == FactorKind::ConstImage);
    Factor chained = constant_image_product(ctx, left.target.factors[0].members[0],
                                            right.target.factors[0].members[0], "I", "Q");
    CHECK(chained == const_im(ctx, {"I", "K1", "Q"}, "I", "Q"));
}

TEST_CASE("iterated coproduct with one label equals the plain coproduct") {
    BraneContext ctx = corner_ctx();
    CHECK(iterated_coproduct_target(ctx, "I", "J", {"K1"}) ==
          coproduct_target(ctx, "K1", "I", "J"));
    CHECK_THROWS_AS(iterated_coproduct_target(ctx, "I", "J", {}), Error);
}

TEST_CASE("iterated coproduct with two labels gives the three-factor target") {
    BraneContext ctx = corner_ctx(8, 6);
    TargetDescriptor td = iterated_coproduct_target(ctx, "I", "J", {"K1", "K2"});
    REQUIRE(td.factors.size() == 3);
    FormalIntersection head = ctx.intersect({"I", "K1", "K2"});
    FormalIntersection tail = ctx.intersect({"K1", "K2", "J"});
    CHECK(td.factors[0] == meet_factor({head}, "I", "K1"));
    CHECK(td.factors[1] == meet_factor({head, tail}, "K1", "K2"));
    CHECK(td.factors[2] == meet_factor({tail}, "K2", "J"));
    CHECK(iterated_coproduct_shift(ctx, {"K1", "K2"}) == -2 * (8 - 6));
}

TEST_CASE("outgoing-only value matches the intersection calculus") {
    support::Rng rng(404);
    for (int trial = 0; trial < 300; ++trial) {
        int d = 2 + int(rng() % 3);
        BraneContext ctx = support::random_context(rng, d);
        int r = int(rng() % 4);
        std::string i = support::kLabels[rng() % 6];
        std::vector<std::string> ks;
        for (int k = 0; k < r; ++k) ks.push_back(support::kLabels[rng() % 6]);
        ConstClassValue v = outgoing_only_value(ctx, i, ks);
        std::vector<std::string> all{i};
        all.insert(all.end(), ks.begin(), ks.end());
        FormalIntersection fi = ctx.intersect(all);
        CHECK(v.degree == fi.dim);
        CHECK(v.factors == r + 1);
        CHECK(v.zero == fi.empty);
        if (r == 0) {
            // unit class of the single brane at its own dimension
            CHECK(v.degree == ctx.brane(i).dim);
            CHECK_FALSE(v.zero);
        }
        // linear oracle for the generic dimension
        std::vector<int> dims;
        for (const auto& l : all) dims.push_back(ctx.brane(l).dim);
        CHECK(std::max(v.degree, 0) == support::generic_intersection_dim(rng, d, dims));
    }
}

TEST_CASE("alternating square target reproduces the two-string corner analysis") {
    BraneContext ctx = corner_ctx(8, 6);
    AnalysisReport rep = disc_operation_target(ctx, {"K1", "K2", "K3", "K4"});
    CHECK(rep.degree_shift == -8);
    REQUIRE(rep.target.factors.size() == 2);
    CHECK(rep.target.factors[0] == const_im(ctx, {"K2", "K3"}, "K3", "K2"));
    CHECK(rep.target.factors[1] == const_im(ctx, {"K1", "K4"}, "K1", "K4"));
    CHECK_FALSE(rep.vanishing.vanishes);
}

TEST_CASE("alternating hexagon target meets two corner intersections per factor") {
    BraneContext ctx = corner_ctx(8, 7);
    AnalysisReport rep = disc_operation_target(ctx, {"K1", "K2", "K3", "K4", "K5", "K6"});
    CHECK(rep.degree_shift == -2 * 8);
    REQUIRE(rep.target.factors.size() == 3);
    auto meet2 = [&](std::vector<std::string> a, std::vector<std::string> b, std::string from,
                     std::string to) {
        return meet_factor({ctx.intersect(a), ctx.intersect(b)}, std::move(from), std::move(to));
    };
    CHECK(rep.target.factors[0] ==
          meet2({"K3", "K2", "K5"}, {"K3", "K2", "K6"}, "K3", "K2"));
    CHECK(rep.target.factors[1] ==
          meet2({"K5", "K4", "K1"}, {"K5", "K4", "K2"}, "K5", "K4"));
    CHECK(rep.target.factors[2] ==
          meet2({"K1", "K6", "K3"}, {"K1", "K6", "K4"}, "K1", "K6"));
}

TEST_CASE("declared-empty corner kills the whole disc operation") {
    BraneContext ctx = corner_ctx(8, 6);
    ctx.declare_empty({"K2", "K3"});
    AnalysisReport rep = disc_operation_target(ctx, {"K1", "K2", "K3", "K4"});
    CHECK(rep.vanishing.vanishes);
    CHECK(rep.target.is_zero());
    REQUIRE(rep.target.factors.size() == 1);
    CHECK(rep.target.factors[0].kind == FactorKind::Zero);
}

TEST_CASE("one-string disc is the identity") {
    BraneContext ctx = corner_ctx();
    AnalysisReport rep = disc_operation_target(ctx, {"I", "J"});
    CHECK(rep.degree_shift == 0);
    REQUIRE(rep.target.factors.size() == 1);
    CHECK(rep.target.factors[0].kind == FactorKind::Full);
    CHECK_THROWS_AS(disc_operation_target(ctx, {"I"}), Error);
    CHECK_THROWS_AS(disc_operation_target(ctx, {}), Error);
}

TEST_CASE("vanishing is monotone under declaring more emptiness") {
    support::Rng rng(313);
    for (int trial = 0; trial < 150; ++trial) {
        BraneContext ctx = support::random_context(rng, 2 + int(rng() % 3));
        int m = 2 + int(rng() % 2);
        std::vector<std::string> arcs;
        for (int i = 0; i < 2 * m; ++i) arcs.push_back(support::kLabels[rng() % 6]);
        AnalysisReport before = disc_operation_target(ctx, arcs);
        BraneContext more = ctx;
        more.declare_empty({arcs[std::size_t(rng()) % arcs.size()],
                            arcs[std::size_t(rng()) % arcs.size()]});
        AnalysisReport after = disc_operation_target(more, arcs);
        if (before.vanishing.vanishes) CHECK(after.vanishing.vanishes);
    }
}

TEST_CASE("full analysis agrees with the bare degree bookkeeping") {
    support::Rng rng(515);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        BraneContext ctx = support::fat_context(2 + int(rng() % 3));
        EdgeUnion g = support::random_edges(rng, 4);
        std::vector<Move> moves = support::random_moves(rng, g, 5);
        SewingDiagram t = extend(g, moves);
        AnalysisReport rep;
        try {
            rep = analyze(ctx, t);
        } catch (const Error&) {
            continue;
        }
        CHECK(rep.degree_shift == sewing_degree_shift(ctx, t));
        CHECK_FALSE(rep.vanishing.vanishes);  // fat branes never vanish
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("analysis of the two-string swap is the square corner analysis") {
    BraneContext ctx = support::fat_context(3);
    EdgeUnion g = make_edge_union({{"A", "B"}, {"C", "D"}});
    SewingDiagram t = extend(g, {MoveTypeII{0, Rational(1, 2), "C"},
                                 MoveTypeIII{EndRef{1, false}, 0, Rational(1, 2)}});
    AnalysisReport rep = analyze(ctx, t);
    CHECK(rep.degree_shift == -3);
    REQUIRE(rep.target.factors.size() == 2);
    CHECK(rep.target.factors[0] == const_im(ctx, {"B", "C"}, "C", "B"));
    CHECK(rep.target.factors[1] == const_im(ctx, {"A", "D"}, "A", "D"));
}

TEST_CASE("classification truth table") {
    auto expected = [](const CobordismSignature& s) {
        if (s.genus > 0) return CobordismCase::Vanishes;
        if (s.windows == 1 && s.open_in == 0 && s.open_out == 0 && s.closed_out == 1)
            return CobordismCase::CaseI;
        if (s.windows == 0 && s.open_out == 0 && (s.closed_out == 1 || s.closed_out == 2))
            return CobordismCase::CaseII_III;
        if (s.windows == 0 && s.closed_out == 0 && s.open_out >= 1 &&
            s.open_out_boundaries == 1)
            return CobordismCase::CaseIV_V;
        return CobordismCase::Vanishes;
    };
    int cells = 0;
    for (int genus = 0; genus <= 2; ++genus)
        for (int windows = 0; windows <= 1; ++windows)
            for (int ci = 0; ci <= 2; ++ci)
                for (int co = 0; co <= 2; ++co)
                    for (int bc = 0; bc <= 3; ++bc)
                        for (int oi = 0; oi <= 2; ++oi)
                            for (int oo = 0; oo <= 2; ++oo)
                                for (int ob = 0; ob <= 3; ++ob) {
                                    CobordismSignature s{genus, windows, ci, co,
                                                         bc,    oi,      oo, ob};
                                    CobordismCase got;
                                    try {
                                        got = classify_cobordism(s);
                                    } catch (const Error&) {
                                        continue;  // inconsistent signature
                                    }
                                    CHECK(got == expected(s));
                                    ++cells;
                                }
    CHECK(cells > 500);
    CHECK_THROWS_AS(classify_cobordism(CobordismSignature{-1, 0, 0, 0, 1, 0, 0, 0}), Error);
}
