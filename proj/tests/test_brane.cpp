#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "strop/brane.hpp"
#include "strop/errors.hpp"
#include "support.hpp"

using namespace strop;

static BraneContext small_ctx() {
    BraneContext ctx(3);
    ctx.add_brane(Brane{"I", 2, std::vector<int>{1, 2, 1}});
    ctx.add_brane(Brane{"J", 1, std::vector<int>{1, 1}});
    ctx.add_brane(Brane{"K", 3, std::nullopt});
    return ctx;
}

TEST_CASE("context validation") {
    BraneContext ctx(3);
    CHECK_THROWS_AS(ctx.add_brane(Brane{"", 1, std::nullopt}), Error);
    CHECK_THROWS_AS(ctx.add_brane(Brane{"X", -1, std::nullopt}), Error);
    CHECK_THROWS_AS(ctx.add_brane(Brane{"X", 4, std::nullopt}), Error);
    CHECK_THROWS_AS(ctx.add_brane(Brane{"X", 2, std::vector<int>{1}}), Error);
    ctx.add_brane(Brane{"X", 2, std::nullopt});
    CHECK_THROWS_AS(ctx.add_brane(Brane{"X", 1, std::nullopt}), Error);
    CHECK_THROWS_AS(ctx.brane("Y"), Error);
    CHECK(ctx.has(kTop));
    CHECK(ctx.brane(kTop).dim == 3);
}

TEST_CASE("intersection dimension follows the transversality count") {
    BraneContext ctx = small_ctx();
    FormalIntersection ij = ctx.intersect({"I", "J"});
    CHECK(ij.dim == 2 + 1 - 3);
    CHECK_FALSE(ij.empty);
    FormalIntersection iij = ctx.intersect({"I", "I", "J"});
    CHECK(iij.dim == 2 + 2 + 1 - 2 * 3);  // repeats count twice
    CHECK(iij.empty);                      // negative dimension
}

TEST_CASE("ambient label is absorbed and the empty list is the ambient manifold") {
    BraneContext ctx = small_ctx();
    CHECK(ctx.intersect({}).is_ambient());
    CHECK(ctx.intersect({}).dim == 3);
    CHECK(ctx.intersect({kTop, "I", kTop}) == ctx.intersect({"I"}));
    CHECK(ctx.intersect({"K"}).dim == 3);  // full-dimensional brane
}

TEST_CASE("intersection is permutation invariant and sorted") {
    BraneContext ctx = small_ctx();
    CHECK(ctx.intersect({"J", "I"}) == ctx.intersect({"I", "J"}));
    auto fi = ctx.intersect({"K", "I", "J"});
    CHECK(std::is_sorted(fi.labels.begin(), fi.labels.end()));
}

TEST_CASE("declared emptiness propagates to supersets") {
    BraneContext ctx = small_ctx();
    ctx.declare_empty({"I", "K"});
    CHECK(ctx.intersect({"I", "K"}).empty);
    CHECK(ctx.intersect({"K", "I", "J"}).empty);
    CHECK_FALSE(ctx.intersect({"I", "J"}).empty);
    CHECK_THROWS_AS(ctx.declare_empty({"I", "Nope"}), Error);
}

TEST_CASE("adding labels never raises the dimension and preserves emptiness") {
    support::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 2 + int(rng() % 3);
        BraneContext ctx = support::random_context(rng, d);
        std::vector<std::string> labels;
        int n = 1 + int(rng() % 4);
        for (int i = 0; i < n; ++i) labels.push_back(support::kLabels[rng() % 6]);
        FormalIntersection a = ctx.intersect(labels);
        labels.push_back(support::kLabels[rng() % 6]);
        FormalIntersection b = ctx.intersect(labels);
        CHECK(b.dim <= a.dim);
        if (a.empty) CHECK(b.empty);
    }
}

TEST_CASE("generic linear subspaces realize the dimension formula") {
    // Independent check: nullity of stacked random constraint systems.
    support::Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        int d = 2 + int(rng() % 4);
        BraneContext ctx = support::random_context(rng, d);
        int r = 1 + int(rng() % 3);
        std::vector<std::string> labels;
        std::vector<int> dims;
        for (int i = 0; i < r; ++i) {
            labels.push_back(support::kLabels[rng() % 6]);
            dims.push_back(ctx.brane(labels.back()).dim);
        }
        int oracle = support::generic_intersection_dim(rng, d, dims);
        FormalIntersection fi = ctx.intersect(labels);
        CHECK(std::max(fi.dim, 0) == oracle);
        CHECK(fi.empty == (fi.dim < 0));
    }
}

TEST_CASE("degree range and rank bound") {
    BraneContext ctx(3);
    ctx.add_brane(Brane{"I", 2, std::vector<int>{1, 2, 1}});
    ctx.add_brane(Brane{"J", 2, std::vector<int>{1, 0, 1}});
    FormalIntersection ij = ctx.intersect({"I", "J"});
    REQUIRE(ij.dim == 1);
    auto range = ctx.degree_range(ij);
    REQUIRE(range.has_value());
    CHECK(range->first == 0);
    CHECK(range->second == 1);
    // Coarse bound: truncated Betti convolution, checked against a direct
    // polynomial product done here by hand.
    std::vector<int> conv(5, 0);
    std::vector<int> a{1, 2, 1}, b{1, 0, 1};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) conv[i + j] += a[i] * b[j];
    for (int deg = 0; deg <= 1; ++deg) {
        auto bound = ctx.rank_upper_bound(ij, deg);
        REQUIRE(bound.has_value());
        CHECK(*bound == conv[deg]);
    }
    CHECK(ctx.rank_upper_bound(ij, 5) == 0);
    CHECK(ctx.rank_upper_bound(ij, -1) == 0);
    FormalIntersection empty = ij;
    empty.empty = true;
    CHECK(ctx.degree_range(empty) == std::nullopt);
    CHECK(ctx.rank_upper_bound(empty, 0) == 0);
    ctx.add_brane(Brane{"K", 1, std::nullopt});
    CHECK(ctx.rank_upper_bound(ctx.intersect({"K"}), 0) == std::nullopt);
}
