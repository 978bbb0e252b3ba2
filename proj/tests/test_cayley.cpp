#include "rudvalis/cayley.hpp"
#include "rudvalis/verify.hpp"

#include <gtest/gtest.h>

using namespace rudvalis;

class CayleyTest : public ::testing::Test {
  protected:
    static void SetUpTestSuite() {
        A = new CayleyAlgebra(CayleyAlgebra::build());
        c = new CayleyCensus(census(*A));
    }
    static void TearDownTestSuite() {
        delete c;
        delete A;
    }
    static CayleyAlgebra* A;
    static CayleyCensus* c;
};
CayleyAlgebra* CayleyTest::A = nullptr;
CayleyCensus* CayleyTest::c = nullptr;

TEST_F(CayleyTest, Relations) {
    EXPECT_EQ(A->cube(A->h_inf_plus_h0), A->unit);
    EXPECT_NE(A->h_inf_plus_h0, A->unit);
    EXPECT_EQ(A->square(A->h_inf_minus_h0), A->unit);
    for (int x = 0; x < 256; ++x) EXPECT_EQ((*A)(A->unit, x), x);
}

TEST_F(CayleyTest, PolarForm) {
    for (int x = 0; x < 256; ++x)
        for (int y = 0; y < 256; ++y) ASSERT_EQ(A->b(x, y), A->qbar[x ^ y] ^ A->qbar[x] ^ A->qbar[y]);
}

TEST_F(CayleyTest, Counts) {
    EXPECT_EQ(c->involutions.size(), 63u);
    EXPECT_EQ(c->cube_roots.size(), 56u);
    EXPECT_EQ(c->pairs.size(), 28u);
    EXPECT_EQ(c->lines.size(), 315u);
    EXPECT_EQ(c->rings.size(), 63u);
}

TEST_F(CayleyTest, Reports) {
    EXPECT_TRUE(verify_cayley_algebra(*A).pass());
    EXPECT_TRUE(verify_census(*A, *c).pass());
}

// the commutation rule is stated for u-perp; off it, u commutes with everything yet b(u, a) = 1 for cube roots a
TEST_F(CayleyTest, CommutationRuleNeedsUPerp) {
    CayleyElt a = c->cube_roots.front();
    EXPECT_EQ(A->b(A->unit, a), 1);
    EXPECT_EQ((*A)(A->unit, a), (*A)(a, A->unit));
}

TEST_F(CayleyTest, EachInvolutionLiesOnThreeRings) {
    std::map<CayleyElt, int> n;
    for (const auto& r : c->rings)
        for (CayleyElt x : r) ++n[x];
    EXPECT_EQ(n.size(), 63u);
    for (auto [x, k] : n) EXPECT_EQ(k, 3);
}

TEST_F(CayleyTest, GridConsistency) {
    auto dz = dozen_words();
    dz.pop_back();
    EXPECT_TRUE(grid_consistency(*A, *c, load_grid(), dz).ok);
    // infinity must label a cube-root pair
    auto bad = grid_consistency(*A, *c, load_grid(), dz, c->involutions.front());
    EXPECT_FALSE(bad.ok);
    EXPECT_FALSE(bad.certificate.empty());
}

TEST_F(CayleyTest, GridWithSwappedBlocksIsRecorded) {
    auto dz = dozen_words();
    dz.pop_back();
    auto grid = load_grid();
    std::swap(grid[0].m, grid[1].l);
    auto r = grid_consistency(*A, *c, grid, dz);
    RecordProperty("swapped_grid_consistent", r.ok ? "true" : "false");
    SUCCEED();
}
