#include "rudvalis/monomial.hpp"
#include "rudvalis/verify.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rudvalis;

class MonomialTest : public ::testing::Test {
  protected:
    static void SetUpTestSuite() {
        G = new MonomialGenerators(generators());
        od = new OrbitData(weight14_orbits(*G));
    }
    static void TearDownTestSuite() {
        delete od;
        delete G;
    }
    static MonomialGenerators* G;
    static OrbitData* od;
};
MonomialGenerators* MonomialTest::G = nullptr;
OrbitData* MonomialTest::od = nullptr;

TEST_F(MonomialTest, GeneratorFacts) {
    EXPECT_EQ(G->perms.at("N0").order(), 4);
    EXPECT_EQ(G->m.det(), GaussRat(1));
    for (const auto& g : G->all()) EXPECT_EQ(g.det(), GaussRat(1));
    EXPECT_EQ(group_order(G->sign_changes), 128);
}

TEST_F(MonomialTest, Orders) {
    EXPECT_EQ(quotient_order(G->all()), 12096);
    EXPECT_EQ(group_order(G->all()), 1548288);
    std::vector<MonoMat> p;
    for (const auto& [n, g] : G->perms) p.push_back(g);
    EXPECT_EQ(quotient_order(p), 432);
}

// As printed, N356 is a bare permutation and the group picks up i*Id.
TEST_F(MonomialTest, PrintedGeneratorsGiveTheDoubleCover) {
    auto P = generators({.n356_scalar_i = false});
    EXPECT_EQ(group_order(P.all()), 3096576);
    EXPECT_EQ(quotient_order(P.all()), 12096);
    auto o = orbits14(dozens_code().dual(), moving_generators(P));
    size_t rel = 0;
    for (const auto& orb : o.orbits) rel += orb.relevant;
    EXPECT_EQ(rel, 0u);
}

TEST_F(MonomialTest, SourceReadingOfMGivesTheSameOrder) {
    auto S = generators({.m = MScalarConvention::source});
    EXPECT_EQ(group_order(S.all()), 1548288);
}

TEST_F(MonomialTest, Orbits) {
    EXPECT_EQ(od->orbits.size(), 80u);
    size_t rel = 0, total = 0;
    for (const auto& o : od->orbits) {
        rel += o.relevant;
        total += o.members.size();
        EXPECT_EQ(o.rep, o.members.front());
        if (!o.relevant) {
            EXPECT_FALSE(o.witness.empty());
        }
    }
    EXPECT_EQ(rel, 68u);
    EXPECT_EQ(total, od->words.size());
    EXPECT_TRUE(verify_orbits(*od).pass());
}

TEST_F(MonomialTest, StabilizerCharacterAgrees) { EXPECT_TRUE(verify_relevance_by_stabilizer(*od, *G).pass()); }

TEST_F(MonomialTest, FirstTableRepresentativeIsRelevant) {
    Word I = word_from_labels(nlohmann::json::parse(R"([3,5,6,8,11,18,19,20,21,22,25,26,27,"inf"])"));
    int o = od->orbit_containing(I);
    ASSERT_GE(o, 0);
    EXPECT_TRUE(od->orbits[o].relevant);
    EXPECT_TRUE(stabilizer_character(od->orbits[o], moving_generators(*G)).trivial);
}

TEST_F(MonomialTest, GammaIsTheSignOfEveryEdge) {
    for (const auto& orb : od->orbits) {
        if (!orb.relevant) continue;
        for (size_t a = 0; a < orb.members.size(); ++a)
            for (const auto& g : od->tree_gens) {
                auto [J, e] = spinor_coeff_exp(g, orb.members[a]);
                long b = orb.index_of(J);
                ASSERT_GE(b, 0);
                ASSERT_EQ(e % 2, 0);
                ASSERT_EQ(orb.gamma[b], (e == 0 ? 1 : -1) * orb.gamma[a]);
            }
    }
}

TEST_F(MonomialTest, SpinorCoefficientBasics) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        Word I = static_cast<Word>(rng()) & kAllOnes;
        EXPECT_EQ(spinor_coeff(MonoMat::identity(), I), std::make_pair(I, GaussRat(1)));
        for (Word D : dozen_words()) {
            auto [J, c] = spinor_coeff(MonoMat::sign_change(D), I);
            EXPECT_EQ(J, I);
            EXPECT_EQ(c, GaussRat(std::popcount(D & I) % 2 ? -1 : 1));
        }
    }
}

TEST_F(MonomialTest, SpinorCoefficientIsMultiplicative) {
    auto gens = G->all();
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        const auto& g = gens[rng() % gens.size()];
        const auto& h = gens[rng() % gens.size()];
        Word I = static_cast<Word>(rng()) & kAllOnes;
        auto [J, c1] = spinor_coeff(h, I);
        auto [K, c2] = spinor_coeff(g, J);
        auto [K2, c] = spinor_coeff(g * h, I);
        EXPECT_EQ(K, K2);
        EXPECT_EQ(c, c1 * c2);
    }
}

TEST_F(MonomialTest, ComplementCommutesWithTheAction) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        Word I = od->words[rng() % od->words.size()];
        for (const auto& g : G->all()) EXPECT_EQ(g.apply(kAllOnes ^ I), kAllOnes ^ g.apply(I));
    }
}
