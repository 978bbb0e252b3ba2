#include "rudvalis/spinor.hpp"
#include "rudvalis/verify.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rudvalis;

namespace {

GaussRat small_gauss(std::mt19937_64& rng) {
    return GaussRat(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3);
}

GMatrix random_rank4_projector(std::mt19937_64& rng, int n) {
    for (;;) {
        GMatrix B(4, GRow(n));
        for (auto& r : B)
            for (auto& x : r) x = small_gauss(rng);
        if (rank(B) == 4) return orthogonal_projector(B);
    }
}

// (a e_{i1}) ^ ... ^ (a e_{ik}) expanded over all index tuples, sorted with sign
SpinVec dense_exterior(const GMatrix& a, const SpinVec& v) {
    const int n = static_cast<int>(a.size());
    std::vector<SpinVec::Term> out;
    for (const auto& [I, c] : v.terms()) {
        std::vector<int> idx;
        for (int j = 0; j < n; ++j)
            if (I >> j & 1) idx.push_back(j);
        const int k = static_cast<int>(idx.size());
        std::vector<int> t(k, 0);
        for (;;) {
            GaussRat coef = c;
            Word J = 0;
            bool ok = true;
            for (int s = 0; s < k && ok; ++s) {
                coef *= a[t[s]][idx[s]];
                ok = !(J >> t[s] & 1);
                J |= Word(1) << t[s];
            }
            if (ok && !coef.is_zero()) {
                int inv = 0;
                for (int x = 0; x < k; ++x)
                    for (int y = x + 1; y < k; ++y) inv += t[x] > t[y];
                out.push_back({J, inv % 2 ? -coef : coef});
            }
            int p = 0;
            while (p < k && ++t[p] == n) t[p++] = 0;
            if (p == k) break;
        }
    }
    return SpinVec(std::move(out));
}

SpinVec random_vec(std::mt19937_64& rng, int n, int d, int terms) {
    std::vector<SpinVec::Term> t;
    auto subsets = subsets_of_size((Word(1) << n) - 1, d);
    for (int k = 0; k < terms; ++k) t.push_back({subsets[rng() % subsets.size()], small_gauss(rng)});
    return SpinVec(std::move(t));
}

GMatrix reflection(const GMatrix& P) {
    GMatrix a = identity_matrix(P.size());
    for (size_t r = 0; r < P.size(); ++r)
        for (size_t c = 0; c < P.size(); ++c) a[r][c] -= GaussRat(2) * P[r][c];
    return a;
}

} // namespace

TEST(Exterior, ThreeRoutesAgreeInDimensionSix) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        GMatrix P = random_rank4_projector(rng, 6);
        ASSERT_EQ(matmul(P, P), P);
        GMatrix a = reflection(P);
        SpinVec v = random_vec(rng, 6, 3, 8);
        SpinVec dense = dense_exterior(a, v);
        EXPECT_EQ(apply_lowrank_reflection(P, v), dense);
        EXPECT_EQ(apply_block_diagonal(a, v), dense);
    }
}

TEST(Exterior, ZeroProjectorIsIdentity) {
    std::mt19937_64 rng(3);
    GMatrix P(6, GRow(6));
    SpinVec v = random_vec(rng, 6, 3, 5);
    EXPECT_EQ(apply_lowrank_reflection(P, v), v);
}

TEST(Exterior, DegreeOneIsMatrixColumn) {
    std::mt19937_64 rng(5);
    GMatrix P = random_rank4_projector(rng, 6);
    GMatrix a = reflection(P);
    for (int i = 0; i < 6; ++i) {
        std::vector<SpinVec::Term> col;
        for (int r = 0; r < 6; ++r) col.push_back({Word(1) << r, a[r][i]});
        EXPECT_EQ(apply_lowrank_reflection(P, SpinVec::basis(Word(1) << i)), SpinVec(col));
    }
}

TEST(Exterior, ReflectionIsAnInvolution) {
    std::mt19937_64 rng(8);
    GMatrix P = random_rank4_projector(rng, 6);
    SpinVec v = random_vec(rng, 6, 2, 6);
    EXPECT_EQ(apply_lowrank_reflection(P, apply_lowrank_reflection(P, v)), v);
}

TEST(Exterior, MonomialActionIsFunctorial) {
    auto G = generators();
    auto gens = G.all();
    std::mt19937_64 rng(21);
    auto rnd_elt = [&] {
        MonoMat g = MonoMat::identity();
        for (int k = 0; k < 12; ++k) g = g * gens[rng() % gens.size()];
        return g;
    };
    for (int t = 0; t < 20; ++t) {
        MonoMat g = rnd_elt(), h = rnd_elt();
        std::vector<SpinVec::Term> terms;
        for (int k = 0; k < 10; ++k) {
            Word I = 0;
            for (int j = 0; j < 5; ++j) I |= Word(1) << (rng() % kDelta);
            terms.push_back({I, small_gauss(rng)});
        }
        SpinVec v(terms);
        EXPECT_EQ(apply_monomial(g, apply_monomial(h, v)), apply_monomial(g * h, v));
    }
}

TEST(Exterior, SignChangeOnBasisVector) {
    for (Word D : dozen_words()) {
        Word I = 0x0F0F0F0;
        int s = std::popcount(D & I) % 2 ? -1 : 1;
        EXPECT_EQ(apply_monomial(MonoMat::sign_change(D), SpinVec::basis(I)), SpinVec::basis(I, GaussRat(s)));
    }
}

class RhoTest : public ::testing::Test {
  protected:
    static void SetUpTestSuite() {
        G = new MonomialGenerators(generators());
        od = new OrbitData(weight14_orbits(*G));
        rd = new RhoData(build_rho(*od));
    }
    static void TearDownTestSuite() {
        delete rd;
        delete od;
        delete G;
    }
    static Word labels(std::initializer_list<int> ls, bool inf) {
        Word w = 0;
        for (int l : ls) w |= Word(1) << (l - 1);
        if (inf) w |= Word(1) << kInf;
        return w;
    }
    static MonomialGenerators* G;
    static OrbitData* od;
    static RhoData* rd;
};
MonomialGenerators* RhoTest::G = nullptr;
OrbitData* RhoTest::od = nullptr;
RhoData* RhoTest::rd = nullptr;

TEST_F(RhoTest, TabulatedCoefficients) {
    Word I = labels({3, 5, 6, 8, 11, 18, 19, 20, 21, 22, 25, 26, 27}, true);
    EXPECT_EQ(rd->rho.coeff(I), GaussRat::parse("4-3i"));
    EXPECT_EQ(rd->rho.coeff(kAllOnes ^ I), GaussRat::parse("4+3i"));
    EXPECT_EQ(rd->rho.coeff(labels({2, 4, 5, 6, 7, 8, 9, 13, 14, 15, 16, 22, 23}, true)), GaussRat(-2));
    EXPECT_EQ(rd->C, 86272);
}

TEST_F(RhoTest, SupportIsTheRelevantOrbits) {
    size_t total = 0;
    for (int o : rd->orbits_used) {
        EXPECT_TRUE(od->orbits[o].relevant);
        total += od->orbits[o].members.size();
    }
    EXPECT_EQ(rd->orbits_used.size(), 68u);
    EXPECT_EQ(rd->rho.size(), total);
    EXPECT_EQ(rd->rho.homogeneous_degree(), 14);
}

TEST_F(RhoTest, FixedByIdentityAndEveryGeneratorOfM) {
    EXPECT_EQ(apply_monomial(MonoMat::identity(), rd->rho), rd->rho);
    for (const auto& g : G->all()) EXPECT_EQ(apply_monomial(g, rd->rho), rd->rho);
}

TEST_F(RhoTest, ZData) {
    ZData zd = build_z(*G);
    EXPECT_EQ(zd.closure_order, 16u);
    EXPECT_EQ(matmul(zd.z, zd.z), identity_matrix(kDelta));
    EXPECT_EQ(matmul(zd.z, conj_transpose(zd.z)), identity_matrix(kDelta));
    EXPECT_EQ(determinant(zd.z), GaussRat(1));
    // the fixed space is 24-dimensional over R, 12 over C
    EXPECT_EQ(zd.fixed_dim, 12u);
    EXPECT_EQ(rank(zd.P_minus), 16u);
    EXPECT_EQ(trace(zd.z), GaussRat(-4));
    EXPECT_TRUE(zd.commutes);
}

TEST_F(RhoTest, BrokenRhoIsCaught) {
    auto terms = rd->rho.terms();
    terms[0].second += GaussRat(1);
    SpinVec bad(terms);
    bool moved = false;
    for (const auto& g : G->all()) moved = moved || apply_monomial(g, bad) != bad;
    EXPECT_TRUE(moved);
}
