#include "rudvalis/fock.hpp"

#include <gtest/gtest.h>

using namespace rudvalis;

TEST(FockSpace, GradedDimensions) {
    TruncSpace U = build_space(4, 2, Sector::untwisted);
    auto d = graded_dims(U);
    EXPECT_EQ(d[0], 1);
    EXPECT_EQ(d[1], 8);
    EXPECT_EQ(d[2], 28);
    EXPECT_EQ(d, expected_graded_dims(4, U.dmax_h, Sector::untwisted));
    TruncSpace T = build_space(4, qfrac(1, 2) + 2, Sector::twisted);
    EXPECT_EQ(graded_dims(T)[0], 16);
    EXPECT_EQ(graded_dims(T), expected_graded_dims(4, T.dmax_h, Sector::twisted));
    EXPECT_EQ(T.offset(), qfrac(1, 2));
    EXPECT_THROW(build_space(7, 1, Sector::untwisted), domain_error);
}

TEST(FockSpace, CanonicalMonomials) {
    TruncSpace U = build_space(3, 3, Sector::untwisted);
    for (size_t j = 0; j < U.basis.size(); ++j) {
        const auto& m = U.basis[j];
        int deg = 0;
        for (size_t k = 0; k < m.size(); ++k) {
            deg += m[k].h;
            if (k) {
                EXPECT_TRUE(m[k - 1] < m[k]);
            }
        }
        EXPECT_EQ(deg, U.degree_h[j]);
        EXPECT_EQ(U.find(m), static_cast<int>(j));
    }
}

TEST(Virasoro, SmallCases) {
    for (int N : {1, 2}) {
        Report r = check_virasoro_u1(N, 3);
        EXPECT_TRUE(r.pass()) << N;
        for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.detail;
    }
}

TEST(Virasoro, NamedRelations) {
    const int N = 2;
    FockOps F = build_ops(N, 3, Sector::untwisted, 2);
    auto cols = F.S.columns_up_to(1);
    auto Id = SparseOp::identity(F.S.basis.size());
    EXPECT_EQ(residual(commutator(F.L.at(1), F.L.at(-1)), F.L.at(0).scaled(2), cols), 0u);
    EXPECT_EQ(residual(commutator(F.L.at(2), F.L.at(-2)) - F.L.at(0).scaled(4), Id.scaled(N, 2), cols), 0u);
    EXPECT_EQ(residual(commutator(F.J.at(1), F.J.at(-1)), Id.scaled(-N), cols), 0u);
    // a wrong central value is detected
    EXPECT_GT(residual(commutator(F.J.at(1), F.J.at(-1)), Id.scaled(N), cols), 0u);
}

TEST(Twisted, PropositionCases) {
    for (int N : {2, 4}) {
        Report r = check_prop_twisted(N);
        for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << N << " " << c.name << " " << c.detail;
    }
    EXPECT_EQ(C_coeff(0, 0), 0);
    EXPECT_EQ(C_coeff(1, 0), -C_coeff(0, 1));
}

TEST(Twisted, WithoutDeltaTheBottomWeightIsWrong) {
    const int N = 4;
    TruncSpace T = build_space(N, qfrac(N, 8) + 1, Sector::twisted);
    TruncSpace U = build_space(N, 2, Sector::untwisted);
    StateVec w = omega_state(U);
    SparseOp good = vertex_mode(T, U, w, 2), bare = ybar_mode(T, U, w, 4);
    int j = T.columns_up_to(T.offset()).front();
    StateVec e{{j, GaussRat(1)}};
    EXPECT_EQ(apply_op(good, e), (StateVec{{j, GaussRat(qfrac(N, 8))}}));
    EXPECT_NE(apply_op(bare, e), (StateVec{{j, GaussRat(qfrac(N, 8))}}));
}

TEST(Untwisted, SkewSymmetry) {
    TruncSpace U = build_space(2, 4, Sector::untwisted);
    StateVec w = omega_state(U), j = current_state(U);
    for (const auto& [a, b] : {std::pair{w, w}, std::pair{w, j}, std::pair{j, j}, std::pair{j, w}})
        for (int n = -1; n <= 3; ++n) EXPECT_TRUE(skew_symmetry_defect(U, a, b, n).empty()) << n;
    EXPECT_THROW(skew_symmetry_defect(build_space(2, 1, Sector::twisted), w, w, 0), domain_error);
}

TEST(Untwisted, InvariantForm) {
    TruncSpace U = build_space(2, 3, Sector::untwisted);
    SparseOp G = gram(U);
    EXPECT_TRUE(symmetric(G));
    StateVec w = omega_state(U);
    for (int n = 1; n <= 2; ++n) {
        SparseOp Ln = vertex_mode(U, U, w, 2 * (n + 1)), Lm = vertex_mode(U, U, w, 2 * (1 - n));
        EXPECT_TRUE(adjoint_pair(G, Ln, Lm)) << n;
        EXPECT_FALSE(adjoint_pair(G, Ln, Ln)) << n;
    }
}
