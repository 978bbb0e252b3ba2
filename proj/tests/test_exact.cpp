#include "rudvalis/exact.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rudvalis;

TEST(GaussRat, Examples) {
    EXPECT_EQ(GaussRat::parse("1+i") * GaussRat::parse("1-i"), GaussRat(2));
    EXPECT_EQ(conj(GaussRat::parse("3-2i")), GaussRat::parse("3+2i"));
    GaussRat z = GaussRat::parse("4-3i");
    EXPECT_EQ(z * conj(z), GaussRat(25));
    EXPECT_EQ(GaussRat::parse("-1/2"), GaussRat(qfrac(-1, 2)));
    EXPECT_EQ(GaussRat::parse("2i").str(), "2i");
    EXPECT_THROW(GaussRat(1) / GaussRat(), domain_error);
}

TEST(GaussRat, UnitPowers) {
    for (int k = -8; k <= 8; ++k) EXPECT_EQ(GaussRat::unit(k) * GaussRat::unit(-k), GaussRat(1));
    EXPECT_EQ(GaussRat::unit(1), GaussRat::I());
}

TEST(GaussRat, FieldAxiomsOnRandomTriples) {
    std::mt19937_64 rng(7);
    auto rnd = [&] {
        auto r = [&] { return qfrac(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1); };
        return GaussRat(r(), r());
    };
    for (int t = 0; t < 300; ++t) {
        GaussRat a = rnd(), b = rnd(), c = rnd();
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inv(), GaussRat(1));
        }
        EXPECT_EQ(conj(a * b), conj(a) * conj(b));
    }
}

TEST(Poly, CharpolyForm) {
    GPoly p({GaussRat(2), GaussRat(-2)});
    EXPECT_EQ(poly_charpoly_form(p), GPoly({GaussRat(1), GaussRat(-1)}));
    GPoly one_minus_x({GaussRat(1), GaussRat(-1)});
    GPoly id28 = one_minus_x.pow(28);
    EXPECT_EQ(poly_charpoly_form(id28), id28);
    GMatrix d = {{GaussRat::I(), 0}, {0, -GaussRat::I()}};
    GPoly det({1});
    for (size_t k = 0; k < 2; ++k) det = det * GPoly({GaussRat(1), -d[k][k]});
    EXPECT_EQ(poly_charpoly_form(det), GPoly({GaussRat(1), GaussRat(0), GaussRat(1)}));
    EXPECT_THROW(poly_charpoly_form(GPoly({GaussRat(0), GaussRat(1)})), domain_error);
}

TEST(Poly, DivisionRoundTrip) {
    GPoly a({GaussRat(1), GaussRat::I(), GaussRat(3)}), b({GaussRat(-2), GaussRat(1)});
    EXPECT_EQ((a * b).exact_div(b), a);
    EXPECT_THROW(a.exact_div(b), domain_error);
}

std::vector<GaussRat> diag_traces(const std::vector<GaussRat>& d, long n) {
    std::vector<GaussRat> tr;
    for (long r = 1; r <= n; ++r) {
        GaussRat s;
        for (const auto& x : d) {
            GaussRat p(1);
            for (long k = 0; k < r; ++k) p *= x;
            s += p;
        }
        tr.push_back(s);
    }
    return tr;
}

TEST(CycEval, Examples) {
    EXPECT_EQ(cyc_eval({GaussRat(28)}, 1), std::vector<long>({28}));
    std::vector<GaussRat> minus(28, GaussRat(-1));
    EXPECT_EQ(cyc_eval(diag_traces(minus, 2), 2), std::vector<long>({0, 28}));
    std::vector<GaussRat> d;
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 7; ++j) d.push_back(GaussRat::unit(k));
    EXPECT_EQ(cyc_eval(diag_traces(d, 4), 4), std::vector<long>({7, 7, 7, 7}));
}

TEST(CycEval, RejectsNonTraceData) {
    EXPECT_THROW(cyc_eval({GaussRat(qfrac(1, 2)), GaussRat(1)}, 2), domain_error);
    EXPECT_THROW(cyc_eval({GaussRat(1)}, 2), domain_error);
}

TEST(Matrix, DeterminantAndInverse) {
    GMatrix a = {{GaussRat(2), GaussRat::I()}, {GaussRat(1), GaussRat(3)}};
    EXPECT_EQ(determinant(a), GaussRat(6) - GaussRat::I());
    EXPECT_EQ(matmul(a, inverse(a)), identity_matrix(2));
    EXPECT_EQ(trace(a), GaussRat(5));
    EXPECT_EQ(rank(GMatrix{{1, 2}, {2, 4}}), 1u);
}
