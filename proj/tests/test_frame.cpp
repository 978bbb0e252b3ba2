#include "rudvalis/frame.hpp"
#include "rudvalis/suite.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rudvalis;

namespace {

WeakFrameShape W(std::initializer_list<std::tuple<long, const char*, long>> parts) {
    WeakFrameShape s;
    for (auto [k, a, m] : parts) s.parts.push_back({k, phase_mod1(mpq_class(a)), m});
    return s;
}

FrameShape F(std::initializer_list<std::pair<long, long>> parts) {
    FrameShape f;
    for (auto [k, m] : parts) f.m[k] = m;
    return f;
}

std::vector<GaussRat> scalar_traces(long dim, long sign, long n) {
    std::vector<GaussRat> tr(n + 1);
    for (long r = 1; r <= n; ++r) tr[r] = GaussRat(r % 2 && sign < 0 ? -dim : dim);
    return tr;
}

GPoly one_minus_x_pow(unsigned e) { return GPoly(std::vector<GaussRat>{GaussRat(1), GaussRat(-1)}).pow(e); }

} // namespace

TEST(FrameFromTraces, Examples) {
    EXPECT_EQ(frame_from_traces(scalar_traces(56, 1, 1), 1, 56), F({{1, 56}}));
    EXPECT_EQ(frame_from_traces(scalar_traces(56, -1, 2), 2, 56), F({{1, -56}, {2, 56}}));
    std::vector<GaussRat> tr = {GaussRat(0), GaussRat(8), GaussRat(56)};
    EXPECT_EQ(frame_from_traces(tr, 2, 56), F({{1, 8}, {2, 24}}));
    EXPECT_THROW(frame_from_traces({GaussRat(0), GaussRat(1), GaussRat(56)}, 2, 56), domain_error);
}

TEST(WeakShapes, Expansion) {
    EXPECT_EQ(weak_shape_expand(W({{1, "0", 28}})), one_minus_x_pow(28));
    for (long m : {1, 3, 7})
        EXPECT_EQ(weak_shape_expand(W({{1, "1/2", m}})), weak_shape_expand(W({{2, "0", m}, {1, "0", -m}})));
    GPoly p = weak_shape_expand(W({{1, "1/4", 2}, {4, "0", 1}, {8, "0", 3}, {2, "0", -1}}));
    EXPECT_EQ(p.degree(), 28);
    EXPECT_EQ(p.coeff(0), GaussRat(1));
    EXPECT_THROW(weak_shape_expand(W({{2, "0", 1}, {1, "0", -3}})), domain_error);
    EXPECT_THROW(unit_phase(qfrac(1, 3)), domain_error);
}

TEST(WeakShapes, VerifyOnMatrices) {
    EXPECT_TRUE(verify_weak_shape(identity_matrix(28), W({{1, "0", 28}})));
    GMatrix minus = identity_matrix(28);
    for (int k = 0; k < 28; ++k) minus[k][k] = GaussRat(-1);
    EXPECT_TRUE(verify_weak_shape(minus, W({{1, "1/2", 28}})));
    EXPECT_FALSE(verify_weak_shape(minus, W({{1, "0", 28}})));
}

TEST(Iota, Examples) {
    auto same = [](const WeakFrameShape& a, const WeakFrameShape& b) { return weak_shape_expand(a) == weak_shape_expand(b); };
    EXPECT_TRUE(same(iota(W({{1, "0", 28}})), W({{2, "0", 28}, {1, "0", -28}})));
    EXPECT_TRUE(same(iota(W({{1, "0", 2}, {13, "0", 2}})), W({{2, "0", 2}, {26, "0", 2}, {1, "0", -2}, {13, "0", -2}})));
    auto s14 = W({{28, "0", 2}, {14, "0", -2}});
    EXPECT_TRUE(same(iota(s14), s14));
    for (const auto& r : load_frame_rows()) EXPECT_TRUE(same(iota(iota(r.su28)), r.su28)) << r.cls;
}

TEST(SuToSo, Examples) {
    EXPECT_EQ(su_to_so(W({{1, "0", 28}})), F({{1, 56}}));
    EXPECT_EQ(su_to_so(W({{1, "0", 4}, {2, "0", 12}})), F({{1, 8}, {2, 24}}));
    EXPECT_EQ(su_to_so(W({{1, "1/4", 1}, {3, "3/4", 1}, {12, "0", 2}})), F({{4, 1}, {12, 5}, {2, -1}, {6, -1}}));
}

TEST(FrameTable, AllRowsConsistent) {
    auto rows = load_frame_rows();
    EXPECT_EQ(rows.size(), 36u);
    for (const auto& r : rows) {
        GPoly p = weak_shape_expand(r.su28);
        EXPECT_EQ(p.degree(), 28) << r.cls;
        EXPECT_EQ(p.coeff(0), GaussRat(1)) << r.cls;
        EXPECT_EQ(r.so56.weighted_degree(), 56) << r.cls;
    }
    EXPECT_TRUE(verify_frame_table().pass());
}

TEST(FrameTable, FingerprintsSingleOutSampledRows) {
    auto rows = load_frame_rows();
    for (const char* cls : {"1A", "2A", "4A"}) {
        auto hits = rows_with_fingerprint(rows, fingerprint(frame_row(rows, cls).su28));
        ASSERT_EQ(hits.size(), 1u) << cls;
        EXPECT_EQ(hits[0], cls);
    }
}

TEST(FrameTable, WitnessesInsideM) {
    SuiteContext cx;
    Report r = criterion_frame(cx);
    EXPECT_TRUE(r.pass()) << first_failure(r);
    auto rows = load_frame_rows();
    auto w = find_class_in_m(frame_row(rows, "4A"), cx.gens(), 1);
    ASSERT_TRUE(w.found);
    EXPECT_EQ(element_from_word(cx.gens(), w.word), w.g);
    EXPECT_TRUE(verify_weak_shape(w.g.dense(), frame_row(rows, "4A").su28) ||
                verify_weak_shape(w.g.dense(), iota(frame_row(rows, "4A").su28)));
}

TEST(FrameTable, RandomElementsRoundTrip) {
    auto G = generators();
    auto gens = G.all();
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 100; ++t) {
        MonoMat g = MonoMat::identity();
        int len = 1 + static_cast<int>(rng() % 20);
        for (int k = 0; k < len; ++k) g = g * gens[rng() % gens.size()];
        long n = g.order();
        GPoly P = det_id_minus_gx(g);
        EXPECT_EQ(P, det_id_minus_gx(g.dense()));
        FrameShape f = frame_from_traces(u_traces(g, n), n, 56);
        GPoly Pc = det_id_minus_gx(g.inverse());
        EXPECT_EQ(frame_expand(f), P * Pc);
        EXPECT_EQ(f, frame_from_poly(P * Pc, n));
    }
}

TEST(ElementWords, UnknownGeneratorRejected) {
    auto G = generators();
    EXPECT_THROW(element_from_word(G, "Q*X"), domain_error);
    EXPECT_EQ(element_from_word(G, "1"), MonoMat::identity());
    EXPECT_EQ(element_from_word(G, "Q * m"), G.perms.at("Q") * G.m);
}
