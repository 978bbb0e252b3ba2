#include "rudvalis/qseries.hpp"
#include "rudvalis/suite.hpp"

#include <gtest/gtest.h>

using namespace rudvalis;

namespace {

WeakFrameShape W(std::initializer_list<std::tuple<long, const char*, long>> parts) {
    WeakFrameShape s;
    for (auto [k, a, m] : parts) s.parts.push_back({k, phase_mod1(mpq_class(a)), m});
    return s;
}

const CharacterTable& table() {
    static const CharacterTable t = load_character_table();
    return t;
}

const PQSeries& ch() {
    static const PQSeries s = character(qfrac(11, 2));
    return s;
}

} // namespace

TEST(Eta, ProductMatchesPentagonal) {
    for (long k : {1, 2, 3, 7})
        for (long cut : {3, 12, 30}) {
            mpq_class c = qfrac(k, 24) + cut;
            EXPECT_TRUE(agree(eta_q(k, c), eta_q_pentagonal(k, c))) << k << " " << cut;
        }
}

TEST(Eta, Examples) {
    PQSeries e = eta_q(1, qfrac(1, 24) + 12);
    mpq_class s = qfrac(1, 24);
    EXPECT_EQ(e.coeff(0, s), GaussRat(1));
    EXPECT_EQ(e.coeff(0, s + 1), GaussRat(-1));
    EXPECT_EQ(e.coeff(0, s + 2), GaussRat(-1));
    EXPECT_EQ(e.coeff(0, s + 3), GaussRat(0));
    EXPECT_EQ(e.coeff(0, s + 5), GaussRat(1));
    EXPECT_EQ(e.coeff(0, s + 7), GaussRat(1));
    EXPECT_EQ(e.coeff(0, s + 12), GaussRat(-1));
    EXPECT_EQ(*eta_q(2, 3).lead_q(), qfrac(1, 12));
    EXPECT_THROW(eta_q(1, qfrac(1, 48)), domain_error);
    EXPECT_THROW(e.coeff(0, 13), domain_error);
}

TEST(Theta, TermsAndTripleProduct) {
    PQSeries t = theta_term(1, 0, false, 6);
    EXPECT_EQ(t.coeff(0, 0), GaussRat(1));
    EXPECT_EQ(t.coeff(1, qfrac(1, 2)), GaussRat(-1));
    EXPECT_EQ(t.coeff(-1, qfrac(1, 2)), GaussRat(-1));
    PQSeries h = theta_term(1, qfrac(1, 2), false, 6);
    for (const auto& [q, row] : h.rows())
        for (const auto& [p, c] : row) {
            EXPECT_EQ(c, GaussRat(1));
            EXPECT_EQ(q, qfrac(p * p, 2));
        }
    EXPECT_TRUE(agree(h, triple_product(6)));
    EXPECT_EQ(h.cutoff(), triple_product(6).cutoff());
}

TEST(Series, NoStoredZerosAndCutoffs) {
    PQSeries a = PQSeries::monomial(GaussRat(1), 1, qfrac(1, 2));
    a.add(1, qfrac(1, 2), GaussRat(-1));
    EXPECT_TRUE(a.empty());
    PQSeries x = eta_q(1, 5), y = eta_q(2, 3);
    PQSeries z = x * y;
    EXPECT_EQ(*z.cutoff(), std::min(mpq_class(5) + qfrac(2, 24), mpq_class(3) + qfrac(1, 24)));
    for (const auto& [q, row] : z.rows())
        for (const auto& [p, c] : row) EXPECT_FALSE(c.is_zero());
    PQSeries inv = x.inverse();
    EXPECT_TRUE(agree(x * inv, PQSeries::one()));
}

TEST(PhiPsi, Examples) {
    auto s28 = W({{1, "0", 28}});
    EXPECT_TRUE(psi(s28, 6).specialize_p1().empty());
    PQSeries p = psi(s28, 4);
    EXPECT_EQ(*p.lead_q(), qfrac(7, 3));
    EXPECT_EQ(p.coeff(14, qfrac(7, 3)), GaussRat(1));
    PQSeries f = phi(W({{1, "1/2", 28}}), 3).specialize_p1();
    EXPECT_EQ(*f.lead_q(), qfrac(-7, 6));
    EXPECT_EQ(f.coeff(0, qfrac(-7, 6)), GaussRat(1));
    EXPECT_THROW(psi(W({{1, "0", 27}}), 3), domain_error);
}

TEST(PhiPsi, ProductRouteMatchesLiteralQuotients) {
    for (const auto& cd : load_classes()) {
        for (const auto* s : {&cd.su, &cd.su_other}) {
            EXPECT_TRUE(agree(phi(*s, 3), phi_literal(*s, 3))) << cd.name << " phi " << s->str();
            bool positive = true;
            for (const auto& p : s->parts) positive = positive && p.m > 0;
            if (positive) {
                EXPECT_TRUE(agree(psi(*s, 4), psi_literal(*s, 4))) << cd.name << " psi " << s->str();
            } else {
                EXPECT_THROW(psi_literal(*s, 4), domain_error);
            }
        }
    }
}

TEST(McKayThompson, ChiValues) {
    auto cd = find_class("1A");
    GaussRat a = chi(cd.su), b = chi(cd.su_other);
    EXPECT_TRUE((a.is_zero() && b == GaussRat(mpq_class(mpz_class(1) << 28))) ||
                (b.is_zero() && a == GaussRat(mpq_class(mpz_class(1) << 28))));
}

TEST(McKayThompson, DualRouteAllClasses) {
    for (const auto& cd : load_classes()) {
        auto r = mt_ordinary(cd, 4);
        EXPECT_TRUE(r.shapes_consistent) << cd.name;
        EXPECT_TRUE(r.agree) << cd.name;
    }
}

TEST(Character, TabulatedCells) {
    EXPECT_EQ(ch().coeff(0, qfrac(-1, 6)), GaussRat(784));
    EXPECT_EQ(ch().coeff(2, qfrac(-1, 6)), GaussRat(378));
    EXPECT_EQ(ch().coeff(-2, qfrac(-1, 6)), GaussRat(378));
    Report r = verify_character(ch(), table());
    EXPECT_TRUE(r.pass()) << first_failure(r);
    for (const auto& [q, row] : ch().rows())
        for (const auto& [p, c] : row) EXPECT_EQ(p % 2, 0);
}

TEST(Character, SumsOnlyTheLastIdentityFails) {
    Report r = verify_sums(ch(), table());
    std::vector<std::string> failed;
    for (const auto& c : r.checks)
        if (!c.pass) failed.push_back(c.name + " :: " + c.detail);
    ASSERT_EQ(failed.size(), 1u);
    EXPECT_NE(failed[0].find("376740 ="), std::string::npos);
    EXPECT_NE(failed[0].find("271180"), std::string::npos);
}

TEST(Modular, T2Phases) {
    auto t = t2_phase(ch());
    EXPECT_TRUE(t.constant);
    EXPECT_EQ(t.phase, qfrac(2, 3));
    PQSeries e = eta_q(1, 5).pow(24).shifted(0, -1);
    EXPECT_TRUE(t2_phase(e).constant);
    EXPECT_EQ(t2_phase(e).phase, 0);
    PQSeries bad = PQSeries::one() + PQSeries::monomial(GaussRat(1), 0, qfrac(1, 3));
    EXPECT_FALSE(t2_phase(bad).constant);
    EXPECT_FALSE(t2_phase(bad).witness.empty());
}

TEST(Modular, SCheck) {
    auto cd = find_class("1A");
    long c = central_charge(cd.su);
    PQSeries f10 = mt_two_var(cd, 10), f20 = mt_two_var(cd, 20);
    auto a = s_check_numeric(f20, c, {0, 1}, {0.1, 0}, kSTolerance);
    EXPECT_TRUE(a.pass) << a.modulus_error << " " << a.tail_estimate;
    auto z0 = s_check_numeric(f20, c, {0, 1}, {0, 0}, kSTolerance);
    EXPECT_TRUE(z0.pass);
    auto ord = s_check_numeric(f20.specialize_p1(), c, {0, 1}, {0, 0}, kSTolerance);
    EXPECT_NEAR(std::abs(ord.ratio - z0.ratio), 0, 1e-12);
    auto b = s_check_numeric(f10, c, {0, 1}, {0.1, 0}, kSTolerance);
    EXPECT_LT(std::abs(a.ratio - b.ratio), 1e-8);
    EXPECT_THROW(s_check_numeric(f10, c, {0, 0.5}, {0, 0}, kSTolerance), domain_error);
}

TEST(Export, JsonRoundTripAndCsvOrder) {
    PQSeries s = character(3);
    PQSeries back = series_from_json(series_to_json(s));
    EXPECT_TRUE(agree(s, back));
    std::string csv = series_to_csv(s);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "p,q_num,q_den,re_num,re_den,im_num,im_den");
    std::pair<mpq_class, long> prev{-1000, 0};
    bool first = true, saw784 = false;
    while (std::getline(in, line)) {
        long p, qn, qd;
        char comma;
        std::istringstream ls(line);
        ls >> p >> comma >> qn >> comma >> qd;
        std::pair<mpq_class, long> cur{qfrac(qn, qd), p};
        if (!first) {
            EXPECT_LT(prev, cur);
        }
        prev = cur;
        first = false;
        if (line == "0,-1,6,784,1,0,1") saw784 = true;
    }
    EXPECT_TRUE(saw784);
}
