#pragma once

#include "exact.hpp"
#include "frame.hpp"
#include "report.hpp"
#include "resources.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace rudvalis {

// Sum of c p^a q^b with integer a and rational b. Terms with b above the
// cutoff are unknown; no cutoff means the series is exact.
class PQSeries {
  public:
    using Row = std::map<long, GaussRat>;

    PQSeries() = default;
    explicit PQSeries(std::optional<mpq_class> cutoff) : cut_(std::move(cutoff)) {}

    static PQSeries monomial(GaussRat c, long p, mpq_class q) {
        PQSeries s;
        s.add(p, q, c);
        return s;
    }
    static PQSeries one() { return monomial(1, 0, 0); }

    const std::optional<mpq_class>& cutoff() const { return cut_; }
    bool known(const mpq_class& q) const { return !cut_ || q <= *cut_; }
    const std::map<mpq_class, Row>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }

    size_t size() const {
        size_t n = 0;
        for (const auto& [q, r] : rows_) n += r.size();
        return n;
    }

    void add(long p, const mpq_class& q, const GaussRat& c) {
        if (c.is_zero() || !known(q)) return;
        auto& row = rows_[q];
        auto [it, fresh] = row.try_emplace(p, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) row.erase(it);
        }
        if (row.empty()) rows_.erase(q);
    }

    GaussRat coeff(long p, const mpq_class& q) const {
        if (!known(q)) throw domain_error("coefficient at q^" + q.get_str() + " lies beyond the cutoff");
        auto it = rows_.find(q);
        if (it == rows_.end()) return {};
        auto jt = it->second.find(p);
        return jt == it->second.end() ? GaussRat() : jt->second;
    }

    std::optional<mpq_class> lead_q() const {
        if (rows_.empty()) return std::nullopt;
        return rows_.begin()->first;
    }

    void truncate(const mpq_class& c) {
        if (!cut_ || c < *cut_) cut_ = c;
        while (!rows_.empty() && rows_.rbegin()->first > *cut_) rows_.erase(std::prev(rows_.end()));
    }

    PQSeries& operator+=(const PQSeries& o) {
        if (o.cut_) truncate(*o.cut_);
        for (const auto& [q, r] : o.rows_)
            for (const auto& [p, c] : r) add(p, q, c);
        return *this;
    }
    PQSeries operator-() const {
        PQSeries s = *this;
        for (auto& [q, r] : s.rows_)
            for (auto& [p, c] : r) c = -c;
        return s;
    }
    PQSeries& operator-=(const PQSeries& o) { return *this += -o; }
    PQSeries& operator*=(const GaussRat& a) {
        if (a.is_zero()) {
            rows_.clear();
            return *this;
        }
        for (auto& [q, r] : rows_)
            for (auto& [p, c] : r) c *= a;
        return *this;
    }
    friend PQSeries operator+(PQSeries a, const PQSeries& b) { return a += b; }
    friend PQSeries operator-(PQSeries a, const PQSeries& b) { return a -= b; }
    friend PQSeries operator*(PQSeries a, const GaussRat& b) { return a *= b; }

    // multiply by p^a q^b
    PQSeries shifted(long a, const mpq_class& b) const {
        PQSeries s(cut_ ? std::optional<mpq_class>(*cut_ + b) : std::nullopt);
        for (const auto& [q, r] : rows_) {
            auto& row = s.rows_[q + b];
            for (const auto& [p, c] : r) row.emplace(p + a, c);
        }
        return s;
    }

    friend PQSeries operator*(const PQSeries& a, const PQSeries& b) {
        std::optional<mpq_class> cut;
        auto la = a.lead_q(), lb = b.lead_q();
        if (!la || !lb) {
            // zero times anything known to the cutoff of the other factor
            PQSeries z;
            if (a.cut_ && b.cut_) z.cut_ = std::min(*a.cut_ + (lb ? *lb : *b.cut_), *b.cut_ + (la ? *la : *a.cut_));
            else if (a.cut_ && lb) z.cut_ = *a.cut_ + *lb;
            else if (b.cut_ && la) z.cut_ = *b.cut_ + *la;
            else if (a.cut_ || b.cut_) z.cut_ = a.cut_ ? *a.cut_ : *b.cut_;
            return z;
        }
        if (a.cut_) cut = *a.cut_ + *lb;
        if (b.cut_) {
            mpq_class c2 = *b.cut_ + *la;
            if (!cut || c2 < *cut) cut = c2;
        }
        PQSeries s(cut);
        for (const auto& [qa, ra] : a.rows_) {
            for (const auto& [qb, rb] : b.rows_) {
                mpq_class q = qa + qb;
                if (cut && q > *cut) break;
                auto& row = s.rows_[q];
                for (const auto& [pa, ca] : ra)
                    for (const auto& [pb, cb] : rb) {
                        auto [it, fresh] = row.try_emplace(pa + pb, ca * cb);
                        if (!fresh) it->second += ca * cb;
                    }
            }
        }
        s.drop_zeros();
        return s;
    }
    PQSeries& operator*=(const PQSeries& o) { return *this = *this * o; }

    // Truncated inverse; the lowest q-row must be a single monomial.
    PQSeries inverse() const {
        auto l = lead_q();
        if (!l) throw domain_error("PQSeries: inverse of zero");
        const Row& lead = rows_.begin()->second;
        if (lead.size() != 1)
            throw domain_error("PQSeries: leading q-row has " + std::to_string(lead.size()) + " monomials; not invertible");
        if (!cut_) {
            if (rows_.size() == 1) return monomial(lead.begin()->second.inv(), -lead.begin()->first, -*l);
            throw domain_error("PQSeries: inverse of an exact non-monomial needs a cutoff");
        }
        long a = lead.begin()->first;
        GaussRat c = lead.begin()->second;
        // f = c p^a q^l (1 + g), g supported in q > 0
        PQSeries g = shifted(-a, -*l) * c.inv();
        g.add(0, 0, GaussRat(-1));
        mpq_class budget = *cut_ - *l;
        g.truncate(budget);
        PQSeries out = one(), term = one();
        out.cut_ = budget;
        term.cut_ = budget;
        PQSeries neg = -g;
        while (!term.empty()) {
            term = term * neg;
            term.truncate(budget);
            out += term;
        }
        return out.shifted(-a, -*l) * c.inv();
    }

    PQSeries pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        PQSeries out = one(), b = *this;
        if (cut_) {
            auto l = lead_q();
            out.cut_ = l ? *cut_ - *l : *cut_;
        }
        while (e) {
            if (e & 1) out *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return out;
    }

    // p -> 1
    PQSeries specialize_p1() const {
        PQSeries s(cut_);
        for (const auto& [q, r] : rows_)
            for (const auto& [p, c] : r) s.add(0, q, c);
        return s;
    }

    // coefficient list in p for a given power of q
    Row row(const mpq_class& q) const {
        if (!known(q)) throw domain_error("row q^" + q.get_str() + " lies beyond the cutoff");
        auto it = rows_.find(q);
        return it == rows_.end() ? Row() : it->second;
    }

    // values in double precision: p = e^{2 pi i z}, q = e^{2 pi i tau}
    std::complex<double> eval(std::complex<double> z, std::complex<double> tau) const {
        const std::complex<double> two_pi_i(0, 2 * M_PI);
        std::complex<double> s = 0;
        for (const auto& [q, r] : rows_) {
            std::complex<double> qf = std::exp(two_pi_i * tau * q.get_d());
            for (const auto& [p, c] : r) {
                std::complex<double> cf(c.re.get_d(), c.im.get_d());
                s += cf * std::exp(two_pi_i * z * static_cast<double>(p)) * qf;
            }
        }
        return s;
    }

    friend bool operator==(const PQSeries& a, const PQSeries& b) { return a.cut_ == b.cut_ && a.rows_ == b.rows_; }

    // equality on the range both series know
    friend bool agree(const PQSeries& a, const PQSeries& b) {
        PQSeries x = a, y = b;
        if (a.cut_) y.truncate(*a.cut_);
        if (b.cut_) x.truncate(*b.cut_);
        return x.rows_ == y.rows_;
    }

  private:
    std::map<mpq_class, Row> rows_;
    std::optional<mpq_class> cut_;

    void drop_zeros() {
        for (auto it = rows_.begin(); it != rows_.end();) {
            for (auto jt = it->second.begin(); jt != it->second.end();)
                jt = jt->second.is_zero() ? it->second.erase(jt) : std::next(jt);
            it = it->second.empty() ? rows_.erase(it) : std::next(it);
        }
    }
};

// ---------------------------------------------------------------------------
// eta and theta

// q^{k/24} prod_{n>=1} (1 - q^{kn}), exact through q^cutoff
inline PQSeries eta_q(const mpq_class& k, const mpq_class& cutoff) {
    if (k <= 0) throw domain_error("eta_q: k must be positive");
    if (cutoff < k / 24) throw domain_error("eta_q: cutoff below the leading exponent");
    mpq_class budget = cutoff - k / 24;
    PQSeries prod = PQSeries::one();
    prod.truncate(budget);
    for (long n = 1; k * n <= budget; ++n) {
        PQSeries f = PQSeries::one();
        f.add(0, k * n, GaussRat(-1));
        prod *= f;
    }
    return prod.shifted(0, k / 24);
}

// Euler's pentagonal number theorem, independent of the product
inline PQSeries eta_q_pentagonal(const mpq_class& k, const mpq_class& cutoff) {
    PQSeries s(cutoff);
    for (long n = 0;; ++n) {
        bool any = false;
        for (long m : {n, -n - 1}) {
            // exponent m(3m-1)/2 for m = 0, -1, 1, -2, ...
            long e = m * (3 * m - 1) / 2;
            mpq_class q = k / 24 + k * e;
            if (q <= cutoff) {
                s.add(0, q, GaussRat((m % 2 == 0) ? 1 : -1));
                any = true;
            }
        }
        if (!any) break;
    }
    return s;
}

// sum_n (-1)^n e^{-2 pi i a n} p^{kn} q^{k n^2 / 2 (+ k n / 2 when half)}
inline PQSeries theta_term(long k, const mpq_class& a, bool half_shift, const mpq_class& cutoff) {
    PQSeries s(cutoff);
    for (long n = 0;; ++n) {
        bool any = false;
        for (long m : {n, -n - 1}) {
            mpq_class q = qfrac(k * m * m, 2);
            if (half_shift) q += qfrac(k * m, 2);
            if (q > cutoff) continue;
            any = true;
            GaussRat c = unit_phase(-a * m);
            if (m % 2 != 0) c = -c;
            s.add(k * m, q, c);
        }
        if (!any && n > 1) break;
    }
    return s;
}

// prod (1 - q^{m+1})(1 + p q^{m+1/2})(1 + p^{-1} q^{m+1/2})
inline PQSeries triple_product(const mpq_class& cutoff) {
    PQSeries s = PQSeries::one();
    s.truncate(cutoff);
    for (long m = 0; qfrac(2 * m + 1, 2) <= cutoff; ++m) {
        PQSeries a = PQSeries::one(), b = PQSeries::one(), c = PQSeries::one();
        a.add(0, m + 1, GaussRat(-1));
        b.add(1, qfrac(2 * m + 1, 2), GaussRat(1));
        c.add(-1, qfrac(2 * m + 1, 2), GaussRat(1));
        s = s * a * b * c;
    }
    return s;
}

// ---------------------------------------------------------------------------
// phi / psi

// P(c p^e q^r) truncated at cutoff (r > 0)
inline PQSeries substitute(const GPoly& P, long pe, const mpq_class& r, const mpq_class& cutoff) {
    PQSeries s(cutoff);
    for (size_t j = 0; j < P.c.size(); ++j) s.add(pe * static_cast<long>(j), r * static_cast<long>(j), P.c[j]);
    return s;
}

inline long central_charge(const WeakFrameShape& s) { return s.weighted_degree(); }

// phi by the triple product: q^{-c/24} prod_N E_s(p^{-1} q^{N-1/2}) E_sbar(p q^{N-1/2})
inline PQSeries phi(const WeakFrameShape& s, const mpq_class& cutoff) {
    mpq_class lead = qfrac(-central_charge(s), 24);
    mpq_class budget = cutoff - lead;
    if (budget < 0) return PQSeries(cutoff);
    PQSeries prod = PQSeries::one();
    prod.truncate(budget);
    GPoly E = weak_shape_expand(s), Ebar = weak_shape_expand(conj_shape(s));
    for (long N = 1; qfrac(2 * N - 1, 2) <= budget; ++N) {
        mpq_class r(2 * N - 1, 2);
        prod *= substitute(E, -1, r, budget);
        prod *= substitute(Ebar, 1, r, budget);
    }
    return prod.shifted(0, lead);
}

// psi by the triple product: p^{c/2} q^{c/12} E_s(p^{-1}) prod_N E_s(p^{-1} q^N) E_sbar(p q^N)
inline PQSeries psi(const WeakFrameShape& s, const mpq_class& cutoff) {
    long c = central_charge(s);
    if (c % 2 != 0) throw domain_error("psi: odd central charge");
    mpq_class lead = qfrac(c, 12);
    mpq_class budget = cutoff - lead;
    if (budget < 0) return PQSeries(cutoff);
    PQSeries prod = PQSeries::one();
    prod.truncate(budget);
    GPoly E = weak_shape_expand(s), Ebar = weak_shape_expand(conj_shape(s));
    PQSeries zero(budget);
    for (size_t j = 0; j < E.c.size(); ++j) zero.add(-static_cast<long>(j), 0, E.c[j]);
    prod *= zero;
    for (long N = 1; N <= budget; ++N) {
        prod *= substitute(E, -1, N, budget);
        prod *= substitute(Ebar, 1, N, budget);
    }
    return prod.shifted(c / 2, lead);
}

// phi and psi read literally as theta/eta quotients; psi needs every m > 0
inline PQSeries phi_literal(const WeakFrameShape& s, const mpq_class& cutoff) {
    mpq_class D = cutoff + qfrac(central_charge(s), 24);
    if (D < 0) return PQSeries(cutoff);
    PQSeries out = PQSeries::one();
    out.truncate(D);
    for (const auto& part : s.parts) {
        PQSeries th = theta_term(part.k, part.a, false, D);
        PQSeries et = eta_q(part.k, qfrac(part.k, 24) + D);
        out *= (th * et.inverse()).pow(part.m);
    }
    return out;
}

inline PQSeries psi_literal(const WeakFrameShape& s, const mpq_class& cutoff) {
    for (const auto& part : s.parts)
        if (part.m < 0) throw domain_error("psi_literal: negative multiplicity; the half-shifted theta is not a unit");
    long c = central_charge(s);
    mpq_class D = cutoff - qfrac(c, 12);
    if (D < 0) return PQSeries(cutoff);
    PQSeries out = PQSeries::one();
    out.truncate(D);
    for (const auto& part : s.parts) {
        PQSeries th = theta_term(part.k, part.a, true, D);
        PQSeries et = eta_q(part.k, qfrac(part.k, 24) + D);
        out *= (th * et.inverse()).pow(part.m);
    }
    // prod p^{km/2} q^{km/8}
    return out.shifted(c / 2, qfrac(c, 8));
}

// ---------------------------------------------------------------------------

struct ClassData {
    std::string name;
    WeakFrameShape su, su_other;
    WeakFrameShape so, so_other;

    static ClassData from_row(const FrameRow& r) {
        return {r.cls, r.su28, iota(r.su28), r.so56, iota(r.so56)};
    }
};

inline std::vector<ClassData> load_classes() {
    std::vector<ClassData> out;
    for (const auto& r : load_frame_rows()) out.push_back(ClassData::from_row(r));
    return out;
}

inline ClassData find_class(const std::string& name) {
    for (auto& c : load_classes())
        if (c.name == name) return c;
    throw domain_error("unknown class " + name);
}

// qmax counts from the vacuum: the last q-power kept is q^{qmax - c/24}
inline mpq_class absolute_cutoff(const ClassData& cd, const mpq_class& qmax) {
    return qmax - qfrac(central_charge(cd.su), 24);
}

inline PQSeries mt_two_var(const ClassData& cd, const mpq_class& qmax) {
    mpq_class cut = absolute_cutoff(cd, qmax);
    PQSeries s = phi(cd.su, cut) + phi(cd.su_other, cut) + psi(cd.su, cut) + psi(cd.su_other, cut);
    return s * GaussRat(qfrac(1, 2));
}

// prod (1 - e^{2 pi i a})^m
inline GaussRat chi(const WeakFrameShape& s) { return weak_shape_expand(s).eval(GaussRat(1)); }

// prod eta(k tau)^{m_k}, scaled by t (t = 1/2 for eta(k tau / 2))
inline PQSeries eta_product(const WeakFrameShape& so, const mpq_class& t, const mpq_class& cutoff) {
    mpq_class lead = 0;
    for (const auto& p : so.parts) lead += qfrac(p.k * p.m, 24) * t;
    mpq_class D = cutoff - lead;
    if (D < 0) return PQSeries(cutoff);
    PQSeries out = PQSeries::one();
    out.truncate(D);
    for (const auto& p : so.parts) {
        mpq_class k = t * p.k;
        out *= eta_q_pentagonal(k, k / 24 + D).pow(p.m);
    }
    return out;
}

// eta_h(tau/2)/eta_h(tau) + chi eta_h(tau), for one lift
inline PQSeries ordinary_lift(const WeakFrameShape& so, const WeakFrameShape& su, const mpq_class& cutoff) {
    mpq_class D = cutoff + qfrac(so.weighted_degree(), 48);
    PQSeries num = eta_product(so, qfrac(1, 2), qfrac(so.weighted_degree(), 48) + D);
    PQSeries den = eta_product(so, 1, qfrac(so.weighted_degree(), 24) + D);
    PQSeries out = num * den.inverse();
    GaussRat x = chi(su);
    if (!x.is_zero()) out += eta_product(so, 1, cutoff) * x;
    out.truncate(cutoff);
    return out;
}

struct OrdinaryRoutes {
    PQSeries from_two_var, from_eta;
    bool shapes_consistent = false;
    bool agree = false;
};

inline OrdinaryRoutes mt_ordinary(const ClassData& cd, const mpq_class& qmax) {
    OrdinaryRoutes r;
    mpq_class cut = absolute_cutoff(cd, qmax);
    r.from_two_var = mt_two_var(cd, qmax).specialize_p1();
    r.shapes_consistent = frame_expand(su_to_so(cd.su)) == weak_shape_expand(cd.so) &&
                          frame_expand(su_to_so(cd.su_other)) == weak_shape_expand(cd.so_other);
    r.from_eta = (ordinary_lift(cd.so, cd.su, cut) + ordinary_lift(cd.so_other, cd.su_other, cut)) *
                 GaussRat(qfrac(1, 2));
    r.agree = agree(r.from_two_var, r.from_eta) && r.from_two_var.cutoff() == r.from_eta.cutoff();
    return r;
}

// ---------------------------------------------------------------------------
// modular checks

// a in [0, 1) with e^{2 pi i a} = e^{4 pi i b} for every exponent b in the support
struct T2Result {
    bool constant = false;
    mpq_class phase;
    std::string witness;
};

inline T2Result t2_phase(const PQSeries& s) {
    T2Result r;
    bool first = true;
    mpq_class b0;
    for (const auto& [q, row] : s.rows()) {
        mpq_class a = phase_mod1(2 * q);
        if (first) {
            r.phase = a;
            b0 = q;
            first = false;
        } else if (a != r.phase) {
            r.witness = "q^" + b0.get_str() + " and q^" + q.get_str();
            return r;
        }
    }
    r.constant = true;
    return r;
}

struct SCheck {
    std::complex<double> lhs, rhs, ratio;
    double modulus_error = 0;
    double tail_estimate = 0;
    bool tail_ok = false;
    bool pass = false;
};

// f(z|tau) against e^{-c pi i z^2 / tau} f(z/tau | -1/tau)
inline SCheck s_check_numeric(const PQSeries& f, long c, std::complex<double> tau, std::complex<double> z, double tol) {
    SCheck r;
    if (tau.imag() < 1) throw domain_error("s_check_numeric: Im(tau) must be at least 1");
    std::complex<double> tau2 = -1.0 / tau, z2 = z / tau;
    r.lhs = f.eval(z, tau);
    std::complex<double> eps = std::exp(std::complex<double>(0, -M_PI * c) * z * z / tau);
    r.rhs = eps * f.eval(z2, tau2);
    r.ratio = r.rhs / r.lhs;
    r.modulus_error = std::abs(std::abs(r.ratio) - 1);
    // last unit of retained q-degree relative to the sum; rows decay geometrically for Im(tau) >= 1
    double last = 0;
    if (f.cutoff()) {
        for (const auto& [q, row] : f.rows())
            if (q > *f.cutoff() - 1) {
                PQSeries one_row;
                for (const auto& [p, cf] : row) one_row.add(p, q, cf);
                last = std::max({last, std::abs(one_row.eval(z, tau)), std::abs(one_row.eval(z2, tau2))});
            }
    }
    r.tail_estimate = last / std::min(std::abs(r.lhs), std::abs(f.eval(z2, tau2)));
    r.tail_ok = r.tail_estimate < tol / 10;
    r.pass = r.tail_ok && r.modulus_error < tol;
    return r;
}

// ---------------------------------------------------------------------------
// tabulated character

struct CharacterTable {
    long c = 0;
    std::vector<long> charges;
    std::vector<std::pair<mpq_class, std::vector<mpz_class>>> rows;
    struct Sum {
        mpq_class degree;
        long charge;
        std::vector<std::pair<long, long>> parts;
        mpz_class total() const {
            mpz_class t = 0;
            for (auto [m, d] : parts) t += mpz_class(m) * d;
            return t;
        }
    };
    std::vector<Sum> sums;
};

inline CharacterTable load_character_table() {
    auto j = load_json("character_table.json");
    CharacterTable t;
    t.c = j.at("central_charge").get<long>();
    t.charges = j.at("charges").get<std::vector<long>>();
    for (const auto& r : j.at("rows")) {
        std::vector<mpz_class> e;
        for (const auto& x : r.at("entries")) e.emplace_back(std::to_string(x.get<long long>()));
        mpq_class n(r.at("n").get<std::string>());
        n.canonicalize();
        t.rows.emplace_back(n, std::move(e));
    }
    for (const auto& s : j.at("irreducible_sums")) {
        CharacterTable::Sum u;
        u.degree = mpq_class(s.at("degree").get<std::string>());
        u.degree.canonicalize();
        u.charge = s.at("charge").get<long>();
        for (const auto& p : s.at("parts")) u.parts.emplace_back(p.at(0).get<long>(), p.at(1).get<long>());
        t.sums.push_back(u);
    }
    return t;
}

inline PQSeries character(const mpq_class& qmax) { return mt_two_var(find_class("1A"), qmax); }

inline Report verify_character(const PQSeries& ch, const CharacterTable& t) {
    Report rep;
    rep.module = "character";
    mpq_class shift = qfrac(-t.c, 24);
    std::string bad;
    size_t n = 0;
    for (const auto& [deg, entries] : t.rows)
        for (size_t k = 0; k < entries.size(); ++k) {
            GaussRat got = ch.coeff(t.charges[k], deg + shift);
            ++n;
            if (got != GaussRat(mpq_class(entries[k])) && bad.empty())
                bad = "(" + deg.get_str() + ", " + std::to_string(t.charges[k]) + "): table " + entries[k].get_str() +
                      ", computed " + got.str();
        }
    rep.add("every tabulated cell", bad.empty(), bad.empty() ? std::to_string(n) + " cells" : bad);
    std::string odd, sym, neg;
    for (const auto& [q, row] : ch.rows())
        for (const auto& [p, c] : row) {
            if (p % 2 != 0 && odd.empty()) odd = "p^" + std::to_string(p) + " q^" + q.get_str();
            if (ch.coeff(-p, q) != c && sym.empty()) sym = "p^" + std::to_string(p) + " q^" + q.get_str();
            if ((!c.is_real() || !c.is_gauss_int() || c.re < 0) && neg.empty())
                neg = "p^" + std::to_string(p) + " q^" + q.get_str() + " = " + c.str();
        }
    rep.add("odd charges vanish", odd.empty(), odd);
    rep.add("p <-> 1/p symmetry", sym.empty(), sym);
    rep.add("coefficients are nonnegative integers", neg.empty(), neg);
    return rep;
}

inline Report verify_sums(const PQSeries& ch, const CharacterTable& t) {
    Report rep;
    rep.module = "moonshine sums";
    mpq_class shift = qfrac(-t.c, 24);
    for (const auto& s : t.sums) {
        GaussRat got = ch.coeff(s.charge, s.degree + shift);
        std::string rhs;
        for (auto [m, d] : s.parts) rhs += (rhs.empty() ? "" : "+") + (m == 1 ? "" : "(" + std::to_string(m) + ")") + std::to_string(d);
        std::string where = "degree " + s.degree.get_str() + ", charge " + std::to_string(s.charge);
        // the stated left side is the tabulated cell; both the computed cell and the sum must match it
        mpz_class stated = 0;
        for (const auto& [deg, entries] : t.rows)
            for (size_t k = 0; k < entries.size(); ++k)
                if (deg == s.degree && t.charges[k] == s.charge) stated = entries[k];
        rep.add("computed " + where + " equals " + stated.get_str(), got == GaussRat(mpq_class(stated)), got.str());
        rep.add(stated.get_str() + " = " + rhs, s.total() == stated, "right side sums to " + s.total().get_str());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// export

inline nlohmann::json int_json(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

inline mpz_class json_int(const nlohmann::json& j) {
    if (j.is_string()) return mpz_class(j.get<std::string>());
    return mpz_class(std::to_string(j.get<long long>()));
}

// sorted by (q, p)
inline nlohmann::json series_to_json(const PQSeries& s) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [q, row] : s.rows())
        for (const auto& [p, c] : row)
            out.push_back({{"p", p},
                           {"q_num", int_json(q.get_num())},
                           {"q_den", int_json(q.get_den())},
                           {"re_num", int_json(c.re.get_num())},
                           {"re_den", int_json(c.re.get_den())},
                           {"im_num", int_json(c.im.get_num())},
                           {"im_den", int_json(c.im.get_den())}});
    return out;
}

inline PQSeries series_from_json(const nlohmann::json& j) {
    PQSeries s;
    for (const auto& t : j) {
        mpq_class q(json_int(t.at("q_num")), json_int(t.at("q_den")));
        mpq_class re(json_int(t.at("re_num")), json_int(t.at("re_den")));
        mpq_class im(json_int(t.at("im_num")), json_int(t.at("im_den")));
        q.canonicalize();
        re.canonicalize();
        im.canonicalize();
        s.add(t.at("p").get<long>(), q, GaussRat(re, im));
    }
    return s;
}

inline std::string series_to_csv(const PQSeries& s) {
    std::ostringstream os;
    os << "p,q_num,q_den,re_num,re_den,im_num,im_den\n";
    for (const auto& [q, row] : s.rows())
        for (const auto& [p, c] : row)
            os << p << ',' << q.get_num() << ',' << q.get_den() << ',' << c.re.get_num() << ',' << c.re.get_den() << ','
               << c.im.get_num() << ',' << c.im.get_den() << '\n';
    return os.str();
}

} // namespace rudvalis
