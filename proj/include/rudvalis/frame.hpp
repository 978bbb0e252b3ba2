#pragma once

#include "exact.hpp"
#include "monomial.hpp"
#include "report.hpp"
#include "resources.hpp"

#include <cctype>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace rudvalis {

// k^m_a is the factor (1 - e^{2 pi i a} x^k)^m; a is kept in [0, 1).
struct WeakPart {
    long k = 1;
    mpq_class a = 0;
    long m = 0;
};

inline mpq_class phase_mod1(mpq_class a) {
    a.canonicalize();
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    a -= f;
    return a;
}

struct WeakFrameShape {
    std::vector<WeakPart> parts;

    static WeakFrameShape from_json(const nlohmann::json& arr) {
        WeakFrameShape s;
        for (const auto& p : arr) {
            WeakPart w;
            w.k = p.at(0).get<long>();
            w.a = mpq_class(p.at(1).get<std::string>());
            w.a = phase_mod1(w.a);
            w.m = p.at(2).get<long>();
            if (w.k <= 0 || w.m == 0) throw data_error("weak frame shape: bad part " + p.dump());
            s.parts.push_back(w);
        }
        return s;
    }

    bool is_ordinary() const {
        for (const auto& p : parts)
            if (p.a != 0) return false;
        return true;
    }

    long weighted_degree() const {
        long d = 0;
        for (const auto& p : parts) d += p.k * p.m;
        return d;
    }

    std::string str() const {
        std::string num, den;
        for (const auto& p : parts) {
            std::string t = std::to_string(p.k);
            if (p.a != 0) t += "_{" + p.a.get_str() + "}";
            long e = p.m > 0 ? p.m : -p.m;
            if (e != 1) t += "^" + std::to_string(e);
            (p.m > 0 ? num : den) += (p.m > 0 ? (num.empty() ? "" : " ") : (den.empty() ? "" : " ")) + t;
        }
        if (num.empty()) num = "1";
        return den.empty() ? num : num + " / " + den;
    }
};

// e^{2 pi i a} for a with denominator dividing 4
inline GaussRat unit_phase(const mpq_class& a0) {
    mpq_class a = phase_mod1(a0) * 4;
    if (a.get_den() != 1) throw domain_error("phase " + a0.get_str() + " has denominator not dividing 4");
    return GaussRat::unit(static_cast<int>(a.get_num().get_si()));
}

inline GPoly weak_factor(long k, const mpq_class& a) {
    std::vector<GaussRat> c(k + 1);
    c[0] = 1;
    c[k] = -unit_phase(a);
    return GPoly(std::move(c));
}

inline GPoly weak_shape_expand(const WeakFrameShape& s) {
    GPoly num = GPoly::constant(1), den = GPoly::constant(1);
    for (const auto& p : s.parts) {
        GPoly f = weak_factor(p.k, p.a).pow(static_cast<unsigned>(p.m > 0 ? p.m : -p.m));
        (p.m > 0 ? num : den) = (p.m > 0 ? num : den) * f;
    }
    return num.exact_div(den);
}

inline WeakFrameShape conj_shape(const WeakFrameShape& s) {
    WeakFrameShape out = s;
    for (auto& p : out.parts) p.a = phase_mod1(-p.a);
    return out;
}

// merge equal (k, a), drop zero exponents, sort by (k, a)
inline WeakFrameShape normalized(const WeakFrameShape& s) {
    std::map<std::pair<long, mpq_class>, long> acc;
    for (const auto& p : s.parts) acc[{p.k, phase_mod1(p.a)}] += p.m;
    WeakFrameShape out;
    for (const auto& [ka, m] : acc)
        if (m != 0) out.parts.push_back({ka.first, ka.second, m});
    return out;
}

// identity shape of -g: odd k^m_a -> (2k)^m_{2a} k^{-m}_a
inline WeakFrameShape iota(const WeakFrameShape& s) {
    WeakFrameShape out;
    for (const auto& p : s.parts) {
        if (p.k % 2 == 0) {
            out.parts.push_back(p);
        } else {
            out.parts.push_back({2 * p.k, phase_mod1(2 * p.a), p.m});
            out.parts.push_back({p.k, p.a, -p.m});
        }
    }
    return normalized(out);
}

// power sums p_r = sum of lambda^r for det(1 - g x) = prod (1 - lambda x), r = 1..R
inline std::vector<GaussRat> traces_from_poly(const GPoly& P, long R) {
    if (P.coeff(0) != GaussRat(1)) throw domain_error("traces_from_poly: constant term must be 1");
    std::vector<GaussRat> p(R + 1);
    for (long r = 1; r <= R; ++r) {
        GaussRat s = P.coeff(r) * GaussRat(-r);
        for (long k = 1; k < r; ++k) s -= P.coeff(k) * p[r - k];
        p[r] = s;
    }
    return p;
}

inline GPoly poly_from_traces(const std::vector<GaussRat>& p, long deg) {
    std::vector<GaussRat> c(deg + 1);
    c[0] = 1;
    for (long r = 1; r <= deg; ++r) {
        GaussRat s;
        for (long k = 0; k < r; ++k) s += c[k] * p.at(r - k);
        c[r] = s * GaussRat(qfrac(-1, r));
    }
    return GPoly(std::move(c));
}

// det(Id - g x) for a dense matrix via Newton's identities
inline GPoly det_id_minus_gx(const GMatrix& g) {
    const long n = static_cast<long>(g.size());
    std::vector<GaussRat> p(n + 1);
    GMatrix pw = g;
    for (long r = 1; r <= n; ++r) {
        p[r] = trace(pw);
        if (r < n) pw = matmul(pw, g);
    }
    return poly_from_traces(p, n);
}

// det(Id - g x) for a monomial matrix, one factor per cycle
inline GPoly det_id_minus_gx(const MonoMat& g) {
    GPoly out = GPoly::constant(1);
    std::array<bool, kDelta> seen{};
    for (int j = 0; j < kDelta; ++j) {
        if (seen[j]) continue;
        int len = 0, e = 0;
        for (int t = j; !seen[t]; t = g.perm[t]) {
            seen[t] = true;
            e += g.scal[t];
            ++len;
        }
        std::vector<GaussRat> c(len + 1);
        c[0] = 1;
        c[len] = -GaussRat::unit(e);
        out = out * GPoly(std::move(c));
    }
    return out;
}

struct FrameShape {
    std::map<long, long> m; // k -> m_k, zero entries dropped

    long weighted_degree() const {
        long d = 0;
        for (const auto& [k, e] : m) d += k * e;
        return d;
    }
    WeakFrameShape weak() const {
        WeakFrameShape s;
        for (const auto& [k, e] : m) s.parts.push_back({k, 0, e});
        return s;
    }
    static FrameShape from_weak(const WeakFrameShape& s) {
        FrameShape f;
        for (const auto& p : s.parts) {
            if (p.a != 0) throw domain_error("frame shape with a nonzero phase");
            f.m[p.k] += p.m;
        }
        for (auto it = f.m.begin(); it != f.m.end();) it = it->second == 0 ? f.m.erase(it) : std::next(it);
        return f;
    }
    std::string str() const { return weak().str(); }
    friend bool operator==(const FrameShape& a, const FrameShape& b) { return a.m == b.m; }
};

inline GPoly frame_expand(const FrameShape& f) { return weak_shape_expand(f.weak()); }

inline std::vector<long> divisors(long n) {
    std::vector<long> d;
    for (long k = 1; k <= n; ++k)
        if (n % k == 0) d.push_back(k);
    return d;
}

// tr[r] = trace of g^r for r = 1..n (rational); g^n = Id
inline FrameShape frame_from_traces(const std::vector<GaussRat>& tr, long n, long dim) {
    FrameShape f;
    for (long k : divisors(n)) {
        const GaussRat& t = tr.at(k);
        if (!t.is_real()) throw domain_error("frame_from_traces: trace of g^" + std::to_string(k) + " is not rational");
        mpq_class s = t.re;
        for (long d : divisors(k))
            if (d < k && f.m.count(d)) s -= d * f.m[d];
        s /= k;
        if (s.get_den() != 1) throw domain_error("frame_from_traces: multiplicity of " + std::to_string(k) + " is not integral");
        if (s != 0) f.m[k] = s.get_num().get_si();
    }
    if (f.weighted_degree() != dim)
        throw domain_error("frame_from_traces: weighted degree " + std::to_string(f.weighted_degree()) + " differs from " + std::to_string(dim));
    return f;
}

// least r <= bound with every root of P an r-th root of unity (roots on the unit circle)
inline long poly_order(const GPoly& P, long bound) {
    auto p = traces_from_poly(P, bound);
    for (long r = 1; r <= bound; ++r)
        if (p[r] == GaussRat(P.degree())) return r;
    throw domain_error("poly_order: no order up to " + std::to_string(bound));
}

inline long shape_order_bound(const WeakFrameShape& s) {
    long n = 1;
    for (const auto& p : s.parts) n = std::lcm(n, p.k * static_cast<long>(mpz_class(p.a.get_den()).get_si()));
    return n;
}

// Frame shape of P = det(1 - g x), checked by re-expansion
inline FrameShape frame_from_poly(const GPoly& P, long order_bound) {
    long n = poly_order(P, order_bound);
    auto p = traces_from_poly(P, n);
    FrameShape f = frame_from_traces(p, n, P.degree());
    if (frame_expand(f) != P) throw domain_error("frame_from_poly: expansion does not reproduce the polynomial");
    return f;
}

// action on a + a*: eigenvalues pair with their inverses
inline FrameShape su_to_so(const WeakFrameShape& s) {
    GPoly P = weak_shape_expand(s) * weak_shape_expand(conj_shape(s));
    return frame_from_poly(P, shape_order_bound(s));
}

inline bool verify_weak_shape(const GMatrix& g, const WeakFrameShape& s) {
    return det_id_minus_gx(g) == weak_shape_expand(s);
}

// P(-x)
inline GPoly poly_negate_x(const GPoly& P) {
    GPoly out = P;
    for (size_t k = 1; k < out.c.size(); k += 2) out.c[k] = -out.c[k];
    return out;
}

// trace data on a + a*: 2 Re tr(g^r)
inline std::vector<GaussRat> u_traces(const MonoMat& g, long n) {
    std::vector<GaussRat> tr(n + 1);
    MonoMat p = MonoMat::identity();
    for (long r = 1; r <= n; ++r) {
        p = p * g;
        tr[r] = GaussRat(2 * p.trace().re);
    }
    return tr;
}

// ---------------------------------------------------------------------------

struct FrameRow {
    std::string cls;
    WeakFrameShape so56, su28;
};

inline std::vector<FrameRow> load_frame_rows() {
    auto j = load_json("frame_shapes.json");
    std::vector<FrameRow> rows;
    for (const auto& r : j.at("rows"))
        rows.push_back({r.at("class").get<std::string>(), WeakFrameShape::from_json(r.at("so56")),
                        WeakFrameShape::from_json(r.at("su28"))});
    return rows;
}

struct Fingerprint {
    long order = 0;
    GaussRat tr1, tr2;
    friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
        return a.order == b.order && a.tr1 == b.tr1 && a.tr2 == b.tr2;
    }
};

inline Fingerprint fingerprint(const GPoly& P, long order_bound) {
    auto p = traces_from_poly(P, 2);
    return {poly_order(P, order_bound), p[1], p[2]};
}

inline Fingerprint fingerprint(const WeakFrameShape& s) {
    return fingerprint(weak_shape_expand(s), 4 * shape_order_bound(s));
}

// rows whose lifts (either sign) share the fingerprint
inline std::vector<std::string> rows_with_fingerprint(const std::vector<FrameRow>& rows, const Fingerprint& f) {
    std::vector<std::string> out;
    for (const auto& r : rows)
        if (fingerprint(r.su28) == f || fingerprint(iota(r.su28)) == f) out.push_back(r.cls);
    return out;
}

inline Report verify_frame_row(const FrameRow& r) {
    Report rep;
    rep.module = "frame " + r.cls;
    try {
        GPoly su = weak_shape_expand(r.su28);
        GPoly so = weak_shape_expand(r.so56);
        rep.add("SU column expands to degree 28, constant 1", su.degree() == 28 && su.coeff(0) == GaussRat(1));
        rep.add("SO column is an ordinary shape of degree 56",
                r.so56.is_ordinary() && so.degree() == 56 && so.coeff(0) == GaussRat(1));
        FrameShape lifted = su_to_so(r.su28);
        rep.add("su_to_so reproduces the SO column", frame_expand(lifted) == so, lifted.str());
        WeakFrameShape other = iota(r.su28);
        GPoly su_other = weak_shape_expand(other);
        rep.add("iota gives the shape of the negated lift", su_other == poly_negate_x(su));
        FrameShape so_other = su_to_so(other);
        rep.add("iota commutes with su_to_so",
                frame_expand(so_other) == weak_shape_expand(iota(r.so56)), so_other.str());
        rep.add("iota is an involution", weak_shape_expand(iota(other)) == su);
    } catch (const std::exception& e) {
        rep.add("row expands", false, e.what());
    }
    return rep;
}

inline Report verify_frame_table() {
    Report rep;
    rep.module = "frame";
    auto rows = load_frame_rows();
    rep.add("36 rows", rows.size() == 36, std::to_string(rows.size()));
    for (const auto& r : rows) rep.merge(verify_frame_row(r));
    return rep;
}

// A representative of `cls` inside M found by a seeded random walk, matched
// on det(1 - g x) against either lift of the row.
struct ClassWitness {
    std::string cls;
    bool found = false;
    MonoMat g;
    std::string word;
};

inline ClassWitness find_class_in_m(const FrameRow& row, const MonomialGenerators& G, std::uint64_t seed = 1,
                                    int tries = 20000) {
    ClassWitness w;
    w.cls = row.cls;
    GPoly a = weak_shape_expand(row.su28), b = weak_shape_expand(iota(row.su28));
    auto gens = G.all();
    std::vector<std::string> names;
    for (size_t k = 0; k < G.sign_changes.size(); ++k) names.push_back("e" + std::to_string(k));
    for (const auto& n : MonomialGenerators::perm_names()) names.push_back(n);
    names.push_back("m");
    std::mt19937_64 rng(seed);
    MonoMat g = MonoMat::identity();
    std::string word;
    for (int t = 0; t <= tries; ++t) {
        GPoly P = det_id_minus_gx(g);
        if (P == a || P == b) {
            w.found = true;
            w.g = g;
            w.word = word.empty() ? "1" : word;
            return w;
        }
        size_t k = rng() % gens.size();
        g = g * gens[k];
        word += (word.empty() ? "" : "*") + names[k];
        if (word.size() > 400) {
            g = MonoMat::identity();
            word.clear();
        }
    }
    return w;
}

// product of generator names joined by '*': e0..e6, Q, N0, N356, F03, V, m; "1" is the identity
inline MonoMat element_from_word(const MonomialGenerators& G, const std::string& word) {
    std::map<std::string, MonoMat> names;
    for (size_t k = 0; k < G.sign_changes.size(); ++k) names["e" + std::to_string(k)] = G.sign_changes[k];
    for (const auto& [n, g] : G.perms) names[n] = g;
    names["m"] = G.m;
    names["1"] = MonoMat::identity();
    MonoMat g = MonoMat::identity();
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        auto it = names.find(tok);
        if (it == names.end()) throw domain_error("unknown generator '" + tok + "'");
        g = g * it->second;
        tok.clear();
    };
    for (char ch : word) {
        if (ch == '*' || std::isspace(static_cast<unsigned char>(ch))) flush();
        else tok += ch;
    }
    flush();
    return g;
}

inline Report verify_class_witness(const FrameRow& row, const ClassWitness& w, const std::vector<FrameRow>& rows) {
    Report rep;
    rep.module = "frame witness " + row.cls;
    rep.add("element found in M", w.found, w.word);
    if (!w.found) return rep;
    GPoly P = det_id_minus_gx(w.g);
    bool plus = P == weak_shape_expand(row.su28);
    WeakFrameShape s = plus ? row.su28 : iota(row.su28);
    WeakFrameShape so = plus ? row.so56 : iota(row.so56);
    auto fp = fingerprint(P, 4 * shape_order_bound(s));
    auto hits = rows_with_fingerprint(rows, fp);
    rep.add("fingerprint singles out the row", hits.size() == 1 && hits[0] == row.cls,
            "order " + std::to_string(fp.order) + ", tr " + fp.tr1.str() + ", tr^2 " + fp.tr2.str());
    long n = w.g.order();
    FrameShape f = frame_from_traces(u_traces(w.g, n), n, 2 * kDelta);
    rep.add("frame_from_traces matches the SO column", frame_expand(f) == weak_shape_expand(so), f.str());
    rep.add("weak shape verified on the dense matrix", verify_weak_shape(w.g.dense(), s), s.str());
    return rep;
}

} // namespace rudvalis
