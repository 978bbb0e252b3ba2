#pragma once

#include "exact.hpp"
#include "report.hpp"
#include "resources.hpp"

#include <map>
#include <string>
#include <vector>

namespace rudvalis {

// Vector of the 28-dimensional lattice, read row by row from a 7x4 array of
// quaternion components (1, j, k, l).
using CWVec = std::vector<GaussRat>;

struct MSet {
    std::string name;
    std::vector<CWVec> members; // oriented labelling in table order
};

inline CWVec cw_from_json(const nlohmann::json& j) {
    GaussRat scale = GaussRat::parse(j.at("scale").get<std::string>());
    CWVec v;
    const auto& rows = j.at("rows");
    if (rows.size() != 7) throw data_error("cw vector: expected 7 rows");
    for (const auto& r : rows) {
        if (r.size() != 4) throw data_error("cw vector: expected 4 columns");
        for (const auto& x : r) v.push_back(scale * GaussRat::parse(x.get<std::string>()));
    }
    return v;
}

// linear in x, anti-linear in y
inline GaussRat herm(const CWVec& x, const CWVec& y) {
    if (x.size() != y.size()) throw domain_error("herm: length mismatch");
    GaussRat s;
    for (size_t k = 0; k < x.size(); ++k) s += x[k] * y[k].conj();
    return s;
}

struct CWTables {
    MSet B, C;
    CWVec mu, mu_prime, lambda, lambda_prime;
};

inline CWTables load_cw_tables() {
    auto j = load_json("cw_vectors.json");
    CWTables t;
    t.B.name = "B*";
    t.C.name = "C*";
    for (const auto& v : j.at("B")) t.B.members.push_back(cw_from_json(v));
    for (const auto& v : j.at("C")) t.C.members.push_back(cw_from_json(v));
    t.mu = cw_from_json(j.at("mu"));
    t.mu_prime = cw_from_json(j.at("mu_prime"));
    t.lambda = cw_from_json(j.at("lambda"));
    t.lambda_prime = cw_from_json(j.at("lambda_prime"));
    return t;
}

inline bool half_gaussian(const CWVec& v) {
    for (const auto& x : v)
        if (!(x * GaussRat(2)).is_gauss_int()) return false;
    return true;
}

inline Report verify_mset(const MSet& B) {
    Report rep;
    rep.module = "msets " + B.name;
    const size_t n = B.members.size();
    rep.add("13 members", n == 13, std::to_string(n));
    std::string bad;
    for (size_t k = 0; k < n; ++k) {
        GaussRat nn = herm(B.members[k], B.members[k]);
        if (nn != GaussRat(4) && bad.empty()) bad = "member " + std::to_string(k + 1) + " has norm " + nn.str();
        if (!half_gaussian(B.members[k]) && bad.empty()) bad = "member " + std::to_string(k + 1) + " not in Z[i]/2";
    }
    rep.add("norms 4, entries in Z[i]/2", bad.empty(), bad);

    size_t gamma_edges = 0, delta_edges = 0;
    std::vector<int> out_deg(n), in_deg(n), succ(n, -1);
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y) {
            if (x == y) continue;
            GaussRat v = herm(B.members[x], B.members[y]);
            if (x < y && v == GaussRat(1)) ++gamma_edges;
            if (v == GaussRat::I()) {
                ++delta_edges;
                ++out_deg[x];
                ++in_deg[y];
                succ[x] = static_cast<int>(y);
            }
        }
    rep.add("Gamma has 26 edges", gamma_edges == 26, std::to_string(gamma_edges));
    rep.add("Delta has 13 directed edges", delta_edges == 13, std::to_string(delta_edges));
    bool cycle = n > 0;
    for (size_t x = 0; x < n; ++x) cycle = cycle && out_deg[x] == 1 && in_deg[x] == 1;
    if (cycle) {
        size_t len = 0;
        int x = 0;
        do {
            x = succ[x];
            ++len;
        } while (x != 0 && len <= n);
        cycle = len == n;
    }
    rep.add("Delta is a single 13-cycle", cycle);
    std::string orient;
    for (size_t k = 0; k + 1 < n; ++k) {
        GaussRat v = herm(B.members[k], B.members[k + 1]);
        if (v != GaussRat::I() && orient.empty())
            orient = "(" + std::to_string(k + 1) + "," + std::to_string(k + 2) + ") = " + v.str();
    }
    rep.add("table order is an oriented labelling", orient.empty(), orient);
    return rep;
}

inline Report verify_satellites(const CWTables& t) {
    Report rep;
    rep.module = "msets satellites";
    auto values = [&](const CWVec& v) {
        std::vector<GaussRat> out;
        for (const auto& b : t.B.members) out.push_back(herm(b, v));
        return out;
    };
    auto all_equal = [](const std::vector<GaussRat>& xs, const GaussRat& want, std::string& why) {
        for (size_t k = 0; k < xs.size(); ++k)
            if (xs[k] != want) {
                why = "beta" + std::to_string(k + 1) + " gives " + xs[k].str();
                return false;
            }
        return true;
    };
    std::string why;
    for (auto [name, v] : {std::pair<const char*, const CWVec*>{"mu", &t.mu}, {"mu'", &t.mu_prime},
                           {"lambda", &t.lambda}, {"lambda'", &t.lambda_prime}}) {
        GaussRat nn = herm(*v, *v);
        rep.add(std::string("norm of ") + name + " is 4", nn == GaussRat(4), nn.str());
    }
    why.clear();
    rep.add("(B*, mu) = {1}", all_equal(values(t.mu), GaussRat(1), why), why);
    why.clear();
    rep.add("(B*, mu') = {1}", all_equal(values(t.mu_prime), GaussRat(1), why), why);
    GaussRat mm = herm(t.mu, t.mu_prime);
    rep.add("(mu, mu') = i", mm == GaussRat::I(), mm.str());
    why.clear();
    rep.add("(B*, lambda) = {0}", all_equal(values(t.lambda), GaussRat(), why), why);
    why.clear();
    rep.add("(B*, lambda') = {0}", all_equal(values(t.lambda_prime), GaussRat(), why), why);
    auto ratio = [&](const CWVec& l) {
        GaussRat a = herm(l, t.mu), b = herm(l, t.mu_prime);
        return b.is_zero() ? GaussRat() : a / b;
    };
    GaussRat rp = ratio(t.lambda), rn = ratio(t.lambda_prime);
    rep.add("lambda is a positive complement", rp == GaussRat(1), rp.str());
    rep.add("lambda' is a negative complement", rn == GaussRat(-1), rn.str());
    GaussRat ll = herm(t.lambda, t.lambda_prime);
    rep.add("(lambda, lambda') = 1", ll == GaussRat(1), ll.str());
    return rep;
}

inline const std::vector<GaussRat>& partner_sequence() {
    static const std::vector<GaussRat> seq = [] {
        std::vector<GaussRat> s;
        for (const char* x : {"-i", "-i", "0", "0", "i", "-i", "0", "0", "0", "0", "-i", "i", "0"}) s.push_back(GaussRat::parse(x));
        return s;
    }();
    return seq;
}

// shift k such that (beta^i, gamma) = seq[(i + k) mod 13], or -1
inline int partner_shift(const MSet& B, const CWVec& g) {
    const auto& seq = partner_sequence();
    const size_t n = seq.size();
    if (B.members.size() != n) return -1;
    std::vector<GaussRat> vals;
    for (const auto& b : B.members) vals.push_back(herm(b, g));
    for (size_t k = 0; k < n; ++k) {
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) ok = vals[i] == seq[(i + k) % n];
        if (ok) return static_cast<int>(k);
    }
    return -1;
}

inline Report verify_partner(const MSet& B, const MSet& C) {
    Report rep;
    rep.module = "msets partner";
    std::map<int, int> shifts;
    std::string bad;
    for (size_t k = 0; k < C.members.size(); ++k) {
        int s = partner_shift(B, C.members[k]);
        if (s < 0 && bad.empty()) bad = C.name + " member " + std::to_string(k + 1) + " is not a cyclic shift";
        ++shifts[s];
    }
    rep.add("each member gives a cyclic shift of the partner sequence", bad.empty(), bad);
    bool each_once = shifts.size() == 13 && !shifts.count(-1);
    for (const auto& [s, c] : shifts) each_once = each_once && c == 1;
    rep.add("all 13 shifts occur once", each_once, std::to_string(shifts.size()) + " distinct");
    return rep;
}

inline Report verify_cw_all() {
    auto t = load_cw_tables();
    Report rep;
    rep.module = "msets";
    rep.merge(verify_mset(t.B));
    rep.merge(verify_mset(t.C));
    rep.merge(verify_satellites(t));
    rep.merge(verify_partner(t.B, t.C));
    return rep;
}

} // namespace rudvalis
