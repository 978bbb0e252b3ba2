#pragma once

#include "cayley.hpp"
#include "codes.hpp"
#include "monomial.hpp"
#include "report.hpp"
#include "spinor.hpp"

#include <map>
#include <set>
#include <string>

namespace rudvalis {

inline std::string count_detail(size_t got, size_t want) {
    return std::to_string(got) + (got == want ? "" : " (want " + std::to_string(want) + ")");
}

inline Report verify_cayley_algebra(const CayleyAlgebra& A) {
    Report rep;
    rep.module = "cayley algebra";
    bool unit = true;
    for (int x = 0; x < 256; ++x) unit = unit && A(A.unit, x) == x && A(x, A.unit) == x;
    rep.add("unit law on all 256 elements", unit);
    rep.add("(h_inf + h_0)^3 = u", A.cube(A.h_inf_plus_h0) == A.unit);
    rep.add("(h_inf - h_0)^2 = u", A.square(A.h_inf_minus_h0) == A.unit);

    bool alt = true, comm = true;
    size_t perp = 0, off = 0;
    for (int x = 0; x < 256; ++x) {
        alt = alt && A.b(x, x) == 0;
        if (A.b(x, A.unit)) continue;
        ++perp;
        for (int y = 0; y < 256; ++y) {
            if (A.b(y, A.unit)) continue;
            comm = comm && ((A(x, y) == A(y, x)) == (A.b(x, y) == 0));
        }
    }
    for (int y = 0; y < 256; ++y) off += A.b(y, A.unit) && A(A.unit, y) == A(y, A.unit);
    rep.add("b is alternating", alt);
    // u commutes with everything yet pairs to 1 with the cube roots, so the rule lives on u-perp
    rep.add("xy = yx exactly when b(x,y) = 0 on u-perp", comm && perp == 128,
            std::to_string(perp) + " elements; " + std::to_string(off) + " elements off u-perp commute with u");

    std::string bad;
    for (int a = 0; a < 256 && bad.empty(); ++a) {
        if (a == A.unit || A.cube(a) != A.unit) continue;
        CayleyElt ai = A.square(a);
        auto conj = [&](int x) { return A(A(a, x), ai); };
        for (int x = 0; x < 256 && bad.empty(); ++x)
            for (int y = 0; y < 256; ++y)
                if (conj(A(x, y)) != A(conj(x), conj(y))) {
                    bad = "a=" + std::to_string(a) + " x=" + std::to_string(x) + " y=" + std::to_string(y);
                    break;
                }
    }
    rep.add("conjugation by cube roots is an automorphism", bad.empty(), bad);
    return rep;
}

inline Report verify_census(const CayleyAlgebra& A, const CayleyCensus& c) {
    Report rep;
    rep.module = "cayley census";
    rep.add("63 involution pairs", c.involutions.size() == 63, count_detail(c.involutions.size(), 63));
    rep.add("28 cube-root pairs", c.pairs.size() == 28, count_detail(c.pairs.size(), 28));
    rep.add("315 isotropic lines", c.lines.size() == 315, count_detail(c.lines.size(), 315));
    rep.add("63 isotropic rings", c.rings.size() == 63, count_detail(c.rings.size(), 63));

    bool ring_rule = true;
    for (const auto& r : c.rings) ring_rule = ring_rule && A(r[1], r[2]) == r[0] && A(r[2], r[0]) == r[1];
    rep.add("rings close under cyclic products", ring_rule);

    bool twelve = true;
    for (auto d : c.dozen_of_involution) twelve = twelve && std::popcount(d) == 12;
    rep.add("each dozen has 12 pairs", twelve);
    bool four = true;
    for (auto q : c.quartet_of_line) four = four && std::popcount(q) == 4;
    rep.add("each quartet has 4 pairs", four);

    auto cp = couples(c);
    size_t five = 0, one = 0, inv = 0;
    std::map<CayleyElt, std::vector<const CoupleData*>> by_involution;
    for (const auto& d : cp) {
        five += d.lines.size() == 5;
        one += d.rings.size() == 1;
        if (d.common_involution) {
            ++inv;
            by_involution[*d.common_involution].push_back(&d);
        }
    }
    rep.add("each couple lies in 5 quartets", five == cp.size(), std::to_string(five) + " of " + std::to_string(cp.size()));
    rep.add("each couple lies in exactly 1 ringed quartet", one == cp.size(),
            std::to_string(one) + " of " + std::to_string(cp.size()));
    rep.add("the 5 lines of a couple share an involution", inv == cp.size(), std::to_string(inv) + " of " + std::to_string(cp.size()));

    // couples of a dozen: 6 of them, partitioning its 12 pairs
    std::string why;
    for (size_t k = 0; k < c.involutions.size() && why.empty(); ++k) {
        auto it = by_involution.find(c.involutions[k]);
        size_t n = it == by_involution.end() ? 0 : it->second.size();
        if (n != 6) {
            why = "involution " + std::to_string(c.involutions[k]) + " has " + std::to_string(n) + " couples";
            break;
        }
        std::uint32_t cover = 0;
        bool disjoint = true;
        for (const auto* d : it->second) {
            std::uint32_t m = (1u << d->p) | (1u << d->q);
            disjoint = disjoint && !(cover & m);
            cover |= m;
        }
        if (!disjoint || cover != c.dozen_of_involution[k])
            why = "couples of involution " + std::to_string(c.involutions[k]) + " do not partition its dozen";
    }
    rep.add("each dozen has 6 couples partitioning it", why.empty(), why);
    return rep;
}

inline Report verify_grid(const CayleyAlgebra& A, const CayleyCensus& c) {
    Report rep;
    rep.module = "cayley grid";
    auto dz = dozen_words();
    dz.pop_back();
    auto g = grid_consistency(A, c, load_grid(), dz);
    rep.add("shipped grid admits a consistent labelling", g.ok,
            g.ok ? std::to_string(g.nodes) + " nodes" : g.certificate);
    return rep;
}

inline Report verify_codes() {
    Report rep;
    rep.module = "codes";
    Code D = dozens_code();
    rep.add("dim D = 7", D.dim() == 7, std::to_string(D.dim()));
    rep.add("D doubly even", D.doubly_even());
    rep.add("D contains the all-ones word", D.contains(kAllOnes));
    Code Dp = D.dual();
    rep.add("dim D-perp = 21", Dp.dim() == 21, std::to_string(Dp.dim()));
    bool contained = true;
    for (Word b : D.basis()) contained = contained && Dp.contains(b);
    rep.add("D inside D-perp", contained);
    return rep;
}

inline Report verify_group_orders(const MonomialGenerators& G) {
    Report rep;
    rep.module = "monomial orders";
    mpz_class q = quotient_order(G.all()), m = group_order(G.all()), a = group_order(G.sign_changes);
    rep.add("|Mbar| = 12096", q == 12096, q.get_str());
    rep.add("|M| = 1548288", m == 1548288, m.get_str());
    rep.add("|sign changes| = 128", a == 128, a.get_str());
    return rep;
}

inline std::vector<MonoMat> moving_generators(const MonomialGenerators& G) {
    std::vector<MonoMat> out;
    for (const auto& [name, g] : G.moving()) out.push_back(g);
    return out;
}

inline OrbitData weight14_orbits(const MonomialGenerators& G) {
    return orbits14(dozens_code().dual(), moving_generators(G));
}

inline Report verify_orbits(const OrbitData& od) {
    Report rep;
    rep.module = "monomial orbits";
    size_t rel = 0, total = 0;
    for (const auto& o : od.orbits) {
        rel += o.relevant;
        total += o.members.size();
    }
    rep.add("weight-14 words partitioned", total == od.words.size(), std::to_string(od.words.size()) + " words");
    rep.add("80 orbits", od.orbits.size() == 80, count_detail(od.orbits.size(), 80));
    rep.add("68 relevant", rel == 68, count_detail(rel, 68));

    std::set<int> hit;
    std::string why;
    try {
        auto rd = build_rho(od);
        hit = rd.orbits_used;
        rep.add("34 tabulated representatives", rd.rows.size() == 34, count_detail(rd.rows.size(), 34));
    } catch (const std::exception& e) {
        why = e.what();
    }
    std::set<int> relevant;
    for (size_t k = 0; k < od.orbits.size(); ++k)
        if (od.orbits[k].relevant) relevant.insert(static_cast<int>(k));
    rep.add("representatives and complements hit all relevant orbits", why.empty() && hit == relevant,
            why.empty() ? std::to_string(hit.size()) + " hit" : why);
    return rep;
}

// relevance through Schreier generators of the stabiliser, independent of the signed search
inline Report verify_relevance_by_stabilizer(const OrbitData& od, const MonomialGenerators& G) {
    Report rep;
    rep.module = "monomial stabilizers";
    auto gens = moving_generators(G);
    size_t agree = 0;
    for (const auto& o : od.orbits) agree += stabilizer_character(o, gens).trivial == o.relevant;
    rep.add("stabiliser characters agree with the signed orbit search", agree == od.orbits.size(),
            std::to_string(agree) + " of " + std::to_string(od.orbits.size()));
    return rep;
}

} // namespace rudvalis
