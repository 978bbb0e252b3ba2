#pragma once

#include "exact.hpp"
#include "resources.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rudvalis {

// Points of PG(1,7) are indexed 0 = infinity, 1 + k = k for k in F_7.
// The lattice coordinate of h_n uses the same index.
namespace cayley_detail {

using LVec = std::array<long, 8>; // doubled coordinates: 2*lambda in Z^8

inline int pg_index(int k) { return k < 0 ? 0 : 1 + k; }

using PGPerm = std::array<int, 8>;

inline PGPerm pg_translate() {
    PGPerm p{};
    p[0] = 0;
    for (int k = 0; k < 7; ++k) p[1 + k] = 1 + (k + 1) % 7;
    return p;
}

inline PGPerm pg_negrecip() {
    // x -> -1/x ; inverse of k in F_7
    PGPerm p{};
    p[0] = 1;      // inf -> 0
    p[1] = 0;      // 0 -> inf
    for (int k = 1; k < 7; ++k) {
        int inv = 1;
        while (inv * k % 7 != 1) ++inv;
        p[1 + k] = 1 + (7 - inv) % 7;
    }
    return p;
}

inline std::vector<PGPerm> l27_elements() {
    PGPerm id{};
    for (int k = 0; k < 8; ++k) id[k] = k;
    std::vector<PGPerm> gens = {pg_translate(), pg_negrecip()};
    std::set<PGPerm> seen = {id};
    std::vector<PGPerm> out = {id};
    for (size_t i = 0; i < out.size(); ++i)
        for (const auto& g : gens) {
            PGPerm h{};
            for (int k = 0; k < 8; ++k) h[k] = g[out[i][k]];
            if (seen.insert(h).second) out.push_back(h);
        }
    return out;
}

} // namespace cayley_detail

using CayleyElt = std::uint8_t;

// Cayley algebra on Lambda/2Lambda with all derived incidence data.
struct CayleyAlgebra {
    // multiplication table on the 256 residues; index = coordinates in the root basis mod 2
    std::array<std::array<CayleyElt, 256>, 256> mul{};
    std::array<std::uint8_t, 256> qbar{};
    CayleyElt unit = 0;
    CayleyElt h_inf_plus_h0 = 0;
    CayleyElt h_inf_minus_h0 = 0;
    std::array<CayleyElt, 8> two_h{}; // class of 2h_n (all equal)

    int b(CayleyElt x, CayleyElt y) const { return qbar[x ^ y] ^ qbar[x] ^ qbar[y]; }
    CayleyElt operator()(CayleyElt x, CayleyElt y) const { return mul[x][y]; }
    CayleyElt square(CayleyElt x) const { return mul[x][x]; }
    CayleyElt cube(CayleyElt x) const { return mul[x][mul[x][x]]; }

    // reduce a lattice vector given by doubled coordinates
    CayleyElt reduce(const cayley_detail::LVec& v) const {
        int out = 0;
        for (int k = 0; k < 8; ++k) {
            mpq_class c = 0;
            for (int j = 0; j < 8; ++j) c += coord_inv_[k][j] * v[j];
            if (c.get_den() != 1) throw domain_error("cayley: vector not in the lattice");
            mpz_class r = c.get_num() % 2;
            if (r != 0) out |= 1 << k;
        }
        return static_cast<CayleyElt>(out);
    }

    static CayleyAlgebra build();

  private:
    std::array<std::array<mpq_class, 8>, 8> coord_inv_{};
};

namespace cayley_detail {

// E8 simple roots (Bourbaki) in the h basis, doubled
inline std::array<LVec, 8> root_basis() {
    std::array<LVec, 8> a{};
    a[0] = {1, -1, -1, -1, -1, -1, -1, 1};
    a[1] = {2, 2, 0, 0, 0, 0, 0, 0};
    for (int k = 2; k < 8; ++k) {
        LVec v{};
        v[k - 2] = -2;
        v[k - 1] = 2;
        a[k] = v;
    }
    return a;
}

// products 4 h_i h_j as integer vectors (4*h_i*h_j = 2*(2 h_i h_j))
inline std::array<std::array<LVec, 8>, 8> basis_products() {
    std::array<std::array<std::optional<LVec>, 8>, 8> tab;
    auto set = [&](int i, int j, const LVec& v) {
        if (tab[i][j] && *tab[i][j] != v) throw domain_error("cayley: inconsistent transported relation");
        tab[i][j] = v;
    };
    // 2 h_n^2 = h_n - u  -> doubled: 4 h_n^2 = 2h_n - 2u = 2h_n - (1,..,1)
    for (int n = 0; n < 8; ++n) {
        LVec v;
        v.fill(-1);
        v[n] += 2;
        set(n, n, v);
    }
    using cayley_detail::pg_index;
    // base relations, with doubled right hand sides: 2u - 2h_a - 2h_b - 2h_c
    auto rhs = [](std::array<int, 3> pts) {
        LVec v;
        v.fill(1);
        for (int p : pts) v[p] -= 2;
        return v;
    };
    const int inf = 0, zero = pg_index(0);
    std::array<int, 3> r1 = {pg_index(3), pg_index(5), pg_index(6)};
    std::array<int, 3> r2 = {pg_index(2), pg_index(1), pg_index(4)};
    auto elems = l27_elements();
    if (elems.size() != 168) throw domain_error("cayley: L2(7) has wrong order");
    std::set<std::pair<int, int>> pairs;
    for (const auto& g : elems) {
        std::array<int, 3> a, c;
        for (int k = 0; k < 3; ++k) {
            a[k] = g[r1[k]];
            c[k] = g[r2[k]];
        }
        set(g[inf], g[zero], rhs(a));
        set(g[zero], g[inf], rhs(c));
        pairs.insert({g[inf], g[zero]});
    }
    if (pairs.size() != 56) throw domain_error("cayley: L2(7) is not doubly transitive");
    std::array<std::array<LVec, 8>, 8> out{};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            if (!tab[i][j]) throw domain_error("cayley: missing product");
            out[i][j] = *tab[i][j];
        }
    return out;
}

// lambda * mu in doubled coordinates
inline LVec lattice_mul(const LVec& x, const LVec& y, const std::array<std::array<LVec, 8>, 8>& P) {
    // x = X/2, y = Y/2, h_i h_j = P_ij / 4  => 2xy = sum X_i Y_j P_ij / 8
    LVec out{};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            long c = x[i] * y[j];
            if (!c) continue;
            for (int k = 0; k < 8; ++k) out[k] += c * P[i][j][k];
        }
    for (auto& v : out) {
        if (v % 8) throw domain_error("cayley: product left the lattice");
        v /= 8;
    }
    return out;
}

} // namespace cayley_detail

inline CayleyAlgebra CayleyAlgebra::build() {
    using namespace cayley_detail;
    CayleyAlgebra A;
    auto roots = root_basis();
    // coordinate inverse: columns of R are doubled roots, want R^{-1}
    GMatrix R(8, GRow(8));
    for (int k = 0; k < 8; ++k)
        for (int j = 0; j < 8; ++j) R[j][k] = GaussRat(roots[k][j]);
    GMatrix Rinv = inverse(R);
    for (int k = 0; k < 8; ++k)
        for (int j = 0; j < 8; ++j) A.coord_inv_[k][j] = Rinv[k][j].re;

    auto P = basis_products();
    std::array<std::array<CayleyElt, 8>, 8> bprod{};
    for (int k = 0; k < 8; ++k)
        for (int l = 0; l < 8; ++l) bprod[k][l] = A.reduce(lattice_mul(roots[k], roots[l], P));

    for (int x = 0; x < 256; ++x)
        for (int y = 0; y < 256; ++y) {
            int acc = 0;
            for (int k = 0; k < 8; ++k) {
                if (!(x >> k & 1)) continue;
                for (int l = 0; l < 8; ++l)
                    if (y >> l & 1) acc ^= bprod[k][l];
            }
            A.mul[x][y] = static_cast<CayleyElt>(acc);
        }

    for (int x = 0; x < 256; ++x) {
        LVec v{};
        for (int k = 0; k < 8; ++k)
            if (x >> k & 1)
                for (int j = 0; j < 8; ++j) v[j] += roots[k][j];
        long n4 = 0; // 4 (lambda, lambda)
        for (long c : v) n4 += c * c;
        if (n4 % 8) throw domain_error("cayley: odd lattice vector");
        A.qbar[x] = static_cast<std::uint8_t>(((n4 / 8) % 2 + 2) % 2);
    }

    LVec u;
    u.fill(1);
    A.unit = A.reduce(u);
    LVec s{}, d{};
    s[0] = 2, s[1] = 2;
    d[0] = 2, d[1] = -2;
    A.h_inf_plus_h0 = A.reduce(s);
    A.h_inf_minus_h0 = A.reduce(d);
    for (int n = 0; n < 8; ++n) {
        LVec t{};
        t[n] = 4;
        A.two_h[n] = A.reduce(t);
    }
    return A;
}

// ---------------------------------------------------------------------------

struct CayleyCensus {
    std::vector<CayleyElt> involutions;                 // 63
    std::vector<CayleyElt> cube_roots;                  // 56
    std::vector<std::pair<CayleyElt, CayleyElt>> pairs; // 28, (a, a^2) with a < a^2
    std::vector<std::array<CayleyElt, 3>> lines;        // 315
    std::vector<std::array<CayleyElt, 3>> rings;        // 63
    std::vector<std::uint32_t> dozen_of_involution;     // pair masks, parallel to involutions
    std::vector<std::uint32_t> quartet_of_line;         // parallel to lines
    std::vector<std::uint32_t> ringed_quartets;         // parallel to rings

    int pair_index(CayleyElt a) const {
        for (size_t k = 0; k < pairs.size(); ++k)
            if (pairs[k].first == a || pairs[k].second == a) return static_cast<int>(k);
        return -1;
    }
};

inline CayleyCensus census(const CayleyAlgebra& A) {
    CayleyCensus c;
    for (int x = 0; x < 256; ++x) {
        auto e = static_cast<CayleyElt>(x);
        if (e == A.unit) continue;
        if (A.square(e) == A.unit) c.involutions.push_back(e);
        if (A.cube(e) == A.unit) c.cube_roots.push_back(e);
    }
    for (CayleyElt a : c.cube_roots) {
        CayleyElt a2 = A.square(a);
        if (a < a2) c.pairs.push_back({a, a2});
    }
    for (size_t i = 0; i < c.involutions.size(); ++i)
        for (size_t j = i + 1; j < c.involutions.size(); ++j) {
            CayleyElt x = c.involutions[i], y = c.involutions[j];
            if (A.b(x, y)) continue;
            CayleyElt z = x ^ y ^ A.unit;
            if (z <= y) continue;
            if (A.square(z) != A.unit || z == A.unit) continue;
            if (A.b(x, z) || A.b(y, z)) continue;
            c.lines.push_back({x, y, z});
        }
    for (const auto& l : c.lines) {
        // ring: some labelling with xy = z; by commutativity any order works
        if (A.mul[l[0]][l[1]] == l[2]) c.rings.push_back(l);
    }
    for (CayleyElt x : c.involutions) {
        std::uint32_t m = 0;
        for (size_t k = 0; k < c.pairs.size(); ++k) {
            int b1 = A.b(x, c.pairs[k].first), b2 = A.b(x, c.pairs[k].second);
            if (b1 != b2) throw domain_error("cayley: b(x,a) != b(x,a^-1)");
            if (b1) m |= std::uint32_t(1) << k;
        }
        c.dozen_of_involution.push_back(m);
    }
    auto dozen = [&](CayleyElt x) {
        for (size_t k = 0; k < c.involutions.size(); ++k)
            if (c.involutions[k] == x) return c.dozen_of_involution[k];
        throw domain_error("cayley: not an involution");
    };
    for (const auto& l : c.lines) c.quartet_of_line.push_back(dozen(l[0]) & dozen(l[1]) & dozen(l[2]));
    for (const auto& r : c.rings) c.ringed_quartets.push_back(dozen(r[0]) & dozen(r[1]) & dozen(r[2]));
    return c;
}

// Couple-level incidence: per couple {p,q} the quartets (by line) containing it,
// the unique ringed quartet and the involution shared by its lines.
struct CoupleData {
    int p = 0, q = 0;
    std::vector<size_t> lines;
    std::vector<size_t> rings;
    std::optional<CayleyElt> common_involution;
};

inline std::vector<CoupleData> couples(const CayleyCensus& c) {
    std::vector<CoupleData> out;
    int n = static_cast<int>(c.pairs.size());
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            CoupleData d;
            d.p = p;
            d.q = q;
            std::uint32_t m = (1u << p) | (1u << q);
            for (size_t l = 0; l < c.lines.size(); ++l)
                if ((c.quartet_of_line[l] & m) == m) d.lines.push_back(l);
            for (size_t r = 0; r < c.rings.size(); ++r)
                if ((c.ringed_quartets[r] & m) == m) d.rings.push_back(r);
            std::map<CayleyElt, int> cnt;
            for (size_t l : d.lines)
                for (CayleyElt x : c.lines[l]) ++cnt[x];
            for (auto [x, k] : cnt)
                if (k == static_cast<int>(d.lines.size())) d.common_involution = x;
            out.push_back(d);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Delta-grid labelling search.

struct GridBlock {
    int m, l, r; // label indices
};

inline std::vector<GridBlock> load_grid() {
    auto j = load_json("grid.json");
    std::vector<GridBlock> out;
    for (const auto& b : j.at("blocks"))
        out.push_back({label_index(b.at("M")), label_index(b.at("L")), label_index(b.at("R"))});
    if (out.size() != 9) throw data_error("grid.json: expected 9 blocks");
    if (label_index(j.at("extra")) != kInf) throw data_error("grid.json: extra must be inf");
    return out;
}

struct GridResult {
    bool ok = false;
    std::array<int, kDelta> label_to_pair{}; // valid when ok
    std::string certificate;
    std::uint64_t nodes = 0;
};

// Search for a bijection label -> cube root pair: each block with inf is a
// ringed quartet, and every word in `dozens` maps onto a Cayley dozen.
// inf_element pins the image of infinity to the pair containing that element.
inline GridResult grid_consistency(const CayleyAlgebra& A, const CayleyCensus& c,
                                   const std::vector<GridBlock>& grid,
                                   const std::vector<std::uint32_t>& dozens,
                                   std::optional<CayleyElt> inf_element = std::nullopt) {
    GridResult res;
    std::vector<int> inf_choices;
    if (inf_element) {
        int p = c.pair_index(*inf_element);
        if (p < 0) {
            res.certificate = "element " + std::to_string(*inf_element) + " is not a cube root of unity";
            return res;
        }
        inf_choices.push_back(p);
    } else {
        for (size_t p = 0; p < c.pairs.size(); ++p) inf_choices.push_back(static_cast<int>(p));
    }
    (void)A;
    const auto& cay_dozens = c.dozen_of_involution;
    std::array<int, kDelta> img{};
    for (int inf_pair : inf_choices) {
        // triples completing inf_pair to a ringed quartet
        std::vector<std::array<int, 3>> triples;
        for (std::uint32_t rq : c.ringed_quartets) {
            if (!(rq >> inf_pair & 1)) continue;
            std::array<int, 3> t{};
            int k = 0;
            for (int p = 0; p < 28; ++p)
                if (p != inf_pair && (rq >> p & 1)) t[k++] = p;
            triples.push_back(t);
        }
        if (triples.size() != 9) {
            res.certificate = "pair does not lie in 9 ringed quartets";
            continue;
        }
        img.fill(-1);
        img[kInf] = inf_pair;
        std::vector<bool> used(9, false);
        // assigned label mask (labels) and images
        auto feasible = [&]() {
            for (std::uint32_t D : dozens) {
                std::uint32_t inside = 0, outside = 0;
                for (int lab = 0; lab < kDelta; ++lab) {
                    if (img[lab] < 0) continue;
                    (D >> lab & 1 ? inside : outside) |= 1u << img[lab];
                }
                bool any = false;
                for (std::uint32_t cd : cay_dozens)
                    if ((cd & inside) == inside && !(cd & outside)) {
                        any = true;
                        break;
                    }
                if (!any) return false;
            }
            return true;
        };
        static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        std::function<bool(size_t)> rec = [&](size_t b) -> bool {
            ++res.nodes;
            if (b == grid.size()) return true;
            for (size_t t = 0; t < triples.size(); ++t) {
                if (used[t]) continue;
                used[t] = true;
                for (const auto& pm : perms) {
                    img[grid[b].m] = triples[t][pm[0]];
                    img[grid[b].l] = triples[t][pm[1]];
                    img[grid[b].r] = triples[t][pm[2]];
                    if (feasible() && rec(b + 1)) return true;
                }
                img[grid[b].m] = img[grid[b].l] = img[grid[b].r] = -1;
                used[t] = false;
            }
            return false;
        };
        if (feasible() && rec(0)) {
            res.ok = true;
            res.label_to_pair = img;
            res.certificate.clear();
            return res;
        }
        res.certificate = "no labelling with inf at pair " + std::to_string(inf_pair);
    }
    return res;
}

} // namespace rudvalis
