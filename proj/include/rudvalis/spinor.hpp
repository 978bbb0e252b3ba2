#pragma once

#include "codes.hpp"
#include "exact.hpp"
#include "monomial.hpp"
#include "report.hpp"
#include "resources.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rudvalis {

// Sparse element of the exterior algebra on C^Delta, e_I for I a subset of Delta.
// Terms are kept sorted by word with no zero coefficients.
class SpinVec {
  public:
    using Term = std::pair<Word, GaussRat>;

    SpinVec() = default;
    explicit SpinVec(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

    static SpinVec basis(Word I, GaussRat c = 1) { return SpinVec({{I, std::move(c)}}); }

    const std::vector<Term>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    GaussRat coeff(Word I) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), I,
                                   [](const Term& t, Word w) { return t.first < w; });
        return it != terms_.end() && it->first == I ? it->second : GaussRat();
    }

    // degree if all terms have the same weight, -1 otherwise (0 for the zero vector)
    int homogeneous_degree() const {
        if (terms_.empty()) return 0;
        int d = weight(terms_.front().first);
        for (const auto& t : terms_)
            if (weight(t.first) != d) return -1;
        return d;
    }

    SpinVec& operator+=(const SpinVec& o) {
        std::vector<Term> all = terms_;
        all.insert(all.end(), o.terms_.begin(), o.terms_.end());
        terms_ = std::move(all);
        normalize();
        return *this;
    }
    friend SpinVec operator+(SpinVec a, const SpinVec& b) { return a += b; }
    friend SpinVec operator-(SpinVec a, const SpinVec& b) { return a += b * GaussRat(-1); }
    friend SpinVec operator*(const SpinVec& v, const GaussRat& s) {
        std::vector<Term> out;
        if (s.is_zero()) return SpinVec();
        out.reserve(v.terms_.size());
        for (const auto& t : v.terms_) out.push_back({t.first, t.second * s});
        SpinVec r;
        r.terms_ = std::move(out);
        return r;
    }
    friend bool operator==(const SpinVec& a, const SpinVec& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const SpinVec& a, const SpinVec& b) { return !(a == b); }

    // first word where the two vectors differ, if any
    friend std::optional<Word> first_difference(const SpinVec& a, const SpinVec& b) {
        size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first))
                return a.terms_[i].first;
            if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) return b.terms_[j].first;
            if (a.terms_[i].second != b.terms_[j].second) return a.terms_[i].first;
            ++i, ++j;
        }
        return std::nullopt;
    }

  private:
    std::vector<Term> terms_;

    void normalize() {
        std::stable_sort(terms_.begin(), terms_.end(),
                         [](const Term& x, const Term& y) { return x.first < y.first; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().first == t.first) out.back().second += t.second;
            else out.push_back(std::move(t));
        }
        terms_.clear();
        for (auto& t : out)
            if (!t.second.is_zero()) terms_.push_back(std::move(t));
    }
};

inline SpinVec apply_monomial(const MonoMat& g, const SpinVec& v) {
    std::vector<SpinVec::Term> out;
    out.reserve(v.size());
    for (const auto& [I, c] : v.terms()) {
        auto [J, e] = spinor_coeff_exp(g, I);
        out.push_back({J, c * GaussRat::unit(e)});
    }
    return SpinVec(std::move(out));
}

// sign of e_I = s * e_{I & B} ^ e_{I & ~B}
inline int block_front_sign(Word I, Word B) {
    Word rest = I & ~B;
    int inv = 0;
    for (Word x = I & B; x; x &= x - 1) inv += std::popcount(rest & ((x & -x) - 1));
    return inv & 1 ? -1 : 1;
}

inline std::vector<Word> subsets_of_size(Word mask, int k) {
    std::vector<int> pts;
    for (int j = 0; j < 32; ++j)
        if (mask >> j & 1) pts.push_back(j);
    std::vector<Word> out;
    int n = static_cast<int>(pts.size());
    if (k < 0 || k > n) return out;
    std::vector<int> idx(k);
    for (int t = 0; t < k; ++t) idx[t] = t;
    while (true) {
        Word w = 0;
        for (int t : idx) w |= Word(1) << pts[t];
        out.push_back(w);
        int t = k - 1;
        while (t >= 0 && idx[t] == n - k + t) --t;
        if (t < 0) break;
        ++idx[t];
        for (int u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<int> bits_of(Word w) {
    std::vector<int> out;
    for (; w; w &= w - 1) out.push_back(std::countr_zero(w));
    return out;
}

// det of a[rows J, cols I], both listed in increasing order
inline GaussRat minor_det(const GMatrix& a, Word J, Word I) {
    auto r = bits_of(J), c = bits_of(I);
    GMatrix m(r.size(), GRow(c.size()));
    for (size_t x = 0; x < r.size(); ++x)
        for (size_t y = 0; y < c.size(); ++y) m[x][y] = a[r[x]][c[y]];
    return determinant(std::move(m));
}

// Exterior power of Id - 2P applied to v by expanding each factor a_i - 2 P a_i.
// Subsets of more than rank(P) factors contribute nothing and are skipped.
inline SpinVec apply_lowrank_reflection(const GMatrix& P, const SpinVec& v) {
    const int n = static_cast<int>(P.size());
    int r = static_cast<int>(rank(P));
    Word all = n == 32 ? ~Word(0) : (Word(1) << n) - 1;
    std::vector<SpinVec::Term> out;
    std::map<std::pair<Word, Word>, GaussRat> cache;
    auto minor = [&](Word T, Word S) -> const GaussRat& {
        auto key = std::make_pair(T, S);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, minor_det(P, T, S)).first;
        return it->second;
    };
    for (const auto& [I, c] : v.terms()) {
        int d = weight(I);
        for (int s = 0; s <= std::min(r, d); ++s) {
            GaussRat scale = c;
            for (int t = 0; t < s; ++t) scale *= GaussRat(-2);
            for (Word S : subsets_of_size(I, s)) {
                Word keep = I & ~S;
                int sI = block_front_sign(I, S);
                for (Word T : subsets_of_size(all & ~keep, s)) {
                    const GaussRat& m = minor(T, S);
                    if (m.is_zero()) continue;
                    Word J = keep | T;
                    GaussRat term = scale * m;
                    if (sI * block_front_sign(J, T) < 0) term = -term;
                    out.push_back({J, std::move(term)});
                }
            }
        }
    }
    return SpinVec(std::move(out));
}

// Connected components of the support graph of a square matrix.
inline std::vector<Word> matrix_blocks(const GMatrix& a) {
    const int n = static_cast<int>(a.size());
    std::vector<int> comp(n, -1);
    std::vector<Word> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        Word B = 0;
        std::vector<int> stack = {s};
        comp[s] = static_cast<int>(out.size());
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            B |= Word(1) << x;
            for (int y = 0; y < n; ++y)
                if (comp[y] < 0 && (!a[x][y].is_zero() || !a[y][x].is_zero())) {
                    comp[y] = comp[s];
                    stack.push_back(y);
                }
        }
        out.push_back(B);
    }
    return out;
}

// Exterior power of a block-diagonal matrix applied to v, one block at a time.
// Each block is scaled to Gaussian integers; the scale is divided out at the end.
inline SpinVec apply_block_diagonal(const GMatrix& a, const SpinVec& v) {
    const int n = static_cast<int>(a.size());
    auto blocks = matrix_blocks(a);

    mpz_class vden = 1;
    for (const auto& t : v.terms()) {
        vden = lcm(vden, t.second.re.get_den());
        vden = lcm(vden, t.second.im.get_den());
    }
    using ITerm = std::pair<Word, GaussInt>;
    std::vector<ITerm> cur;
    cur.reserve(v.size());
    for (const auto& [I, c] : v.terms()) cur.push_back({I, GaussInt::from(c * GaussRat(mpq_class(vden)))});

    std::vector<mpz_class> bden;
    for (Word B : blocks) {
        mpz_class d = 1;
        for (int x : bits_of(B))
            for (int y : bits_of(B)) {
                d = lcm(d, a[x][y].re.get_den());
                d = lcm(d, a[x][y].im.get_den());
            }
        bden.push_back(d);

        int nb = std::popcount(B);
        GMatrix scaled(n, GRow(n));
        for (int x : bits_of(B))
            for (int y : bits_of(B)) scaled[x][y] = a[x][y] * GaussRat(mpq_class(d));
        std::vector<std::vector<Word>> subs(nb + 1);
        std::vector<std::unordered_map<Word, int>> pos(nb + 1);
        std::vector<std::vector<std::vector<GaussInt>>> minors(nb + 1);
        for (int k = 0; k <= nb; ++k) {
            subs[k] = subsets_of_size(B, k);
            for (size_t t = 0; t < subs[k].size(); ++t) pos[k][subs[k][t]] = static_cast<int>(t);
            size_t m = subs[k].size();
            minors[k].assign(m, std::vector<GaussInt>(m));
            for (size_t j = 0; j < m; ++j)
                for (size_t i = 0; i < m; ++i) minors[k][j][i] = GaussInt::from(minor_det(scaled, subs[k][j], subs[k][i]));
        }

        std::sort(cur.begin(), cur.end(), [B](const ITerm& x, const ITerm& y) {
            Word rx = x.first & ~B, ry = y.first & ~B;
            int kx = std::popcount(x.first & B), ky = std::popcount(y.first & B);
            return std::tie(rx, kx, x.first) < std::tie(ry, ky, y.first);
        });
        std::vector<ITerm> next;
        next.reserve(cur.size());
        size_t g = 0;
        while (g < cur.size()) {
            Word rest = cur[g].first & ~B;
            int k = std::popcount(cur[g].first & B);
            size_t h = g;
            std::vector<std::pair<int, GaussInt>> in;
            while (h < cur.size() && (cur[h].first & ~B) == rest && std::popcount(cur[h].first & B) == k) {
                GaussInt c = std::move(cur[h].second);
                if (block_front_sign(cur[h].first, B) < 0) c = -c;
                in.push_back({pos[k].at(cur[h].first & B), std::move(c)});
                ++h;
            }
            for (size_t j = 0; j < subs[k].size(); ++j) {
                GaussInt acc;
                for (const auto& [i, c] : in) {
                    const GaussInt& m = minors[k][j][i];
                    if (!m.is_zero()) acc += m * c;
                }
                if (acc.is_zero()) continue;
                Word J = subs[k][j] | rest;
                if (block_front_sign(J, B) < 0) acc = -acc;
                next.push_back({J, std::move(acc)});
            }
            g = h;
        }
        cur = std::move(next);
    }

    std::vector<SpinVec::Term> out;
    out.reserve(cur.size());
    for (auto& [J, c] : cur) {
        mpz_class den = vden;
        for (size_t b = 0; b < blocks.size(); ++b) {
            mpz_class p;
            mpz_pow_ui(p.get_mpz_t(), bden[b].get_mpz_t(), std::popcount(J & blocks[b]));
            den *= p;
        }
        GaussRat x = c.rat();
        x.re /= den;
        x.im /= den;
        out.push_back({J, std::move(x)});
    }
    return SpinVec(std::move(out));
}

// ---------------------------------------------------------------------------
// rho

struct RhoRow {
    Word rep = 0;
    GaussRat r, r_comp;
    int orbit = -1, comp_orbit = -1;
};

struct RhoData {
    SpinVec rho; // unnormalised, Gaussian integer coefficients
    mpz_class C;
    std::vector<RhoRow> rows;
    std::set<int> orbits_used;
};

// t_O with gamma = 1 at `at`
inline SpinVec orbit_invariant(const SignedOrbit& orb, Word at) {
    long k = orb.index_of(at);
    if (k < 0) throw domain_error("orbit_invariant: word not in orbit");
    int s = orb.gamma[k];
    std::vector<SpinVec::Term> terms;
    terms.reserve(orb.members.size());
    for (size_t t = 0; t < orb.members.size(); ++t) terms.push_back({orb.members[t], GaussRat(orb.gamma[t] * s)});
    return SpinVec(std::move(terms));
}

inline RhoData build_rho(const OrbitData& od) {
    auto j = load_json("rho_coeffs.json");
    RhoData out;
    out.C = mpz_class(j.at("C").get<long>());
    std::vector<SpinVec::Term> terms;
    for (const auto& row : j.at("rows")) {
        RhoRow r;
        r.rep = word_from_labels(row.at("rep"));
        r.r = GaussRat::parse(row.at("r").get<std::string>());
        r.r_comp = GaussRat::parse(row.at("r_comp").get<std::string>());
        Word comp = kAllOnes ^ r.rep;
        r.orbit = od.orbit_containing(r.rep);
        r.comp_orbit = od.orbit_containing(comp);
        if (r.orbit < 0 || r.comp_orbit < 0)
            throw domain_error("build_rho: representative " + word_str(r.rep) + " is not a weight-14 word of the dual code");
        auto add_orbit = [&](int o, Word w, const GaussRat& c) {
            const auto& orb = od.orbits[o];
            if (!orb.relevant) throw domain_error("build_rho: " + word_str(w) + " lies in an irrelevant orbit");
            if (!out.orbits_used.insert(o).second)
                throw domain_error("build_rho: orbit of " + word_str(w) + " appears twice");
            SpinVec t_o = orbit_invariant(orb, w);
            for (const auto& t : t_o.terms()) terms.push_back({t.first, t.second * c});
        };
        add_orbit(r.orbit, r.rep, r.r);
        add_orbit(r.comp_orbit, comp, r.r_comp);
        out.rows.push_back(r);
    }
    out.rho = SpinVec(std::move(terms));
    return out;
}

// ---------------------------------------------------------------------------
// z

struct ZData {
    GMatrix z;
    GMatrix P_minus;        // orthogonal projector onto the negated space
    GMatrix fixed_basis;    // rows, reduced echelon
    size_t closure_order = 0;
    bool commutes = false;
    size_t fixed_dim = 0; // complex dimension
};

inline GRow vector_from_json(const nlohmann::json& obj) {
    GRow v(kDelta);
    for (auto it = obj.begin(); it != obj.end(); ++it)
        v[label_index(nlohmann::json(it.key()))] = GaussRat::parse(it.value().get<std::string>());
    return v;
}

inline std::vector<MonoMat> group_elements(const std::vector<MonoMat>& gens) {
    std::set<MonoMat> seen = {MonoMat::identity()};
    std::vector<MonoMat> out = {MonoMat::identity()};
    for (size_t k = 0; k < out.size(); ++k)
        for (const auto& g : gens) {
            MonoMat h = g * out[k];
            if (seen.insert(h).second) out.push_back(h);
        }
    return out;
}

inline GRow apply_dense(const MonoMat& g, const GRow& v) {
    GRow out(v.size());
    for (int j = 0; j < kDelta; ++j) out[g.perm[j]] = v[j] * GaussRat::unit(g.scal[j]);
    return out;
}

// projector onto the row span of B (rows independent), Hermitian form sum x conj(y)
inline GMatrix orthogonal_projector(const GMatrix& B) {
    GMatrix V(B[0].size(), GRow(B.size())); // columns are the vectors
    for (size_t r = 0; r < B.size(); ++r)
        for (size_t c = 0; c < B[r].size(); ++c) V[c][r] = B[r][c];
    GMatrix Vh = conj_transpose(V);
    return matmul(matmul(V, inverse(matmul(Vh, V))), Vh);
}

inline ZData build_z(const MonomialGenerators& G) {
    auto j = load_json("z_fixed_vectors.json");
    std::vector<MonoMat> cg;
    for (const auto& name : j.at("closure")) cg.push_back(MonoMat::from_perm(G.perms.at(name.get<std::string>()).perm_part()));
    auto group = group_elements(cg);
    ZData out;
    out.closure_order = group.size();
    GMatrix span;
    for (const auto& v : j.at("vectors")) {
        GRow row = vector_from_json(v);
        for (const auto& g : group) {
            span.push_back(apply_dense(g, row));
            GRow iv = span.back();
            for (auto& x : iv) x *= GaussRat::I();
            span.push_back(std::move(iv));
        }
    }
    rref(span);
    out.fixed_basis = span;
    out.fixed_dim = span.size();
    GMatrix P = orthogonal_projector(span);
    out.P_minus = identity_matrix(kDelta);
    for (int r = 0; r < kDelta; ++r)
        for (int c = 0; c < kDelta; ++c) out.P_minus[r][c] -= P[r][c];
    out.z = identity_matrix(kDelta);
    for (int r = 0; r < kDelta; ++r)
        for (int c = 0; c < kDelta; ++c) out.z[r][c] -= GaussRat(2) * out.P_minus[r][c];
    out.commutes = true;
    for (const auto& g : cg) {
        GMatrix d = g.dense();
        out.commutes = out.commutes && matmul(d, out.z) == matmul(out.z, d);
    }
    return out;
}

// ---------------------------------------------------------------------------

inline std::string mismatch_detail(const SpinVec& expect, const SpinVec& got) {
    auto w = first_difference(expect, got);
    if (!w) return "equal";
    return "at " + word_str(*w) + " expected " + expect.coeff(*w).str() + " got " + got.coeff(*w).str();
}

struct RhoInvarianceOptions {
    bool check_z = true;
};

inline Report verify_rho_invariance(const RhoData& rd, const MonomialGenerators& G, const ZData& zd,
                                    RhoInvarianceOptions opt = {}) {
    Report rep;
    rep.module = "spinor";
    const SpinVec& rho = rd.rho;
    rep.add("rho homogeneous of degree 14", rho.homogeneous_degree() == 14,
            std::to_string(rho.size()) + " terms");
    bool integral = true;
    for (const auto& t : rho.terms()) integral = integral && t.second.is_gauss_int();
    rep.add("rho has Gaussian integer coefficients", integral);
    rep.add("C recorded", rd.C == 86272, rd.C.get_str());
    for (size_t k = 0; k < G.sign_changes.size(); ++k) {
        SpinVec img = apply_monomial(G.sign_changes[k], rho);
        rep.add("sign change " + std::to_string(k) + " fixes rho", img == rho, mismatch_detail(rho, img));
    }
    for (const auto& [name, g] : G.moving()) {
        SpinVec img = apply_monomial(g, rho);
        rep.add(name + " fixes rho", img == rho, mismatch_detail(rho, img));
    }

    const GMatrix& z = zd.z;
    GMatrix zz = matmul(z, z);
    rep.add("z^2 = Id", zz == identity_matrix(kDelta));
    rep.add("z unitary", matmul(z, conj_transpose(z)) == identity_matrix(kDelta));
    GaussRat det = determinant(z), tr = trace(z);
    rep.add("det z = 1", det == GaussRat(1), det.str());
    // z commutes with multiplication by i, so the fixed space is counted over R
    rep.add("fixed space real dimension 24", 2 * zd.fixed_dim == 24,
            "complex dimension " + std::to_string(zd.fixed_dim));
    rep.add("trace z = dim fixed - dim negated", tr == GaussRat(2 * static_cast<long>(zd.fixed_dim) - kDelta), tr.str());
    rep.add("z commutes with the closure group", zd.commutes);
    if (opt.check_z) {
        SpinVec img = apply_block_diagonal(z, rho);
        rep.add("z fixes rho", img == rho, mismatch_detail(rho, img));
    }
    return rep;
}

} // namespace rudvalis
