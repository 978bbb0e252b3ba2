#pragma once

#include "exact.hpp"
#include "report.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace rudvalis {

// Free fermions e_1..e_{2N} with e_i(r) e_j(s) + e_j(s) e_i(r) = -2 delta_ij delta_{r+s,0}.
// The pair (e_{2p}, e_{2p+1}) plays the role of (e_i, e_i'). Mode levels are
// stored in half units: h = 2r.

enum class Sector { untwisted, twisted };

// Gaussian integer with overflow checks
struct GI {
    long long re = 0, im = 0;

    static long long add(long long a, long long b) {
        long long r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("GI: overflow");
        return r;
    }
    static long long mul(long long a, long long b) {
        long long r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("GI: overflow");
        return r;
    }
    bool is_zero() const { return re == 0 && im == 0; }
    GI& operator+=(const GI& o) {
        re = add(re, o.re);
        im = add(im, o.im);
        return *this;
    }
    GI operator-() const { return {-re, -im}; }
    friend GI operator+(GI a, const GI& b) { return a += b; }
    friend GI operator-(GI a, const GI& b) { return a += -b; }
    friend GI operator*(const GI& a, const GI& b) {
        return {add(mul(a.re, b.re), -mul(a.im, b.im)), add(mul(a.re, b.im), mul(a.im, b.re))};
    }
    friend GI operator*(const GI& a, long long k) { return {mul(a.re, k), mul(a.im, k)}; }
    friend bool operator==(const GI& a, const GI& b) { return a.re == b.re && a.im == b.im; }
    GaussRat rat() const { return {mpq_class(mpz_class(std::to_string(re))), mpq_class(mpz_class(std::to_string(im)))}; }
};

// Sparse operator M / den, stored by columns with sorted rows.
struct SparseOp {
    using Col = std::vector<std::pair<int, GI>>;
    std::vector<Col> cols;
    long long den = 1;

    SparseOp() = default;
    explicit SparseOp(size_t n) : cols(n) {}
    size_t dim() const { return cols.size(); }

    static SparseOp identity(size_t n) {
        SparseOp s(n);
        for (size_t j = 0; j < n; ++j) s.cols[j].push_back({static_cast<int>(j), {1, 0}});
        return s;
    }

    // rational scalar times this
    SparseOp scaled(long long num, long long d = 1) const {
        if (num == 0) return SparseOp(dim());
        SparseOp s = *this;
        for (auto& c : s.cols)
            for (auto& [r, v] : c) v = v * num;
        s.den = GI::mul(den, d);
        s.normalize();
        return s;
    }
    SparseOp scaled(const GI& z) const {
        if (z.is_zero()) return SparseOp(dim());
        SparseOp s = *this;
        for (auto& c : s.cols)
            for (auto& [r, v] : c) v = v * z;
        s.normalize();
        return s;
    }

    // divide out common factors of 2 between entries and den
    void normalize() {
        if (den < 0) {
            den = -den;
            for (auto& c : cols)
                for (auto& [r, v] : c) v = -v;
        }
        long long g = den;
        for (const auto& c : cols)
            for (const auto& [r, v] : c) g = std::gcd(g, std::gcd(std::llabs(v.re), std::llabs(v.im)));
        if (g > 1) {
            den /= g;
            for (auto& c : cols)
                for (auto& [r, v] : c) v = {v.re / g, v.im / g};
        }
    }

    size_t nnz() const {
        size_t n = 0;
        for (const auto& c : cols) n += c.size();
        return n;
    }
};

inline SparseOp combine(const SparseOp& a, long long ka, const SparseOp& b, long long kb) {
    if (a.dim() != b.dim()) throw std::invalid_argument("SparseOp: dimension mismatch");
    long long L = std::lcm(a.den, b.den);
    long long fa = GI::mul(ka, L / a.den), fb = GI::mul(kb, L / b.den);
    SparseOp s(a.dim());
    s.den = L;
    for (size_t j = 0; j < a.dim(); ++j) {
        const auto &x = a.cols[j], &y = b.cols[j];
        size_t p = 0, q = 0;
        while (p < x.size() || q < y.size()) {
            if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) {
                s.cols[j].push_back({x[p].first, x[p].second * fa});
                ++p;
            } else if (p == x.size() || y[q].first < x[p].first) {
                s.cols[j].push_back({y[q].first, y[q].second * fb});
                ++q;
            } else {
                GI v = x[p].second * fa + y[q].second * fb;
                if (!v.is_zero()) s.cols[j].push_back({x[p].first, v});
                ++p;
                ++q;
            }
        }
    }
    s.normalize();
    return s;
}
inline SparseOp operator+(const SparseOp& a, const SparseOp& b) { return combine(a, 1, b, 1); }
inline SparseOp operator-(const SparseOp& a, const SparseOp& b) { return combine(a, 1, b, -1); }

inline SparseOp operator*(const SparseOp& a, const SparseOp& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("SparseOp: dimension mismatch");
    const size_t n = a.dim();
    SparseOp s(n);
    s.den = GI::mul(a.den, b.den);
    std::vector<GI> acc(n);
    std::vector<char> hit(n, 0);
    std::vector<int> touched;
    for (size_t j = 0; j < n; ++j) {
        touched.clear();
        for (const auto& [k, bv] : b.cols[j])
            for (const auto& [r, av] : a.cols[k]) {
                if (!hit[r]) {
                    hit[r] = 1;
                    acc[r] = {};
                    touched.push_back(r);
                }
                acc[r] += av * bv;
            }
        std::sort(touched.begin(), touched.end());
        for (int r : touched) {
            if (!acc[r].is_zero()) s.cols[j].push_back({r, acc[r]});
            hit[r] = 0;
        }
    }
    s.normalize();
    return s;
}

inline SparseOp commutator(const SparseOp& a, const SparseOp& b) { return a * b - b * a; }

// nonzero entries of a - b in the given columns
inline size_t residual(const SparseOp& a, const SparseOp& b, const std::vector<int>& columns) {
    SparseOp d = a - b;
    size_t n = 0;
    for (int j : columns) n += d.cols[j].size();
    return n;
}

// ---------------------------------------------------------------------------

struct Slot {
    int field; // 0..2N-1 for nonzero modes, pair index p for a zero-mode creator
    int h;     // level in half units; 0 marks a zero-mode creator a*_p
    friend bool operator<(const Slot& a, const Slot& b) { return a.h != b.h ? a.h < b.h : a.field < b.field; }
    friend bool operator==(const Slot& a, const Slot& b) { return a.h == b.h && a.field == b.field; }
};

// x_{s_1} ... x_{s_k} vac with s_1 < ... < s_k
using ModeMonomial = std::vector<Slot>;

struct TruncSpace {
    int N = 0;
    int dmax_h = 0; // Dmax in half units
    Sector sector = Sector::untwisted;
    std::vector<ModeMonomial> basis;
    std::vector<int> degree_h; // mode degree in half units, without the twisted offset
    std::map<ModeMonomial, int> index;

    int fields() const { return 2 * N; }
    // L(0) offset of the twisted sector
    mpq_class offset() const { return sector == Sector::twisted ? qfrac(N, 8) : mpq_class(0); }
    mpq_class degree(int j) const { return qfrac(degree_h[j], 2) + offset(); }
    int find(const ModeMonomial& m) const {
        auto it = index.find(m);
        return it == index.end() ? -1 : it->second;
    }
    std::vector<int> columns_up_to(const mpq_class& d) const {
        std::vector<int> out;
        for (size_t j = 0; j < basis.size(); ++j)
            if (degree(static_cast<int>(j)) <= d) out.push_back(static_cast<int>(j));
        return out;
    }
};

inline TruncSpace build_space(int N, const mpq_class& Dmax, Sector sector) {
    if (N < 1 || N > 6 || Dmax < 0 || Dmax > 6) throw domain_error("build_space: scale cap exceeded (N <= 6, Dmax <= 6)");
    TruncSpace S;
    S.N = N;
    S.sector = sector;
    mpq_class budget = Dmax - S.offset();
    mpq_class twice = 2 * budget;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), twice.get_num_mpz_t(), twice.get_den_mpz_t());
    S.dmax_h = static_cast<int>(fl.get_si());
    std::vector<Slot> slots;
    if (sector == Sector::untwisted) {
        for (int h = 1; h <= S.dmax_h; h += 2)
            for (int i = 0; i < 2 * N; ++i) slots.push_back({i, h});
    } else {
        for (int p = 0; p < N; ++p) slots.push_back({p, 0});
        for (int h = 2; h <= S.dmax_h; h += 2)
            for (int i = 0; i < 2 * N; ++i) slots.push_back({i, h});
    }
    std::sort(slots.begin(), slots.end());
    ModeMonomial cur;
    auto rec = [&](auto&& self, size_t from, int deg) -> void {
        S.index[cur] = static_cast<int>(S.basis.size());
        S.basis.push_back(cur);
        S.degree_h.push_back(deg);
        for (size_t k = from; k < slots.size(); ++k) {
            if (deg + slots[k].h > S.dmax_h) continue;
            cur.push_back(slots[k]);
            self(self, k + 1, deg + slots[k].h);
            cur.pop_back();
        }
    };
    if (budget >= 0) rec(rec, 0, 0);
    // order the basis by degree
    std::vector<int> perm(S.basis.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return S.degree_h[a] < S.degree_h[b]; });
    TruncSpace T = S;
    T.index.clear();
    for (size_t k = 0; k < perm.size(); ++k) {
        T.basis[k] = S.basis[perm[k]];
        T.degree_h[k] = S.degree_h[perm[k]];
        T.index[T.basis[k]] = static_cast<int>(k);
    }
    return T;
}

// graded dimensions, index = degree in half units above the bottom
inline std::vector<long> graded_dims(const TruncSpace& S) {
    std::vector<long> d(S.dmax_h + 1, 0);
    for (int h : S.degree_h) ++d[h];
    return d;
}

// prod (1 + q^{n+1/2})^{2N} (untwisted) or 2^N prod (1 + q^n)^{2N} (twisted), in half units
inline std::vector<long> expected_graded_dims(int N, int dmax_h, Sector sector) {
    std::vector<long> c(dmax_h + 1, 0);
    c[0] = sector == Sector::twisted ? (1L << N) : 1;
    int start = sector == Sector::untwisted ? 1 : 2;
    for (int h = start; h <= dmax_h; h += 2)
        for (int e = 0; e < 2 * N; ++e)
            for (int k = dmax_h; k >= h; --k) c[k] += c[k - h];
    return c;
}

namespace detail {

struct Term {
    int state;
    GI coeff;
};

// create (or annihilate) slot s on basis state j; -1 when the result vanishes or leaves the truncation
inline Term create(const TruncSpace& S, int j, const Slot& s) {
    const auto& m = S.basis[j];
    auto pos = std::lower_bound(m.begin(), m.end(), s);
    if (pos != m.end() && *pos == s) return {-1, {}};
    ModeMonomial out = m;
    out.insert(out.begin() + (pos - m.begin()), s);
    int k = S.find(out);
    if (k < 0) return {-1, {}};
    return {k, {(pos - m.begin()) % 2 ? -1 : 1, 0}};
}

inline Term annihilate(const TruncSpace& S, int j, const Slot& s) {
    const auto& m = S.basis[j];
    auto pos = std::lower_bound(m.begin(), m.end(), s);
    if (pos == m.end() || !(*pos == s)) return {-1, {}};
    ModeMonomial out = m;
    long d = pos - m.begin();
    out.erase(out.begin() + d);
    return {S.find(out), {d % 2 ? -1 : 1, 0}};
}

} // namespace detail

// e_i(r) with r = h/2 applied to a sparse vector
using FockVec = std::map<int, GI>;

inline FockVec apply_mode(const TruncSpace& S, int i, int h, const FockVec& v) {
    FockVec out;
    auto put = [&](const detail::Term& t, const GI& c) {
        if (t.state < 0) return;
        GI x = t.coeff * c;
        auto [it, fresh] = out.try_emplace(t.state, x);
        if (!fresh) {
            it->second += x;
            if (it->second.is_zero()) out.erase(it);
        }
    };
    bool integral = h % 2 == 0;
    if (integral != (S.sector == Sector::twisted)) return out;
    for (const auto& [j, c] : v) {
        if (h < 0) {
            put(detail::create(S, j, {i, -h}), c);
        } else if (h > 0) {
            put(detail::annihilate(S, j, {i, h}), c * GI{-2, 0});
        } else {
            // e_{2p}(0) = a_p - a*_p, e_{2p+1}(0) = -i (a_p + a*_p)
            int p = i / 2;
            Slot z{p, 0};
            if (i % 2 == 0) {
                put(detail::annihilate(S, j, z), c);
                put(detail::create(S, j, z), -c);
            } else {
                put(detail::annihilate(S, j, z), c * GI{0, -1});
                put(detail::create(S, j, z), c * GI{0, -1});
            }
        }
    }
    return out;
}

// :e_i(r) e_j(s): in half units
inline FockVec apply_normal_pair(const TruncSpace& S, int i, int hr, int j, int hs, const FockVec& v, long long& scale) {
    scale = 1;
    if (hr == 0 && hs == 0) {
        // symmetrized zero modes: (e_i e_j - e_j e_i) / 2
        FockVec a = apply_mode(S, i, 0, apply_mode(S, j, 0, v));
        FockVec b = apply_mode(S, j, 0, apply_mode(S, i, 0, v));
        for (const auto& [k, c] : b) {
            auto [it, fresh] = a.try_emplace(k, -c);
            if (!fresh) {
                it->second += -c;
                if (it->second.is_zero()) a.erase(it);
            }
        }
        scale = 2;
        return a;
    }
    if (hr <= hs) return apply_mode(S, i, hr, apply_mode(S, j, hs, v));
    FockVec a = apply_mode(S, j, hs, apply_mode(S, i, hr, v));
    for (auto& [k, c] : a) c = -c;
    return a;
}

// collects an operator column by column with rational weights
class OpBuilder {
  public:
    explicit OpBuilder(size_t n) : cols_(n) {}

    void add(int col, const FockVec& v, const GaussRat& w) {
        if (w.is_zero()) return;
        for (const auto& [r, c] : v) {
            auto& slot = cols_[col][r];
            slot += c.rat() * w;
        }
    }

    SparseOp build() const {
        mpz_class L = 1;
        for (const auto& c : cols_)
            for (const auto& [r, v] : c) {
                mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), v.re.get_den_mpz_t());
                mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), v.im.get_den_mpz_t());
            }
        if (!L.fits_slong_p()) throw std::overflow_error("OpBuilder: denominator too large");
        SparseOp s(cols_.size());
        s.den = L.get_si();
        for (size_t j = 0; j < cols_.size(); ++j)
            for (const auto& [r, v] : cols_[j]) {
                if (v.is_zero()) continue;
                mpq_class a = v.re * L, b = v.im * L;
                if (!a.get_num().fits_slong_p() || !b.get_num().fits_slong_p())
                    throw std::overflow_error("OpBuilder: entry too large");
                s.cols[j].push_back({r, {a.get_num().get_si(), b.get_num().get_si()}});
            }
        s.normalize();
        return s;
    }

  private:
    std::vector<std::map<int, GaussRat>> cols_;
};

// generalized binomial coefficient binom(x, m)
inline mpq_class binom_q(const mpq_class& x, int m) {
    mpq_class r = 1;
    for (int k = 0; k < m; ++k) r *= (x - k) / mpq_class(k + 1);
    return r;
}

// coefficient of z^{-e} (e in half units: e_h = 2e) in :D^{(m1)} e_i(z) D^{(m2)} e_j(z):
inline SparseOp quad_mode(const TruncSpace& S, int i, int m1, int j, int m2, int e_h) {
    OpBuilder B(S.basis.size());
    // exponent of z in e(r): -r - 1/2 - m; total -r - s - 1 - m1 - m2 = -e
    // so r + s = e - 1 - m1 - m2, in half units hr + hs = e_h - 2 - 2 m1 - 2 m2
    int tot = e_h - 2 - 2 * (m1 + m2);
    int parity = S.sector == Sector::twisted ? 0 : 1;
    int lim = S.dmax_h + 2;
    for (int hr = -lim; hr <= lim; ++hr) {
        if (((hr % 2) + 2) % 2 != parity) continue;
        int hs = tot - hr;
        if (((hs % 2) + 2) % 2 != parity || hs < -lim || hs > lim) continue;
        mpq_class cr = binom_q(qfrac(-hr - 1, 2), m1), cs = binom_q(qfrac(-hs - 1, 2), m2);
        cr.canonicalize();
        cs.canonicalize();
        GaussRat w(cr * cs);
        if (w.is_zero()) continue;
        for (size_t col = 0; col < S.basis.size(); ++col) {
            long long scale = 1;
            FockVec v = apply_normal_pair(S, i, hr, j, hs, FockVec{{static_cast<int>(col), {1, 0}}}, scale);
            if (!v.empty()) B.add(static_cast<int>(col), v, w * GaussRat(qfrac(1, scale)));
        }
    }
    return B.build();
}

// coefficient of z^{-e} in D^{(m)} e_i(z)
inline SparseOp linear_mode(const TruncSpace& S, int i, int m, int e_h) {
    OpBuilder B(S.basis.size());
    // -r - 1/2 - m = -e
    int hr = e_h - 1 - 2 * m;
    mpq_class c = binom_q(qfrac(-hr - 1, 2), m);
    c.canonicalize();
    for (size_t col = 0; col < S.basis.size(); ++col) {
        FockVec v = apply_mode(S, i, hr, FockVec{{static_cast<int>(col), {1, 0}}});
        if (!v.empty()) B.add(static_cast<int>(col), v, GaussRat(c));
    }
    return B.build();
}

// ---------------------------------------------------------------------------
// states of the untwisted space as sources of vertex operators

using StateVec = std::map<int, GaussRat>;

inline StateVec basis_state(const TruncSpace& U, const ModeMonomial& m) {
    ModeMonomial s = m;
    std::sort(s.begin(), s.end());
    int k = U.find(s);
    if (k < 0) throw domain_error("basis_state: monomial outside the truncation");
    return {{k, GaussRat(1)}};
}

// e_i(-a/2) e_j(-b/2) vac as a vector, with the sign from reordering
inline StateVec pair_state(const TruncSpace& U, int i, int ha, int j, int hb) {
    FockVec v = apply_mode(U, i, -ha, apply_mode(U, j, -hb, FockVec{{U.find({}), {1, 0}}}));
    StateVec s;
    for (const auto& [k, c] : v) s[k] = c.rat();
    return s;
}

inline mpq_class C_coeff(int m, int n) {
    mpq_class r = qfrac(m - n, 2 * (m + n + 1)) * binom_q(qfrac(-1, 2), m) * binom_q(qfrac(-1, 2), n);
    r.canonicalize();
    return r;
}

// Delta_z a as a polynomial in z^{-1}: power -> vector
inline std::map<int, StateVec> delta_z(const TruncSpace& U, const StateVec& a) {
    std::map<int, StateVec> out;
    for (int i = 0; i < U.fields(); ++i)
        for (int m = 0; 2 * m + 1 <= U.dmax_h; ++m)
            for (int n = 0; 2 * n + 1 <= U.dmax_h; ++n) {
                mpq_class c = C_coeff(m, n);
                if (c == 0) continue;
                GaussRat w(qfrac(-1, 4) * c);
                for (const auto& [k, x] : a) {
                    FockVec v = apply_mode(U, i, 2 * m + 1, apply_mode(U, i, 2 * n + 1, FockVec{{k, {1, 0}}}));
                    for (const auto& [r, y] : v) {
                        auto& slot = out[m + n + 1][r];
                        slot += y.rat() * x * w;
                    }
                }
            }
    for (auto it = out.begin(); it != out.end();) {
        for (auto jt = it->second.begin(); jt != it->second.end();)
            jt = jt->second.is_zero() ? it->second.erase(jt) : std::next(jt);
        it = it->second.empty() ? out.erase(it) : std::next(it);
    }
    return out;
}

// e^{Delta_z} a
inline std::map<int, StateVec> exp_delta_z(const TruncSpace& U, const StateVec& a) {
    std::map<int, StateVec> total{{0, a}}, term{{0, a}};
    for (int j = 1; !term.empty(); ++j) {
        std::map<int, StateVec> next;
        for (const auto& [p, v] : term)
            for (const auto& [q, w] : delta_z(U, v))
                for (const auto& [k, c] : w) next[p + q][k] += c * GaussRat(qfrac(1, j));
        term.clear();
        for (auto& [p, v] : next) {
            StateVec clean;
            for (auto& [k, c] : v)
                if (!c.is_zero()) clean[k] = c;
            if (!clean.empty()) term[p] = clean;
        }
        for (const auto& [p, v] : term)
            for (const auto& [k, c] : v) total[p][k] += c;
    }
    return total;
}

// coefficient of z^{-e} in Ybar(a, z) on S for a state a of U of degree <= 2
inline SparseOp ybar_mode(const TruncSpace& S, const TruncSpace& U, const StateVec& a, int e_h) {
    SparseOp acc(S.basis.size());
    for (const auto& [k, c] : a) {
        if (c.is_zero()) continue;
        const auto& m = U.basis[k];
        SparseOp piece;
        if (m.empty()) {
            if (e_h != 0) continue;
            piece = SparseOp::identity(S.basis.size());
        } else if (m.size() == 1) {
            piece = linear_mode(S, m[0].field, (m[0].h - 1) / 2, e_h);
        } else if (m.size() == 2) {
            // stored as x_{s0} x_{s1} vac
            piece = quad_mode(S, m[0].field, (m[0].h - 1) / 2, m[1].field, (m[1].h - 1) / 2, e_h);
        } else {
            throw domain_error("vertex operators are implemented for states with at most two modes");
        }
        if (!c.im.get_den().fits_slong_p()) throw std::overflow_error("ybar_mode: coefficient");
        // c = (x + i y) / d
        mpz_class d = c.re.get_den() * c.im.get_den() / gcd(c.re.get_den(), c.im.get_den());
        mpq_class x = c.re * d, y = c.im * d;
        GI z{x.get_num().get_si(), y.get_num().get_si()};
        SparseOp t = piece.scaled(z);
        t = t.scaled(1, d.get_si());
        acc = acc + t;
    }
    return acc;
}

// a_(n): coefficient of z^{-n-1} in Y(a, z), n in half units; twisted targets use e^{Delta_z}
inline SparseOp vertex_mode(const TruncSpace& S, const TruncSpace& U, const StateVec& a, int n_h) {
    int e_h = n_h + 2;
    if (S.sector == Sector::untwisted) return ybar_mode(S, U, a, e_h);
    SparseOp acc(S.basis.size());
    for (const auto& [p, v] : exp_delta_z(U, a)) acc = acc + ybar_mode(S, U, v, e_h - 2 * p);
    return acc;
}

inline StateVec omega_state(const TruncSpace& U) {
    StateVec w;
    for (int i = 0; i < U.fields(); ++i)
        for (const auto& [k, c] : pair_state(U, i, 1, i, 3)) w[k] += c * GaussRat(qfrac(1, 4));
    return w;
}

// (1/2) sum_p e_p(-1/2) e_p'(-1/2) vac
inline StateVec current_state(const TruncSpace& U) {
    StateVec w;
    for (int p = 0; p < U.N; ++p)
        for (const auto& [k, c] : pair_state(U, 2 * p, 1, 2 * p + 1, 1)) w[k] += c * GaussRat(qfrac(1, 2));
    return w;
}

struct FockOps {
    TruncSpace S;
    std::map<int, SparseOp> L, J;
};

inline FockOps build_ops(int N, const mpq_class& Dmax, Sector sector, int range) {
    FockOps F;
    F.S = build_space(N, Dmax, sector);
    TruncSpace U = sector == Sector::untwisted ? F.S : build_space(N, std::max(Dmax, mpq_class(2)), Sector::untwisted);
    StateVec w = omega_state(U), j = current_state(U);
    for (int n = -range; n <= range; ++n) {
        F.L[n] = vertex_mode(F.S, U, w, 2 * (n + 1));
        F.J[n] = vertex_mode(F.S, U, j, 2 * n);
    }
    return F;
}

// ---------------------------------------------------------------------------
// checks

inline Report check_relations(const FockOps& F, int range) {
    Report rep;
    const auto& S = F.S;
    rep.module = std::string(S.sector == Sector::untwisted ? "untwisted" : "twisted");
    const long long N = S.N;
    auto cols = S.columns_up_to(qfrac(S.dmax_h, 2) + S.offset() - 2);
    auto Id = SparseOp::identity(S.basis.size());
    auto zero = SparseOp(S.basis.size());
    size_t worst_ll = 0, worst_lj = 0, worst_jj = 0;
    std::string where_ll, where_lj, where_jj;
    for (int m = -range; m <= range; ++m)
        for (int n = -range; n <= range; ++n) {
            const SparseOp& Lmn = F.L.count(m + n) ? F.L.at(m + n) : zero;
            const SparseOp& Jmn = F.J.count(m + n) ? F.J.at(m + n) : zero;
            // [L(m), L(n)] = (m - n) L(m+n) + (m^3 - m)/12 delta N
            SparseOp rhs = Lmn.scaled(m - n);
            if (m + n == 0) rhs = rhs + Id.scaled((static_cast<long long>(m) * m * m - m) * N, 12);
            size_t r = residual(commutator(F.L.at(m), F.L.at(n)), rhs, cols);
            if (r > worst_ll) worst_ll = r, where_ll = "m=" + std::to_string(m) + " n=" + std::to_string(n);
            // [L(m), J(n)] = -n J(m+n)
            r = residual(commutator(F.L.at(m), F.J.at(n)), Jmn.scaled(-n), cols);
            if (r > worst_lj) worst_lj = r, where_lj = "m=" + std::to_string(m) + " n=" + std::to_string(n);
            // [J(m), J(n)] = -m delta N
            SparseOp jj = m + n == 0 ? Id.scaled(-m * N) : zero;
            r = residual(commutator(F.J.at(m), F.J.at(n)), jj, cols);
            if (r > worst_jj) worst_jj = r, where_jj = "m=" + std::to_string(m) + " n=" + std::to_string(n);
        }
    auto describe = [&](size_t r, const std::string& w) {
        return "residual nonzero entries " + std::to_string(r) + (w.empty() ? "" : " at " + w) + " over " +
               std::to_string(cols.size()) + " states";
    };
    rep.add("[L(m),L(n)] with central value N", worst_ll == 0, describe(worst_ll, where_ll));
    rep.add("[L(m),J(n)] = -n J(m+n)", worst_lj == 0, describe(worst_lj, where_lj));
    rep.add("[J(m),J(n)] = -m N delta", worst_jj == 0, describe(worst_jj, where_jj));
    return rep;
}

// Product over k of (A - k) vanishes on the degree block: A is diagonalizable with integer eigenvalues in [-K, K]
inline bool integer_spectrum(const SparseOp& A, const std::vector<int>& cols, int K) {
    SparseOp cur(A.dim());
    for (int j : cols) cur.cols[j] = {{j, {1, 0}}};
    for (int k = -K; k <= K && cur.nnz(); ++k) cur = A * cur - cur.scaled(k);
    return cur.nnz() == 0;
}

inline Report check_prop_twisted(int N) {
    Report rep;
    rep.module = "twisted bottom";
    TruncSpace T = build_space(N, qfrac(N, 8) + 1, Sector::twisted);
    TruncSpace U = build_space(N, 2, Sector::untwisted);
    auto bottom = T.columns_up_to(T.offset());
    rep.add("bottom level has dimension 2^N", bottom.size() == (1u << N), std::to_string(bottom.size()));
    SparseOp L0 = vertex_mode(T, U, omega_state(U), 2);
    bool eig = true;
    for (int j : bottom) {
        const auto& c = L0.cols[j];
        eig = eig && c.size() == 1 && c[0].first == j &&
              qfrac(c[0].second.re, L0.den) == qfrac(N, 8) && c[0].second.im == 0;
    }
    rep.add("L(0) acts on the bottom as N/8", eig, "N/8 = " + qfrac(N, 8).get_str());
    // Prop 3.2 cases through Delta_z
    StateVec vac{{U.find({}), GaussRat(1)}};
    rep.add("Delta_z vac = 0", delta_z(U, vac).empty());
    bool lin = true;
    for (int i = 0; i < U.fields(); ++i) lin = lin && delta_z(U, basis_state(U, {{i, 1}})).empty();
    rep.add("Delta_z vanishes on degree 1/2", lin);
    bool deg2 = true;
    if (U.fields() >= 4) {
        ModeMonomial four{{0, 1}, {1, 1}, {2, 1}, {3, 1}};
        deg2 = deg2 && delta_z(U, basis_state(U, four)).empty();
    }
    for (int i = 0; i < U.fields(); ++i)
        for (int j = 0; j < U.fields(); ++j)
            if (i != j) deg2 = deg2 && delta_z(U, pair_state(U, i, 3, j, 1)).empty();
    rep.add("Delta_z vanishes on e_I(-1/2) and e_i(-3/2) e_j(-1/2), i != j", deg2);
    bool quarter = true;
    for (int i = 0; i < U.fields(); ++i) {
        auto d = delta_z(U, pair_state(U, i, 1, i, 3));
        quarter = quarter && d.size() == 1 && d.count(2) && d[2].size() == 1 &&
                  d[2].begin()->first == U.find({}) && d[2].begin()->second == GaussRat(qfrac(1, 4));
        auto d2 = delta_z(U, d.count(2) ? d[2] : StateVec{});
        quarter = quarter && d2.empty();
    }
    rep.add("Delta_z e_i(-1/2) e_i(-3/2) vac = z^-2 / 4 and Delta_z^2 = 0", quarter);
    rep.add("C_00 = 0 and C_10 = -C_01", C_coeff(0, 0) == 0 && C_coeff(1, 0) == -C_coeff(0, 1),
            "C_01 = " + C_coeff(0, 1).get_str());
    return rep;
}

inline Report check_virasoro_u1(int N, const mpq_class& Dmax) {
    Report rep;
    rep.module = "fock N=" + std::to_string(N) + " Dmax=" + Dmax.get_str();
    const int range = 2;
    for (Sector sec : {Sector::untwisted, Sector::twisted}) {
        FockOps F = build_ops(N, Dmax, sec, 2 * range);
        const auto& S = F.S;
        auto dims = graded_dims(S);
        auto want = expected_graded_dims(N, S.dmax_h, sec);
        rep.add(std::string(sec == Sector::untwisted ? "untwisted" : "twisted") + " graded dimensions", dims == want,
                std::to_string(S.basis.size()) + " states");
        // L(0) is the degree operator
        bool grading = true;
        const SparseOp& L0 = F.L.at(0);
        for (size_t j = 0; j < S.basis.size(); ++j) {
            const auto& c = L0.cols[j];
            if (S.degree(static_cast<int>(j)) == 0) {
                grading = grading && c.empty();
                continue;
            }
            grading = grading && c.size() == 1 && c[0].first == static_cast<int>(j) && c[0].second.im == 0 &&
                      qfrac(c[0].second.re, L0.den) == S.degree(static_cast<int>(j));
        }
        rep.add(std::string(sec == Sector::untwisted ? "untwisted" : "twisted") + " L(0) is the grading", grading);
        Report r = check_relations(F, range);
        rep.merge(r);
        // i J(0) has spectrum in Z (untwisted) or N/2 + Z (twisted) on each degree block
        bool integral = true;
        SparseOp iJ0 = F.J.at(0).scaled(GI{0, 1});
        if (sec == Sector::twisted) iJ0 = iJ0 - SparseOp::identity(S.basis.size()).scaled(N, 2);
        for (int h = 0; h <= S.dmax_h; ++h) {
            std::vector<int> block;
            for (size_t j = 0; j < S.basis.size(); ++j)
                if (S.degree_h[j] == h) block.push_back(static_cast<int>(j));
            if (block.empty()) continue;
            int K = h + N;
            integral = integral && integer_spectrum(iJ0, block, K);
        }
        rep.add(sec == Sector::untwisted ? "untwisted i J(0) has integer eigenvalues"
                                         : "twisted i J(0) has eigenvalues in N/2 + Z",
                integral);
        if (sec == Sector::untwisted) {
            bool vac = true;
            int v0 = S.find({});
            vac = F.L.at(-1).cols[v0].empty();
            rep.add("L(-1) vac = 0", vac);
        }
    }
    rep.merge(check_prop_twisted(N));
    return rep;
}

inline StateVec apply_op(const SparseOp& A, const StateVec& v) {
    StateVec out;
    for (const auto& [k, c] : v)
        for (const auto& [r, x] : A.cols[k]) out[r] += x.rat() * c * GaussRat(qfrac(1, A.den));
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

// a_(n) b - sum_k (-1)^{n+k+1} L(-1)^k b_(n+k) a / k!  on the untwisted space, n integer
inline StateVec skew_symmetry_defect(const TruncSpace& U, const StateVec& a, const StateVec& b, int n) {
    if (U.sector != Sector::untwisted) throw domain_error("skew_symmetry_defect: untwisted space only");
    SparseOp Lm1 = vertex_mode(U, U, omega_state(U), 0);
    StateVec diff = apply_op(vertex_mode(U, U, a, 2 * n), b);
    mpz_class fact = 1;
    for (int k = 0;; ++k) {
        if (k > 0) fact *= k;
        StateVec t = apply_op(vertex_mode(U, U, b, 2 * (n + k)), a);
        if (t.empty() && n + k > 2 * U.dmax_h) break;
        for (int r = 0; r < k; ++r) t = apply_op(Lm1, t);
        mpq_class w((n + k + 1) % 2 == 0 ? 1 : -1);
        w /= fact;
        for (const auto& [r, c] : t) diff[r] -= c * GaussRat(w);
    }
    for (auto it = diff.begin(); it != diff.end();) it = it->second.is_zero() ? diff.erase(it) : std::next(it);
    return diff;
}

// ---------------------------------------------------------------------------
// invariant form on the untwisted space: <vac, vac> = 1, e(r)^T = -e(-r)

inline SparseOp gram(const TruncSpace& U) {
    const size_t n = U.basis.size();
    OpBuilder B(n);
    // <x v', w> = <v', -x^T w> = <v', e_i(r) w> for x = e_i(-r)
    for (size_t a = 0; a < n; ++a) {
        const auto& m = U.basis[a];
        for (size_t b = 0; b < n; ++b) {
            if (U.degree_h[a] != U.degree_h[b]) continue;
            FockVec w{{static_cast<int>(b), {1, 0}}};
            for (const auto& s : m) w = apply_mode(U, s.field, s.h, w);
            // after stripping x_1 .. x_k in order the pairing with vac remains
            auto it = w.find(U.find({}));
            if (it != w.end()) B.add(static_cast<int>(b), FockVec{{static_cast<int>(a), it->second}}, GaussRat(1));
        }
    }
    return B.build();
}

// <A v, w> = <v, B w> for all basis states v, w; G holds <x, y> in column y, row x
inline bool adjoint_pair(const SparseOp& G, const SparseOp& A, const SparseOp& B) {
    // <A v, w> = sum_x A(x, v) G(x, w), <v, B w> = (G B)(v, w)
    std::map<std::pair<int, int>, GaussRat> lhs, rhs;
    for (size_t v = 0; v < A.dim(); ++v)
        for (const auto& [x, a] : A.cols[v])
            for (size_t w = 0; w < G.dim(); ++w)
                for (const auto& [r, g] : G.cols[w])
                    if (r == x) lhs[{static_cast<int>(v), static_cast<int>(w)}] += (a * g).rat() * GaussRat(qfrac(1, A.den * G.den));
    SparseOp GB = G * B;
    for (size_t w = 0; w < GB.dim(); ++w)
        for (const auto& [v, x] : GB.cols[w]) rhs[{v, static_cast<int>(w)}] += x.rat() * GaussRat(qfrac(1, GB.den));
    auto clean = [](std::map<std::pair<int, int>, GaussRat>& m) {
        for (auto it = m.begin(); it != m.end();) it = it->second.is_zero() ? m.erase(it) : std::next(it);
    };
    clean(lhs);
    clean(rhs);
    return lhs == rhs;
}

inline bool symmetric(const SparseOp& G) {
    std::map<std::pair<int, int>, GI> e;
    for (size_t c = 0; c < G.dim(); ++c)
        for (const auto& [r, v] : G.cols[c]) e[{r, static_cast<int>(c)}] = v;
    for (const auto& [k, v] : e) {
        auto it = e.find({k.second, k.first});
        if (it == e.end() || !(it->second == v)) return false;
    }
    return true;
}

} // namespace rudvalis
