#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rudvalis {

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact element of Q(i).
inline mpq_class qfrac(long n, long d) {
    mpq_class x(n, d);
    x.canonicalize();
    return x;
}

struct GaussRat {
    mpq_class re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(long r) : re(r), im(0) {}
    GaussRat(mpq_class r) : re(std::move(r)), im(0) {}
    GaussRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat I() { return {0, 1}; }

    // i^k for any integer k
    static GaussRat unit(int k) {
        switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
        }
    }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool is_gauss_int() const { return re.get_den() == 1 && im.get_den() == 1; }

    GaussRat conj() const { return {re, -im}; }
    mpq_class abs2() const { return re * re + im * im; }

    GaussRat operator-() const { return {-re, -im}; }
    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o) {
        mpq_class r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) {
        if (o.is_zero()) throw domain_error("GaussRat: division by zero");
        mpq_class n = o.abs2();
        *this *= o.conj();
        re /= n;
        im /= n;
        return *this;
    }
    GaussRat inv() const { GaussRat one(1); one /= *this; return one; }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    // accepts "3", "-1/2", "i", "-i", "4-3i", "2i", "1/2+i/2" is not supported
    static GaussRat parse(const std::string& s0) {
        std::string s;
        for (char c : s0)
            if (c != ' ') s += c;
        if (s.empty()) throw domain_error("GaussRat: empty literal");
        GaussRat out;
        size_t pos = 0;
        while (pos < s.size()) {
            size_t end = pos + 1;
            while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
            std::string tok = s.substr(pos, end - pos);
            pos = end;
            bool imag = !tok.empty() && tok.back() == 'i';
            if (imag) tok.pop_back();
            if (tok.empty() || tok == "+") tok = "1";
            else if (tok == "-") tok = "-1";
            if (tok[0] == '+') tok.erase(0, 1);
            mpq_class v;
            if (v.set_str(tok, 10) != 0) throw domain_error("GaussRat: bad literal '" + s0 + "'");
            v.canonicalize();
            (imag ? out.im : out.re) += v;
        }
        return out;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        if (sgn(re) != 0) out = re.get_str();
        if (sgn(im) != 0) {
            if (!out.empty() && sgn(im) > 0) out += "+";
            if (im == 1) out += "i";
            else if (im == -1) out += "-i";
            else out += im.get_str() + "i";
        }
        return out;
    }
    friend std::ostream& operator<<(std::ostream& os, const GaussRat& x) { return os << x.str(); }
};

inline GaussRat conj(const GaussRat& x) { return x.conj(); }

// Gaussian integer with mpz parts; used by inner loops that never divide.
struct GaussInt {
    mpz_class re, im;

    GaussInt() : re(0), im(0) {}
    GaussInt(long r) : re(r), im(0) {}
    GaussInt(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussInt unit(int k) {
        switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
        }
    }
    static GaussInt from(const GaussRat& x) {
        if (!x.is_gauss_int()) throw domain_error("GaussInt: non-integral value " + x.str());
        return {x.re.get_num(), x.im.get_num()};
    }
    GaussRat rat() const { return {mpq_class(re), mpq_class(im)}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    GaussInt conj() const { return {re, -im}; }
    GaussInt operator-() const { return {-re, -im}; }
    GaussInt& operator+=(const GaussInt& o) { re += o.re; im += o.im; return *this; }
    GaussInt& operator-=(const GaussInt& o) { re -= o.re; im -= o.im; return *this; }
    GaussInt& operator*=(const GaussInt& o) {
        mpz_class r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    // multiply by i^k without a general product
    GaussInt& mul_unit(int k) {
        switch (((k % 4) + 4) % 4) {
        case 1: std::swap(re, im); re = -re; break;
        case 2: re = -re; im = -im; break;
        case 3: std::swap(re, im); im = -im; break;
        default: break;
        }
        return *this;
    }
    friend GaussInt operator+(GaussInt a, const GaussInt& b) { return a += b; }
    friend GaussInt operator-(GaussInt a, const GaussInt& b) { return a -= b; }
    friend GaussInt operator*(GaussInt a, const GaussInt& b) { return a *= b; }
    friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }
    std::string str() const { return rat().str(); }
};

// ---------------------------------------------------------------------------
// Univariate polynomials over Q(i), coefficient k is the x^k term.

struct GPoly {
    std::vector<GaussRat> c;

    GPoly() = default;
    explicit GPoly(std::vector<GaussRat> cs) : c(std::move(cs)) { trim(); }
    static GPoly constant(GaussRat a) { return GPoly({std::move(a)}); }
    static GPoly monomial(GaussRat a, size_t k) {
        std::vector<GaussRat> cs(k + 1);
        cs[k] = std::move(a);
        return GPoly(std::move(cs));
    }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    GaussRat coeff(size_t k) const { return k < c.size() ? c[k] : GaussRat(); }

    GPoly& operator+=(const GPoly& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size());
        for (size_t k = 0; k < o.c.size(); ++k) c[k] += o.c[k];
        trim();
        return *this;
    }
    GPoly& operator-=(const GPoly& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size());
        for (size_t k = 0; k < o.c.size(); ++k) c[k] -= o.c[k];
        trim();
        return *this;
    }
    friend GPoly operator+(GPoly a, const GPoly& b) { return a += b; }
    friend GPoly operator-(GPoly a, const GPoly& b) { return a -= b; }
    friend GPoly operator*(const GPoly& a, const GPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GaussRat> out(a.c.size() + b.c.size() - 1);
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i].is_zero()) continue;
            for (size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
        }
        return GPoly(std::move(out));
    }
    friend bool operator==(const GPoly& a, const GPoly& b) { return a.c == b.c; }
    friend bool operator!=(const GPoly& a, const GPoly& b) { return !(a == b); }

    // (quotient, remainder)
    std::pair<GPoly, GPoly> divmod(const GPoly& d) const {
        if (d.is_zero()) throw domain_error("GPoly: division by zero polynomial");
        GPoly r = *this;
        if (r.degree() < d.degree()) return {GPoly(), r};
        std::vector<GaussRat> q(r.c.size() - d.c.size() + 1);
        GaussRat lead_inv = d.c.back().inv();
        for (long k = r.degree() - d.degree(); k >= 0; --k) {
            GaussRat t = r.c[k + d.degree()] * lead_inv;
            if (t.is_zero()) continue;
            for (size_t j = 0; j < d.c.size(); ++j) r.c[k + j] -= t * d.c[j];
            q[k] = t;
        }
        r.trim();
        return {GPoly(std::move(q)), r};
    }
    GPoly exact_div(const GPoly& d) const {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw domain_error("GPoly: quotient is not a polynomial");
        return q;
    }

    GaussRat eval(const GaussRat& x) const {
        GaussRat acc;
        for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
        return acc;
    }

    GPoly pow(unsigned e) const {
        GPoly out = constant(1), b = *this;
        while (e) {
            if (e & 1) out = out * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return out;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (size_t k = 0; k < c.size(); ++k) {
            if (c[k].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c[k].str() + ")";
            if (k) out += "x^" + std::to_string(k);
        }
        return out;
    }
};

// normalise so that p(0) = 1
inline GPoly poly_charpoly_form(const GPoly& p) {
    if (p.is_zero() || p.c[0].is_zero())
        throw domain_error("poly_charpoly_form: zero constant term");
    GaussRat s = p.c[0].inv();
    GPoly out = p;
    for (auto& a : out.c) a *= s;
    return out;
}

// ---------------------------------------------------------------------------
// Integer polynomials and cyclotomic integers.

namespace detail {

using ZPoly = std::vector<mpz_class>;

inline void ztrim(ZPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// exact division by a monic polynomial
inline ZPoly zdiv_monic(ZPoly a, const ZPoly& d) {
    ztrim(a);
    if (a.size() < d.size()) return {};
    ZPoly q(a.size() - d.size() + 1);
    for (size_t k = q.size(); k-- > 0;) {
        mpz_class t = a[k + d.size() - 1];
        q[k] = t;
        if (sgn(t) == 0) continue;
        for (size_t j = 0; j < d.size(); ++j) a[k + j] -= t * d[j];
    }
    ztrim(a);
    if (!a.empty()) throw domain_error("cyclotomic: inexact division");
    return q;
}

inline long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

} // namespace detail

// n-th cyclotomic polynomial, via x^n - 1 divided by the lower ones
inline const detail::ZPoly& cyclotomic_poly(long n) {
    static thread_local std::vector<detail::ZPoly> cache;
    if (n <= 0) throw domain_error("cyclotomic_poly: n must be positive");
    if (static_cast<long>(cache.size()) <= n) cache.resize(n + 1);
    if (!cache[n].empty()) return cache[n];
    detail::ZPoly p(n + 1);
    p[0] = -1;
    p[n] = 1;
    for (long d = 1; d < n; ++d)
        if (n % d == 0) p = detail::zdiv_monic(p, cyclotomic_poly(d));
    cache[n] = p;
    return cache[n];
}

// element of Z[zeta_n], reduced mod Phi_n
struct CycInt {
    long n = 1;
    std::vector<mpz_class> coords;

    CycInt() : n(1), coords(1) {}
    explicit CycInt(long n_) : n(n_), coords(detail::euler_phi(n_)) {}

    static CycInt integer(long n, const mpz_class& a) {
        CycInt x(n);
        x.coords[0] = a;
        return x;
    }
    static CycInt zeta(long n, long k) {
        k = ((k % n) + n) % n;
        detail::ZPoly p(k + 1);
        p[k] = 1;
        return from_poly(n, std::move(p));
    }
    // requires 4 | n
    static CycInt gauss(long n, const GaussInt& z) {
        if (n % 4) throw domain_error("CycInt: i needs 4 | n");
        CycInt x = zeta(n, n / 4);
        for (auto& c : x.coords) c *= z.im;
        x.coords[0] += z.re;
        return x;
    }
    static CycInt from_poly(long n, detail::ZPoly p) {
        const auto& phi = cyclotomic_poly(n);
        size_t d = phi.size() - 1;
        for (size_t k = p.size(); k-- > d;) {
            mpz_class t = p[k];
            if (sgn(t) == 0) continue;
            for (size_t j = 0; j <= d; ++j) p[k - d + j] -= t * phi[j];
        }
        p.resize(d);
        CycInt x(n);
        x.coords = std::move(p);
        return x;
    }

    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](const mpz_class& c) { return sgn(c) == 0; });
    }
    bool is_rational_integer() const {
        return std::all_of(coords.begin() + 1, coords.end(), [](const mpz_class& c) { return sgn(c) == 0; });
    }

    CycInt& operator+=(const CycInt& o) {
        check(o);
        for (size_t k = 0; k < coords.size(); ++k) coords[k] += o.coords[k];
        return *this;
    }
    CycInt& operator-=(const CycInt& o) {
        check(o);
        for (size_t k = 0; k < coords.size(); ++k) coords[k] -= o.coords[k];
        return *this;
    }
    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        a.check(b);
        detail::ZPoly p(a.coords.size() + b.coords.size());
        for (size_t i = 0; i < a.coords.size(); ++i)
            for (size_t j = 0; j < b.coords.size(); ++j) p[i + j] += a.coords[i] * b.coords[j];
        return from_poly(a.n, std::move(p));
    }
    friend bool operator==(const CycInt& a, const CycInt& b) { return a.n == b.n && a.coords == b.coords; }

  private:
    void check(const CycInt& o) const {
        if (o.n != n) throw domain_error("CycInt: conductor mismatch");
    }
};

// Eigenvalue multiplicities of a finite-order matrix from the traces tr(g^r),
// r = 1..n (entry r-1 of tr). mu[j] counts eigenvalue exp(2 pi i j / n).
inline std::vector<long> cyc_eval(const std::vector<GaussRat>& tr, long n) {
    if (n <= 0 || static_cast<long>(tr.size()) != n)
        throw domain_error("cyc_eval: need exactly n traces");
    long L = std::lcm(n, 4L);
    long step = L / n;
    mpz_class den = 1;
    for (const auto& t : tr) {
        den = lcm(den, t.re.get_den());
        den = lcm(den, t.im.get_den());
    }
    std::vector<CycInt> scaled;
    scaled.reserve(n);
    for (const auto& t : tr) {
        GaussRat s = t * GaussRat(mpq_class(den));
        scaled.push_back(CycInt::gauss(L, GaussInt::from(s)));
    }
    std::vector<long> mu(n);
    mpz_class total = 0;
    for (long j = 0; j < n; ++j) {
        CycInt acc(L);
        for (long r = 1; r <= n; ++r) acc += scaled[r - 1] * CycInt::zeta(L, -step * j * r);
        if (!acc.is_rational_integer())
            throw domain_error("cyc_eval: multiplicity is not rational");
        mpz_class d = den * n;
        if (acc.coords[0] % d != 0) throw domain_error("cyc_eval: multiplicity is not integral");
        mpz_class m = acc.coords[0] / d;
        if (sgn(m) < 0) throw domain_error("cyc_eval: negative multiplicity");
        mu[j] = m.get_si();
        total += m;
    }
    // re-synthesis
    for (long r = 1; r <= n; ++r) {
        CycInt acc(L);
        for (long j = 0; j < n; ++j)
            if (mu[j]) acc += CycInt::integer(L, mpz_class(mu[j]) * den) * CycInt::zeta(L, step * j * r);
        if (!(acc == scaled[r - 1])) throw domain_error("cyc_eval: re-synthesis mismatch at r=" + std::to_string(r));
    }
    return mu;
}

// ---------------------------------------------------------------------------
// Dense linear algebra over Q(i).

using GRow = std::vector<GaussRat>;
using GMatrix = std::vector<GRow>;

inline GMatrix identity_matrix(size_t n) {
    GMatrix m(n, GRow(n));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline GMatrix matmul(const GMatrix& a, const GMatrix& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    GMatrix out(n, GRow(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (size_t j = 0; j < m; ++j)
                if (!b[t][j].is_zero()) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

inline GMatrix conj_transpose(const GMatrix& a) {
    size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
    GMatrix out(m, GRow(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) out[j][i] = a[i][j].conj();
    return out;
}

// in-place reduced row echelon form; returns pivot columns
inline std::vector<size_t> rref(GMatrix& a) {
    std::vector<size_t> piv;
    size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        GaussRat inv = a[r][c].inv();
        for (auto& x : a[r]) x *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            GaussRat f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    a.resize(r);
    return piv;
}

inline size_t rank(GMatrix a) { return rref(a).size(); }

inline GMatrix inverse(const GMatrix& a) {
    size_t n = a.size();
    GMatrix aug(n, GRow(2 * n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    auto piv = rref(aug);
    if (piv.size() != n || piv.back() != n - 1) throw domain_error("inverse: singular matrix");
    GMatrix out(n, GRow(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
    return out;
}

inline GaussRat determinant(GMatrix a) {
    size_t n = a.size();
    GaussRat det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return GaussRat();
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        GaussRat inv = a[c][c].inv();
        for (size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            GaussRat f = a[i][c] * inv;
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

inline GaussRat trace(const GMatrix& a) {
    GaussRat t;
    for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

} // namespace rudvalis
