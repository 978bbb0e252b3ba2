#pragma once

#include "codes.hpp"
#include "exact.hpp"
#include "permgroup.hpp"
#include "resources.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace rudvalis {

// Monomial matrix on C^Delta: a_j -> i^scal[j] a_{perm[j]}.
struct MonoMat {
    std::array<std::uint8_t, kDelta> perm{};
    std::array<std::uint8_t, kDelta> scal{}; // exponent of i, mod 4

    static MonoMat identity() {
        MonoMat g;
        for (int j = 0; j < kDelta; ++j) g.perm[j] = static_cast<std::uint8_t>(j);
        return g;
    }
    static MonoMat scalar(int k) {
        MonoMat g = identity();
        g.scal.fill(static_cast<std::uint8_t>(((k % 4) + 4) % 4));
        return g;
    }
    static MonoMat sign_change(Word D) {
        MonoMat g = identity();
        for (int j = 0; j < kDelta; ++j)
            if (D >> j & 1) g.scal[j] = 2;
        return g;
    }
    static MonoMat from_perm(const Perm& p) {
        MonoMat g = identity();
        for (int j = 0; j < kDelta; ++j) g.perm[j] = static_cast<std::uint8_t>(p.at(j));
        return g;
    }

    friend MonoMat operator*(const MonoMat& g, const MonoMat& h) {
        MonoMat r;
        for (int j = 0; j < kDelta; ++j) {
            r.perm[j] = g.perm[h.perm[j]];
            r.scal[j] = static_cast<std::uint8_t>((h.scal[j] + g.scal[h.perm[j]]) & 3);
        }
        return r;
    }
    friend bool operator==(const MonoMat& a, const MonoMat& b) { return a.perm == b.perm && a.scal == b.scal; }
    friend bool operator<(const MonoMat& a, const MonoMat& b) {
        return std::tie(a.perm, a.scal) < std::tie(b.perm, b.scal);
    }

    MonoMat inverse() const {
        MonoMat r;
        for (int j = 0; j < kDelta; ++j) {
            r.perm[perm[j]] = static_cast<std::uint8_t>(j);
            r.scal[perm[j]] = static_cast<std::uint8_t>((4 - scal[j]) & 3);
        }
        return r;
    }

    bool is_identity() const { return *this == identity(); }

    int perm_sign() const {
        std::array<bool, kDelta> seen{};
        int s = 1;
        for (int j = 0; j < kDelta; ++j) {
            if (seen[j]) continue;
            int len = 0;
            for (int k = j; !seen[k]; k = perm[k]) seen[k] = true, ++len;
            if (len % 2 == 0) s = -s;
        }
        return s;
    }

    // det = sign(perm) * i^(sum scal)
    GaussRat det() const {
        int e = 0;
        for (auto s : scal) e += s;
        GaussRat d = GaussRat::unit(e);
        return perm_sign() < 0 ? -d : d;
    }

    GaussRat trace() const {
        GaussRat t;
        for (int j = 0; j < kDelta; ++j)
            if (perm[j] == j) t += GaussRat::unit(scal[j]);
        return t;
    }

    long order() const {
        MonoMat p = *this;
        long n = 1;
        while (!p.is_identity()) {
            p = p * *this;
            ++n;
        }
        return n;
    }

    MonoMat pow(long e) const {
        MonoMat out = identity(), b = *this;
        while (e > 0) {
            if (e & 1) out = out * b;
            b = b * b;
            e >>= 1;
        }
        return out;
    }

    Perm perm_part() const { return Perm(perm.begin(), perm.end()); }

    // faithful permutation action on the 112 vectors i^s a_j, point 4j + s
    Perm action112() const {
        Perm p(4 * kDelta);
        for (int j = 0; j < kDelta; ++j)
            for (int s = 0; s < 4; ++s) p[4 * j + s] = 4 * perm[j] + ((s + scal[j]) & 3);
        return p;
    }

    Word apply(Word I) const {
        Word J = 0;
        for (int j = 0; j < kDelta; ++j)
            if (I >> j & 1) J |= Word(1) << perm[j];
        return J;
    }

    GMatrix dense() const {
        GMatrix m(kDelta, GRow(kDelta));
        for (int j = 0; j < kDelta; ++j) m[perm[j]][j] = GaussRat::unit(scal[j]);
        return m;
    }
};

// g (a_{i1} ^ ... ^ a_{ik}) = i^e a_J with sign; returns J and the exponent e mod 4
// (a sign is folded into e as +2).
inline std::pair<Word, int> spinor_coeff_exp(const MonoMat& g, Word I) {
    int e = 0;
    int inv = 0;
    Word J = 0;
    for (int j = 0; j < kDelta; ++j) {
        if (!(I >> j & 1)) continue;
        e += g.scal[j];
        int t = g.perm[j];
        // images already placed that exceed t form inversions
        inv += std::popcount(J >> t);
        J |= Word(1) << t;
    }
    if (inv & 1) e += 2;
    return {J, e & 3};
}

inline std::pair<Word, GaussRat> spinor_coeff(const MonoMat& g, Word I) {
    auto [J, e] = spinor_coeff_exp(g, I);
    return {J, GaussRat::unit(e)};
}

inline MonoMat mono_from_cycles(const nlohmann::json& cycles) {
    MonoMat g = MonoMat::identity();
    std::array<bool, kDelta> touched{};
    for (const auto& cyc : cycles) {
        std::vector<int> pts;
        for (const auto& l : cyc) pts.push_back(label_index(l));
        for (size_t k = 0; k < pts.size(); ++k) {
            if (touched[pts[k]]) throw data_error("cycle notation repeats a point: " + cycles.dump());
            touched[pts[k]] = true;
            g.perm[pts[k]] = static_cast<std::uint8_t>(pts[(k + 1) % pts.size()]);
        }
    }
    return g;
}

inline int unit_exponent(const std::string& s) {
    GaussRat v = GaussRat::parse(s);
    for (int k = 0; k < 4; ++k)
        if (v == GaussRat::unit(k)) return k;
    throw data_error("not a unit of Z[i]: " + s);
}

// How the tabulated scalar grid of m attaches to the permutation.
enum class MScalarConvention {
    target, // a_j -> grid(perm j) a_{perm j}
    source  // a_j -> grid(j) a_{perm j}
};

inline MonoMat load_m(MScalarConvention conv = MScalarConvention::target) {
    auto j = load_json("m_matrix.json");
    MonoMat g = mono_from_cycles(j.at("permutation"));
    std::array<int, kDelta> grid{};
    std::array<bool, kDelta> have{};
    for (auto it = j.at("scalars").begin(); it != j.at("scalars").end(); ++it) {
        int idx = label_index(nlohmann::json(it.key()));
        grid[idx] = unit_exponent(it.value().get<std::string>());
        have[idx] = true;
    }
    for (bool h : have)
        if (!h) throw data_error("m_matrix.json: scalar grid incomplete");
    for (int k = 0; k < kDelta; ++k)
        g.scal[k] = static_cast<std::uint8_t>(conv == MScalarConvention::source ? grid[k] : grid[g.perm[k]]);
    return g;
}

struct MonomialGenerators {
    std::vector<MonoMat> sign_changes; // six dozens then -Id
    std::map<std::string, MonoMat> perms; // Q, N0, N356, F03, V
    MonoMat m;

    std::vector<MonoMat> all() const {
        std::vector<MonoMat> out = sign_changes;
        for (const auto& name : perm_names()) out.push_back(perms.at(name));
        out.push_back(m);
        return out;
    }
    // generators acting nontrivially on Delta, in a fixed order
    std::vector<std::pair<std::string, MonoMat>> moving() const {
        std::vector<std::pair<std::string, MonoMat>> out;
        for (const auto& name : perm_names()) out.push_back({name, perms.at(name)});
        out.push_back({"m", m});
        return out;
    }
    static const std::vector<std::string>& perm_names() {
        static const std::vector<std::string> names = {"Q", "N0", "N356", "F03", "V"};
        return names;
    }
};

struct GeneratorOptions {
    MScalarConvention m = MScalarConvention::target;
    // N356 as printed is a bare permutation; with it <A, P, m> contains i*Id.
    // The scalar i on N356 gives the group of order 2^7 |G2(2)| that fixes rho.
    bool n356_scalar_i = true;
};

inline MonomialGenerators generators(GeneratorOptions opt = {}) {
    MonomialGenerators G;
    auto dz = dozen_words();
    for (size_t k = 0; k + 1 < dz.size(); ++k) G.sign_changes.push_back(MonoMat::sign_change(dz[k]));
    G.sign_changes.push_back(MonoMat::scalar(2));
    auto j = load_json("perm_generators.json").at("cycles");
    for (const auto& name : MonomialGenerators::perm_names()) G.perms[name] = mono_from_cycles(j.at(name));
    if (opt.n356_scalar_i) G.perms["N356"] = MonoMat::scalar(1) * G.perms["N356"];
    G.m = load_m(opt.m);
    return G;
}

inline mpz_class group_order(const std::vector<MonoMat>& gens) {
    std::vector<Perm> ps;
    for (const auto& g : gens) ps.push_back(g.action112());
    return StabChain(4 * kDelta, ps).order();
}

inline mpz_class quotient_order(const std::vector<MonoMat>& gens) {
    std::vector<Perm> ps;
    for (const auto& g : gens) ps.push_back(g.perm_part());
    return StabChain(kDelta, ps).order();
}

// ---------------------------------------------------------------------------
// Orbits of the permutation quotient on weight-14 words with sign functions.

struct SignedOrbit {
    Word rep = 0;
    std::vector<Word> members;       // sorted
    std::vector<std::int8_t> gamma;  // parallel to members, gamma(rep) = +1
    bool relevant = true;
    std::string witness;             // for irrelevant orbits: inconsistent edge

    long index_of(Word w) const {
        auto it = std::lower_bound(members.begin(), members.end(), w);
        if (it == members.end() || *it != w) return -1;
        return it - members.begin();
    }
};

struct OrbitData {
    std::vector<Word> words;          // all weight-14 words of the dual code, sorted
    std::vector<SignedOrbit> orbits;  // ordered by representative
    std::vector<int> orbit_of;        // parallel to words
    std::vector<MonoMat> tree_gens;   // generators used for the expansion

    long word_index(Word w) const {
        auto it = std::lower_bound(words.begin(), words.end(), w);
        if (it == words.end() || *it != w) return -1;
        return it - words.begin();
    }
    int orbit_containing(Word w) const {
        long k = word_index(w);
        return k < 0 ? -1 : orbit_of[k];
    }
};

inline OrbitData orbits14(const Code& dual_code, const std::vector<MonoMat>& gens) {
    OrbitData out;
    out.words = dual_code.words_of_weight(14);
    out.tree_gens = gens;
    const size_t n = out.words.size();
    out.orbit_of.assign(n, -1);
    std::vector<std::int8_t> gam(n, 0);
    std::vector<long> queue;
    for (size_t start = 0; start < n; ++start) {
        if (out.orbit_of[start] >= 0) continue;
        int oid = static_cast<int>(out.orbits.size());
        SignedOrbit orb;
        orb.rep = out.words[start]; // words are sorted, so this is the least member
        queue.clear();
        queue.push_back(static_cast<long>(start));
        out.orbit_of[start] = oid;
        gam[start] = 1;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            long a = queue[qi];
            Word I = out.words[a];
            for (size_t gi = 0; gi < out.tree_gens.size(); ++gi) {
                auto [J, e] = spinor_coeff_exp(out.tree_gens[gi], I);
                if (e & 1) throw domain_error("orbits14: spinor coefficient is not real");
                std::int8_t c = e == 0 ? 1 : -1;
                long b = out.word_index(J);
                if (b < 0) throw domain_error("orbits14: generator leaves the word set");
                std::int8_t want = static_cast<std::int8_t>(c * gam[a]);
                if (out.orbit_of[b] < 0) {
                    out.orbit_of[b] = oid;
                    gam[b] = want;
                    queue.push_back(b);
                } else if (gam[b] != want && orb.relevant) {
                    orb.relevant = false;
                    orb.witness = "generator " + std::to_string(gi) + " maps " + word_str(I) + " to " + word_str(J) +
                                  " with inconsistent sign";
                }
            }
        }
        std::sort(queue.begin(), queue.end());
        for (long a : queue) {
            orb.members.push_back(out.words[a]);
            orb.gamma.push_back(gam[a]);
        }
        out.orbits.push_back(std::move(orb));
    }
    return out;
}

// Relevance via explicit transversal elements: the stabiliser of the
// representative must fix its spinor line.
struct StabilizerCheck {
    bool trivial = true;
    std::optional<MonoMat> witness;
};

inline StabilizerCheck stabilizer_character(const SignedOrbit& orb, const std::vector<MonoMat>& gens) {
    StabilizerCheck res;
    std::vector<MonoMat> u(orb.members.size());
    std::vector<bool> have(orb.members.size(), false);
    long r = orb.index_of(orb.rep);
    u[r] = MonoMat::identity();
    have[r] = true;
    std::vector<long> queue = {r};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        long a = queue[qi];
        for (const auto& g : gens) {
            long b = orb.index_of(g.apply(orb.members[a]));
            if (b < 0) throw domain_error("stabilizer_character: orbit not closed");
            if (have[b]) continue;
            u[b] = g * u[a];
            have[b] = true;
            queue.push_back(b);
        }
    }
    for (size_t a = 0; a < orb.members.size(); ++a)
        for (const auto& g : gens) {
            long b = orb.index_of(g.apply(orb.members[a]));
            MonoMat s = u[b].inverse() * g * u[a];
            auto [J, e] = spinor_coeff_exp(s, orb.rep);
            if (J != orb.rep) throw domain_error("stabilizer_character: Schreier element moves the representative");
            if (e != 0) {
                res.trivial = false;
                if (!res.witness) res.witness = s;
            }
        }
    return res;
}

} // namespace rudvalis
