#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rudvalis {

// Permutation of {0..n-1}; p[x] is the image of x. (g*h)(x) = g(h(x)).
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
    Perm p(n);
    for (int k = 0; k < n; ++k) p[k] = k;
    return p;
}
inline Perm perm_mul(const Perm& g, const Perm& h) {
    Perm r(h.size());
    for (size_t k = 0; k < h.size(); ++k) r[k] = g[h[k]];
    return r;
}
inline Perm perm_inv(const Perm& g) {
    Perm r(g.size());
    for (size_t k = 0; k < g.size(); ++k) r[g[k]] = static_cast<int>(k);
    return r;
}
inline bool perm_is_identity(const Perm& g) {
    for (size_t k = 0; k < g.size(); ++k)
        if (g[k] != static_cast<int>(k)) return false;
    return true;
}

// Deterministic Schreier-Sims. Every Schreier generator of every level is
// sifted, so the resulting chain is a base and strong generating set.
class StabChain {
  public:
    StabChain(int n, const std::vector<Perm>& gens) : n_(n) {
        std::vector<Perm> S;
        for (const auto& g : gens) {
            if (static_cast<int>(g.size()) != n_) throw std::invalid_argument("StabChain: degree mismatch");
            if (!perm_is_identity(g)) S.push_back(g);
        }
        if (S.empty()) return;
        // initial base: no generator fixes every base point
        for (const auto& g : S) {
            bool moved = false;
            for (const auto& L : levels_) moved = moved || g[L.point] != L.point;
            if (!moved) push_level(first_moved(g));
        }
        for (size_t l = 0; l < levels_.size(); ++l) {
            for (const auto& g : S) {
                bool fixes = true;
                for (size_t t = 0; t < l; ++t) fixes = fixes && g[levels_[t].point] == levels_[t].point;
                if (fixes) levels_[l].gens.push_back(g);
            }
            rebuild_orbit(levels_[l]);
        }
        long i = static_cast<long>(levels_.size()) - 1;
        while (i >= 0) {
            bool grew = false;
            Level& L = levels_[i];
            for (size_t k = 0; !grew && k < L.orbit.size(); ++k) {
                for (size_t s = 0; !grew && s < L.gens.size(); ++s) {
                    int p = L.orbit[k];
                    const Perm& gen = L.gens[s];
                    Perm sg = perm_mul(perm_inv(L.u[gen[p]]), perm_mul(gen, L.u[p]));
                    if (perm_is_identity(sg)) continue;
                    auto [h, j] = sift(sg, i + 1);
                    if (perm_is_identity(h)) continue;
                    if (j == levels_.size()) push_level(first_moved(h));
                    for (size_t l = i + 1; l <= j; ++l) {
                        levels_[l].gens.push_back(h);
                        rebuild_orbit(levels_[l]);
                    }
                    i = static_cast<long>(j);
                    grew = true;
                }
            }
            if (!grew) --i;
        }
    }

    mpz_class order() const {
        mpz_class o = 1;
        for (const auto& L : levels_) o *= static_cast<unsigned long>(L.orbit.size());
        return o;
    }

    bool contains(const Perm& g) const { return perm_is_identity(sift(g, 0).first); }

    std::vector<int> base() const {
        std::vector<int> b;
        for (const auto& L : levels_) b.push_back(L.point);
        return b;
    }

    const std::vector<int>& orbit(size_t level) const { return levels_.at(level).orbit; }
    size_t depth() const { return levels_.size(); }

  private:
    struct Level {
        int point = 0;
        std::vector<Perm> gens;
        std::vector<int> orbit;
        std::vector<Perm> u; // u[p](point) = p, empty when p is not in the orbit
    };

    int n_;
    std::vector<Level> levels_;

    static int first_moved(const Perm& g) {
        for (size_t k = 0; k < g.size(); ++k)
            if (g[k] != static_cast<int>(k)) return static_cast<int>(k);
        throw std::logic_error("StabChain: identity has no moved point");
    }

    void push_level(int point) {
        Level L;
        L.point = point;
        levels_.push_back(std::move(L));
        rebuild_orbit(levels_.back());
    }

    std::pair<Perm, size_t> sift(Perm g, size_t from) const {
        for (size_t i = from; i < levels_.size(); ++i) {
            const auto& L = levels_[i];
            int p = g[L.point];
            if (L.u[p].empty()) return {g, i};
            g = perm_mul(perm_inv(L.u[p]), g);
        }
        return {g, levels_.size()};
    }

    void rebuild_orbit(Level& L) {
        L.u.assign(n_, Perm());
        L.orbit.clear();
        L.u[L.point] = perm_identity(n_);
        L.orbit.push_back(L.point);
        for (size_t k = 0; k < L.orbit.size(); ++k) {
            int p = L.orbit[k];
            for (const auto& s : L.gens) {
                int q = s[p];
                if (!L.u[q].empty()) continue;
                L.u[q] = perm_mul(s, L.u[p]);
                L.orbit.push_back(q);
            }
        }
    }
};

} // namespace rudvalis
