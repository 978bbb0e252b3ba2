#pragma once

#include "resources.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace rudvalis {

// Subset of Delta as a bit mask; bit k is label index k, infinity is bit 27.
using Word = std::uint32_t;

inline constexpr Word kAllOnes = (Word(1) << kDelta) - 1;

inline int weight(Word w) { return std::popcount(w); }
inline int parity(Word a, Word b) { return std::popcount(a & b) & 1; }

inline Word word_from_labels(const nlohmann::json& arr) {
    Word w = 0;
    for (const auto& l : arr) {
        Word bit = Word(1) << label_index(l);
        if (w & bit) throw data_error("repeated label in " + arr.dump());
        w |= bit;
    }
    return w;
}

inline std::string word_str(Word w) {
    std::string s = "{";
    for (int k = 0; k < kDelta; ++k)
        if (w >> k & 1) {
            if (s.size() > 1) s += ",";
            s += label_name(k);
        }
    return s + "}";
}

// Binary linear code on n <= 32 points, kept as a reduced echelon basis.
class Code {
  public:
    explicit Code(int n = kDelta) : n_(n) {}
    Code(int n, const std::vector<Word>& gens) : n_(n) {
        for (Word g : gens) add(g);
    }

    int length() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Word>& basis() const { return basis_; }

    // returns true if g was independent
    bool add(Word g) {
        g = reduce(g);
        if (!g) return false;
        int lead = 31 - std::countl_zero(g);
        for (auto& b : basis_)
            if (b >> lead & 1) b ^= g;
        basis_.push_back(g);
        std::sort(basis_.begin(), basis_.end(), std::greater<>());
        return true;
    }

    Word reduce(Word w) const {
        for (Word b : basis_) {
            int lead = 31 - std::countl_zero(b);
            if (w >> lead & 1) w ^= b;
        }
        return w;
    }
    bool contains(Word w) const { return reduce(w) == 0; }

    Code dual() const {
        Code d(n_);
        Word full = n_ == 32 ? ~Word(0) : (Word(1) << n_) - 1;
        // nullspace: free columns of the echelon form give the dual basis
        std::vector<int> leads;
        for (Word b : basis_) leads.push_back(31 - std::countl_zero(b));
        Word pivmask = 0;
        for (int l : leads) pivmask |= Word(1) << l;
        for (int f = 0; f < n_; ++f) {
            if (pivmask >> f & 1) continue;
            Word v = Word(1) << f;
            for (size_t r = 0; r < basis_.size(); ++r)
                if (basis_[r] >> f & 1) v |= Word(1) << leads[r];
            d.add(v & full);
        }
        return d;
    }

    template <class F> void for_each_word(F&& f) const {
        if (dim() > 24) throw std::length_error("code dimension exceeds enumeration cap 24");
        // Gray code walk
        Word w = 0;
        f(w);
        std::uint64_t total = std::uint64_t(1) << dim();
        for (std::uint64_t i = 1; i < total; ++i) {
            w ^= basis_[std::countr_zero(i)];
            f(w);
        }
    }

    std::vector<Word> words_of_weight(int wt) const {
        std::vector<Word> out;
        for_each_word([&](Word w) {
            if (weight(w) == wt) out.push_back(w);
        });
        std::sort(out.begin(), out.end());
        return out;
    }

    bool doubly_even() const {
        bool ok = true;
        for_each_word([&](Word w) { ok = ok && weight(w) % 4 == 0; });
        return ok;
    }

    friend bool operator==(const Code& a, const Code& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }

  private:
    int n_;
    std::vector<Word> basis_;
};

inline std::vector<Word> dozen_words() {
    auto j = load_json("dozens.json");
    std::vector<Word> out;
    for (const auto& d : j.at("dozens")) out.push_back(word_from_labels(d));
    if (out.size() != 7) throw data_error("dozens.json: expected 7 generators");
    for (size_t k = 0; k + 1 < out.size(); ++k)
        if (weight(out[k]) != 12) throw data_error("dozens.json: generator is not a dozen");
    if (out.back() != kAllOnes) throw data_error("dozens.json: last generator must be all of Delta");
    return out;
}

inline Code dozens_code() { return Code(kDelta, dozen_words()); }

} // namespace rudvalis
