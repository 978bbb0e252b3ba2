#include "rudvalis/codes.hpp"
#include "rudvalis/verify.hpp"

#include <gtest/gtest.h>

using namespace rudvalis;

TEST(Codes, DozensCode) {
    Code D = dozens_code();
    EXPECT_EQ(D.dim(), 7);
    EXPECT_TRUE(D.doubly_even());
    EXPECT_TRUE(D.contains(kAllOnes));
    for (Word w : dozen_words()) EXPECT_TRUE(D.contains(w));
}

TEST(Codes, Dual) {
    Code D = dozens_code(), Dp = D.dual();
    EXPECT_EQ(Dp.dim(), 21);
    EXPECT_EQ(Dp.dual(), D);
    for (Word a : D.basis())
        for (Word b : Dp.basis()) EXPECT_EQ(parity(a, b), 0);
    for (Word a : D.basis()) EXPECT_TRUE(Dp.contains(a));
    Code zero(kDelta);
    EXPECT_EQ(zero.dual().dim(), kDelta);
}

TEST(Codes, WordsOfWeight) {
    Code D = dozens_code();
    EXPECT_EQ(D.words_of_weight(0), std::vector<Word>({0}));
    EXPECT_EQ(D.words_of_weight(28), std::vector<Word>({kAllOnes}));
    auto w12 = D.words_of_weight(12);
    for (Word w : dozen_words())
        if (w != kAllOnes) {
            EXPECT_TRUE(std::binary_search(w12.begin(), w12.end(), w));
        }
}

TEST(Codes, Weight14WordsClosedUnderComplement) {
    auto w14 = dozens_code().dual().words_of_weight(14);
    EXPECT_TRUE(std::is_sorted(w14.begin(), w14.end()));
    for (Word w : w14) EXPECT_TRUE(std::binary_search(w14.begin(), w14.end(), kAllOnes ^ w));
}

TEST(Codes, WeightParityLaw) {
    Code Dp = dozens_code().dual();
    auto b = Dp.basis();
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) EXPECT_EQ(weight(b[i] ^ b[j]) % 2, (weight(b[i]) + weight(b[j])) % 2);
}

TEST(Codes, TableRepresentativesLieInTheDual) {
    Code Dp = dozens_code().dual();
    for (const auto& row : load_json("rho_coeffs.json").at("rows")) {
        Word w = word_from_labels(row.at("rep"));
        EXPECT_EQ(weight(w), 14);
        EXPECT_TRUE(Dp.contains(w)) << word_str(w);
    }
}

TEST(Codes, EnumerationCap) {
    Code full(kDelta);
    for (int k = 0; k < 25; ++k) full.add(Word(1) << k);
    EXPECT_THROW(full.words_of_weight(1), std::length_error);
}

TEST(Codes, Report) { EXPECT_TRUE(verify_codes().pass()); }

TEST(Labels, OrderPutsInfinityLast) {
    EXPECT_EQ(label_index(nlohmann::json("inf")), kInf);
    EXPECT_EQ(label_index(nlohmann::json(27)), 26);
    EXPECT_EQ(label_name(kInf), "inf");
    EXPECT_THROW(label_index(nlohmann::json(28)), data_error);
}
