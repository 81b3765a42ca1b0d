#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "random_inputs.hpp"

using namespace leeisd;

namespace {

using oracle::Rand;

std::multiset<oracle::Entry> as_set(const MergeList& L) {
    std::multiset<oracle::Entry> s;
    for (auto& e : L.entries) s.insert({e.frag, e.key});
    return s;
}

}  // namespace

TEST(MergeConcat, EdgeCases) {
    auto R = RingSpec::from_modulus(9);
    Rand g(1);
    auto B1 = g.matrix(R, 3, 4), B2 = g.matrix(R, 3, 4);
    auto L1 = g.list(R, 4, 10, 3);
    EXPECT_TRUE(merge_concat(L1, {}, 2, B1, B2, g.vec(R, 3)).empty());
    auto L2 = g.list(R, 4, 7, 2);
    EXPECT_EQ(merge_concat(L1, L2, 0, B1, B2, g.vec(R, 3)).size(), 70u);
}

TEST(MergeConcat, MatchesQuadraticOracle) {
    Rand g(2);
    for (unsigned m : {4u, 5u, 9u}) {
        auto R = RingSpec::from_modulus(m);
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t len = 4, rows = 3, u = trial % 4;
            auto B1 = g.matrix(R, rows, len), B2 = g.matrix(R, rows, len);
            auto L1 = g.list(R, len, 50, 2), L2 = g.list(R, len, 50, 3);
            auto s = g.vec(R, rows);
            EXPECT_EQ(as_set(merge_concat(L1, L2, u, B1, B2, s)), oracle::concat_pairs(L1, L2, u, B1, B2, s));
        }
    }
}

TEST(Merge, DisjointSupportsNoConstraint) {
    auto R = RingSpec::from_modulus(7);
    Rand g(3);
    auto B = g.matrix(R, 2, 6);
    // left halves live on positions 0..2, right halves on 3..5
    std::vector<std::vector<residue>> L1, L2;
    for (auto& x : enumerate_weight_vectors(3, 2, 7)) {
        auto a = x;
        a.resize(6, 0);
        L1.push_back(a);
        std::vector<residue> b(3, 0);
        b.insert(b.end(), x.begin(), x.end());
        L2.push_back(b);
    }
    auto out = leeisd::merge(L1, L2, 0, 4, B, g.vec(R, 2));
    EXPECT_EQ(out.size(), L1.size() * L2.size());
    for (auto& e : out.entries) EXPECT_EQ(lee_weight(e.frag, 7), 4u);
}

TEST(Merge, MatchesQuadraticOracle) {
    Rand g(4);
    for (unsigned m : {4u, 8u, 9u}) {
        auto R = RingSpec::from_modulus(m);
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t len = 5, rows = 4, u = trial % 3;
            auto B = g.matrix(R, rows, len);
            auto L1 = g.list(R, len, 60, 2), L2 = g.list(R, len, 60, 2);
            auto s = g.vec(R, rows);
            for (unsigned v : {2u, 3u, 4u})
                EXPECT_EQ(as_set(leeisd::merge(L1, L2, u, v, B, s)), oracle::sum_pairs(L1, L2, u, v, B, s));
        }
    }
}

TEST(LastMerge, AgreesWithOracle) {
    Rand g(5);
    int hits = 0, misses = 0;
    for (unsigned m : {5u, 8u}) {
        auto R = RingSpec::from_modulus(m);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t len = 5, rows = 2, u = trial % 3;
            auto B = g.matrix(R, rows, len), A = g.matrix(R, 3, len);
            auto L1 = g.list(R, len, 40, 2), L2 = g.list(R, len, 40, 2);
            auto s2 = g.vec(R, rows), s1 = g.vec(R, 3);
            const unsigned w = 1 + trial % 4;
            auto want = oracle::last_merge_pairs(L1, L2, u, 3, B, s2, s1, A, w);
            auto got = last_merge(L1, L2, u, 3, B, s2, s1, A, w);
            ASSERT_EQ(got.has_value(), !want.empty());
            if (got) {
                ++hits;
                EXPECT_TRUE(want.count({got->e1, got->e2}));
                auto sum = oracle::add(got->e1, got->e2, m);
                auto ax = oracle::times_transpose(A, sum);
                for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ((got->extension[i] + ax[i]) % m, s1[i]);
            } else {
                ++misses;
            }
        }
    }
    EXPECT_GT(hits, 0);
    EXPECT_GT(misses, 0);
}

TEST(LastMerge, NoneWhenOuterWeightUnreachable) {
    auto R = RingSpec::from_modulus(5);
    Rand g(6);
    auto B = g.matrix(R, 2, 4), A = g.matrix(R, 2, 4);
    auto L1 = g.list(R, 4, 20, 1), L2 = g.list(R, 4, 20, 1);
    // two coordinates over Z/5 carry at most weight 4
    EXPECT_FALSE(last_merge(L1, L2, 0, 2, B, g.vec(R, 2), g.vec(R, 2), A, 5).has_value());
}
