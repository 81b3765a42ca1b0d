#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace leeisd;

namespace {

PlantedInstance planted(unsigned m, std::size_t n, std::size_t k, unsigned t, std::uint64_t seed) {
    auto R = RingSpec::from_modulus(m);
    return plant(n, free_profile(n, k, R), t, R, seed);
}

constexpr std::uint64_t budget = 200000;

}  // namespace

TEST(RepresentationBound, Examples) {
    auto R8 = RingSpec::from_modulus(8);
    EXPECT_EQ(representation_lower_bound(4, 0, 10, R8), 0);
    EXPECT_EQ(representation_u(0, 10, R8), 0u);
    EXPECT_EQ(representation_lower_bound(4, 2, 4, R8), 20);
    EXPECT_EQ(representation_u(2, 4, R8), 1u);
    // floor(q/4) = 0 leaves no room for overlap
    EXPECT_EQ(representation_lower_bound(2, 3, 6, RingSpec::from_modulus(3)), 0);
}

TEST(TwoBlocks, SolvesPlanted) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto P = planted(8, 30, 8, 12, seed);
        auto e = decode_two_blocks(P.instance, {4, 4, 2, 1, 1}, budget, seed);
        EXPECT_TRUE(verify_solution(P.instance, e, true));
    }
}

TEST(TwoBlocks, ZeroSyndrome) {
    auto P = planted(8, 12, 4, 0, 1);
    DecodeStats st;
    auto e = decode_two_blocks(P.instance, prange_params(4), 10, 1, &st);
    EXPECT_EQ(e, LeeVector(P.instance.ring, 12));
    EXPECT_EQ(st.iterations, 1u);
}

TEST(TwoBlocks, PrangeAndLeeBrickell) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto P = planted(8, 30, 8, 12, 10 + seed);
        EXPECT_TRUE(verify_solution(P.instance, decode_two_blocks(P.instance, prange_params(8), budget, seed), true));
        EXPECT_TRUE(
            verify_solution(P.instance, decode_two_blocks(P.instance, lee_brickell_params(8, 2), budget, seed), true));
    }
}

TEST(TwoBlocks, AllWeightOnInformationSet) {
    // the whole error sits in the information set: m1 = K, v1 = t finds it
    auto P = planted(5, 10, 6, 3, 4);
    auto e = decode_two_blocks(P.instance, {6, 0, 0, 3, 0}, budget, 2);
    EXPECT_TRUE(verify_solution(P.instance, e, true));
}

TEST(TwoBlocks, ParameterChecks) {
    auto P = planted(8, 12, 4, 5, 1);
    EXPECT_THROW(decode_two_blocks(P.instance, {2, 2, 0, 3, 3}, 5, 1), std::invalid_argument);
    EXPECT_THROW(decode_two_blocks(P.instance, {1, 1, 0, 5, 0}, 5, 1), std::invalid_argument);
    EXPECT_THROW(decode_two_blocks(P.instance, {2, 1, 0, 1, 1}, 5, 1), std::invalid_argument);
}

TEST(TwoBlocks, BudgetExhausted) {
    // n - K = 6 positions over Z/5 carry at most weight 12
    auto P = planted(5, 10, 4, 14, 1);
    EXPECT_THROW(decode_two_blocks(P.instance, prange_params(4), 3, 1), IterationBudgetExhausted);
}

TEST(TwoBlocks, FastPathsDoNotChangeResults) {
    auto P = planted(8, 20, 6, 8, 3);
    auto a = decode_two_blocks(P.instance, {3, 3, 1, 1, 1}, budget, 9, nullptr, {true, true});
    auto b = decode_two_blocks(P.instance, {3, 3, 1, 1, 1}, budget, 9, nullptr, {false, false});
    EXPECT_EQ(a, b);
}

TEST(SBlocks, SolvesPlantedOverZ4) {
    auto R = RingSpec::from_modulus(4);
    CodeType ct;
    ct.n = 24;
    ct.k_profile = {6, 4};
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto P = plant(24, ct, 7, R, seed);
        auto e = decode_s_blocks(P.instance, {2, std::nullopt}, budget, seed);
        EXPECT_TRUE(verify_solution(P.instance, e, true));
    }
}

TEST(SBlocks, FixedSplitAndFreeCode) {
    auto R = RingSpec::from_modulus(9);
    CodeType ct;
    ct.n = 16;
    ct.k_profile = {5, 3};
    auto P = plant(16, ct, 6, R, 2);
    EXPECT_TRUE(verify_solution(P.instance, decode_s_blocks(P.instance, {0, std::vector<unsigned>{0, 0}}, budget, 1), true));
    EXPECT_TRUE(verify_solution(P.instance, decode_s_blocks(P.instance, {2, std::vector<unsigned>{1, 1}}, budget, 1), true));
    auto F = plant(16, free_profile(16, 6, R), 6, R, 3);
    EXPECT_TRUE(verify_solution(F.instance, decode_s_blocks(F.instance, {2, std::nullopt}, budget, 1), true));
}

TEST(SBlocks, FieldDelegatesToTwoBlocks) {
    auto P = planted(7, 14, 5, 5, 6);
    EXPECT_TRUE(verify_solution(P.instance, decode_s_blocks(P.instance, {1, std::nullopt}, budget, 1), true));
}

TEST(Wagner, OneAndTwoLevels) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto P = planted(8, 28, 8, 11, 20 + seed);
        auto e1 = decode_wagner(P.instance, {1, 2, 2, {2}}, budget, seed);
        EXPECT_TRUE(verify_solution(P.instance, e1, true));
        auto e2 = decode_wagner(P.instance, {2, 2, 4, {1, 2}}, budget, seed);
        EXPECT_TRUE(verify_solution(P.instance, e2, true));
    }
}

TEST(Wagner, ZeroWeightBaseLists) {
    auto P = planted(8, 20, 5, 6, 4);
    EXPECT_TRUE(verify_solution(P.instance, decode_wagner(P.instance, {1, 0, 0, {0}}, budget, 1), true));
}

TEST(Wagner, RejectsBadU) {
    auto P = planted(8, 20, 5, 6, 4);
    EXPECT_THROW(decode_wagner(P.instance, {2, 2, 4, {2, 1}}, 5, 1), std::invalid_argument);
    EXPECT_THROW(decode_wagner(P.instance, {1, 2, 2, {1}}, 5, 1), std::invalid_argument);
}

TEST(Representation, OneLevel) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto P = planted(8, 24, 6, 9, 30 + seed);
        auto e = decode_representation(P.instance, {1, 1, 2, {0}, std::nullopt}, budget, seed);
        EXPECT_TRUE(verify_solution(P.instance, e, true));
        auto f = decode_representation(P.instance, {1, 1, 2, {1}, std::nullopt}, budget, seed);
        EXPECT_TRUE(verify_solution(P.instance, f, true));
    }
}

TEST(Representation, OddWeightRejected) {
    auto P = planted(8, 20, 5, 6, 4);
    EXPECT_THROW(decode_representation(P.instance, {1, 1, 3, {0}, std::nullopt}, 5, 1), std::invalid_argument);
}

TEST(Bjmm, SolvesPlantedOverZ4) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto P = planted(4, 24, 6, 6, 40 + seed);
        auto e = decode_bjmm(P.instance, {2, 4, 1, 0, std::nullopt, std::nullopt}, budget, seed);
        EXPECT_TRUE(verify_solution(P.instance, e, true));
    }
}

TEST(Bjmm, DegenerateOverlapAndZeroSyndrome) {
    auto P = planted(4, 24, 6, 6, 50);
    auto e = decode_bjmm(P.instance, {2, 0, 0, 0, 0, 0}, budget, 1);
    EXPECT_TRUE(verify_solution(P.instance, e, true));
    auto Z = planted(4, 12, 4, 0, 1);
    EXPECT_EQ(decode_bjmm(Z.instance, {0, 0, 0, 0, 0, 0}, 5, 1), LeeVector(Z.instance.ring, 12));
}

TEST(AllDecoders, SolutionsLieInExhaustiveSet) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto P = planted(5, 10, 4, 3, 60 + seed);
        const auto sols = oracle::sdp_solutions(P.instance);
        ASSERT_TRUE(sols.count(P.e_planted.data()));
        const auto& I = P.instance;
        std::vector<LeeVector> got = {
            decode_two_blocks(I, {2, 2, 1, 1, 0}, budget, seed),
            decode_s_blocks(I, {1, std::nullopt}, budget, seed),
            decode_wagner(I, {1, 1, 1, {1}}, budget, seed),
            decode_representation(I, {1, 1, 2, {0}, std::nullopt}, budget, seed),
            decode_bjmm(I, {2, 0, 0, 0, 0, 0}, budget, seed),
        };
        for (auto& e : got) EXPECT_TRUE(sols.count(e.data()));
    }
}

TEST(Parallel, FirstVerifiedWins) {
    auto P = planted(8, 24, 6, 9, 70);
    auto fn = [&](std::uint64_t it, std::uint64_t seed) { return decode_two_blocks(P.instance, {3, 3, 1, 1, 1}, it, seed); };
    EXPECT_TRUE(verify_solution(P.instance, decode_parallel(P.instance, fn, budget, 1, 3), true));
}
