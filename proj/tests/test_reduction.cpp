#include <gtest/gtest.h>

#include "oracles.hpp"

#include <random>

using namespace leeisd;

namespace {

ThreeDMInstance toy() {
    return {{"A", "B", "C", "D"}, {{3, 0, 1}, {2, 1, 0}, {3, 0, 1}, {1, 2, 3}, {2, 3, 0}, {0, 3, 0}, {0, 1, 2}}};
}

ThreeDMInstance random_3dm(std::size_t t, std::size_t u, std::mt19937& g) {
    ThreeDMInstance I;
    for (std::size_t i = 0; i < t; ++i) I.T.push_back(std::string(1, char('a' + i)));
    for (std::size_t i = 0; i < u; ++i) I.U.push_back({g() % t, g() % t, g() % t});
    return I;
}

}  // namespace

TEST(Reduction, ToyMatrix) {
    const RingMatrix want(RingSpec::from_modulus(3), {
                                                         {0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0},
                                                         {0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0},
                                                         {0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0},
                                                         {0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1},
                                                         {0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0},
                                                         {1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0},
                                                         {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0},
                                                     });
    EXPECT_EQ(awsdp_transpose(toy(), RingSpec::from_modulus(3)), want);
    auto sdp = build_awsdp(toy(), RingSpec::from_modulus(3));
    EXPECT_EQ(sdp.H.rows(), 12u);
    EXPECT_EQ(sdp.H.cols(), 7u);
    EXPECT_EQ(sdp.t, 4u);
}

TEST(Reduction, ToyMatchingSolves) {
    const std::vector<std::size_t> W = {2, 3, 4, 6};
    EXPECT_TRUE(is_matching(toy(), W));
    for (unsigned m : {3u, 4u, 5u, 8u}) {
        auto R = RingSpec::from_modulus(m);
        auto sdp = build_awsdp(toy(), R);
        auto e = matching_indicator(toy(), W, R);
        EXPECT_TRUE(verify_solution(sdp, e, true));
        EXPECT_EQ(extract_matching(e, toy()), W);
    }
    auto found = brute_force_3dm(toy());
    ASSERT_TRUE(found);
    EXPECT_TRUE(is_matching(toy(), *found));
}

TEST(Reduction, NonSolutionRejected) {
    auto R = RingSpec::from_modulus(3);
    EXPECT_THROW(extract_matching(matching_indicator(toy(), {0, 1, 3, 5}, R), toy()), NonSolution);
    EXPECT_THROW(extract_matching(LeeVector(R, 6), toy()), NonSolution);
}

TEST(Reduction, SingleSymbol) {
    ThreeDMInstance I{{"x"}, {{0, 0, 0}}};
    auto R = RingSpec::from_modulus(5);
    auto sdp = build_awsdp(I, R);
    EXPECT_TRUE(verify_solution(sdp, LeeVector(R, {1}), true));
    EXPECT_EQ(extract_matching(LeeVector(R, {1}), I), std::vector<std::size_t>{0});
}

TEST(Reduction, EmptyInputsRejected) {
    EXPECT_THROW(build_awsdp(ThreeDMInstance{}, RingSpec::from_modulus(3)), std::invalid_argument);
    ThreeDMInstance bad{{"a"}, {{0, 1, 0}}};
    EXPECT_THROW(build_awsdp(bad, RingSpec::from_modulus(3)), std::invalid_argument);
}

TEST(Reduction, GawcpShapeAndCodeword) {
    for (unsigned m : {3u, 5u, 8u}) {
        auto R = RingSpec::from_modulus(m);
        auto g = build_gawcp(toy(), R);
        const std::size_t t = 4, u = 7, M = R.M;
        EXPECT_EQ(g.H.rows(), 3 * t + 3 * t * M * u);
        EXPECT_EQ(g.H.cols(), u + 3 * t + 3 * t * M * u);
        EXPECT_EQ(g.w, 3 * t * t * M * M + 4 * t * M);
        auto c = gawcp_codeword(toy(), {2, 3, 4, 6}, R);
        EXPECT_EQ(c.weight(), g.w);
        EXPECT_EQ(syndrome(g.H, c), LeeVector(R, g.H.rows()));
    }
    auto R3 = RingSpec::from_modulus(3);
    auto g3 = build_gawcp(toy(), R3);
    EXPECT_EQ(g3.H.rows(), 96u);
    EXPECT_EQ(g3.H.cols(), 103u);
}

TEST(Reduction, GawcpCodewordFromNonMatchingChangesWeight) {
    // two triples sharing a symbol pile weight on one column
    auto R = RingSpec::from_modulus(5);
    auto g = build_gawcp(toy(), R);
    auto c = gawcp_codeword(toy(), {0, 2, 3, 4}, R);
    EXPECT_EQ(syndrome(g.H, c), LeeVector(R, g.H.rows()));
    EXPECT_NE(c.weight(), g.w);
}

TEST(Reduction, EquivalenceSmallInstances) {
    std::mt19937 g(11);
    for (unsigned m : {3u, 4u, 5u}) {
        auto R = RingSpec::from_modulus(m);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t t = 1 + g() % 3, u = 1 + g() % 5;
            auto I = random_3dm(t, u, g);
            auto sdp = build_awsdp(I, R);
            EXPECT_EQ(brute_force_3dm(I).has_value(), oracle::has_solution_up_to(sdp)) << threedm_to_json(I).dump();
        }
    }
}

TEST(Reduction, JsonRoundTrip) {
    auto j = threedm_to_json(toy());
    auto back = threedm_from_json(j);
    EXPECT_EQ(back.T, toy().T);
    EXPECT_EQ(back.U, toy().U);
    EXPECT_THROW(threedm_from_json(nlohmann::json::parse(R"({"T":["a"]})")), std::invalid_argument);
    EXPECT_THROW(threedm_from_json(nlohmann::json::parse(R"({"T":["a"],"U":[[0,0]]})")), std::invalid_argument);
    EXPECT_THROW(threedm_from_json(nlohmann::json::parse(R"({"T":["a"],"U":[[0,0,3]]})")), std::invalid_argument);
}
