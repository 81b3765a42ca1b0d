#include <gtest/gtest.h>

#include <leeisd/leeisd.hpp>

#include <cmath>

using namespace leeisd;

namespace {

double exact_exponent(long n, double T, unsigned q) {
    const long w = std::lround(T * n);
    return log2_mpz(sphere_size(n, w, q)) / std::log2(double(q)) / double(n);
}

}  // namespace

TEST(Saddle, ResidualVanishes) {
    for (unsigned q : {4u, 5u, 8u, 49u, 256u}) {
        auto R = RingSpec::from_modulus(q);
        const auto c = asym::lee_poly(R);
        for (double f : {0.05, 0.2, 0.4, 0.7, 0.95}) {
            const double T = f * R.M;
            auto sp = sphere_exponent(T, R);
            EXPECT_NEAR(asym::delta(c, sp.rho), T, 1e-9 * R.M) << q << " " << T;
            EXPECT_NEAR(sp.f_rho, asym::poly(c, sp.rho), 1e-12 * sp.f_rho);
        }
    }
}

TEST(Saddle, ZeroWeight) {
    auto sp = sphere_exponent(0, RingSpec::from_modulus(8));
    EXPECT_EQ(sp.exponent, 0.0);
    EXPECT_THROW(sphere_exponent(4.0, RingSpec::from_modulus(8)), std::domain_error);
    EXPECT_THROW(sphere_exponent(-0.1, RingSpec::from_modulus(8)), std::domain_error);
}

TEST(Saddle, MeanWeightGivesWholeSpace) {
    for (unsigned q : {3u, 5u, 8u, 9u, 49u}) {
        auto R = RingSpec::from_modulus(q);
        const double T = asym::ball_limit(R);
        auto sp = sphere_exponent(T, R);
        EXPECT_NEAR(sp.rho, 1.0, 1e-9);
        EXPECT_NEAR(sp.exponent, 1.0, 1e-9);
        EXPECT_EQ(ball_exponent(T, R), 1.0);
    }
}

TEST(Saddle, MatchesExactCounts) {
    for (unsigned q : {5u, 8u}) {
        auto R = RingSpec::from_modulus(q);
        for (double f : {0.2, 0.4}) {
            const double T = f * R.M;
            EXPECT_NEAR(sphere_exponent(T, R).exponent, exact_exponent(2000, T, q), 5e-3) << q << " " << f;
        }
    }
}

TEST(Saddle, ExponentIncreasesBelowMean) {
    auto R = RingSpec::from_modulus(9);
    double prev = 0;
    for (double T = 0.1; T < asym::ball_limit(R); T += 0.1) {
        const double e = sphere_exponent(T, R).exponent;
        EXPECT_GT(e, prev);
        prev = e;
    }
}

TEST(Gv, RateDistanceRoundTrip) {
    for (unsigned q : {4u, 7u, 8u, 49u}) {
        auto R = RingSpec::from_modulus(q);
        for (double rate : {0.1, 0.3, 0.5, 0.8}) EXPECT_NEAR(gv_rate(gv_delta(rate, R), R), rate, 1e-9);
    }
    EXPECT_THROW(gv_delta(0.0, RingSpec::from_modulus(8)), std::domain_error);
    EXPECT_THROW(gv_delta(1.0, RingSpec::from_modulus(8)), std::domain_error);
}

TEST(Regime, RedundancyRates) {
    AsymptoticRegime rg{RingSpec::from_modulus(49), 0.4, 0.5};
    EXPECT_DOUBLE_EQ(rg.R1(), 0.2);
    EXPECT_NEAR(rg.RI(), 0.6, 1e-12);
    AsymptoticRegime field{RingSpec::from_modulus(7), 0.4, 0.5};
    EXPECT_DOUBLE_EQ(field.RI(), 0.4);
}

TEST(Exponent, BelowPrange) {
    AsymBudget b;
    b.starts = 6;
    for (unsigned q : {8u, 49u}) {
        auto Rg = RingSpec::from_modulus(q);
        AsymptoticRegime rg{Rg, 0.4, 1.0};
        const double T = rg.T();
        const double RI = rg.RI();
        const double prange = sphere_exponent(T, Rg).exponent - (1 - RI) * sphere_exponent(T / (1 - RI), Rg).exponent;
        for (auto alg : {AsymAlgorithm::two_blocks, AsymAlgorithm::s_blocks, AsymAlgorithm::wagner1,
                         AsymAlgorithm::rep1, AsymAlgorithm::bjmm}) {
            const double e = exponent(alg, rg, b).e;
            EXPECT_GE(e, 0.0);
            EXPECT_LE(e, prange + 1e-6) << asym_algorithm_name(alg) << " q=" << q;
        }
    }
}

TEST(Exponent, SecondWagnerLevelDoesNotHelp) {
    AsymBudget b;
    b.starts = 6;
    AsymptoticRegime rg{RingSpec::from_modulus(49), 0.43, 1.0};
    EXPECT_NEAR(exponent(AsymAlgorithm::wagner2, rg, b).e, exponent(AsymAlgorithm::wagner1, rg, b).e, 2e-4);
}

TEST(Exponent, TabulatedPoint) {
    AsymptoticRegime rg{RingSpec::from_modulus(49), 0.4297, 1.0};
    EXPECT_NEAR(exponent(AsymAlgorithm::two_blocks, rg).e, 0.07612, 5e-4);
}

TEST(Exponent, RejectsBadRegime) {
    AsymptoticRegime rg{RingSpec::from_modulus(49), 1.2, 1.0};
    EXPECT_THROW(exponent(AsymAlgorithm::two_blocks, rg), std::domain_error);
    rg.R = 0.4;
    rg.lambda = 0;
    EXPECT_THROW(exponent(AsymAlgorithm::two_blocks, rg), std::domain_error);
}

TEST(Exponent, NamesRoundTrip) {
    for (auto a : {AsymAlgorithm::two_blocks, AsymAlgorithm::s_blocks, AsymAlgorithm::wagner1, AsymAlgorithm::wagner2,
                   AsymAlgorithm::rep1, AsymAlgorithm::rep2, AsymAlgorithm::bjmm})
        EXPECT_EQ(parse_asym_algorithm(asym_algorithm_name(a)), a);
}
