// Sanity checks of the reference implementations themselves.

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace {

using oracle::cplx;
using oracle::kPi;

TEST(Oracle, PermanentOfSmallIntegerMatrix)
{
    Eigen::MatrixXcd a(3, 3);
    a << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    EXPECT_NEAR(std::abs(oracle::permanent(a) - cplx(450.0)), 0.0, 1e-12);
}

TEST(Oracle, PermanentOfAllOnesIsFactorial)
{
    for (int n = 1; n <= 6; ++n)
        EXPECT_DOUBLE_EQ(oracle::permanent(Eigen::MatrixXcd::Ones(n, n)).real(), oracle::factorial(n));
}

TEST(Oracle, RandomUnitaryIsUnitary)
{
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 5; ++n) {
        const Eigen::MatrixXcd u = oracle::random_unitary(n, rng);
        EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(Oracle, OccupationCountsAreBinomial)
{
    EXPECT_EQ(oracle::occupations(2, 2).size(), 3u);
    EXPECT_EQ(oracle::occupations(3, 2).size(), 6u);
    EXPECT_EQ(oracle::occupations(5, 2).size(), 15u);
    EXPECT_EQ(oracle::occupations(5, 3).size(), 35u);
    EXPECT_EQ(oracle::occupations(4, 0).size(), 1u);
}

TEST(Oracle, HongOuMandelByExpansion)
{
    const auto out = oracle::expand(oracle::two_port(kPi / 4), {{{1, 1}, 1.0}});
    EXPECT_NEAR(std::abs(out.at({1, 1})), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out.at({2, 0}) - cplx(0.0, 1.0 / std::sqrt(2.0))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out.at({0, 2}) - cplx(0.0, 1.0 / std::sqrt(2.0))), 0.0, 1e-15);
}

TEST(Oracle, ExpansionAgreesWithPermanentForm)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXcd u = oracle::random_unitary(3, rng);
        for (const auto& nu : oracle::occupations(3, 3)) {
            const auto out = oracle::expand(u, {{nu, 1.0}});
            for (const auto& mu : oracle::occupations(3, 3)) {
                const auto it = out.find(mu);
                const cplx expansion = it == out.end() ? cplx(0.0) : it->second;
                EXPECT_NEAR(std::abs(expansion - oracle::permanent_amplitude(u, nu, mu)), 0.0, 1e-12);
            }
        }
    }
}

// The hand-expanded two-port formulas reproduce the expansion for any angle.
TEST(Oracle, TwoPortClosedFormMatchesExpansion)
{
    for (double theta : {0.1, kPi / 4, 3 * kPi / 8, kPi / 2, -3 * kPi / 8, 2.0}) {
        for (int k = 0; k < 16; ++k) {
            const double phi = 2 * kPi * k / 16;
            const auto out = oracle::expand(oracle::two_port(theta), oracle::noon(2, 0, 1, phi));
            const auto closed = oracle::two_port_curves(theta, phi);
            EXPECT_NEAR(oracle::modified_correlation(out, 2, 0, 0), closed.auto_c, 1e-14);
            EXPECT_NEAR(oracle::modified_correlation(out, 2, 1, 1), closed.auto_c, 1e-14);
            EXPECT_NEAR(oracle::modified_correlation(out, 2, 0, 1), closed.cross_c, 1e-14);
        }
    }
}

// Frozen curve families for the three two-port lengths.
TEST(Oracle, TwoPortFamiliesReduceToSimpleCosines)
{
    for (int k = 0; k < 32; ++k) {
        const double phi = 2 * kPi * k / 32;
        const auto quarter = oracle::two_port_curves(kPi / 4, phi);
        EXPECT_NEAR(quarter.cross_c, (1 + std::cos(phi)) / 4, 1e-15);
        EXPECT_NEAR(quarter.auto_c, (1 - std::cos(phi)) / 4, 1e-15);
        const auto three_eighths = oracle::two_port_curves(3 * kPi / 8, phi);
        EXPECT_NEAR(three_eighths.auto_c, (3 - std::cos(phi)) / 8, 1e-15);
        EXPECT_NEAR(three_eighths.cross_c, (1 + std::cos(phi)) / 8, 1e-15);
        const auto half = oracle::two_port_curves(kPi / 2, phi);
        EXPECT_NEAR(half.auto_c, 0.5, 1e-15);
        EXPECT_NEAR(half.cross_c, 0.0, 1e-15);
    }
}

TEST(Oracle, CircularDistance)
{
    EXPECT_NEAR(oracle::circular_distance(0.1, 2 * kPi - 0.1), 0.2, 1e-12);
    EXPECT_NEAR(oracle::circular_distance(0.0, kPi), kPi, 1e-12);
}

} // namespace
