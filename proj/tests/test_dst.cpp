#include "doctest.h"

#include "oracles.hpp"

#include "dstrust/dst.hpp"

#include <algorithm>
#include <random>

using namespace dstrust;

namespace {

MassFunction to_lib(const oracle::Mass& m)
{
    // Renormalise the remainder so rounding in the generator cannot trip the
    // sum check.
    return {m[0], m[1], std::max(0.0, 1.0 - m[0] - m[1])};
}

double sum(const BeliefTriple& b)
{
    return b.trust() + b.distrust() + b.uncertainty();
}

} // namespace

TEST_CASE("frame distributions validate their components")
{
    CHECK_NOTHROW(FrameDistribution(0.2, 0.3, 0.5));
    CHECK_THROWS_AS(FrameDistribution(0.2, 0.3, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(FrameDistribution(-0.1, 0.6, 0.5), InvalidProbability);
    CHECK(FrameDistribution::vacuous() == FrameDistribution(0, 0, 1));
}

TEST_CASE("mass from a recommendation")
{
    const auto t = mass_from_recommendation(Verdict::Trustworthy, Probability(0.8));
    CHECK(t.trust() == 0.8);
    CHECK(t.distrust() == 0.0);
    CHECK(t.uncertainty() == doctest::Approx(0.2));

    CHECK(mass_from_recommendation(Verdict::Untrustworthy, Probability(0.0)) == MassFunction::vacuous());

    const auto clamped = mass_from_recommendation(Verdict::Trustworthy, Probability(1.0));
    CHECK(clamped.trust() == 1.0 - 1e-6);
    CHECK(clamped.uncertainty() == doctest::Approx(1e-6).epsilon(1e-9));
    CHECK(std::fabs(sum(clamped) - 1.0) <= 1e-12);

    const auto n = mass_from_recommendation(Verdict::Untrustworthy, Probability(0.3));
    CHECK(n.trust() == 0.0);
    CHECK(n.distrust() == 0.3);
}

TEST_CASE("pairwise combination examples")
{
    const auto agree = combine({0.8, 0, 0.2}, {0.6, 0, 0.4});
    CHECK(std::fabs(agree.trust() - 0.92) <= 1e-12);
    CHECK(agree.distrust() == 0.0);
    CHECK(std::fabs(agree.uncertainty() - 0.08) <= 1e-12);

    const auto clash = combine({0.6, 0, 0.4}, {0, 0.6, 0.4});
    CHECK(std::fabs(clash.trust() - 0.375) <= 1e-12);
    CHECK(std::fabs(clash.distrust() - 0.375) <= 1e-12);
    CHECK(std::fabs(clash.uncertainty() - 0.25) <= 1e-12);

    const MassFunction a{0.31, 0.22, 0.47};
    CHECK(combine(a, MassFunction::vacuous()) == a);
    CHECK(combine(MassFunction::vacuous(), a) == a);
}

TEST_CASE("total conflict is reported for hand-built dogmatic masses")
{
    CHECK_THROWS_AS(combine({1, 0, 0}, {0, 1, 0}), TotalConflict);
    try {
        combine({1, 0, 0}, {0, 1, 0});
    } catch (const TotalConflict& e) {
        CHECK(e.normalization() == 0.0);
    }
}

TEST_CASE("clamped masses never reach total conflict")
{
    const auto t = mass_from_recommendation(Verdict::Trustworthy, Probability(1.0));
    const auto n = mass_from_recommendation(Verdict::Untrustworthy, Probability(1.0));
    const auto b = combine(t, n);
    CHECK(std::fabs(b.trust() - b.distrust()) <= 1e-12);
    CHECK(std::fabs(sum(b) - 1.0) <= 1e-9);

    // A long chain of saturated votes on both sides.
    std::vector<MassFunction> ms;
    for (int i = 0; i < 12; ++i) {
        ms.push_back(i % 3 == 0 ? n : t);
    }
    CHECK_NOTHROW(combine_all(ms));
}

TEST_CASE("combine_all fold example")
{
    const std::vector<MassFunction> ms{{0.8, 0, 0.2}, {0.6, 0, 0.4}, {0, 0.7, 0.3}};
    const auto b = combine_all(ms);
    // 0.92 * 0.3 / 0.356, 0.08 * 0.7 / 0.356, 0.08 * 0.3 / 0.356
    CHECK(std::fabs(b.trust() - 0.276 / 0.356) <= 1e-12);
    CHECK(std::fabs(b.distrust() - 0.056 / 0.356) <= 1e-12);
    CHECK(std::fabs(b.uncertainty() - 0.024 / 0.356) <= 1e-12);
    CHECK(std::fabs(b.trust() - 0.7753) <= 1e-4);
    CHECK(std::fabs(b.distrust() - 0.1573) <= 1e-4);
    CHECK(std::fabs(b.uncertainty() - 0.0674) <= 1e-4);

    const std::vector<MassFunction> one{{0.8, 0, 0.2}};
    CHECK(combine_all(one) == one.front());
    CHECK_THROWS_AS(combine_all({}), EmptyEvidence);
}

TEST_CASE("decide and estimated trust")
{
    CHECK(decide({0.92, 0, 0.08}) == Verdict::Trustworthy);
    CHECK(decide({0.375, 0.375, 0.25}) == Verdict::Untrustworthy);
    CHECK(decide({0.1, 0.2, 0.7}) == Verdict::Untrustworthy);

    CHECK(estimated_trust({0.92, 0, 0.08}).value() == 1.0);
    CHECK(estimated_trust(BeliefTriple::vacuous()).value() == 0.5);
    CHECK(estimated_trust({0.375, 0.375, 0.25}).value() == 0.5);
    CHECK(estimated_trust({0.2, 0.6, 0.2}).value() == doctest::Approx(0.25));
}

TEST_CASE("pairs match the nine-pair enumeration")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const auto a = oracle::random_mass(rng);
        const auto b = oracle::random_mass(rng);
        const auto la = to_lib(a), lb = to_lib(b);
        const auto want = oracle::dempster({la.trust(), la.distrust(), la.uncertainty()},
                                           {lb.trust(), lb.distrust(), lb.uncertainty()});
        const auto got = combine(la, lb);
        REQUIRE(std::fabs(got.trust() - want[0]) <= 1e-9);
        REQUIRE(std::fabs(got.distrust() - want[1]) <= 1e-9);
        REQUIRE(std::fabs(got.uncertainty() - want[2]) <= 1e-9);
    }
}

TEST_CASE("algebraic properties over random masses")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 1500; ++i) {
        const auto a = to_lib(oracle::random_mass(rng));
        const auto b = to_lib(oracle::random_mass(rng));
        const auto ab = combine(a, b);
        const auto ba = combine(b, a);
        REQUIRE(ab == ba);
        REQUIRE(std::fabs(sum(ab) - 1.0) <= 1e-9);
        REQUIRE(combine(a, MassFunction::vacuous()) == a);

        std::vector<MassFunction> ms{a, b, to_lib(oracle::random_mass(rng)), to_lib(oracle::random_mass(rng))};
        const auto base = combine_all(ms);
        std::sort(ms.begin(), ms.end(), [](const auto& x, const auto& y) { return x.trust() < y.trust(); });
        do {
            const auto p = combine_all(ms);
            REQUIRE(std::fabs(p.trust() - base.trust()) <= 1e-9);
            REQUIRE(std::fabs(p.distrust() - base.distrust()) <= 1e-9);
            REQUIRE(std::fabs(p.uncertainty() - base.uncertainty()) <= 1e-9);
        } while (std::next_permutation(ms.begin(), ms.end(),
                                       [](const auto& x, const auto& y) { return x.trust() < y.trust(); }));
    }
}

TEST_CASE("agreeing masses reinforce each other")
{
    for (int i = 0; i <= 9; ++i) {
        for (int j = 0; j <= 9; ++j) {
            const double x = i / 9.0, y = j / 9.0;
            const auto b = combine({x, 0, 1 - x}, {y, 0, 1 - y});
            CHECK(b.trust() >= std::max(x, y) - 1e-15);
        }
    }
}

TEST_CASE("long folds of recommendation masses stay normalized and in range")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<MassFunction> ms;
        const int n = 1 + static_cast<int>(rng() % 40);
        for (int i = 0; i < n; ++i) {
            const double c = (rng() % 4 == 0) ? 1.0 : u(rng);
            ms.push_back(mass_from_recommendation((rng() & 1u) ? Verdict::Trustworthy : Verdict::Untrustworthy,
                                                  Probability(c)));
        }
        BeliefTriple b = BeliefTriple::vacuous();
        REQUIRE_NOTHROW(b = combine_all(ms));
        REQUIRE(std::fabs(sum(b) - 1.0) <= 1e-9);
    }
}
