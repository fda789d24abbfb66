#include "doctest.h"

#include "dstrust/adversary.hpp"
#include "dstrust/credibility.hpp"

#include <random>
#include <set>

using namespace dstrust;

namespace {

constexpr auto T = Verdict::Trustworthy;
constexpr auto N = Verdict::Untrustworthy;

AdvisorState separable_advisor(AgentId id)
{
    AdvisorDataset d({"x"});
    for (int i = 0; i < 20; ++i) {
        d.add({{i / 20.0}, i >= 10 ? T : N});
    }
    return make_advisor(id, d, {});
}

} // namespace

TEST_CASE("attack kinds parse and print")
{
    for (auto k : {AttackKind::None, AttackKind::Sybil, AttackKind::Camouflage, AttackKind::Whitewashing}) {
        CHECK(parse_attack_kind(to_string(k)) == k);
    }
    CHECK(parse_attack_kind("whitewashing") == AttackKind::Whitewashing);
    CHECK_THROWS_AS(parse_attack_kind("collusion"), std::invalid_argument);
}

TEST_CASE("profiles carry exactly their own parameter")
{
    CHECK_NOTHROW(BehaviorProfile::honest().validate());
    CHECK_NOTHROW(BehaviorProfile::sybil(4).validate());
    CHECK_NOTHROW(BehaviorProfile::camouflage(5).validate());
    CHECK_NOTHROW(BehaviorProfile::whitewashing(3).validate());
    CHECK_THROWS(BehaviorProfile::sybil(0).validate());
    CHECK_THROWS(BehaviorProfile::camouflage(0).validate());
    CHECK_THROWS(BehaviorProfile::whitewashing(0).validate());
    CHECK_THROWS((BehaviorProfile{AttackKind::Sybil, 2, 5, 0}).validate());
    CHECK_THROWS((BehaviorProfile{AttackKind::None, 1, 0, 0}).validate());
}

TEST_CASE("camouflage switches at the configured iteration")
{
    CHECK(camouflage_verdict(T, 3, 5) == T);
    CHECK(camouflage_verdict(T, 4, 5) == T);
    CHECK(camouflage_verdict(T, 5, 5) == N);
    CHECK(camouflage_verdict(N, 9, 5) == T);
    CHECK(camouflage_verdict(N, 1, 1) == T);
    CHECK_THROWS_AS(camouflage_verdict(T, 0, 5), std::invalid_argument);
}

TEST_CASE("dishonest verdicts negate the honest pipeline")
{
    const auto state = separable_advisor(AgentId(1));
    const DishonestAdvisor sybil(state, BehaviorProfile::sybil(2));
    const DishonestAdvisor white(state, BehaviorProfile::whitewashing(3));
    DishonestAdvisor camo(state, BehaviorProfile::camouflage(5));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-0.5, 1.5);
    for (int i = 0; i < 200; ++i) {
        const std::vector<double> x{u(rng)};
        const auto honest = derive_recommendation(state, AgentId(9), x, Probability(0.5));
        REQUIRE(honest.has_value());
        CHECK(sybil.recommend(AgentId(9), x, Probability(0.5))->verdict == invert(honest->verdict));
        CHECK(white.recommend(AgentId(9), x, Probability(0.5))->verdict == invert(honest->verdict));
        for (std::size_t it = 1; it <= 10; ++it) {
            camo.set_iteration(it);
            const auto v = camo.recommend(AgentId(9), x, Probability(0.5))->verdict;
            CHECK(v == (it < 5 ? honest->verdict : invert(honest->verdict)));
        }
    }
    CHECK_THROWS_AS(DishonestAdvisor(state, BehaviorProfile::honest()), std::invalid_argument);
}

TEST_CASE("attackers answer even when their self-assessment says withdraw")
{
    AdvisorDataset noisy({"x"});
    for (int i = 0; i < 20; ++i) {
        noisy.add({{0.5}, i % 2 ? T : N});
    }
    const auto state = make_advisor(AgentId(1), noisy, {});
    CHECK_FALSE(state.assessment.participate);
    const DishonestAdvisor a(state, BehaviorProfile::sybil(1));
    CHECK(a.recommend(AgentId(2), std::vector<double>{0.5}, Probability(0.5)).has_value());
}

TEST_CASE("sybil expansion")
{
    IdRegistry ids;
    const auto principal = ids.fresh().id;
    const auto base = separable_advisor(principal);
    const auto fakes = sybil_expand(base, 5, ids);
    REQUIRE(fakes.size() == 5);
    std::set<AgentId> seen{principal};
    CredibilityLedger ledger;
    for (const auto& f : fakes) {
        CHECK(seen.insert(f.id).second);
        CHECK(ids.lineage_of(f.id) == principal);
        CHECK(ledger.score(f.id).value() == 0.5);
        const DishonestAdvisor fake(f, BehaviorProfile::sybil(5));
        CHECK(fake.recommend(AgentId(99), std::vector<double>{0.9}, Probability(0.5))->verdict == N);
    }
    CHECK_THROWS(sybil_expand(base, 0, ids));
}

TEST_CASE("whitewashing resets on period multiples")
{
    IdRegistry ids;
    const auto principal = ids.fresh().id;
    const auto base = separable_advisor(principal);

    const auto same = whitewash_maybe_reset(base, 4, 3, ids);
    CHECK(same.id == principal);

    const auto fresh = whitewash_maybe_reset(base, 3, 3, ids);
    CHECK(fresh.id != principal);
    CHECK(ids.lineage_of(fresh.id) == principal);
    CredibilityLedger ledger;
    CHECK(ledger.score(fresh.id).value() == 0.5);

    // Successive resets keep pointing at the principal, never at the previous alias.
    const auto again = whitewash_maybe_reset(fresh, 6, 3, ids);
    CHECK(again.id != fresh.id);
    CHECK(ids.lineage_of(again.id) == principal);
    CHECK_THROWS(whitewash_maybe_reset(base, 3, 0, ids));
}
