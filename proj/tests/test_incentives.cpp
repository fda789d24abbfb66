#include "doctest.h"

#include "oracles.hpp"

#include "dstrust/incentives.hpp"

#include <random>
#include <sstream>

using namespace dstrust;

namespace {

const AgentId x(1), s(2), other(3);

CredibilityLookup constant(double c)
{
    return [c](AgentId, AgentId) { return Probability(c); };
}

// Drives one pair to |E| answers and replenishes at credibility c.
std::uint64_t after_period(std::uint64_t answers, double c)
{
    InquiryLedger ledger;
    for (std::uint64_t i = 0; i < answers; ++i) {
        ledger.record_answer(x, s);
    }
    ledger.replenish(constant(c));
    return ledger.budget(x, s);
}

} // namespace

TEST_CASE("spending the budget")
{
    InquiryLedger ledger;
    CHECK(ledger.budget(x, s) == 10);
    CHECK(ledger.consume_inquiry(x, s) == 9);
    for (int i = 0; i < 9; ++i) {
        ledger.consume_inquiry(x, s);
    }
    CHECK(ledger.budget(x, s) == 0);
    CHECK_THROWS_AS(ledger.consume_inquiry(x, s), BudgetExhausted);
    CHECK(ledger.budget(x, s) == 0);
    CHECK(ledger.budget(s, x) == 10);

    InquiryLedger empty({0, 1});
    CHECK_THROWS_AS(empty.consume_inquiry(x, s), BudgetExhausted);
}

TEST_CASE("answer counts are per ordered pair")
{
    InquiryLedger ledger;
    ledger.record_answer(x, s);
    CHECK(ledger.answered(x, s) == 1);
    ledger.record_answer(x, s);
    ledger.record_answer(x, s);
    CHECK(ledger.answered(x, s) == 3);
    CHECK(ledger.answered(s, x) == 0);
    CHECK(ledger.answered(x, other) == 0);
}

TEST_CASE("replenishment worked examples")
{
    CHECK(after_period(3, 0.5) == 16);
    CHECK(after_period(0, 0.0) == 11);
    CHECK(after_period(0, 0.77) == 11);
    CHECK(after_period(4, 1.0) == 19);
    CHECK(replenishment(3, Probability(0.5)) == 6);
    CHECK(replenishment(0, Probability(0.3)) == 1);
    CHECK(replenishment(4, Probability(1.0)) == 9);
}

TEST_CASE("replenishment matches an integer ceiling evaluator")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 5000; ++i) {
        const std::uint64_t e = rng() % 500;
        const std::uint64_t k = rng() % 1001;
        const double cr = static_cast<double>(k) / 1000.0;
        REQUIRE(replenishment(e, Probability(cr)) == oracle::replenishment(e, k, 1000));
    }
}

TEST_CASE("replenishment clears answers and never lowers a budget")
{
    InquiryLedger ledger;
    ledger.consume_inquiry(x, s);
    ledger.consume_inquiry(s, x);
    ledger.record_answer(x, s);
    ledger.record_answer(x, s);
    ledger.replenish(constant(0.3));
    CHECK(ledger.answered(x, s) == 0);
    CHECK(ledger.budget(x, s) == 9 + 2 + 1 + 1);
    CHECK(ledger.budget(s, x) == 9 + 1);
}

TEST_CASE("the lookup sees the requester as believer")
{
    InquiryLedger ledger;
    ledger.record_answer(x, s);
    AgentId believer, subject;
    ledger.replenish([&](AgentId b, AgentId a) {
        believer = b;
        subject = a;
        return Probability(1.0);
    });
    CHECK(believer == s);
    CHECK(subject == x);
}

TEST_CASE("participation and credibility dominance")
{
    for (std::uint64_t e = 0; e < 30; ++e) {
        for (int c = 0; c <= 20; ++c) {
            const double cr = c / 20.0;
            CHECK(after_period(e + 1, cr) > after_period(e, cr));
            if (e >= 1 && c > 0) {
                CHECK(after_period(e, cr) >= after_period(e, (c - 1) / 20.0));
            }
        }
    }
}

TEST_CASE("periods longer than one round")
{
    InquiryLedger ledger({10, 3});
    ledger.consume_inquiry(x, s);
    CHECK_FALSE(ledger.end_round(constant(0.5)));
    CHECK_FALSE(ledger.end_round(constant(0.5)));
    CHECK(ledger.budget(x, s) == 9);
    CHECK(ledger.end_round(constant(0.5)));
    CHECK(ledger.budget(x, s) == 10);
    CHECK_THROWS_AS(InquiryLedger({10, 0}), std::invalid_argument);
}

TEST_CASE("snapshot lists tracked pairs")
{
    InquiryLedger ledger;
    ledger.consume_inquiry(x, s);
    ledger.record_answer(s, x);
    std::ostringstream out;
    ledger.write(out);
    CHECK(out.str() == "# initial 10 period 1 untracked 10\n1 2 9 0\n2 1 10 1\n");
    ledger.replenish(constant(1.0));
    CHECK(ledger.budget(other, x) == 11);
}
