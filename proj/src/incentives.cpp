#include "dstrust/incentives.hpp"

#include <cmath>
#include <ostream>

namespace dstrust {

BudgetExhausted::BudgetExhausted(AgentId asker, AgentId provider)
    : std::runtime_error("inquiry budget of " + to_string(asker) + " toward " + to_string(provider) +
                         " is exhausted")
{
}

std::uint64_t replenishment(std::uint64_t answered, Probability credibility)
{
    const double scaled = static_cast<double>(answered) * credibility.value();
    // Products such as 3 * 0.1 can land one ulp above an integer.
    const auto bonus = static_cast<std::uint64_t>(std::ceil(scaled - 1e-9));
    return answered + bonus + 1;
}

InquiryLedger::InquiryLedger(Options options) : options_(options)
{
    if (options_.period_length == 0) {
        throw std::invalid_argument("inquiry period_length must be positive");
    }
}

std::uint64_t InquiryLedger::budget(AgentId asker, AgentId provider) const
{
    auto it = budget_.find({asker, provider});
    return it == budget_.end() ? options_.initial_budget + replenishments_ : it->second;
}

std::uint64_t InquiryLedger::answered(AgentId answerer, AgentId requester) const
{
    auto it = answered_.find({answerer, requester});
    return it == answered_.end() ? 0 : it->second;
}

std::uint64_t InquiryLedger::consume_inquiry(AgentId asker, AgentId provider)
{
    const std::uint64_t left = budget(asker, provider);
    if (left == 0) {
        throw BudgetExhausted(asker, provider);
    }
    budget_.insert_or_assign({asker, provider}, left - 1);
    return left - 1;
}

void InquiryLedger::record_answer(AgentId answerer, AgentId requester)
{
    ++answered_[{answerer, requester}];
}

void InquiryLedger::replenish(const CredibilityLookup& credibility)
{
    for (const auto& [pair, count] : answered_) {
        budget_.try_emplace(pair, budget(pair.first, pair.second));
    }
    for (auto& [pair, amount] : budget_) {
        const auto& [x, s] = pair;
        amount += replenishment(answered(x, s), credibility(s, x));
    }
    ++replenishments_;
    answered_.clear();
}

bool InquiryLedger::end_round(const CredibilityLookup& credibility)
{
    ++rounds_;
    if (rounds_ % options_.period_length != 0) {
        return false;
    }
    replenish(credibility);
    return true;
}

void InquiryLedger::write(std::ostream& out) const
{
    out << "# initial " << options_.initial_budget << " period " << options_.period_length << " untracked "
        << options_.initial_budget + replenishments_ << '\n';
    std::map<Pair, std::uint64_t> rows = budget_;
    for (const auto& [pair, count] : answered_) {
        rows.try_emplace(pair, budget(pair.first, pair.second));
    }
    for (const auto& [pair, amount] : rows) {
        out << pair.first.value() << ' ' << pair.second.value() << ' ' << amount << ' '
            << answered(pair.first, pair.second) << '\n';
    }
}

} // namespace dstrust
