#pragma once

#include "dstrust/core.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <utility>

namespace dstrust {

class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted(AgentId asker, AgentId provider);
};

/// Cr(s -> x): credibility of `subject` as believed by `believer`.
using CredibilityLookup = std::function<Probability(AgentId believer, AgentId subject)>;

/// Inquiry budgets between agents and the answers that earn them.
///
/// budget(x, s) is how many more inquiries x may send to s. Every
/// `period_length` rounds each tracked pair gains
/// |E| + ceil(|E| * Cr(s -> x)) + 1, where |E| counts the inquiries from s
/// that x answered during the period.
class InquiryLedger {
public:
    struct Options {
        std::uint64_t initial_budget = 10;
        std::uint64_t period_length = 1;
    };

    InquiryLedger() : InquiryLedger(Options{}) {}
    explicit InquiryLedger(Options options);

    std::uint64_t budget(AgentId asker, AgentId provider) const;
    std::uint64_t answered(AgentId answerer, AgentId requester) const;
    const Options& options() const { return options_; }

    /// Spends one unit and returns what is left; throws BudgetExhausted at zero.
    std::uint64_t consume_inquiry(AgentId asker, AgentId provider);
    void record_answer(AgentId answerer, AgentId requester);

    /// Applies one replenishment to every pair and clears the answer counts.
    /// Pairs that were never spent from or answered on are kept implicitly.
    void replenish(const CredibilityLookup& credibility);

    /// Counts a finished round and replenishes on period boundaries. Returns
    /// true when a replenishment happened.
    bool end_round(const CredibilityLookup& credibility);

    void write(std::ostream& out) const;

private:
    using Pair = std::pair<AgentId, AgentId>;

    Options options_;
    std::uint64_t rounds_ = 0;
    // Pairs never touched hold initial_budget plus one per replenishment.
    std::uint64_t replenishments_ = 0;
    std::map<Pair, std::uint64_t> budget_;
    std::map<Pair, std::uint64_t> answered_;
};

/// |E| + ceil(|E| * credibility) + 1.
std::uint64_t replenishment(std::uint64_t answered, Probability credibility);

} // namespace dstrust
