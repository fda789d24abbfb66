#pragma once

#include "dstrust/core.hpp"
#include "dstrust/dst.hpp"

#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>

namespace dstrust {

/// The recommender's belief in each advisor's honesty, phi(r -> a).
///
/// Unknown advisors read as `initial_score()`; reading never inserts.
class CredibilityLedger {
public:
    explicit CredibilityLedger(Probability initial_score = Probability(0.5));

    Probability score(AgentId advisor) const;
    void set(AgentId advisor, Probability score);
    bool contains(AgentId advisor) const { return scores_.contains(advisor); }

    Probability initial_score() const { return initial_; }
    const std::map<AgentId, Probability>& scores() const { return scores_; }

    /// Flat text table: a `# initial <score>` line, then `<id> <score>` rows.
    void write(std::ostream& out) const;
    static CredibilityLedger read(std::istream& in);

private:
    Probability initial_;
    std::map<AgentId, Probability> scores_;
};

class DuplicateRecommendation : public std::invalid_argument {
public:
    explicit DuplicateRecommendation(AgentId advisor);
};

/// The update rule applied to one advisor after a round.
///
/// With X = max(theta_T, theta_N) and Y = min(theta_T, theta_N): a verdict on
/// the winning side moves phi to min(1, phi + X); a verdict on the losing side
/// moves it to |phi - Y|; an exact tie leaves phi alone.
Probability updated_credibility(Probability current, Verdict given, const BeliefTriple& beliefs);

Probability update_credibility(CredibilityLedger& ledger, AgentId advisor, Verdict given,
                               const BeliefTriple& beliefs);

/// Updates every advisor in `recommendations` once. Throws
/// DuplicateRecommendation before touching the ledger if an advisor appears
/// twice, and std::invalid_argument if the subjects differ.
void batch_update(CredibilityLedger& ledger, std::span<const Recommendation> recommendations,
                  const BeliefTriple& beliefs);

} // namespace dstrust
