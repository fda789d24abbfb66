#pragma once

#include "dstrust/core.hpp"
#include "dstrust/credibility.hpp"
#include "dstrust/dst.hpp"
#include "dstrust/incentives.hpp"
#include "dstrust/learner.hpp"

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dstrust {

/// What the recommender engine can see of an advisor: an id and an answer.
class Advisor {
public:
    virtual ~Advisor() = default;

    virtual AgentId id() const = 0;

    /// None means the advisor declines to answer this request.
    virtual std::optional<Recommendation> recommend(AgentId subject, std::span<const double> subject_features,
                                                    Probability credibility_at_issue) const = 0;
};

/// An advisor following its honest pipeline.
class HonestAdvisor final : public Advisor {
public:
    explicit HonestAdvisor(AdvisorState state) : state_(std::move(state)) {}

    AgentId id() const override { return state_.id; }
    std::optional<Recommendation> recommend(AgentId subject, std::span<const double> subject_features,
                                            Probability credibility_at_issue) const override;

    const AdvisorState& state() const { return state_; }

private:
    AdvisorState state_;
};

/// Resolves an eligible id to the advisor answering for it.
using AdvisorDirectory = std::function<const Advisor&(AgentId)>;

struct RecommendationRequest {
    AgentId requester;
    AgentId subject;
    std::vector<double> subject_features;
    std::vector<AgentId> eligible;
};

struct CredibilityChange {
    AgentId advisor;
    Verdict given;
    Probability before;
    Probability after;
};

struct RoundOutcome {
    BeliefTriple beliefs = BeliefTriple::vacuous();
    Verdict verdict = Verdict::Untrustworthy;
    Probability estimated_trust = Probability(0.5);
    std::vector<Recommendation> responders;
    std::vector<AgentId> abstainers;
    // Eligible advisors skipped because the requester's budget toward them
    // was exhausted.
    std::vector<AgentId> not_polled;
    std::vector<CredibilityChange> credibility_changes;
};

class RoundFailure : public std::runtime_error {
public:
    RoundFailure(const RecommendationRequest& request, const std::string& cause);
};

/// One full recommendation round.
///
/// Polls every eligible advisor the requester can still afford to ask,
/// weights each answer by the credibility held before the round, combines
/// the answers, decides, then writes back credibility and answer counts. When
/// nobody answers the outcome is the vacuous belief and an Untrustworthy
/// verdict.
RoundOutcome run_round(const RecommendationRequest& request, const AdvisorDirectory& advisors,
                       CredibilityLedger& credibility, InquiryLedger& inquiries);

/// One-line JSON record of a round for the trace log.
std::string round_trace_json(const RecommendationRequest& request, const RoundOutcome& outcome,
                             std::size_t iteration, std::size_t item);

} // namespace dstrust
