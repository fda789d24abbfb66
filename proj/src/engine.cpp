#include "dstrust/engine.hpp"

#include "json.hpp"

#include <set>

namespace dstrust {

std::optional<Recommendation> HonestAdvisor::recommend(AgentId subject, std::span<const double> subject_features,
                                                       Probability credibility_at_issue) const
{
    return derive_recommendation(state_, subject, subject_features, credibility_at_issue);
}

RoundFailure::RoundFailure(const RecommendationRequest& request, const std::string& cause)
    : std::runtime_error("round for subject " + to_string(request.subject) + " requested by " +
                         to_string(request.requester) + " with " + std::to_string(request.eligible.size()) +
                         " eligible advisors failed: " + cause)
{
}

namespace {

void validate(const RecommendationRequest& request)
{
    if (request.eligible.empty()) {
        throw std::invalid_argument("recommendation request has no eligible advisors");
    }
    std::set<AgentId> seen;
    for (auto id : request.eligible) {
        if (id == request.subject || id == request.requester) {
            throw std::invalid_argument("subject and requester may not be eligible advisors (id " + to_string(id) +
                                        ")");
        }
        if (!seen.insert(id).second) {
            throw std::invalid_argument("advisor " + to_string(id) + " listed twice in the eligible set");
        }
    }
}

} // namespace

RoundOutcome run_round(const RecommendationRequest& request, const AdvisorDirectory& advisors,
                       CredibilityLedger& credibility, InquiryLedger& inquiries)
{
    validate(request);
    RoundOutcome outcome;

    // Collection. Credibility is read here and not written until the end.
    std::vector<MassFunction> masses;
    for (auto id : request.eligible) {
        try {
            inquiries.consume_inquiry(request.requester, id);
        } catch (const BudgetExhausted&) {
            outcome.not_polled.push_back(id);
            continue;
        }
        const Advisor& advisor = advisors(id);
        auto rec = advisor.recommend(request.subject, request.subject_features, credibility.score(id));
        if (!rec) {
            outcome.abstainers.push_back(id);
            continue;
        }
        if (rec->advisor != id || rec->subject != request.subject) {
            throw RoundFailure(request, "advisor " + to_string(id) + " answered for the wrong identity or subject");
        }
        masses.push_back(mass_from_recommendation(rec->verdict, rec->credibility_at_issue));
        outcome.responders.push_back(*rec);
    }

    if (outcome.responders.empty()) {
        return outcome;
    }

    try {
        outcome.beliefs = combine_all(masses);
    } catch (const TotalConflict& e) {
        throw RoundFailure(request, e.what());
    }
    outcome.verdict = decide(outcome.beliefs);
    outcome.estimated_trust = estimated_trust(outcome.beliefs);

    outcome.credibility_changes.reserve(outcome.responders.size());
    for (const auto& rec : outcome.responders) {
        outcome.credibility_changes.push_back({rec.advisor, rec.verdict, credibility.score(rec.advisor), {}});
    }
    batch_update(credibility, outcome.responders, outcome.beliefs);
    for (auto& change : outcome.credibility_changes) {
        change.after = credibility.score(change.advisor);
    }

    for (const auto& rec : outcome.responders) {
        inquiries.record_answer(rec.advisor, request.requester);
    }
    return outcome;
}

std::string round_trace_json(const RecommendationRequest& request, const RoundOutcome& outcome,
                             std::size_t iteration, std::size_t item)
{
    using nlohmann::json;
    json j;
    j["iteration"] = iteration;
    j["item"] = item;
    j["requester"] = request.requester.value();
    j["subject"] = request.subject.value();
    j["eligible"] = request.eligible.size();
    j["beliefs"] = {outcome.beliefs.trust(), outcome.beliefs.distrust(), outcome.beliefs.uncertainty()};
    j["verdict"] = std::string(1, to_char(outcome.verdict));
    j["estimated_trust"] = outcome.estimated_trust.value();
    json responders = json::array();
    for (const auto& change : outcome.credibility_changes) {
        responders.push_back({{"advisor", change.advisor.value()},
                              {"verdict", std::string(1, to_char(change.given))},
                              {"before", change.before.value()},
                              {"after", change.after.value()}});
    }
    j["responders"] = std::move(responders);
    json abstainers = json::array();
    for (auto id : outcome.abstainers) {
        abstainers.push_back(id.value());
    }
    j["abstainers"] = std::move(abstainers);
    json skipped = json::array();
    for (auto id : outcome.not_polled) {
        skipped.push_back(id.value());
    }
    j["not_polled"] = std::move(skipped);
    return j.dump();
}

} // namespace dstrust
