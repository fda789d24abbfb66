#include "dstrust/core.hpp"

#include <cmath>

namespace dstrust {

std::string to_string(AgentId id)
{
    return std::to_string(id.value());
}

UnknownIdentity::UnknownIdentity(AgentId id)
    : std::invalid_argument("unknown identity " + to_string(id))
{
}

Identity IdRegistry::fresh(std::optional<AgentId> lineage)
{
    if (lineage && !is_known(*lineage)) {
        throw UnknownIdentity(*lineage);
    }
    AgentId id{next_++};
    issued_.emplace(id.value(), lineage);
    return Identity{id, lineage};
}

std::optional<AgentId> IdRegistry::lineage_of(AgentId id) const
{
    auto it = issued_.find(id.value());
    if (it == issued_.end()) {
        throw UnknownIdentity(id);
    }
    return it->second;
}

char to_char(Verdict v)
{
    return v == Verdict::Trustworthy ? 'T' : 'N';
}

Verdict verdict_from_char(char c)
{
    switch (c) {
    case 'T':
        return Verdict::Trustworthy;
    case 'N':
        return Verdict::Untrustworthy;
    default:
        throw std::invalid_argument(std::string("verdict must be T or N, got '") + c + "'");
    }
}

InvalidProbability::InvalidProbability(double value)
    : std::invalid_argument("probability out of [0,1]: " + std::to_string(value))
{
}

Probability::Probability(double value) : value_(value)
{
    if (!(value >= 0.0 && value <= 1.0)) {
        throw InvalidProbability(value);
    }
}

Recommendation::Recommendation(AgentId advisor_, AgentId subject_, Verdict verdict_,
                               Probability credibility_at_issue_)
    : advisor(advisor_)
    , subject(subject_)
    , verdict(verdict_)
    , credibility_at_issue(credibility_at_issue_)
{
    if (advisor == subject) {
        throw std::invalid_argument("an agent cannot recommend itself (" + to_string(advisor) + ")");
    }
}

} // namespace dstrust
