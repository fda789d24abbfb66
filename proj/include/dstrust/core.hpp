#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace dstrust {

/// Opaque agent identifier as seen by the recommender engine.
class AgentId {
public:
    constexpr AgentId() = default;
    constexpr explicit AgentId(std::uint64_t value) : value_(value) {}

    constexpr std::uint64_t value() const { return value_; }

    auto operator<=>(const AgentId&) const = default;

private:
    std::uint64_t value_ = 0;
};

std::string to_string(AgentId id);

/// An issued identity together with the principal controlling it.
///
/// The lineage is simulator-side bookkeeping: a Sybil's fake identities and a
/// whitewasher's successive identities point at the principal that created
/// them. Only `id` is ever handed to the recommender engine.
struct Identity {
    AgentId id;
    std::optional<AgentId> lineage;
};

class UnknownIdentity : public std::invalid_argument {
public:
    explicit UnknownIdentity(AgentId id);
};

/// Monotone id issuer. Ids start at `first` and increase by one per call, so
/// two runs that issue in the same order see identical sequences.
class IdRegistry {
public:
    explicit IdRegistry(std::uint64_t first = 1) : next_(first) {}

    Identity fresh(std::optional<AgentId> lineage = std::nullopt);

    bool is_known(AgentId id) const { return issued_.contains(id.value()); }
    std::optional<AgentId> lineage_of(AgentId id) const;
    std::size_t issued_count() const { return issued_.size(); }

private:
    std::uint64_t next_;
    std::unordered_map<std::uint64_t, std::optional<AgentId>> issued_;
};

enum class Verdict { Trustworthy, Untrustworthy };

constexpr Verdict invert(Verdict v)
{
    return v == Verdict::Trustworthy ? Verdict::Untrustworthy : Verdict::Trustworthy;
}

/// 'T' or 'N'.
char to_char(Verdict v);
Verdict verdict_from_char(char c);

class InvalidProbability : public std::invalid_argument {
public:
    explicit InvalidProbability(double value);
};

/// A real number in [0, 1]. Construction outside the range throws.
class Probability {
public:
    constexpr Probability() = default;
    explicit Probability(double value);

    constexpr double value() const { return value_; }
    constexpr operator double() const { return value_; }

private:
    double value_ = 0.0;
};

struct Recommendation {
    Recommendation(AgentId advisor, AgentId subject, Verdict verdict, Probability credibility_at_issue);

    AgentId advisor;
    AgentId subject;
    Verdict verdict;
    Probability credibility_at_issue;
};

} // namespace dstrust

template <>
struct std::hash<dstrust::AgentId> {
    std::size_t operator()(const dstrust::AgentId& id) const noexcept
    {
        return std::hash<std::uint64_t>{}(id.value());
    }
};
