#include "dstrust/adversary.hpp"

#include <stdexcept>

namespace dstrust {

std::string to_string(AttackKind kind)
{
    switch (kind) {
    case AttackKind::None:
        return "none";
    case AttackKind::Sybil:
        return "sybil";
    case AttackKind::Camouflage:
        return "camouflage";
    case AttackKind::Whitewashing:
        return "whitewash";
    }
    return "unknown";
}

AttackKind parse_attack_kind(std::string_view text)
{
    if (text == "none") {
        return AttackKind::None;
    }
    if (text == "sybil") {
        return AttackKind::Sybil;
    }
    if (text == "camouflage") {
        return AttackKind::Camouflage;
    }
    if (text == "whitewash" || text == "whitewashing") {
        return AttackKind::Whitewashing;
    }
    throw std::invalid_argument("unknown attack kind '" + std::string(text) + "'");
}

void BehaviorProfile::validate() const
{
    const bool sybil = kind == AttackKind::Sybil;
    const bool camo = kind == AttackKind::Camouflage;
    const bool white = kind == AttackKind::Whitewashing;
    if (sybil != (fake_identity_count != 0) || camo != (switch_iteration != 0) || white != (reset_period != 0)) {
        throw std::invalid_argument("behavior profile '" + to_string(kind) +
                                    "' needs exactly its own parameter, and it must be >= 1");
    }
}

Verdict camouflage_verdict(Verdict honest, std::size_t current_iteration, std::size_t switch_iteration)
{
    if (current_iteration == 0 || switch_iteration == 0) {
        throw std::invalid_argument("iterations are numbered from 1");
    }
    return current_iteration < switch_iteration ? honest : invert(honest);
}

DishonestAdvisor::DishonestAdvisor(AdvisorState state, BehaviorProfile profile)
    : state_(std::move(state))
    , profile_(profile)
{
    profile_.validate();
    if (profile_.kind == AttackKind::None) {
        throw std::invalid_argument("a dishonest advisor needs an attack profile");
    }
}

Verdict DishonestAdvisor::apply_policy(Verdict honest) const
{
    if (profile_.kind == AttackKind::Camouflage) {
        return camouflage_verdict(honest, iteration_, profile_.switch_iteration);
    }
    return invert(honest);
}

std::optional<Recommendation> DishonestAdvisor::recommend(AgentId subject, std::span<const double> subject_features,
                                                          Probability credibility_at_issue) const
{
    const Verdict honest = state_.tree.predict(subject_features);
    return Recommendation(state_.id, subject, apply_policy(honest), credibility_at_issue);
}

std::vector<AdvisorState> sybil_expand(const AdvisorState& attacker, std::size_t count, IdRegistry& ids)
{
    if (count == 0) {
        throw std::invalid_argument("sybil_expand needs count >= 1");
    }
    std::vector<AdvisorState> fakes;
    fakes.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        AdvisorState fake = attacker;
        fake.id = ids.fresh(attacker.id).id;
        fakes.push_back(std::move(fake));
    }
    return fakes;
}

AdvisorState whitewash_maybe_reset(const AdvisorState& attacker, std::size_t current_iteration,
                                   std::size_t reset_period, IdRegistry& ids)
{
    if (reset_period == 0) {
        throw std::invalid_argument("reset_period must be >= 1");
    }
    AdvisorState next = attacker;
    if (current_iteration % reset_period == 0) {
        const AgentId principal = ids.lineage_of(attacker.id).value_or(attacker.id);
        next.id = ids.fresh(principal).id;
    }
    return next;
}

} // namespace dstrust
