#pragma once

#include "dstrust/core.hpp"
#include "dstrust/engine.hpp"
#include "dstrust/learner.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dstrust {

enum class AttackKind { None, Sybil, Camouflage, Whitewashing };

std::string to_string(AttackKind kind);
/// Accepts none, sybil, camouflage, whitewash and whitewashing.
AttackKind parse_attack_kind(std::string_view text);

struct BehaviorProfile {
    AttackKind kind = AttackKind::None;
    std::size_t fake_identity_count = 0; // Sybil
    std::size_t switch_iteration = 0;    // Camouflage
    std::size_t reset_period = 0;        // Whitewashing

    static BehaviorProfile honest() { return {}; }
    static BehaviorProfile sybil(std::size_t fake_identities) { return {AttackKind::Sybil, fake_identities, 0, 0}; }
    static BehaviorProfile camouflage(std::size_t switch_at) { return {AttackKind::Camouflage, 0, switch_at, 0}; }
    static BehaviorProfile whitewashing(std::size_t period) { return {AttackKind::Whitewashing, 0, 0, period}; }

    /// Throws std::invalid_argument when a required parameter is zero or a
    /// parameter belonging to another kind is set.
    void validate() const;
};

/// Honest before `switch_iteration`, inverted from it onward.
Verdict camouflage_verdict(Verdict honest, std::size_t current_iteration, std::size_t switch_iteration);

/// An attacker identity. It runs the honest pipeline, then applies its
/// profile's policy to the result. Attackers always answer; they never
/// withdraw on low self-assessed accuracy.
class DishonestAdvisor final : public Advisor {
public:
    DishonestAdvisor(AdvisorState state, BehaviorProfile profile);

    AgentId id() const override { return state_.id; }
    std::optional<Recommendation> recommend(AgentId subject, std::span<const double> subject_features,
                                            Probability credibility_at_issue) const override;

    /// Iteration clock, advanced by the simulator between iterations.
    void set_iteration(std::size_t iteration) { iteration_ = iteration; }
    std::size_t iteration() const { return iteration_; }

    const AdvisorState& state() const { return state_; }
    const BehaviorProfile& profile() const { return profile_; }

    /// The verdict the policy turns `honest` into at the current iteration.
    Verdict apply_policy(Verdict honest) const;

private:
    AdvisorState state_;
    BehaviorProfile profile_;
    std::size_t iteration_ = 1;
};

/// `count` fresh identities whose lineage is the attacker, each carrying the
/// attacker's data and trained pipeline.
std::vector<AdvisorState> sybil_expand(const AdvisorState& attacker, std::size_t count, IdRegistry& ids);

/// Same pipeline under a fresh id when `current_iteration` is a multiple of
/// `reset_period`; otherwise an unchanged copy. The new identity's lineage is
/// the attacker's principal, so the chain of ids stays attributable.
AdvisorState whitewash_maybe_reset(const AdvisorState& attacker, std::size_t current_iteration,
                                   std::size_t reset_period, IdRegistry& ids);

} // namespace dstrust
