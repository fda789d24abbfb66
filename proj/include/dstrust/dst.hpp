#pragma once

#include "dstrust/core.hpp"

#include <span>
#include <stdexcept>

namespace dstrust {

/// Tolerance on "sums to one" for masses and belief triples.
inline constexpr double kMassSumTolerance = 1e-9;

/// Upper clamp on credibility when it is turned into a mass. Keeps two fully
/// credible but contradicting advisors from producing total conflict.
inline constexpr double kCredibilityClamp = 1.0 - 1e-6;

/// A normalization constant at or below this value counts as total conflict.
inline constexpr double kTotalConflictThreshold = 1e-300;

/// A normalized distribution over the frame {T, N, U}.
///
/// Used both for one advisor's basic probability assignment and for the
/// combined beliefs; the two are aliased below so signatures say which one
/// they mean.
class FrameDistribution {
public:
    /// Throws InvalidProbability on an out-of-range component and
    /// std::invalid_argument when the components do not sum to one.
    FrameDistribution(double trust, double distrust, double uncertainty);

    double trust() const { return trust_; }
    double distrust() const { return distrust_; }
    double uncertainty() const { return uncertainty_; }

    bool operator==(const FrameDistribution&) const = default;

    static FrameDistribution vacuous() { return {0.0, 0.0, 1.0}; }

private:
    double trust_;
    double distrust_;
    double uncertainty_;
};

using MassFunction = FrameDistribution;
using BeliefTriple = FrameDistribution;

class TotalConflict : public std::runtime_error {
public:
    TotalConflict(const MassFunction& a, const MassFunction& b, double normalization);

    double normalization() const { return normalization_; }

private:
    double normalization_;
};

class EmptyEvidence : public std::invalid_argument {
public:
    EmptyEvidence() : std::invalid_argument("combine_all needs at least one mass function") {}
};

/// Simple support function for one verdict: the credibility goes to the
/// endorsed hypothesis and the rest to uncertainty.
MassFunction mass_from_recommendation(Verdict verdict, Probability credibility);

/// Dempster's rule on {T, N, U} with the usual 1 - conflict normalization.
BeliefTriple combine(const MassFunction& a, const MassFunction& b);

/// Left fold of `combine`; a singleton list comes back unchanged.
BeliefTriple combine_all(std::span<const MassFunction> masses);

/// Trustworthy iff belief in T strictly exceeds belief in N.
Verdict decide(const BeliefTriple& beliefs);

/// theta_T / (theta_T + theta_N), or 0.5 when neither side has any belief.
Probability estimated_trust(const BeliefTriple& beliefs);

} // namespace dstrust
