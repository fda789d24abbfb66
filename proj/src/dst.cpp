#include "dstrust/dst.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dstrust {

FrameDistribution::FrameDistribution(double trust, double distrust, double uncertainty)
    : trust_(Probability(trust))
    , distrust_(Probability(distrust))
    , uncertainty_(Probability(uncertainty))
{
    const double sum = trust_ + distrust_ + uncertainty_;
    if (std::abs(sum - 1.0) > kMassSumTolerance) {
        std::ostringstream msg;
        msg << "mass components must sum to 1, got " << sum;
        throw std::invalid_argument(msg.str());
    }
}

namespace {

std::string describe_conflict(const MassFunction& a, const MassFunction& b, double k)
{
    std::ostringstream msg;
    msg << "total conflict combining (" << a.trust() << ", " << a.distrust() << ", " << a.uncertainty()
        << ") with (" << b.trust() << ", " << b.distrust() << ", " << b.uncertainty() << "), K = " << k;
    return msg.str();
}

} // namespace

TotalConflict::TotalConflict(const MassFunction& a, const MassFunction& b, double normalization)
    : std::runtime_error(describe_conflict(a, b, normalization))
    , normalization_(normalization)
{
}

MassFunction mass_from_recommendation(Verdict verdict, Probability credibility)
{
    const double lambda = std::min(credibility.value(), kCredibilityClamp);
    if (verdict == Verdict::Trustworthy) {
        return {lambda, 0.0, 1.0 - lambda};
    }
    return {0.0, lambda, 1.0 - lambda};
}

BeliefTriple combine(const MassFunction& a, const MassFunction& b)
{
    // The vacuous mass is neutral; returning the other operand keeps that
    // exact instead of within rounding.
    if (b == MassFunction::vacuous()) {
        return a;
    }
    if (a == MassFunction::vacuous()) {
        return b;
    }
    // Cross terms are summed first so that combine(a, b) == combine(b, a)
    // bit for bit.
    const double t = a.trust() * b.trust() + (a.trust() * b.uncertainty() + a.uncertainty() * b.trust());
    const double n =
        a.distrust() * b.distrust() + (a.distrust() * b.uncertainty() + a.uncertainty() * b.distrust());
    const double u = a.uncertainty() * b.uncertainty();

    // K = 1 - (a.T b.N + a.N b.T), summed from the agreeing products so it
    // stays accurate when the conflict is within rounding of 1 and no ratio
    // below can round above 1.
    const double k = t + n + u;
    if (!(k > kTotalConflictThreshold)) {
        throw TotalConflict(a, b, k);
    }

    // theta_U is divided out rather than taken as the remainder: tiny residual
    // uncertainty is what keeps later folds away from total conflict.
    return {t / k, n / k, u / k};
}

BeliefTriple combine_all(std::span<const MassFunction> masses)
{
    if (masses.empty()) {
        throw EmptyEvidence();
    }
    BeliefTriple acc = masses.front();
    for (const auto& m : masses.subspan(1)) {
        acc = combine(acc, m);
    }
    return acc;
}

Verdict decide(const BeliefTriple& beliefs)
{
    return beliefs.trust() > beliefs.distrust() ? Verdict::Trustworthy : Verdict::Untrustworthy;
}

Probability estimated_trust(const BeliefTriple& beliefs)
{
    const double committed = beliefs.trust() + beliefs.distrust();
    if (committed <= 1e-12) {
        return Probability(0.5);
    }
    return Probability(std::clamp(beliefs.trust() / committed, 0.0, 1.0));
}

} // namespace dstrust
