#include "dstrust/credibility.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace dstrust {

CredibilityLedger::CredibilityLedger(Probability initial_score) : initial_(initial_score) {}

Probability CredibilityLedger::score(AgentId advisor) const
{
    auto it = scores_.find(advisor);
    return it == scores_.end() ? initial_ : it->second;
}

void CredibilityLedger::set(AgentId advisor, Probability score)
{
    scores_.insert_or_assign(advisor, score);
}

void CredibilityLedger::write(std::ostream& out) const
{
    out << std::setprecision(17);
    out << "# initial " << initial_.value() << '\n';
    for (const auto& [id, score] : scores_) {
        out << id.value() << ' ' << score.value() << '\n';
    }
}

CredibilityLedger CredibilityLedger::read(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("credibility table is empty");
    }
    std::istringstream header(line);
    std::string hash, key;
    double initial = 0.0;
    if (!(header >> hash >> key >> initial) || hash != "#" || key != "initial") {
        throw std::invalid_argument("credibility table must start with '# initial <score>'");
    }
    CredibilityLedger ledger{Probability(initial)};
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream row(line);
        std::uint64_t id = 0;
        double score = 0.0;
        if (!(row >> id >> score)) {
            throw std::invalid_argument("malformed credibility row at line " + std::to_string(line_no));
        }
        ledger.set(AgentId{id}, Probability(score));
    }
    return ledger;
}

DuplicateRecommendation::DuplicateRecommendation(AgentId advisor)
    : std::invalid_argument("advisor " + to_string(advisor) + " recommended twice in one round")
{
}

Probability updated_credibility(Probability current, Verdict given, const BeliefTriple& beliefs)
{
    const double theta_t = beliefs.trust();
    const double theta_n = beliefs.distrust();
    if (theta_t == theta_n) {
        return current;
    }
    const Verdict decided = theta_t > theta_n ? Verdict::Trustworthy : Verdict::Untrustworthy;
    if (given == decided) {
        const double x = std::max(theta_t, theta_n);
        return Probability(std::min(1.0, current + x));
    }
    const double y = std::min(theta_t, theta_n);
    return Probability(std::abs(current - y));
}

Probability update_credibility(CredibilityLedger& ledger, AgentId advisor, Verdict given,
                               const BeliefTriple& beliefs)
{
    const Probability next = updated_credibility(ledger.score(advisor), given, beliefs);
    ledger.set(advisor, next);
    return next;
}

void batch_update(CredibilityLedger& ledger, std::span<const Recommendation> recommendations,
                  const BeliefTriple& beliefs)
{
    std::set<AgentId> seen;
    for (const auto& rec : recommendations) {
        if (rec.subject != recommendations.front().subject) {
            throw std::invalid_argument("batch_update: recommendations target different subjects");
        }
        if (!seen.insert(rec.advisor).second) {
            throw DuplicateRecommendation(rec.advisor);
        }
    }
    for (const auto& rec : recommendations) {
        update_credibility(ledger, rec.advisor, rec.verdict, beliefs);
    }
}

} // namespace dstrust
