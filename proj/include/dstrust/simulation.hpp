#pragma once

#include "dstrust/adversary.hpp"
#include "dstrust/core.hpp"
#include "dstrust/credibility.hpp"
#include "dstrust/incentives.hpp"
#include "dstrust/learner.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dstrust {

/// A scenario setting that failed validation; `key()` names the setting.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& message);
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct ScenarioConfig {
    std::optional<std::uint64_t> seed;
    std::size_t advisors = 20;
    double attacker_fraction = 0.3;
    AttackKind attack = AttackKind::None;
    std::size_t sybil_count = 4;
    std::size_t switch_iteration = 5;
    std::size_t reset_period = 3;
    std::size_t items = 10;
    std::size_t iterations = 10;
    double participation_threshold = 0.7;
    TreeParams tree;
    std::size_t k_folds = 10;
    double initial_credibility = 0.5;
    std::uint64_t initial_budget = 10;
    std::uint64_t budget_period = 1;

    // Synthetic source.
    double noise = 0.1;
    std::size_t records_per_advisor = 40;
    std::size_t ratings_per_item = 20;

    // Ratings file source; overrides the synthetic generator when set.
    std::optional<std::filesystem::path> ratings_path;
    std::optional<std::filesystem::path> trust_path;

    /// Throws ConfigError naming the first offending key.
    void validate() const;

    /// The attacker profile implied by `attack` and its parameter.
    BehaviorProfile attack_profile() const;
};

struct Item {
    std::string label;
    std::vector<double> features;
    std::vector<int> ratings;
    Probability ground_truth;
};

struct PopulationData {
    std::vector<std::string> schema;
    std::vector<std::string> advisor_labels;
    std::vector<AdvisorDataset> advisors;
    std::vector<Item> items;
};

/// Fraction of ratings that are 4 or 5. Throws std::invalid_argument on an
/// empty list or a rating outside 1..5.
Probability ground_truth_trust(std::span<const int> ratings);

/// |actual - estimated| / consulted. Throws std::invalid_argument when
/// nobody was consulted.
double mae(Probability actual, Probability estimated, std::size_t consulted);

struct SyntheticOptions {
    std::size_t records_per_advisor = 40;
    std::size_t ratings_per_item = 20;
};

/// Desk-scale stand-in for a ratings corpus.
///
/// Every agent (past counterpart or evaluated item) has a latent quality q.
/// Past counterparts are good with probability 1/2 and then have q in
/// [0.6, 1], otherwise q in [0, 0.4]. The features are q itself, q plus
/// N(0, 0.15) noise, and an irrelevant uniform draw; labels follow
/// goodness and are flipped with probability `noise`. Items draw q
/// uniformly and get `ratings_per_item` ratings that are 4-5 with
/// probability q.
PopulationData synthesize_population(std::uint64_t seed, std::size_t n_advisors, std::size_t n_items,
                                     Probability noise, SyntheticOptions options = {});

struct IngestStats {
    std::size_t users = 0;
    std::size_t items = 0;
    std::size_t reviews = 0;
    std::size_t skipped = 0;
    std::size_t trust_statements = 0;
    std::size_t trust_skipped = 0;
};

struct IngestResult {
    PopulationData population;
    IngestStats stats;
};

/// Reads `user item rating` lines (comma, tab or space separated).
///
/// Each user becomes one advisor dataset with one record per rated item.
/// Record features are statistics of the other users' ratings of that item:
/// mean, count and variance; the label is T when the user's own rating is
/// 4 or more. Items get the same statistics over all ratings plus a ground
/// truth. Advisors are ordered by record count (descending) and items by
/// rating count (descending), ties by id. Malformed lines are skipped and
/// counted; more than 10% skipped lines aborts.
IngestResult ingest_epinions(const std::filesystem::path& ratings_path,
                             const std::optional<std::filesystem::path>& trust_path = std::nullopt);

struct IterationSummary {
    std::size_t iteration = 0;
    double mean_mae = 0.0;       // per-item error divided by advisors consulted
    double mean_abs_error = 0.0; // plain |actual - estimated|
    double mean_attacker_credibility = 0.0;
    double mean_honest_credibility = 0.0;
    std::size_t cells = 0;
    std::size_t skipped = 0;
};

struct SummaryStats {
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t cells = 0;
    std::size_t skipped = 0;
};

struct Reentry {
    std::size_t iteration;
    AgentId previous;
    AgentId fresh;
    Probability credibility;
};

struct ScenarioResult {
    ScenarioConfig config;
    std::vector<IterationSummary> iterations;
    // [iteration][item]; empty when the cell was skipped.
    std::vector<std::vector<std::optional<double>>> item_mae;
    std::vector<std::vector<std::optional<double>>> item_abs_error;
    SummaryStats summary;
    SummaryStats conventional;
    std::size_t round_failures = 0;
    std::size_t abstentions = 0;
    // Score at the end of each iteration for every identity alive then.
    std::map<AgentId, std::vector<std::optional<double>>> credibility_trajectories;
    std::set<AgentId> attacker_ids;
    std::vector<Reentry> reentries;
    std::vector<std::string> round_traces;
    CredibilityLedger credibility;
    InquiryLedger inquiries;
};

/// Runs the configured attack over the configured population. The result is
/// a pure function of the config.
ScenarioResult run_scenario(const ScenarioConfig& config);

} // namespace dstrust
