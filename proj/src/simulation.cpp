#include "dstrust/simulation.hpp"

#include "dstrust/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

namespace dstrust {

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::invalid_argument(key + ": " + message)
    , key_(std::move(key))
{
}

void ScenarioConfig::validate() const
{
    if (!seed) {
        throw ConfigError("seed", "a seed is required");
    }
    auto positive = [](const char* key, auto value) {
        if (value == 0) {
            throw ConfigError(key, "must be >= 1");
        }
    };
    auto unit = [](const char* key, double value) {
        if (!(value >= 0.0 && value <= 1.0)) {
            throw ConfigError(key, "must lie in [0, 1]");
        }
    };
    positive("advisors", advisors);
    unit("attacker-fraction", attacker_fraction);
    positive("items", items);
    positive("iterations", iterations);
    positive("sybil-count", sybil_count);
    positive("switch-iteration", switch_iteration);
    positive("reset-period", reset_period);
    unit("participation-threshold", participation_threshold);
    positive("max-depth", tree.max_depth);
    positive("min-leaf", tree.min_leaf);
    if (k_folds < 2) {
        throw ConfigError("k-folds", "must be >= 2");
    }
    unit("initial-credibility", initial_credibility);
    positive("budget-period", budget_period);
    if (!(noise >= 0.0 && noise < 0.5)) {
        throw ConfigError("noise", "must lie in [0, 0.5)");
    }
    if (records_per_advisor < 2) {
        throw ConfigError("records-per-advisor", "must be >= 2");
    }
    positive("ratings-per-item", ratings_per_item);
    if (trust_path && !ratings_path) {
        throw ConfigError("trust", "a trust file needs a ratings file");
    }
}

BehaviorProfile ScenarioConfig::attack_profile() const
{
    switch (attack) {
    case AttackKind::Sybil:
        return BehaviorProfile::sybil(sybil_count);
    case AttackKind::Camouflage:
        return BehaviorProfile::camouflage(switch_iteration);
    case AttackKind::Whitewashing:
        return BehaviorProfile::whitewashing(reset_period);
    case AttackKind::None:
        break;
    }
    return BehaviorProfile::honest();
}

Probability ground_truth_trust(std::span<const int> ratings)
{
    if (ratings.empty()) {
        throw std::invalid_argument("ground truth needs at least one rating");
    }
    std::size_t satisfied = 0;
    for (int r : ratings) {
        if (r < 1 || r > 5) {
            throw std::invalid_argument("rating out of 1..5: " + std::to_string(r));
        }
        satisfied += r >= 4 ? 1 : 0;
    }
    return Probability(static_cast<double>(satisfied) / static_cast<double>(ratings.size()));
}

double mae(Probability actual, Probability estimated, std::size_t consulted)
{
    if (consulted == 0) {
        throw std::invalid_argument("MAE is undefined when no advisor was consulted");
    }
    return std::abs(actual.value() - estimated.value()) / static_cast<double>(consulted);
}

namespace {

enum Stream : std::uint64_t {
    kAdvisorData = 1,
    kItems = 2,
    kAttackers = 3,
    kFolds = 4,
};

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
{
    auto rng = make_rng(seed, stream, index);
    return rng();
}

const std::vector<std::string> kSyntheticSchema{"track_record", "peer_signal", "activity"};

std::vector<double> synthetic_features(double quality, std::mt19937_64& rng)
{
    std::normal_distribution<double> jitter(0.0, 0.15);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return {quality, std::clamp(quality + jitter(rng), 0.0, 1.0), unit(rng)};
}

} // namespace

PopulationData synthesize_population(std::uint64_t seed, std::size_t n_advisors, std::size_t n_items,
                                     Probability noise, SyntheticOptions options)
{
    if (noise.value() >= 0.5) {
        throw std::invalid_argument("label noise must be below 0.5");
    }
    PopulationData pop;
    pop.schema = kSyntheticSchema;

    for (std::size_t a = 0; a < n_advisors; ++a) {
        auto rng = make_rng(seed, kAdvisorData, a);
        std::bernoulli_distribution coin(0.5);
        std::bernoulli_distribution flip(noise.value());
        std::uniform_real_distribution<double> band(0.0, 0.4);
        AdvisorDataset data(pop.schema);
        for (std::size_t r = 0; r < options.records_per_advisor; ++r) {
            const bool good = coin(rng);
            const double quality = good ? 0.6 + band(rng) : band(rng);
            auto features = synthetic_features(quality, rng);
            Verdict label = good ? Verdict::Trustworthy : Verdict::Untrustworthy;
            if (flip(rng)) {
                label = invert(label);
            }
            data.add({std::move(features), label});
        }
        pop.advisor_labels.push_back("advisor-" + std::to_string(a));
        pop.advisors.push_back(std::move(data));
    }

    auto rng = make_rng(seed, kItems);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> high(4, 5);
    std::uniform_int_distribution<int> low(1, 3);
    for (std::size_t i = 0; i < n_items; ++i) {
        const double quality = unit(rng);
        Item item;
        item.label = "item-" + std::to_string(i);
        item.features = synthetic_features(quality, rng);
        for (std::size_t r = 0; r < options.ratings_per_item; ++r) {
            item.ratings.push_back(unit(rng) < quality ? high(rng) : low(rng));
        }
        item.ground_truth = ground_truth_trust(item.ratings);
        pop.items.push_back(std::move(item));
    }
    return pop;
}

// ---------------------------------------------------------------------------
// Ratings ingestion

namespace {

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',' || c == '\t' || c == ' ' || c == '\r') {
            if (!current.empty()) {
                fields.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) {
        fields.push_back(std::move(current));
    }
    return fields;
}

std::optional<long> parse_integer(const std::string& text)
{
    try {
        std::size_t used = 0;
        long v = std::stol(text, &used);
        if (used != text.size()) {
            return std::nullopt;
        }
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::optional<double> parse_real(const std::string& text)
{
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) {
            return std::nullopt;
        }
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

bool is_comment_or_blank(const std::string& line)
{
    auto first = line.find_first_not_of(" \t\r");
    return first == std::string::npos || line[first] == '#' || line[first] == '%';
}

struct RatingStats {
    double mean = 0.0;
    double count = 0.0;
    double variance = 0.0;
};

RatingStats stats_of(const std::vector<int>& ratings, std::optional<std::size_t> exclude = std::nullopt)
{
    RatingStats s;
    double sum = 0.0;
    double sq = 0.0;
    for (std::size_t i = 0; i < ratings.size(); ++i) {
        if (exclude && *exclude == i) {
            continue;
        }
        sum += ratings[i];
        sq += static_cast<double>(ratings[i]) * ratings[i];
        s.count += 1.0;
    }
    if (s.count > 0) {
        s.mean = sum / s.count;
        s.variance = std::max(0.0, sq / s.count - s.mean * s.mean);
    }
    return s;
}

} // namespace

IngestResult ingest_epinions(const std::filesystem::path& ratings_path,
                             const std::optional<std::filesystem::path>& trust_path)
{
    std::ifstream in(ratings_path);
    if (!in) {
        throw std::runtime_error("cannot read ratings file " + ratings_path.string());
    }

    struct Rating {
        std::string user;
        std::string item;
        int value;
    };
    std::vector<Rating> ratings;
    IngestResult result;
    std::string line;
    while (std::getline(in, line)) {
        if (is_comment_or_blank(line)) {
            continue;
        }
        auto fields = split_fields(line);
        std::optional<long> value;
        if (fields.size() == 3) {
            value = parse_integer(fields[2]);
        }
        if (!value || *value < 1 || *value > 5) {
            ++result.stats.skipped;
            continue;
        }
        ratings.push_back({fields[0], fields[1], static_cast<int>(*value)});
    }
    const std::size_t total = ratings.size() + result.stats.skipped;
    if (ratings.empty()) {
        throw std::runtime_error("no usable ratings in " + ratings_path.string());
    }
    if (static_cast<double>(result.stats.skipped) > 0.1 * static_cast<double>(total)) {
        throw std::runtime_error(std::to_string(result.stats.skipped) + " of " + std::to_string(total) +
                                 " lines in " + ratings_path.string() + " are malformed (limit 10%)");
    }

    if (trust_path) {
        std::ifstream trust(*trust_path);
        if (!trust) {
            throw std::runtime_error("cannot read trust file " + trust_path->string());
        }
        while (std::getline(trust, line)) {
            if (is_comment_or_blank(line)) {
                continue;
            }
            auto fields = split_fields(line);
            if (fields.size() == 3 && parse_real(fields[2])) {
                ++result.stats.trust_statements;
            } else {
                ++result.stats.trust_skipped;
            }
        }
    }

    // Per-item rating lists, keeping each rating's position so a user's own
    // rating can be left out of its features.
    std::map<std::string, std::vector<int>> item_ratings;
    std::vector<std::size_t> position(ratings.size());
    for (std::size_t i = 0; i < ratings.size(); ++i) {
        auto& list = item_ratings[ratings[i].item];
        position[i] = list.size();
        list.push_back(ratings[i].value);
    }

    auto& pop = result.population;
    pop.schema = {"others_mean_rating", "others_rating_count", "others_rating_variance"};

    std::map<std::string, AdvisorDataset> per_user;
    for (std::size_t i = 0; i < ratings.size(); ++i) {
        const auto s = stats_of(item_ratings[ratings[i].item], position[i]);
        auto [it, inserted] = per_user.try_emplace(ratings[i].user, pop.schema);
        it->second.add({{s.mean, s.count, s.variance},
                        ratings[i].value >= 4 ? Verdict::Trustworthy : Verdict::Untrustworthy});
    }
    result.stats.users = per_user.size();
    result.stats.items = item_ratings.size();
    result.stats.reviews = ratings.size();

    std::vector<std::pair<std::string, AdvisorDataset*>> users;
    for (auto& [name, data] : per_user) {
        users.emplace_back(name, &data);
    }
    std::stable_sort(users.begin(), users.end(),
                     [](const auto& a, const auto& b) { return a.second->size() > b.second->size(); });
    for (auto& [name, data] : users) {
        pop.advisor_labels.push_back(name);
        pop.advisors.push_back(std::move(*data));
    }

    std::vector<const std::pair<const std::string, std::vector<int>>*> items;
    for (const auto& entry : item_ratings) {
        items.push_back(&entry);
    }
    std::stable_sort(items.begin(), items.end(),
                     [](const auto* a, const auto* b) { return a->second.size() > b->second.size(); });
    for (const auto* entry : items) {
        const auto s = stats_of(entry->second);
        pop.items.push_back(
            {entry->first, {s.mean, s.count, s.variance}, entry->second, ground_truth_trust(entry->second)});
    }
    return result;
}

// ---------------------------------------------------------------------------
// Scenario runner

namespace {

struct Member {
    Identity identity;
    std::size_t principal = 0;
    bool attacker = false;
    std::unique_ptr<Advisor> advisor;
    DishonestAdvisor* dishonest = nullptr;
};

std::unique_ptr<Member> make_member(Identity identity, std::size_t principal, AdvisorState state,
                                    const std::optional<BehaviorProfile>& profile)
{
    auto m = std::make_unique<Member>();
    m->identity = identity;
    m->principal = principal;
    if (profile) {
        auto adv = std::make_unique<DishonestAdvisor>(std::move(state), *profile);
        m->dishonest = adv.get();
        m->advisor = std::move(adv);
        m->attacker = true;
    } else {
        m->advisor = std::make_unique<HonestAdvisor>(std::move(state));
    }
    return m;
}

double mean_or_nan(double sum, std::size_t n)
{
    return n == 0 ? std::nan("") : sum / static_cast<double>(n);
}

SummaryStats summarize(const std::vector<std::vector<std::optional<double>>>& cells)
{
    SummaryStats s;
    std::vector<double> values;
    for (const auto& row : cells) {
        for (const auto& c : row) {
            if (c) {
                values.push_back(*c);
            } else {
                ++s.skipped;
            }
        }
    }
    s.cells = values.size();
    if (values.empty()) {
        s.mean = std::nan("");
        s.stddev = std::nan("");
        return s;
    }
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    if (values.size() > 1) {
        double sq = 0.0;
        for (double v : values) {
            sq += (v - s.mean) * (v - s.mean);
        }
        s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    return s;
}

} // namespace

ScenarioResult run_scenario(const ScenarioConfig& config)
{
    config.validate();
    const std::uint64_t seed = *config.seed;

    PopulationData data;
    if (config.ratings_path) {
        data = ingest_epinions(*config.ratings_path, config.trust_path).population;
        std::erase_if(data.advisors, [](const AdvisorDataset& d) { return d.size() < 2; });
    } else {
        data = synthesize_population(seed, config.advisors, config.items, Probability(config.noise),
                                     {config.records_per_advisor, config.ratings_per_item});
    }
    if (data.advisors.size() < config.advisors) {
        throw ConfigError("advisors", "only " + std::to_string(data.advisors.size()) + " usable advisors available");
    }
    if (data.items.size() < config.items) {
        throw ConfigError("items", "only " + std::to_string(data.items.size()) + " items available");
    }
    data.advisors.resize(config.advisors);
    data.items.resize(config.items);

    ScenarioResult result;
    result.config = config;
    result.credibility = CredibilityLedger(Probability(config.initial_credibility));
    result.inquiries = InquiryLedger({config.initial_budget, config.budget_period});

    IdRegistry ids;
    const AgentId requester = ids.fresh().id;
    std::vector<AgentId> subjects;
    for (std::size_t i = 0; i < config.items; ++i) {
        subjects.push_back(ids.fresh().id);
    }

    // Attacker principals: the first round(f * n) of a seeded shuffle.
    std::vector<std::size_t> order(config.advisors);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto pick = make_rng(seed, kAttackers);
    std::shuffle(order.begin(), order.end(), pick);
    const auto n_attackers = config.attack == AttackKind::None
                                 ? std::size_t{0}
                                 : static_cast<std::size_t>(std::lround(config.attacker_fraction *
                                                                        static_cast<double>(config.advisors)));
    std::vector<bool> is_attacker(config.advisors, false);
    for (std::size_t i = 0; i < n_attackers; ++i) {
        is_attacker[order[i]] = true;
    }
    const auto profile = config.attack_profile();

    std::vector<std::unique_ptr<Member>> members;
    for (std::size_t p = 0; p < config.advisors; ++p) {
        const Identity identity = ids.fresh();
        AssessmentOptions assess{config.k_folds, config.participation_threshold, true,
                                 derive_seed(seed, kFolds, p), config.tree};
        AdvisorState state = make_advisor(identity.id, std::move(data.advisors[p]), assess);
        std::optional<BehaviorProfile> behavior;
        if (is_attacker[p]) {
            behavior = profile;
        }
        if (is_attacker[p] && config.attack == AttackKind::Sybil) {
            for (auto& fake : sybil_expand(state, config.sybil_count, ids)) {
                const Identity fake_identity{fake.id, ids.lineage_of(fake.id)};
                members.push_back(make_member(fake_identity, p, std::move(fake), behavior));
            }
        }
        members.push_back(make_member(identity, p, std::move(state), behavior));
    }
    for (const auto& m : members) {
        if (m->attacker) {
            result.attacker_ids.insert(m->identity.id);
        }
    }

    const CredibilityLookup believed = [&](AgentId believer, AgentId subject) {
        return believer == requester ? result.credibility.score(subject) : result.credibility.initial_score();
    };

    result.item_mae.assign(config.iterations, std::vector<std::optional<double>>(config.items));
    result.item_abs_error = result.item_mae;

    for (std::size_t t = 1; t <= config.iterations; ++t) {
        // Between-iteration phase: clocks and identity resets.
        for (auto& m : members) {
            if (!m->dishonest) {
                continue;
            }
            m->dishonest->set_iteration(t);
            if (config.attack == AttackKind::Whitewashing) {
                const auto& old_state = m->dishonest->state();
                AdvisorState next = whitewash_maybe_reset(old_state, t, config.reset_period, ids);
                if (next.id != old_state.id) {
                    const AgentId previous = old_state.id;
                    const Identity fresh{next.id, ids.lineage_of(next.id)};
                    m = make_member(fresh, m->principal, std::move(next), profile);
                    m->dishonest->set_iteration(t);
                    result.attacker_ids.insert(fresh.id);
                    result.reentries.push_back({t, previous, fresh.id, result.credibility.score(fresh.id)});
                }
            }
        }

        std::unordered_map<AgentId, const Advisor*> directory;
        std::vector<AgentId> eligible;
        for (const auto& m : members) {
            directory.emplace(m->identity.id, m->advisor.get());
            eligible.push_back(m->identity.id);
        }
        std::sort(eligible.begin(), eligible.end());
        const AdvisorDirectory lookup = [&](AgentId id) -> const Advisor& { return *directory.at(id); };

        auto& summary = result.iterations.emplace_back();
        summary.iteration = t;
        double mae_sum = 0.0;
        double abs_sum = 0.0;
        for (std::size_t i = 0; i < config.items; ++i) {
            const auto& item = data.items[i];
            RecommendationRequest request{requester, subjects[i], item.features, eligible};
            try {
                const RoundOutcome outcome = run_round(request, lookup, result.credibility, result.inquiries);
                result.abstentions += outcome.abstainers.size();
                result.round_traces.push_back(round_trace_json(request, outcome, t, i));
                if (!outcome.responders.empty()) {
                    const double cell = mae(item.ground_truth, outcome.estimated_trust, outcome.responders.size());
                    const double abs_err = std::abs(item.ground_truth - outcome.estimated_trust);
                    result.item_mae[t - 1][i] = cell;
                    result.item_abs_error[t - 1][i] = abs_err;
                    mae_sum += cell;
                    abs_sum += abs_err;
                    ++summary.cells;
                } else {
                    ++summary.skipped;
                }
            } catch (const RoundFailure&) {
                ++result.round_failures;
                ++summary.skipped;
            }
            result.inquiries.end_round(believed);
        }
        summary.mean_mae = mean_or_nan(mae_sum, summary.cells);
        summary.mean_abs_error = mean_or_nan(abs_sum, summary.cells);

        double attacker_sum = 0.0;
        double honest_sum = 0.0;
        std::size_t attacker_n = 0;
        std::size_t honest_n = 0;
        for (const auto& m : members) {
            const double score = result.credibility.score(m->identity.id);
            (m->attacker ? attacker_sum : honest_sum) += score;
            ++(m->attacker ? attacker_n : honest_n);
            auto& trajectory = result.credibility_trajectories[m->identity.id];
            trajectory.resize(config.iterations);
            trajectory[t - 1] = score;
        }
        summary.mean_attacker_credibility = mean_or_nan(attacker_sum, attacker_n);
        summary.mean_honest_credibility = mean_or_nan(honest_sum, honest_n);
    }

    result.summary = summarize(result.item_mae);
    result.conventional = summarize(result.item_abs_error);
    return result;
}

} // namespace dstrust
