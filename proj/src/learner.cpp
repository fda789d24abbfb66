#include "dstrust/learner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace dstrust {

SchemaMismatch::SchemaMismatch(std::size_t expected, std::size_t got)
    : std::invalid_argument("expected " + std::to_string(expected) + " features, got " + std::to_string(got))
{
}

AdvisorDataset::AdvisorDataset(std::vector<std::string> schema) : schema_(std::move(schema)) {}

void AdvisorDataset::add(InteractionRecord record)
{
    if (record.features.size() != schema_.size()) {
        throw SchemaMismatch(schema_.size(), record.features.size());
    }
    records_.push_back(std::move(record));
}

AdvisorDataset AdvisorDataset::subset(std::span<const std::size_t> indices) const
{
    AdvisorDataset out(schema_);
    out.records_.reserve(indices.size());
    for (auto i : indices) {
        out.records_.push_back(records_.at(i));
    }
    return out;
}

void AdvisorDataset::write_csv(std::ostream& out) const
{
    for (const auto& name : schema_) {
        out << name << ',';
    }
    out << "label\n";
    out << std::setprecision(17);
    for (const auto& rec : records_) {
        for (double v : rec.features) {
            out << v << ',';
        }
        out << to_char(rec.label) << '\n';
    }
}

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

void strip_cr(std::string& line)
{
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
}

} // namespace

AdvisorDataset AdvisorDataset::read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("dataset file has no header");
    }
    strip_cr(line);
    auto header = split_csv(line);
    if (header.empty() || header.back() != "label") {
        throw std::invalid_argument("dataset header must end with a 'label' column");
    }
    header.pop_back();
    AdvisorDataset data(header);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) {
            continue;
        }
        auto cells = split_csv(line);
        if (cells.size() != header.size() + 1) {
            throw std::invalid_argument("dataset line " + std::to_string(line_no) + " has " +
                                        std::to_string(cells.size()) + " columns");
        }
        InteractionRecord rec;
        rec.features.reserve(header.size());
        for (std::size_t i = 0; i < header.size(); ++i) {
            std::size_t used = 0;
            double v = std::stod(cells[i], &used);
            if (used != cells[i].size() || !std::isfinite(v)) {
                throw std::invalid_argument("bad feature value '" + cells[i] + "' on dataset line " +
                                            std::to_string(line_no));
            }
            rec.features.push_back(v);
        }
        if (cells.back().size() != 1) {
            throw std::invalid_argument("bad label on dataset line " + std::to_string(line_no));
        }
        rec.label = verdict_from_char(cells.back()[0]);
        data.add(std::move(rec));
    }
    return data;
}

AdvisorDataset AdvisorDataset::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open dataset " + path.string());
    }
    return read_csv(in);
}

// ---------------------------------------------------------------------------
// Tree

Verdict DecisionTree::predict(std::span<const double> features) const
{
    if (features.size() != feature_count_) {
        throw SchemaMismatch(feature_count_, features.size());
    }
    const Node* n = &nodes_.front();
    while (!n->is_leaf) {
        n = &nodes_[features[n->feature] <= n->threshold ? n->left : n->right];
    }
    return n->verdict;
}

std::size_t DecisionTree::leaf_count() const
{
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf; }));
}

std::size_t DecisionTree::depth() const
{
    std::size_t deepest = 0;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [index, d] = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, d);
        const Node& n = nodes_[index];
        if (!n.is_leaf) {
            stack.emplace_back(n.left, d + 1);
            stack.emplace_back(n.right, d + 1);
        }
    }
    return deepest;
}

namespace {

double entropy(std::size_t pos, std::size_t neg)
{
    const double total = static_cast<double>(pos + neg);
    double h = 0.0;
    for (std::size_t c : {pos, neg}) {
        if (c > 0) {
            const double p = static_cast<double>(c) / total;
            h -= p * std::log2(p);
        }
    }
    return h;
}

struct Split {
    std::size_t feature = 0;
    double threshold = 0.0;
    double gain = -1.0;
};

class TreeBuilder {
public:
    TreeBuilder(const AdvisorDataset& data, TreeParams params, std::vector<DecisionTree::Node>& nodes)
        : data_(data)
        , params_(params)
        , nodes_(nodes)
    {
    }

    std::size_t build(std::vector<std::size_t> rows, std::size_t depth)
    {
        const std::size_t index = nodes_.size();
        nodes_.emplace_back();

        std::size_t pos = 0;
        for (auto r : rows) {
            pos += data_.records()[r].label == Verdict::Trustworthy ? 1 : 0;
        }
        const std::size_t neg = rows.size() - pos;

        std::optional<Split> split;
        if (pos != 0 && neg != 0 && depth < params_.max_depth && rows.size() >= 2 * params_.min_leaf) {
            split = best_split(rows, entropy(pos, neg));
        }
        if (!split) {
            auto& leaf = nodes_[index];
            leaf.is_leaf = true;
            leaf.trustworthy = pos;
            leaf.untrustworthy = neg;
            leaf.verdict = pos > neg ? Verdict::Trustworthy : Verdict::Untrustworthy;
            return index;
        }

        std::vector<std::size_t> left_rows, right_rows;
        for (auto r : rows) {
            (data_.records()[r].features[split->feature] <= split->threshold ? left_rows : right_rows).push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();
        const std::size_t left = build(std::move(left_rows), depth + 1);
        const std::size_t right = build(std::move(right_rows), depth + 1);

        auto& node = nodes_[index];
        node.is_leaf = false;
        node.feature = split->feature;
        node.threshold = split->threshold;
        node.left = left;
        node.right = right;
        return index;
    }

private:
    std::optional<Split> best_split(const std::vector<std::size_t>& rows, double parent_entropy) const
    {
        constexpr double kGainTieTolerance = 1e-12;
        const auto& records = data_.records();
        const std::size_t n = rows.size();
        std::optional<Split> best;

        std::vector<std::size_t> order(rows);
        for (std::size_t f = 0; f < data_.schema().size(); ++f) {
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return records[a].features[f] < records[b].features[f];
            });
            std::size_t left_pos = 0;
            std::size_t total_pos = 0;
            for (auto r : order) {
                total_pos += records[r].label == Verdict::Trustworthy ? 1 : 0;
            }
            for (std::size_t i = 1; i < n; ++i) {
                left_pos += records[order[i - 1]].label == Verdict::Trustworthy ? 1 : 0;
                const double lo = records[order[i - 1]].features[f];
                const double hi = records[order[i]].features[f];
                if (!(lo < hi) || i < params_.min_leaf || n - i < params_.min_leaf) {
                    continue;
                }
                const std::size_t left_neg = i - left_pos;
                const std::size_t right_pos = total_pos - left_pos;
                const std::size_t right_neg = (n - i) - right_pos;
                const double w = static_cast<double>(i) / static_cast<double>(n);
                const double gain = parent_entropy - w * entropy(left_pos, left_neg) -
                                    (1.0 - w) * entropy(right_pos, right_neg);
                if (!best || gain > best->gain + kGainTieTolerance) {
                    best = Split{f, lo + (hi - lo) / 2.0, gain};
                }
            }
        }
        return best;
    }

    const AdvisorDataset& data_;
    TreeParams params_;
    std::vector<DecisionTree::Node>& nodes_;
};

} // namespace

DecisionTree train_tree(const AdvisorDataset& data, TreeParams params)
{
    if (data.empty()) {
        throw EmptyDataset();
    }
    if (params.max_depth == 0 || params.min_leaf == 0) {
        throw std::invalid_argument("max_depth and min_leaf must be positive");
    }
    DecisionTree tree;
    tree.params_ = params;
    tree.feature_count_ = data.schema().size();
    std::vector<std::size_t> rows(data.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    TreeBuilder(data, params, tree.nodes_).build(std::move(rows), 0);
    return tree;
}

// ---------------------------------------------------------------------------
// Self-assessment

std::vector<std::size_t> fold_assignment(std::size_t n, std::size_t k, std::uint64_t seed)
{
    if (k == 0) {
        throw std::invalid_argument("fold count must be positive");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> fold(n);
    for (std::size_t p = 0; p < n; ++p) {
        fold[order[p]] = p % k;
    }
    return fold;
}

SelfAssessment self_assess(const AdvisorDataset& data, const AssessmentOptions& options)
{
    if (data.size() < 2) {
        throw std::invalid_argument("self-assessment needs at least two records");
    }
    if (options.folds == 0) {
        throw std::invalid_argument("fold count must be positive");
    }
    SelfAssessment result;
    result.folds = options.folds;
    if (data.size() < options.folds) {
        result.folds = data.size();
        result.reduced_folds = true;
    }
    const std::size_t k = std::max<std::size_t>(result.folds, 2);
    const auto fold = fold_assignment(data.size(), k, options.seed);

    double accuracy_sum = 0.0;
    for (std::size_t f = 0; f < k; ++f) {
        std::vector<std::size_t> train, test;
        for (std::size_t i = 0; i < data.size(); ++i) {
            (fold[i] == f ? test : train).push_back(i);
        }
        const auto tree = train_tree(data.subset(train), options.tree);
        std::size_t correct = 0;
        for (auto i : test) {
            const auto& rec = data.records()[i];
            correct += tree.predict(rec.features) == rec.label ? 1 : 0;
        }
        accuracy_sum += static_cast<double>(correct) / static_cast<double>(test.size());
    }
    result.folds = k;
    result.accuracy = Probability(accuracy_sum / static_cast<double>(k));
    result.participate =
        options.resources_available && result.accuracy.value() >= options.participation_threshold;
    return result;
}

AdvisorState make_advisor(AgentId id, AdvisorDataset data, const AssessmentOptions& options)
{
    AdvisorState state{id, std::move(data), {}, {}};
    state.tree = train_tree(state.data, options.tree);
    state.assessment = self_assess(state.data, options);
    return state;
}

std::optional<Recommendation> derive_recommendation(const AdvisorState& advisor, AgentId subject,
                                                    std::span<const double> subject_features,
                                                    Probability credibility_at_issue)
{
    if (!advisor.assessment.participate) {
        return std::nullopt;
    }
    return Recommendation(advisor.id, subject, advisor.tree.predict(subject_features), credibility_at_issue);
}

} // namespace dstrust
