#pragma once

#include "dstrust/core.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dstrust {

struct InteractionRecord {
    std::vector<double> features;
    Verdict label;
};

class SchemaMismatch : public std::invalid_argument {
public:
    SchemaMismatch(std::size_t expected, std::size_t got);
};

class EmptyDataset : public std::invalid_argument {
public:
    EmptyDataset() : std::invalid_argument("cannot train on an empty dataset") {}
};

/// One advisor's labelled past interactions under a fixed feature schema.
class AdvisorDataset {
public:
    AdvisorDataset() = default;
    explicit AdvisorDataset(std::vector<std::string> schema);

    /// Throws SchemaMismatch when the feature count is wrong.
    void add(InteractionRecord record);

    const std::vector<std::string>& schema() const { return schema_; }
    const std::vector<InteractionRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    /// Copy holding only the records at `indices`, in that order.
    AdvisorDataset subset(std::span<const std::size_t> indices) const;

    /// Comma-separated: header is the schema followed by `label`, then one
    /// record per line with label T or N.
    void write_csv(std::ostream& out) const;
    static AdvisorDataset read_csv(std::istream& in);
    static AdvisorDataset load(const std::filesystem::path& path);

private:
    std::vector<std::string> schema_;
    std::vector<InteractionRecord> records_;
};

struct TreeParams {
    std::size_t max_depth = 8;
    std::size_t min_leaf = 2;

    static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
};

/// Axis-aligned binary classification tree.
class DecisionTree {
public:
    struct Node {
        // Internal nodes: go to `left` when features[feature] <= threshold.
        std::size_t feature = 0;
        double threshold = 0.0;
        std::size_t left = 0;
        std::size_t right = 0;
        bool is_leaf = true;
        // Leaves only.
        Verdict verdict = Verdict::Untrustworthy;
        std::size_t trustworthy = 0;
        std::size_t untrustworthy = 0;
    };

    Verdict predict(std::span<const double> features) const;

    const Node& root() const { return nodes_.front(); }
    const Node& node(std::size_t index) const { return nodes_.at(index); }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t leaf_count() const;
    std::size_t depth() const;
    std::size_t feature_count() const { return feature_count_; }
    const TreeParams& params() const { return params_; }

private:
    friend DecisionTree train_tree(const AdvisorDataset& data, TreeParams params);

    std::vector<Node> nodes_;
    std::size_t feature_count_ = 0;
    TreeParams params_;
};

/// Greedy top-down induction by information gain on Shannon entropy.
///
/// Candidate thresholds are midpoints between consecutive distinct values; a
/// split is only taken when both sides keep at least `min_leaf` records.
/// Equal gains go to the lowest feature index, then the lowest threshold.
/// Leaves predict the majority label, with ties going to Untrustworthy.
DecisionTree train_tree(const AdvisorDataset& data, TreeParams params = {});

/// Deterministic fold labels: indices are shuffled with `seed` and the record
/// at shuffled position p lands in fold p mod k.
std::vector<std::size_t> fold_assignment(std::size_t n, std::size_t k, std::uint64_t seed);

struct AssessmentOptions {
    std::size_t folds = 10;
    double participation_threshold = 0.7;
    bool resources_available = true;
    std::uint64_t seed = 0;
    TreeParams tree;
};

struct SelfAssessment {
    Probability accuracy;
    std::size_t folds = 0;
    bool participate = false;
    // True when there were fewer records than requested folds and k was
    // reduced to the record count.
    bool reduced_folds = false;
};

/// k-fold cross-validated accuracy and the resulting participation choice.
SelfAssessment self_assess(const AdvisorDataset& data, const AssessmentOptions& options);

/// An advisor's honest pipeline: its data, the tree trained on all of it and
/// its self-assessment.
struct AdvisorState {
    AgentId id;
    AdvisorDataset data;
    DecisionTree tree;
    SelfAssessment assessment;
};

AdvisorState make_advisor(AgentId id, AdvisorDataset data, const AssessmentOptions& options);

/// None when the advisor withdraws; otherwise the tree's verdict on the
/// subject, stamped with the credibility the requester holds for it.
std::optional<Recommendation> derive_recommendation(const AdvisorState& advisor, AgentId subject,
                                                    std::span<const double> subject_features,
                                                    Probability credibility_at_issue);

} // namespace dstrust
