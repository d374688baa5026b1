#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sslpct/heuristics.hpp"
#include "sslpct/rng.hpp"

namespace sslpct {

/// Binary split on one descriptive attribute. Numeric tests send values
/// strictly greater than the threshold to the YES branch; nominal tests
/// send the matching value. A missing value never satisfies the predicate,
/// so during training it is routed to the NO branch.
struct SplitTest {
    int attribute = -1;
    bool numeric = true;
    double threshold = 0.0;
    int nominal_value = -1;

    bool routes_yes(double v) const {
        if (is_missing(v)) return false;
        return numeric ? v > threshold : static_cast<int>(v) == nominal_value;
    }
};

struct TreeNode {
    std::optional<SplitTest> test;  // nullopt = leaf
    std::unique_ptr<TreeNode> yes, no;
    bool fallback_yes = false;  // branch taken at prediction time on missing values
    int64_t n_labeled = 0;
    int64_t n_unlabeled = 0;
    LabelVector prototype;  // per-component probabilities; inherited from the
                            // nearest labeled ancestor for unlabeled-only leaves

    bool is_leaf() const { return !test.has_value(); }
    int count() const {
        return is_leaf() ? 1 : 1 + yes->count() + no->count();
    }
};

struct PCTModel {
    // Schema-only copy of the training data (no examples): attribute layout,
    // target columns and hierarchy, everything predict() needs.
    Dataset header;
    double w_used = 1.0;
    bool pruned = false;
    std::unique_ptr<TreeNode> root;

    int size() const { return root ? root->count() : 0; }
};

struct InductionParams {
    int min_labeled = 2;       // labeled-containing children keep at least this many
    int subspace_size = 0;     // >0: random attribute subspace per node (forests)
    Rng* rng = nullptr;        // required when subspace_size > 0
    double epsilon_fraction = 1e-12;  // of the root combined variance
};

/// Candidate tests for a subset: midpoints between consecutive distinct
/// observed numeric values, one equality test per observed nominal value.
/// Attributes constant in the subset yield nothing.
std::vector<SplitTest> enumerate_tests(const Dataset& ds, std::span<const int32_t> subset);

struct BestSplit {
    SplitTest test;
    double score = 0.0;  // variance reduction h
    std::vector<int32_t> yes_subset, no_subset;
};

/// Exhaustive best acceptable test for the subset, or nullopt when no test
/// reduces the combined variance by more than epsilon. Ties break toward the
/// lower attribute index, then the lower threshold / earlier nominal value.
std::optional<BestSplit> best_test(const Dataset& ds, std::span<const int32_t> subset,
                                   const VarianceContext& ctx, const NodeVariances& node_vars,
                                   double epsilon, const InductionParams& params = {});

/// Top-down induction over all dataset examples.
PCTModel induce(const Dataset& ds, const VarianceContext& ctx, const InductionParams& params = {});

/// Same, over an explicit example multiset (bootstrap replicates repeat ids).
PCTModel induce_on(const Dataset& ds, std::vector<int32_t> subset, const VarianceContext& ctx,
                   const InductionParams& params = {});

/// Per-component probability prototype of a set of labeled examples.
LabelVector prototype(const Dataset& ds, std::span<const int32_t> labeled_subset);

/// Routes the example down the tree; missing (or out-of-range nominal) test
/// values take the fallback branch. Returns the leaf prototype.
const TreeNode& route(const PCTModel& model, const Example& ex);
LabelVector predict(const PCTModel& model, const Example& ex);

struct DecisionRule {
    enum class Mode { Majority, Threshold } mode = Mode::Threshold;
    double tau = 0.5;

    static DecisionRule majority() { return {Mode::Majority, 0.5}; }
    static DecisionRule threshold(double tau) { return {Mode::Threshold, tau}; }
};

/// Binarizes a score vector. Majority (MLC only) picks the more probable
/// class per target; threshold mode predicts components strictly above tau.
LabelVector decide_labels(const LabelVector& scores, Task task, const DecisionRule& rule);

/// Bottom-up M5-style pruning on the training data: a subtree collapses to a
/// leaf when the leaf's complexity-penalized error does not exceed the
/// subtree's. Node count never increases; pruning is idempotent.
PCTModel prune(const PCTModel& model, const Dataset& ds, const VarianceContext& ctx);

/// Deterministic text form (12 significant digits); parse inverts it.
std::string serialize_model(const PCTModel& model);
PCTModel parse_model(const std::string& text);
PCTModel load_model(const std::string& path);
void save_model(const PCTModel& model, const std::string& path);

/// Copies examples of `data` into the model's attribute layout, matching
/// attributes by name; nominal values absent from the model's value list
/// become missing. Target structure must match exactly.
Dataset align_to_model(const PCTModel& model, const Dataset& data);

}  // namespace sslpct
