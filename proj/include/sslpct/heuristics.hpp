#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sslpct/dataset.hpp"

namespace sslpct {

/// Everything the variance heuristic needs besides the example subset:
/// the supervision weight, whole-training-set normalization denominators,
/// optional feature weights, and the hierarchy for HMLC.
struct VarianceContext {
    double w = 1.0;
    Task task = Task::MLC;
    NormalizationStats norm;
    std::optional<std::vector<double>> feature_weights;  // sigma, one per descriptive attribute
    const ClassHierarchy* hierarchy = nullptr;

    void check(const Dataset& ds) const;
};

VarianceContext make_context(const Dataset& ds, double w);

/// Running sufficient statistics over an example subset, sized for one
/// dataset. add/remove keep every estimator available in O(D + labels).
class SubsetStats {
public:
    SubsetStats() = default;
    explicit SubsetStats(const Dataset& ds);

    void clear();
    void add(const Dataset& ds, int32_t example_index) { update(ds, example_index, +1); }
    void remove(const Dataset& ds, int32_t example_index) { update(ds, example_index, -1); }
    void add_all(const Dataset& ds, std::span<const int32_t> subset);

    // this := a - b (component-wise); all three must share the dataset layout.
    void assign_difference(const SubsetStats& a, const SubsetStats& b);

    int64_t size() const { return n_; }
    int64_t labeled() const { return n_labeled_; }
    int64_t label_positive(int component) const { return label_pos_[component]; }

    // Per-attribute estimators; nullopt is the undefined sentinel (K <= 1).
    std::optional<double> numeric_variance(int d) const;
    std::optional<double> nominal_gini(int d) const;
    std::optional<double> label_gini(int t) const;      // MLC target component
    std::optional<double> hierarchy_variance(const ClassHierarchy& h) const;  // HMLC target

private:
    void update(const Dataset& ds, int32_t idx, int sign);

    int64_t n_ = 0;
    int64_t n_labeled_ = 0;
    std::vector<int64_t> num_known_;   // per descriptive attr (numeric slots used)
    std::vector<double> num_sum_, num_sumsq_;
    std::vector<int64_t> nominal_counts_;  // flattened value counts
    std::vector<int> nominal_offset_;      // per descriptive attr, -1 for numeric
    std::vector<int> nominal_card_;
    std::vector<int64_t> label_pos_;       // MLC: per target; HMLC: per class
};

/// Fully resolved per-attribute variances for one node: normalized, with
/// undefined entries replaced by the parent's resolved values (the paper's
/// parent-variance fallback), and inert attributes pinned to zero.
struct NodeVariances {
    std::vector<double> descriptive;  // size D
    std::vector<double> target;       // size T (MLC) or 1 (HMLC)
    double target_mean = 0.0;
    double descriptive_mean = 0.0;

    double combined(double w) const { return w * target_mean + (1.0 - w) * descriptive_mean; }
};

/// Resolves subset statistics into normalized per-attribute variances.
/// `parent` supplies fallback values for undefined attributes; at the root
/// pass nullptr (undefined entries resolve to zero there).
NodeVariances resolve_variances(const SubsetStats& stats, const Dataset& ds,
                                const VarianceContext& ctx, const NodeVariances* parent);

// --- Subset-level convenience API (used by tests, tools and bindings). ---

std::optional<double> gini(const Dataset& ds, std::span<const int32_t> subset, int descriptive_attr);
std::optional<double> numeric_variance(const Dataset& ds, std::span<const int32_t> subset,
                                       int descriptive_attr);
std::optional<double> target_variance_mlc(const Dataset& ds, std::span<const int32_t> subset,
                                          const VarianceContext& ctx);
std::optional<double> target_variance_hmlc(const Dataset& ds, std::span<const int32_t> subset,
                                           const VarianceContext& ctx);
double descriptive_variance(const Dataset& ds, std::span<const int32_t> subset,
                            const VarianceContext& ctx, const NodeVariances* parent = nullptr);

struct VarianceReport {
    std::optional<double> target;  // undefined when too few labeled examples
    double descriptive = 0.0;
    std::optional<double> combined;
};

VarianceReport combined_variance(const Dataset& ds, std::span<const int32_t> subset,
                                 const VarianceContext& ctx, const NodeVariances* parent = nullptr);

/// Weighted Euclidean distance between two class vectors (hierarchy weights).
double weighted_distance(const LabelVector& a, const LabelVector& b, const ClassHierarchy& h);

}  // namespace sslpct
