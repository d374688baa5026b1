#pragma once

#include "sslpct/induction.hpp"

namespace sslpct {

struct ForestModel {
    std::vector<PCTModel> trees;
    uint64_t master_seed = 0;
    int subspace_size = 1;
    std::vector<std::vector<int32_t>> oob;  // per tree, ids absent from its bootstrap

    int num_trees() const { return static_cast<int>(trees.size()); }
    int total_nodes() const {
        int n = 0;
        for (const auto& t : trees) n += t.size();
        return n;
    }
    const Dataset& header() const { return trees.front().header; }
};

struct ForestOptions {
    int trees = 100;
    uint64_t seed = 0;
    int threads = 1;
    int subspace_size = -1;  // -1: floor(log2 D) + 1; 0: all attributes
    bool bootstrap = true;   // test hook; false trains every tree on all examples
};

/// floor(log2(D)) + 1 random attributes per node.
int default_subspace_size(int num_descriptive);

/// N_l draws with replacement from the labeled stratum followed by N_u draws
/// from the unlabeled stratum, so the label proportions are preserved exactly.
std::vector<int32_t> stratified_bootstrap(const Dataset& ds, Rng& rng);

/// k unpruned trees, each on its own stratified bootstrap with fresh
/// per-node attribute subspaces. Tree i depends only on (ds, ctx, seed, i),
/// never on thread scheduling.
ForestModel train_forest(const Dataset& ds, const VarianceContext& ctx,
                         const ForestOptions& opts);

/// Component-wise mean of the per-tree predictions.
LabelVector vote(const ForestModel& forest, const Example& ex);

struct FeatureImportance {
    std::vector<double> raw;         // mean OOB error increase per attribute
    std::vector<double> normalized;  // sigma: clamped at 0, divided by the max
};

/// Permutation importance on labeled OOB examples: for each attribute, the
/// mean increase of the per-tree OOB error (1 - micro-averaged per-label
/// accuracy at the 0.5 decision) when that attribute's values are permuted.
FeatureImportance oob_importance(const ForestModel& forest, const Dataset& ds);

struct FeatureWeightedOptions {
    int ranking_trees = 100;  // supervised forest used to derive sigma
    ForestOptions forest;     // stage-2 options (forest.trees == 0 trains a single tree)
};

struct FeatureWeightedResult {
    std::vector<double> sigma;
    std::vector<double> raw_importance;
    std::optional<PCTModel> tree;      // set when forest.trees == 0
    std::optional<ForestModel> forest; // set otherwise
};

/// Stage 1 ranks features with a supervised forest on the labeled part;
/// stage 2 trains an SSL tree or forest with those weights in the heuristic.
FeatureWeightedResult train_feature_weighted(const Dataset& ds, const VarianceContext& ctx,
                                             const FeatureWeightedOptions& opts);

/// attribute,raw,sigma rows for external inspection.
std::string importance_csv(const Dataset& ds, const FeatureImportance& importance);

std::string serialize_forest(const ForestModel& forest);
ForestModel parse_forest(const std::string& text);
ForestModel load_forest(const std::string& path);
void save_forest(const ForestModel& forest, const std::string& path);

}  // namespace sslpct
