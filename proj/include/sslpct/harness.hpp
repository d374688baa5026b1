#pragma once

#include "sslpct/tuning.hpp"

namespace sslpct {

/// Transductive protocol: `labeled_size` examples keep their labels, the
/// remaining labeled examples appear in the training set with labels
/// stripped and form the test set with their original labels restored.
/// Examples that were already unlabeled stay unlabeled in the training set.
struct TransductiveSplit {
    Dataset train;
    Dataset test;
};

TransductiveSplit transductive_split(const Dataset& ds, int labeled_size, uint64_t run_seed);

/// Gaussian-cluster generator; every cluster carries a fixed label set.
struct SyntheticSpec {
    Task task = Task::MLC;
    int clusters = 2;
    int dims = 2;
    int informative_dims = 0;  // 0: all dims separate the clusters
    double separation = 6.0;   // center spacing in sigma units along each informative dim
    std::vector<int> sizes;    // per-cluster example counts
    int num_labels = 2;        // MLC label count
    std::vector<std::vector<int>> cluster_labels;  // per cluster: 0/1 per label (MLC);
                                                    // empty: one-hot over clusters
    std::vector<std::string> hierarchy_paths;               // HMLC
    std::vector<std::vector<std::string>> cluster_classes;  // HMLC class sets
    double omega0 = 0.75;
};

Dataset generate_synthetic(const SyntheticSpec& spec, uint64_t seed);

struct RunRecord {
    std::string learner;
    int labeled_size = 0;
    int run = 0;
    double chosen_w = std::numeric_limits<double>::quiet_NaN();
    double auprc = std::numeric_limits<double>::quiet_NaN();
    int tree_size = 0;  // node count; forests report the sum over trees
    double train_seconds = 0.0;
    std::string status = "ok";
};

struct ExperimentConfig {
    std::vector<int> labeled_sizes = {50, 100, 200, 350, 500};
    int runs = 10;
    int folds = 3;
    WGrid w_grid = WGrid::standard();
    int trees = 100;
    std::vector<std::string> learners = {"SL-PCT", "SSL-PCT"};
    uint64_t master_seed = 1;
    int threads = 1;
    bool measure_time = true;  // off: the timing column reads 0 and reruns are byte-identical
};

struct PairTest {
    std::string first, second;
    int labeled_size = 0;
    WilcoxonResult wilcoxon;
    bool valid = false;
};

struct ExperimentResult {
    std::vector<RunRecord> records;
    std::vector<PairTest> pairings;
};

/// Runs the full learner matrix. Per (size, run) every learner sees the same
/// split; failures become NA records instead of aborting.
ExperimentResult run_experiment(const Dataset& ds, const ExperimentConfig& config);

std::string records_csv(const std::vector<RunRecord>& records);
std::string summary_json(const ExperimentResult& result, const ExperimentConfig& config);

/// Seed for one cell of the matrix; adding learners never perturbs others.
uint64_t cell_seed(uint64_t master, const std::string& learner, int labeled_size, int run);

/// Trains one learner on the split and scores it on the test set.
/// Exposed for reuse by the CLI and tests.
RunRecord run_cell(const std::string& learner, const TransductiveSplit& split, int labeled_size,
                   int run, const ExperimentConfig& config);

}  // namespace sslpct
