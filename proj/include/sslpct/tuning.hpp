#pragma once

#include "sslpct/ensemble.hpp"
#include "sslpct/evaluation.hpp"

namespace sslpct {

/// Candidate w values. The default grid is 0, 0.1, ..., 1; a valid grid is
/// sorted, unique, inside [0,1] and always contains 1 so the supervised
/// candidate is evaluated as a safeguard.
struct WGrid {
    std::vector<double> values;

    static WGrid standard();
    void check() const;
};

/// Which learner the tuner (and the harness) trains.
struct LearnerSpec {
    enum class Kind { Tree, Forest } kind = Kind::Tree;
    int trees = 100;   // forests
    int threads = 1;
    bool feature_weighted = false;
};

struct TuneResult {
    double chosen_w = 1.0;
    std::vector<double> grid;
    std::vector<double> scores;  // mean CV micro-AUPRC per grid value
    int folds = 3;
};

/// Fold layout used by the tuner: labeled ids after a seeded shuffle, dealt
/// round-robin. Unlabeled examples never appear in any fold.
std::vector<std::vector<int32_t>> cv_folds(const Dataset& ds, int folds, uint64_t seed);

/// Mean micro-AUPRC over a k-fold split of the labeled examples; every
/// fold's training set keeps all unlabeled examples.
double cross_validate(const Dataset& ds, double w, int folds, const LearnerSpec& learner,
                      uint64_t seed, const std::optional<std::vector<double>>& sigma = std::nullopt);

/// Argmax of the CV score over the grid with one fixed fold partition; ties
/// break toward the largest w (more supervision).
TuneResult optimize_w(const Dataset& ds, const WGrid& grid, int folds, const LearnerSpec& learner,
                      uint64_t seed, const std::optional<std::vector<double>>& sigma = std::nullopt);

std::string tune_result_json(const TuneResult& result);

}  // namespace sslpct
