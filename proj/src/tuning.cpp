#include "sslpct/tuning.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace sslpct {

namespace {
std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}
}  // namespace

WGrid WGrid::standard() {
    WGrid g;
    for (int i = 0; i <= 10; ++i) g.values.push_back(static_cast<double>(i) / 10.0);
    return g;
}

void WGrid::check() const {
    if (values.empty()) throw InvalidArgument("empty w grid");
    for (size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0 && values[i] <= 1.0))
            throw InvalidArgument("w grid values must lie in [0,1]");
        if (i > 0 && values[i] <= values[i - 1])
            throw InvalidArgument("w grid must be sorted strictly ascending");
    }
    if (values.back() != 1.0)
        throw InvalidArgument("w grid must contain 1.0 (the supervised safeguard candidate)");
}

std::vector<std::vector<int32_t>> cv_folds(const Dataset& ds, int folds, uint64_t seed) {
    std::vector<int32_t> labeled;
    for (size_t i = 0; i < ds.examples.size(); ++i)
        if (ds.examples[i].labeled) labeled.push_back(static_cast<int32_t>(i));
    if (folds < 2) throw InvalidArgument("cross-validation needs at least 2 folds");
    if (static_cast<int>(labeled.size()) < folds)
        throw TooFewLabeled("cannot make " + std::to_string(folds) + " folds from " +
                            std::to_string(labeled.size()) + " labeled examples");
    Rng rng(hash_str(seed, "cv-folds"));
    rng.shuffle(labeled);
    std::vector<std::vector<int32_t>> out(folds);
    for (size_t i = 0; i < labeled.size(); ++i) out[i % folds].push_back(labeled[i]);
    return out;
}

namespace {

// Training view for one fold: validation labels hidden, everything else kept.
Dataset fold_train_view(const Dataset& ds, const std::vector<int32_t>& validation) {
    Dataset train = ds;
    for (int32_t id : validation) {
        Example& ex = train.examples[id];
        ex.labeled = false;
        ex.labels.clear();
        --train.n_labeled;
        ++train.n_unlabeled;
    }
    return train;
}

double score_fold(const Dataset& ds, const std::vector<int32_t>& validation, double w,
                  const LearnerSpec& learner, uint64_t seed,
                  const std::optional<std::vector<double>>& sigma) {
    Dataset train = fold_train_view(ds, validation);
    if (train.n_labeled < 2)
        throw TooFewLabeled("fold leaves fewer than 2 labeled training examples");

    VarianceContext ctx = make_context(train, w);
    ctx.feature_weights = sigma;

    std::vector<LabelVector> scores, truths;
    scores.reserve(validation.size());
    truths.reserve(validation.size());
    auto collect = [&](auto&& predict_fn) {
        for (int32_t id : validation) {
            scores.push_back(predict_fn(ds.examples[id]));
            truths.push_back(truth_vector(ds, ds.examples[id]));
        }
    };

    if (learner.kind == LearnerSpec::Kind::Tree) {
        PCTModel model = induce(train, ctx);
        collect([&](const Example& ex) { return predict(model, ex); });
    } else {
        ForestOptions opts;
        opts.trees = learner.trees;
        opts.seed = hash_str(seed, "cv-forest");
        opts.threads = learner.threads;
        ForestModel forest = train_forest(train, ctx, opts);
        collect([&](const Example& ex) { return vote(forest, ex); });
    }
    return micro_auprc(scores, truths);
}

}  // namespace

double cross_validate(const Dataset& ds, double w, int folds, const LearnerSpec& learner,
                      uint64_t seed, const std::optional<std::vector<double>>& sigma) {
    auto fold_sets = cv_folds(ds, folds, seed);
    double total = 0.0;
    int used = 0;
    for (const auto& validation : fold_sets) {
        if (validation.empty()) continue;
        // Folds whose validation part has no positive label cannot define
        // recall; they are left out of the mean.
        bool has_positive = false;
        for (int32_t id : validation)
            for (int8_t l : ds.examples[id].labels) has_positive |= l != 0;
        if (!has_positive) continue;
        total += score_fold(ds, validation, w, learner, seed, sigma);
        ++used;
    }
    if (used == 0) throw TooFewLabeled("no fold with positive validation labels");
    return total / static_cast<double>(used);
}

TuneResult optimize_w(const Dataset& ds, const WGrid& grid, int folds, const LearnerSpec& learner,
                      uint64_t seed, const std::optional<std::vector<double>>& sigma) {
    grid.check();
    // One fixed partition reused across the whole grid.
    auto fold_sets = cv_folds(ds, folds, seed);

    TuneResult result;
    result.grid = grid.values;
    result.folds = folds;
    result.scores.reserve(grid.values.size());

    double best = -1.0;
    for (double w : grid.values) {
        double total = 0.0;
        int used = 0;
        for (const auto& validation : fold_sets) {
            if (validation.empty()) continue;
            bool has_positive = false;
            for (int32_t id : validation)
                for (int8_t l : ds.examples[id].labels) has_positive |= l != 0;
            if (!has_positive) continue;
            total += score_fold(ds, validation, w, learner, seed, sigma);
            ++used;
        }
        if (used == 0) throw TooFewLabeled("no fold with positive validation labels");
        const double score = total / static_cast<double>(used);
        result.scores.push_back(score);
        // >= breaks ties toward the largest w; the grid is ascending.
        if (score >= best) {
            best = score;
            result.chosen_w = w;
        }
    }
    return result;
}

std::string tune_result_json(const TuneResult& r) {
    std::ostringstream out;
    out << "{\n  \"chosen_w\": " << fmt12(r.chosen_w) << ",\n  \"folds\": " << r.folds
        << ",\n  \"grid\": [";
    for (size_t i = 0; i < r.grid.size(); ++i) out << (i ? ", " : "") << fmt12(r.grid[i]);
    out << "],\n  \"scores\": [";
    for (size_t i = 0; i < r.scores.size(); ++i) out << (i ? ", " : "") << fmt12(r.scores[i]);
    out << "]\n}\n";
    return out.str();
}

}  // namespace sslpct
