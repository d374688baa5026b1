#include <set>

#include "doctest.h"
#include "sslpct/harness.hpp"
#include "sslpct/tuning.hpp"
#include "support/random_data.hpp"

using namespace sslpct;

namespace {

Dataset small_separable(int labeled, int unlabeled, uint64_t seed) {
    SyntheticSpec spec;
    spec.clusters = 2;
    spec.dims = 2;
    spec.separation = 6.0;
    spec.sizes = {(labeled + unlabeled + 1) / 2, (labeled + unlabeled) / 2};
    Dataset full = generate_synthetic(spec, seed);
    TransductiveSplit split = transductive_split(full, labeled, seed + 1);
    return split.train;
}

}  // namespace

TEST_SUITE_BEGIN("tuning");

TEST_CASE("grid validation") {
    WGrid g = WGrid::standard();
    CHECK(g.values.size() == 11);
    CHECK(g.values.front() == 0.0);
    CHECK(g.values.back() == 1.0);
    g.check();

    WGrid no_one;
    no_one.values = {0.0, 0.5};
    CHECK_THROWS_AS(no_one.check(), InvalidArgument);
    WGrid unsorted;
    unsorted.values = {0.5, 0.2, 1.0};
    CHECK_THROWS_AS(unsorted.check(), InvalidArgument);
}

TEST_CASE("fold partition is a disjoint cover of the labeled ids") {
    Rng rng(12);
    testsupport::RandomDataOptions opts;
    opts.min_examples = 30;
    opts.max_examples = 60;
    opts.unlabeled_rate = 0.4;
    for (int rep = 0; rep < 5; ++rep) {
        Dataset ds = testsupport::random_mlc_dataset(rng, opts);
        if (ds.n_labeled < 3) continue;
        auto folds = cv_folds(ds, 3, rep);
        std::set<int32_t> seen;
        size_t total = 0;
        for (const auto& fold : folds) {
            total += fold.size();
            for (int32_t id : fold) {
                CHECK(ds.examples[id].labeled);  // unlabeled never in validation
                CHECK(seen.insert(id).second);   // disjoint
            }
        }
        CHECK(total == static_cast<size_t>(ds.n_labeled));  // cover
    }
}

TEST_CASE("three folds of six labeled examples hold two each") {
    Dataset ds = small_separable(6, 24, 9);
    auto folds = cv_folds(ds, 3, 42);
    REQUIRE(folds.size() == 3);
    for (const auto& fold : folds) CHECK(fold.size() == 2);
    // deterministic under the seed
    auto again = cv_folds(ds, 3, 42);
    CHECK(folds == again);
    CHECK(folds != cv_folds(ds, 3, 43));
}

TEST_CASE("cross_validate is deterministic and rejects infeasible folds") {
    Dataset ds = small_separable(9, 30, 21);
    LearnerSpec learner;
    const double a = cross_validate(ds, 0.5, 3, learner, 7);
    const double b = cross_validate(ds, 0.5, 3, learner, 7);
    CHECK(a == b);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);

    Dataset tiny = small_separable(2, 10, 3);
    CHECK_THROWS_AS(cross_validate(tiny, 0.5, 2, learner, 1), TooFewLabeled);
}

TEST_CASE("constant-label data scores a perfect fold mean") {
    // every labeled example carries the same single positive label
    Dataset ds = small_separable(8, 16, 33);
    for (auto& ex : ds.examples)
        if (ex.labeled) ex.labels = {1, 0};
    LearnerSpec learner;
    CHECK(cross_validate(ds, 1.0, 4, learner, 5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("optimize_w maximizes the grid and honors the supervised tie-break") {
    Dataset ds = small_separable(12, 48, 55);
    LearnerSpec learner;
    WGrid grid = WGrid::standard();
    TuneResult result = optimize_w(ds, grid, 3, learner, 99);
    REQUIRE(result.scores.size() == grid.values.size());

    double best = -1.0;
    for (double s : result.scores) best = std::max(best, s);
    size_t chosen_idx = 0;
    for (size_t i = 0; i < grid.values.size(); ++i)
        if (grid.values[i] == result.chosen_w) chosen_idx = i;
    CHECK(result.scores[chosen_idx] == best);
    // safeguard: never below the supervised candidate
    CHECK(result.scores[chosen_idx] >= result.scores.back());
    // ties break toward larger w
    for (size_t i = chosen_idx + 1; i < result.scores.size(); ++i)
        CHECK(result.scores[i] < best);
}

TEST_CASE("labeled-only tuning still satisfies the safeguard") {
    // with no unlabeled examples every w trains on identical rows; score
    // differences come only from the heuristic mix
    SyntheticSpec spec;
    spec.clusters = 2;
    spec.dims = 2;
    spec.separation = 4.0;
    spec.sizes = {10, 10};
    Dataset ds = generate_synthetic(spec, 17);
    LearnerSpec learner;
    TuneResult result = optimize_w(ds, WGrid::standard(), 3, learner, 2);
    double at_one = result.scores.back();
    double at_chosen = 0.0;
    for (size_t i = 0; i < result.grid.size(); ++i)
        if (result.grid[i] == result.chosen_w) at_chosen = result.scores[i];
    CHECK(at_chosen >= at_one);
}

TEST_CASE("identical seeds give identical tuning runs") {
    Dataset ds = small_separable(10, 20, 81);
    LearnerSpec learner;
    TuneResult a = optimize_w(ds, WGrid::standard(), 3, learner, 4);
    TuneResult b = optimize_w(ds, WGrid::standard(), 3, learner, 4);
    CHECK(a.chosen_w == b.chosen_w);
    CHECK(a.scores == b.scores);
    CHECK(tune_result_json(a) == tune_result_json(b));
}

TEST_CASE("forest learner tunes too") {
    Dataset ds = small_separable(9, 21, 5);
    LearnerSpec learner;
    learner.kind = LearnerSpec::Kind::Forest;
    learner.trees = 5;
    WGrid grid;
    grid.values = {0.0, 0.5, 1.0};
    TuneResult result = optimize_w(ds, grid, 3, learner, 6);
    CHECK(result.scores.size() == 3);
    for (double s : result.scores) {
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
}

TEST_SUITE_END();
