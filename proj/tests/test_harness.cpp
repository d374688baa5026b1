#include <cmath>
#include <set>

#include "doctest.h"
#include "sslpct/harness.hpp"
#include "support/random_data.hpp"

using namespace sslpct;

TEST_SUITE_BEGIN("harness");

TEST_CASE("transductive split arithmetic") {
    SyntheticSpec spec;
    spec.clusters = 2;
    spec.dims = 3;
    spec.sizes = {297, 297};  // 594 examples
    Dataset ds = generate_synthetic(spec, 1);

    TransductiveSplit split = transductive_split(ds, 100, 7);
    CHECK(split.train.n_labeled == 100);
    CHECK(split.train.n_unlabeled == 494);
    CHECK(split.train.examples.size() == 594);
    CHECK(split.test.examples.size() == 494);
    CHECK(split.test.n_labeled == 494);

    SUBCASE("test labels are the originals") {
        // every test example matches a stripped train example by values
        size_t checked = 0;
        for (const auto& tex : split.test.examples) {
            for (const auto& oex : ds.examples)
                if (oex.descr == tex.descr) {
                    CHECK(oex.labels == tex.labels);
                    ++checked;
                    break;
                }
        }
        CHECK(checked == split.test.examples.size());
    }
    SUBCASE("boundary size leaves a single test example") {
        TransductiveSplit tiny = transductive_split(ds, 593, 7);
        CHECK(tiny.test.examples.size() == 1);
    }
    SUBCASE("same seed reproduces the split byte for byte") {
        TransductiveSplit again = transductive_split(ds, 100, 7);
        CHECK(write_dataset(again.train) == write_dataset(split.train));
        CHECK(write_dataset(again.test) == write_dataset(split.test));
    }
    SUBCASE("oversized requests are rejected") {
        CHECK_THROWS_AS(transductive_split(ds, 594, 7), InvalidArgument);
    }
}

TEST_CASE("synthetic generator") {
    SUBCASE("well separated clusters carry their label sets") {
        SyntheticSpec spec;
        spec.clusters = 2;
        spec.dims = 2;
        spec.separation = 6.0;
        spec.sizes = {500, 500};
        Dataset ds = generate_synthetic(spec, 3);
        CHECK(ds.examples.size() == 1000);
        CHECK(ds.n_labeled == 1000);
        for (const auto& ex : ds.examples) {
            const bool right = ex.descr[0] > 3.0;
            if (std::fabs(ex.descr[0] - 3.0) < 1.0) continue;  // rare boundary noise
            CHECK(ex.labels == (right ? std::vector<int8_t>{0, 1} : std::vector<int8_t>{1, 0}));
        }
    }
    SUBCASE("hmlc clusters are ancestor-closed by construction") {
        SyntheticSpec spec;
        spec.task = Task::HMLC;
        spec.clusters = 2;
        spec.dims = 2;
        spec.sizes = {20, 20};
        spec.hierarchy_paths = {"a", "a/b"};
        spec.cluster_classes = {{"a"}, {"b"}};  // second closes to {a, a/b}
        Dataset ds = generate_synthetic(spec, 4);
        for (const auto& ex : ds.examples) CHECK(ds.hierarchy->is_ancestor_closed(ex.labels));
    }
    SUBCASE("deterministic under the seed") {
        SyntheticSpec spec;
        spec.sizes = {30, 30};
        CHECK(write_dataset(generate_synthetic(spec, 9)) ==
              write_dataset(generate_synthetic(spec, 9)));
    }
}

TEST_CASE("experiment matrix shape and per-cell independence") {
    SyntheticSpec spec;
    spec.clusters = 2;
    spec.dims = 2;
    spec.separation = 5.0;
    spec.sizes = {60, 60};
    Dataset ds = generate_synthetic(spec, 10);

    ExperimentConfig config;
    config.labeled_sizes = {12};
    config.runs = 2;
    config.trees = 3;
    config.learners = {"SL-PCT", "SSL-PCT"};
    config.master_seed = 5;
    config.measure_time = false;
    WGrid grid;
    grid.values = {0.0, 0.5, 1.0};
    config.w_grid = grid;

    ExperimentResult result = run_experiment(ds, config);
    CHECK(result.records.size() == 4);  // learners x sizes x runs
    for (const auto& rec : result.records) {
        CHECK(rec.status == "ok");
        CHECK(rec.auprc >= 0.0);
        CHECK(rec.auprc <= 1.0);
        CHECK(rec.tree_size >= 1);
        if (rec.learner == "SL-PCT") CHECK(rec.chosen_w == 1.0);
    }

    SUBCASE("rerunning reproduces the records byte for byte") {
        ExperimentResult again = run_experiment(ds, config);
        CHECK(records_csv(again.records) == records_csv(result.records));
        CHECK(summary_json(again, config) == summary_json(result, config));
    }
    SUBCASE("cell seeds ignore other learners") {
        CHECK(cell_seed(5, "SSL-PCT", 12, 1) == cell_seed(5, "SSL-PCT", 12, 1));
        CHECK(cell_seed(5, "SSL-PCT", 12, 1) != cell_seed(5, "SSL-PCT", 12, 0));
        CHECK(cell_seed(5, "SSL-PCT", 12, 1) != cell_seed(5, "SL-PCT", 12, 1));
    }
}

TEST_CASE("record counts follow the config arithmetic") {
    SyntheticSpec spec;
    spec.clusters = 2;
    spec.dims = 2;
    spec.sizes = {40, 40};
    Dataset ds = generate_synthetic(spec, 2);

    ExperimentConfig config;
    config.labeled_sizes = {8, 16};
    config.runs = 3;
    config.trees = 2;
    config.learners = {"SL-PCT", "SL-PCT-DT", "CLUS-RF"};
    config.measure_time = false;
    WGrid grid;
    grid.values = {0.0, 1.0};
    config.w_grid = grid;
    ExperimentResult result = run_experiment(ds, config);
    CHECK(result.records.size() == 2u * 3u * 3u);
}

TEST_CASE("failures surface as NA cells without aborting the matrix") {
    SyntheticSpec spec;
    spec.clusters = 2;
    spec.dims = 2;
    spec.sizes = {20, 20};
    Dataset ds = generate_synthetic(spec, 6);
    // all-negative labels break AUPRC scoring for every learner
    for (auto& ex : ds.examples) ex.labels = {0, 0};

    ExperimentConfig config;
    config.labeled_sizes = {8};
    config.runs = 1;
    config.learners = {"SL-PCT"};
    config.measure_time = false;
    ExperimentResult result = run_experiment(ds, config);
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].status != "ok");
    CHECK(std::isnan(result.records[0].auprc));
    // the CSV cell stays empty rather than printing nan
    CHECK(records_csv(result.records).find("nan") == std::string::npos);
}

TEST_CASE("learner matrix covers the full set") {
    SyntheticSpec spec;
    spec.clusters = 2;
    spec.dims = 3;
    spec.separation = 5.0;
    spec.sizes = {50, 50};
    Dataset ds = generate_synthetic(spec, 12);

    ExperimentConfig config;
    config.labeled_sizes = {14};
    config.runs = 1;
    config.folds = 3;
    config.trees = 4;
    config.learners = {"SL-PCT", "SSL-PCT", "SSL-PCT-FR", "CLUS-RF",
                       "SSL-RF", "SSL-RF-FR", "SL-PCT-DT"};
    config.measure_time = false;
    WGrid grid;
    grid.values = {0.0, 1.0};
    config.w_grid = grid;

    ExperimentResult result = run_experiment(ds, config);
    REQUIRE(result.records.size() == config.learners.size());
    for (const auto& rec : result.records) {
        INFO(rec.learner << ": " << rec.status);
        CHECK(rec.status == "ok");
        CHECK(rec.auprc >= 0.0);
        CHECK(rec.auprc <= 1.0);
    }
    // forests report summed node counts
    for (const auto& rec : result.records)
        if (rec.learner == "CLUS-RF") CHECK(rec.tree_size >= config.trees);
}

TEST_CASE("unknown learner becomes an NA cell") {
    SyntheticSpec spec;
    spec.sizes = {20, 20};
    Dataset ds = generate_synthetic(spec, 2);
    ExperimentConfig config;
    config.labeled_sizes = {8};
    config.runs = 1;
    config.learners = {"NOT-A-LEARNER"};
    config.measure_time = false;
    ExperimentResult result = run_experiment(ds, config);
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].status != "ok");
}

TEST_SUITE_END();
