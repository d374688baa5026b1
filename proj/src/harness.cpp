#include "sslpct/harness.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <cmath>
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

// ---------------------------------------------------------------------------
// Transductive split

TransductiveSplit transductive_split(const Dataset& ds, int labeled_size, uint64_t run_seed) {
    if (labeled_size < 1) throw InvalidArgument("labeled size must be positive");
    if (labeled_size >= ds.n_labeled)
        throw InvalidArgument("labeled size " + std::to_string(labeled_size) +
                              " must be below the labeled count " + std::to_string(ds.n_labeled));

    std::vector<int32_t> labeled_ids;
    for (size_t i = 0; i < ds.examples.size(); ++i)
        if (ds.examples[i].labeled) labeled_ids.push_back(static_cast<int32_t>(i));

    Rng rng(hash_str(run_seed, "transductive-split"));
    rng.shuffle(labeled_ids);
    std::vector<uint8_t> keep(ds.examples.size(), 0);
    for (int i = 0; i < labeled_size; ++i) keep[labeled_ids[i]] = 1;

    TransductiveSplit split;
    split.train.task = split.test.task = ds.task;
    split.train.relation = split.test.relation = ds.relation;
    split.train.schema = split.test.schema = ds.schema;
    split.train.descriptive_cols = split.test.descriptive_cols = ds.descriptive_cols;
    split.train.target_cols = split.test.target_cols = ds.target_cols;
    split.train.hierarchy = split.test.hierarchy = ds.hierarchy;

    for (size_t i = 0; i < ds.examples.size(); ++i) {
        const Example& ex = ds.examples[i];
        Example train_ex = ex;
        train_ex.id = static_cast<int32_t>(split.train.examples.size());
        if (ex.labeled && !keep[i]) {
            train_ex.labeled = false;  // label temporarily ignored
            train_ex.labels.clear();

            Example test_ex = ex;  // original labels restored
            test_ex.id = static_cast<int32_t>(split.test.examples.size());
            split.test.examples.push_back(std::move(test_ex));
            split.test.n_labeled++;
        }
        (train_ex.labeled ? split.train.n_labeled : split.train.n_unlabeled)++;
        split.train.examples.push_back(std::move(train_ex));
    }
    return split;
}

// ---------------------------------------------------------------------------
// Synthetic data

Dataset generate_synthetic(const SyntheticSpec& spec, uint64_t seed) {
    if (spec.clusters < 1 || spec.dims < 1) throw InvalidArgument("bad synthetic spec");
    if (!spec.sizes.empty() && static_cast<int>(spec.sizes.size()) != spec.clusters)
        throw InvalidArgument("sizes must list one count per cluster");
    const int informative = spec.informative_dims > 0 ? spec.informative_dims : spec.dims;
    if (informative > spec.dims) throw InvalidArgument("more informative dims than dims");

    Dataset ds;
    ds.task = spec.task;
    ds.relation = "synthetic";
    for (int d = 0; d < spec.dims; ++d) {
        AttributeSchema a;
        a.name = "x" + std::to_string(d);
        a.kind = AttrKind::Numeric;
        a.role = AttrRole::Descriptive;
        ds.descriptive_cols.push_back(static_cast<int>(ds.schema.size()));
        ds.schema.push_back(std::move(a));
    }

    std::vector<std::vector<int8_t>> cluster_label_vecs(spec.clusters);
    if (spec.task == Task::MLC) {
        const int T = spec.num_labels;
        if (T < 1) throw InvalidArgument("need at least one label");
        for (int t = 0; t < T; ++t) {
            AttributeSchema a;
            a.name = "y" + std::to_string(t);
            a.kind = AttrKind::Nominal;
            a.role = AttrRole::Target;
            a.values = {"0", "1"};
            ds.target_cols.push_back(static_cast<int>(ds.schema.size()));
            ds.schema.push_back(std::move(a));
        }
        for (int k = 0; k < spec.clusters; ++k) {
            auto& vec = cluster_label_vecs[k];
            vec.assign(T, 0);
            if (spec.cluster_labels.empty()) {
                vec[k % T] = 1;  // one-hot over clusters
            } else {
                if (static_cast<int>(spec.cluster_labels.size()) != spec.clusters)
                    throw InvalidArgument("cluster_labels must list one set per cluster");
                for (size_t t = 0; t < spec.cluster_labels[k].size() && t < vec.size(); ++t)
                    vec[t] = spec.cluster_labels[k][t] ? 1 : 0;
            }
        }
    } else {
        if (spec.hierarchy_paths.empty())
            throw InvalidArgument("HMLC synthetic data needs hierarchy paths");
        if (static_cast<int>(spec.cluster_classes.size()) != spec.clusters)
            throw InvalidArgument("cluster_classes must list one set per cluster");
        ds.hierarchy = ClassHierarchy::from_paths(spec.hierarchy_paths, spec.omega0);
        AttributeSchema a;
        a.name = "classes";
        a.kind = AttrKind::Hierarchical;
        a.role = AttrRole::Target;
        ds.target_cols.push_back(static_cast<int>(ds.schema.size()));
        ds.schema.push_back(std::move(a));
        for (int k = 0; k < spec.clusters; ++k) {
            auto& vec = cluster_label_vecs[k];
            vec.assign(ds.hierarchy->num_classes(), 0);
            for (const auto& name : spec.cluster_classes[k]) {
                auto c = ds.hierarchy->find(name);
                if (!c) throw InvalidArgument("cluster class '" + name + "' not in hierarchy");
                vec[*c] = 1;
            }
            ds.hierarchy->close_upwards(vec);
        }
    }

    Rng rng(hash_str(seed, "synthetic"));
    for (int k = 0; k < spec.clusters; ++k) {
        const int count = spec.sizes.empty() ? 100 : spec.sizes[k];
        for (int i = 0; i < count; ++i) {
            Example ex;
            ex.id = static_cast<int32_t>(ds.examples.size());
            ex.labeled = true;
            ex.labels = cluster_label_vecs[k];
            ex.descr.resize(spec.dims);
            for (int d = 0; d < spec.dims; ++d) {
                const double center = d < informative ? spec.separation * k : 0.0;
                ex.descr[d] = center + rng.next_normal();
            }
            ds.examples.push_back(std::move(ex));
            ds.n_labeled++;
        }
    }
    return ds;
}

// ---------------------------------------------------------------------------
// Learner matrix

uint64_t cell_seed(uint64_t master, const std::string& learner, int labeled_size, int run) {
    uint64_t h = hash_str(master, learner);
    h = hash_combine(h, static_cast<uint64_t>(labeled_size));
    h = hash_combine(h, static_cast<uint64_t>(run));
    return h;
}

namespace {

bool needs_tuning(const std::string& learner) {
    return learner == "SSL-PCT" || learner == "SSL-PCT-FR" || learner == "SSL-RF" ||
           learner == "SSL-RF-FR" || learner == "SL-PCT-DT";
}

bool is_forest(const std::string& learner) {
    return learner == "CLUS-RF" || learner == "SSL-RF" || learner == "SSL-RF-FR";
}

bool is_feature_weighted(const std::string& learner) {
    return learner == "SSL-PCT-FR" || learner == "SSL-RF-FR";
}

struct TrainedLearner {
    std::optional<PCTModel> tree;
    std::optional<ForestModel> forest;
    double chosen_w = 1.0;
    int size = 0;

    LabelVector score(const Example& ex) const {
        return tree ? predict(*tree, ex) : vote(*forest, ex);
    }
};

TrainedLearner train_learner(const std::string& learner, const Dataset& full_train,
                             const ExperimentConfig& config, uint64_t seed) {
    static const std::set<std::string> kKnown = {"SL-PCT",  "SSL-PCT", "SSL-PCT-FR", "CLUS-RF",
                                                 "SSL-RF",  "SSL-RF-FR", "SL-PCT-DT"};
    if (!kKnown.count(learner)) throw InvalidArgument("unknown learner '" + learner + "'");

    // SL-PCT and CLUS-RF train on the labeled part alone; SL-PCT-DT also
    // drops the unlabeled examples but keeps the mixed-space heuristic.
    const bool labeled_only =
        learner == "SL-PCT" || learner == "CLUS-RF" || learner == "SL-PCT-DT";
    Dataset train = labeled_only ? labeled_subset(full_train) : full_train;

    TrainedLearner out;

    std::optional<std::vector<double>> sigma;
    if (is_feature_weighted(learner)) {
        Dataset labeled = labeled_subset(train);
        VarianceContext sup_ctx = make_context(labeled, 1.0);
        ForestOptions rank_opts;
        rank_opts.trees = config.trees;
        rank_opts.seed = hash_str(seed, "feature-ranking");
        rank_opts.threads = config.threads;
        ForestModel ranking = train_forest(labeled, sup_ctx, rank_opts);
        sigma = oob_importance(ranking, labeled).normalized;
    }

    if (needs_tuning(learner)) {
        LearnerSpec spec;
        spec.kind = is_forest(learner) ? LearnerSpec::Kind::Forest : LearnerSpec::Kind::Tree;
        spec.trees = config.trees;
        spec.threads = config.threads;
        TuneResult tuned = optimize_w(train, config.w_grid, config.folds, spec, seed, sigma);
        out.chosen_w = tuned.chosen_w;
    } else {
        out.chosen_w = 1.0;
    }

    VarianceContext ctx = make_context(train, out.chosen_w);
    ctx.feature_weights = sigma;

    if (is_forest(learner)) {
        ForestOptions opts;
        opts.trees = config.trees;
        opts.seed = hash_str(seed, "forest");
        opts.threads = config.threads;
        out.forest = train_forest(train, ctx, opts);
        out.size = out.forest->total_nodes();
    } else {
        PCTModel model = induce(train, ctx);
        model = prune(model, train, ctx);
        out.size = model.size();
        out.tree = std::move(model);
    }
    return out;
}

}  // namespace

RunRecord run_cell(const std::string& learner, const TransductiveSplit& split, int labeled_size,
                   int run, const ExperimentConfig& config) {
    RunRecord rec;
    rec.learner = learner;
    rec.labeled_size = labeled_size;
    rec.run = run;
    try {
        const uint64_t seed = cell_seed(config.master_seed, learner, labeled_size, run);
        const auto started = std::chrono::steady_clock::now();
        TrainedLearner trained = train_learner(learner, split.train, config, seed);
        if (config.measure_time) {
            rec.train_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        }
        rec.chosen_w = trained.chosen_w;
        rec.tree_size = trained.size;

        std::vector<LabelVector> scores, truths;
        scores.reserve(split.test.examples.size());
        for (const auto& ex : split.test.examples) {
            scores.push_back(trained.score(ex));
            truths.push_back(truth_vector(split.test, ex));
        }
        rec.auprc = micro_auprc(scores, truths);
    } catch (const std::exception& e) {
        rec.status = e.what();
        rec.auprc = std::numeric_limits<double>::quiet_NaN();
    }
    return rec;
}

ExperimentResult run_experiment(const Dataset& ds, const ExperimentConfig& config) {
    if (config.runs < 1) throw InvalidArgument("need at least one run");
    config.w_grid.check();
    for (int size : config.labeled_sizes)
        if (size > static_cast<int>(ds.examples.size()) - 2)
            throw InvalidArgument("labeled size " + std::to_string(size) +
                                  " too large for the dataset");

    ExperimentResult result;
    for (int size : config.labeled_sizes) {
        for (int run = 0; run < config.runs; ++run) {
            // The split seed ignores the learner so the whole row of the
            // matrix shares one labeled sample and one test set.
            const uint64_t split_seed =
                hash_combine(hash_combine(hash_str(config.master_seed, "split"),
                                          static_cast<uint64_t>(size)),
                             static_cast<uint64_t>(run));
            TransductiveSplit split = transductive_split(ds, size, split_seed);
            for (const auto& learner : config.learners)
                result.records.push_back(run_cell(learner, split, size, run, config));
        }
    }

    // Wilcoxon pairings over runs, per labeled size.
    static const std::pair<const char*, const char*> kPairings[] = {
        {"SL-PCT", "SSL-PCT"},    {"SL-PCT", "SSL-PCT-FR"}, {"SSL-PCT", "SSL-PCT-FR"},
        {"CLUS-RF", "SSL-RF"},    {"CLUS-RF", "SSL-RF-FR"}, {"SSL-RF", "SSL-RF-FR"},
        {"SL-PCT", "SL-PCT-DT"},  {"SL-PCT-DT", "SSL-PCT"},
    };
    auto have = [&](const std::string& l) {
        return std::find(config.learners.begin(), config.learners.end(), l) !=
               config.learners.end();
    };
    for (const auto& [first, second] : kPairings) {
        if (!have(first) || !have(second)) continue;
        for (int size : config.labeled_sizes) {
            std::vector<double> a, b;
            for (int run = 0; run < config.runs; ++run) {
                const RunRecord *ra = nullptr, *rb = nullptr;
                for (const auto& r : result.records) {
                    if (r.labeled_size != size || r.run != run) continue;
                    if (r.learner == first) ra = &r;
                    if (r.learner == second) rb = &r;
                }
                if (ra && rb && !std::isnan(ra->auprc) && !std::isnan(rb->auprc)) {
                    a.push_back(ra->auprc);
                    b.push_back(rb->auprc);
                }
            }
            PairTest pt;
            pt.first = first;
            pt.second = second;
            pt.labeled_size = size;
            try {
                pt.wilcoxon = wilcoxon_signed_rank(a, b);
                pt.valid = true;
            } catch (const std::exception&) {
                pt.valid = false;  // too few usable pairs
            }
            result.pairings.push_back(std::move(pt));
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Reports

std::string records_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << "learner,labeled_size,run,chosen_w,auprc,tree_size,train_seconds,status\n";
    for (const auto& r : records) {
        out << r.learner << "," << r.labeled_size << "," << r.run << ",";
        if (!std::isnan(r.chosen_w)) out << fmt12(r.chosen_w);
        out << ",";
        if (!std::isnan(r.auprc)) out << fmt12(r.auprc);
        out << "," << r.tree_size << "," << fmt12(r.train_seconds) << ",";
        // commas inside error messages would break the row
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        out << status << "\n";
    }
    return out.str();
}

std::string summary_json(const ExperimentResult& result, const ExperimentConfig& config) {
    std::ostringstream out;
    out << "{\n  \"means\": [\n";
    bool first_entry = true;
    for (const auto& learner : config.learners) {
        for (int size : config.labeled_sizes) {
            double sum = 0.0, size_sum = 0.0, w_sum = 0.0;
            int n = 0;
            for (const auto& r : result.records) {
                if (r.learner != learner || r.labeled_size != size || std::isnan(r.auprc))
                    continue;
                sum += r.auprc;
                size_sum += r.tree_size;
                w_sum += std::isnan(r.chosen_w) ? 1.0 : r.chosen_w;
                ++n;
            }
            if (!first_entry) out << ",\n";
            first_entry = false;
            out << "    {\"learner\": \"" << learner << "\", \"labeled_size\": " << size
                << ", \"n\": " << n;
            if (n > 0) {
                out << ", \"mean_auprc\": " << fmt12(sum / n)
                    << ", \"mean_size\": " << fmt12(size_sum / n)
                    << ", \"mean_w\": " << fmt12(w_sum / n);
            }
            out << "}";
        }
    }
    out << "\n  ],\n  \"wilcoxon\": [\n";
    bool first_pair = true;
    for (const auto& p : result.pairings) {
        if (!first_pair) out << ",\n";
        first_pair = false;
        out << "    {\"first\": \"" << p.first << "\", \"second\": \"" << p.second
            << "\", \"labeled_size\": " << p.labeled_size;
        if (p.valid) {
            const char* dir = p.wilcoxon.direction > 0 ? "+" : (p.wilcoxon.direction < 0 ? "-" : "0");
            out << ", \"p\": " << fmt12(p.wilcoxon.p) << ", \"direction\": \"" << dir
                << "\", \"statistic\": " << fmt12(p.wilcoxon.statistic)
                << ", \"n\": " << p.wilcoxon.n;
        } else {
            out << ", \"p\": null";
        }
        out << "}";
    }
    out << "\n  ]\n}\n";
    return out.str();
}

}  // namespace sslpct
