#include "sslpct/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <cstdio>
#include <sstream>
#include <thread>

namespace sslpct {

int default_subspace_size(int num_descriptive) {
    if (num_descriptive < 1) throw InvalidArgument("need at least one descriptive attribute");
    int m = static_cast<int>(std::floor(std::log2(static_cast<double>(num_descriptive)))) + 1;
    return std::max(1, m);
}

std::vector<int32_t> stratified_bootstrap(const Dataset& ds, Rng& rng) {
    std::vector<int32_t> labeled, unlabeled;
    for (size_t i = 0; i < ds.examples.size(); ++i)
        (ds.examples[i].labeled ? labeled : unlabeled).push_back(static_cast<int32_t>(i));
    if (labeled.empty()) throw NoLabeledData("bootstrap needs at least one labeled example");

    std::vector<int32_t> sample;
    sample.reserve(ds.examples.size());
    for (size_t i = 0; i < labeled.size(); ++i)
        sample.push_back(labeled[rng.next_below(labeled.size())]);
    for (size_t i = 0; i < unlabeled.size(); ++i)
        sample.push_back(unlabeled[rng.next_below(unlabeled.size())]);
    return sample;
}

namespace {

uint64_t tree_seed(uint64_t master, int tree_index) {
    return hash_combine(hash_str(master, "tree"), static_cast<uint64_t>(tree_index));
}

PCTModel train_one_tree(const Dataset& ds, const VarianceContext& ctx, const ForestOptions& opts,
                        int index, int subspace, std::vector<int32_t>* oob_out) {
    Rng rng(tree_seed(opts.seed, index));

    std::vector<int32_t> sample;
    if (opts.bootstrap) {
        sample = stratified_bootstrap(ds, rng);
    } else {
        sample.resize(ds.examples.size());
        for (size_t i = 0; i < sample.size(); ++i) sample[i] = static_cast<int32_t>(i);
    }

    if (oob_out) {
        std::vector<uint8_t> in_bag(ds.examples.size(), 0);
        for (int32_t i : sample) in_bag[i] = 1;
        oob_out->clear();
        for (size_t i = 0; i < in_bag.size(); ++i)
            if (!in_bag[i]) oob_out->push_back(static_cast<int32_t>(i));
    }

    InductionParams params;
    params.subspace_size = subspace;
    params.rng = &rng;
    return induce_on(ds, std::move(sample), ctx, params);
}

}  // namespace

ForestModel train_forest(const Dataset& ds, const VarianceContext& ctx,
                         const ForestOptions& opts) {
    ctx.check(ds);
    if (opts.trees < 1) throw InvalidArgument("forest needs at least one tree");
    if (ds.n_labeled < 2) throw NoLabeledData("forest training needs at least 2 labeled examples");

    ForestModel forest;
    forest.master_seed = opts.seed;
    forest.subspace_size =
        opts.subspace_size < 0 ? default_subspace_size(ds.num_descriptive()) : opts.subspace_size;
    forest.trees.resize(opts.trees);
    forest.oob.resize(opts.trees);

    const int threads = std::max(1, opts.threads);
    if (threads == 1) {
        for (int i = 0; i < opts.trees; ++i)
            forest.trees[i] =
                train_one_tree(ds, ctx, opts, i, forest.subspace_size, &forest.oob[i]);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= opts.trees) return;
                forest.trees[i] =
                    train_one_tree(ds, ctx, opts, i, forest.subspace_size, &forest.oob[i]);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return forest;
}

LabelVector vote(const ForestModel& forest, const Example& ex) {
    if (forest.trees.empty()) throw InvalidArgument("vote needs a non-empty forest");
    LabelVector acc(forest.trees.front().header.num_label_components(), 0.0);
    for (const auto& tree : forest.trees) {
        LabelVector p = predict(tree, ex);
        for (size_t c = 0; c < acc.size(); ++c) acc[c] += p[c];
    }
    const double k = static_cast<double>(forest.trees.size());
    for (double& v : acc) v /= k;
    return acc;
}

// ---------------------------------------------------------------------------
// OOB permutation importance

namespace {

// 1 - micro-averaged per-label accuracy of one tree over the given examples,
// with the columns of `overrides` (when non-null) replacing attribute values.
double tree_error(const PCTModel& tree, const Dataset& ds, const std::vector<int32_t>& ids,
                  const Dataset* override_ds) {
    const Dataset& src = override_ds ? *override_ds : ds;
    int64_t wrong = 0, total = 0;
    for (int32_t id : ids) {
        const Example& ex = src.examples[id];
        LabelVector scores = predict(tree, ex);
        const Example& truth_ex = ds.examples[id];
        for (size_t c = 0; c < scores.size(); ++c) {
            const int pred = scores[c] > 0.5 ? 1 : 0;
            wrong += pred != truth_ex.labels[c] ? 1 : 0;
            ++total;
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(wrong) / static_cast<double>(total);
}

}  // namespace

FeatureImportance oob_importance(const ForestModel& forest, const Dataset& ds) {
    if (forest.trees.empty()) throw InvalidArgument("importance needs a trained forest");
    if (forest.oob.size() != forest.trees.size())
        throw InvalidArgument("forest lacks recorded OOB assignments");
    const int D = ds.num_descriptive();

    FeatureImportance imp;
    imp.raw.assign(D, 0.0);
    int used_trees = 0;

    Dataset permuted = ds;  // working copy whose columns get shuffled
    for (size_t t = 0; t < forest.trees.size(); ++t) {
        std::vector<int32_t> labeled_oob;
        for (int32_t id : forest.oob[t])
            if (ds.examples[id].labeled) labeled_oob.push_back(id);
        if (labeled_oob.empty()) continue;  // skip trees without labeled OOB examples
        ++used_trees;

        const double baseline = tree_error(forest.trees[t], ds, labeled_oob, nullptr);
        Rng rng(hash_combine(tree_seed(forest.master_seed, static_cast<int>(t)),
                             0x9e3779b97f4a7c15ULL));
        for (int d = 0; d < D; ++d) {
            // Permute attribute d among the labeled OOB rows.
            std::vector<double> col(labeled_oob.size());
            for (size_t i = 0; i < labeled_oob.size(); ++i)
                col[i] = ds.examples[labeled_oob[i]].descr[d];
            rng.shuffle(col);
            for (size_t i = 0; i < labeled_oob.size(); ++i)
                permuted.examples[labeled_oob[i]].descr[d] = col[i];

            imp.raw[d] += tree_error(forest.trees[t], ds, labeled_oob, &permuted) - baseline;

            for (size_t i = 0; i < labeled_oob.size(); ++i)
                permuted.examples[labeled_oob[i]].descr[d] =
                    ds.examples[labeled_oob[i]].descr[d];
        }
    }
    if (used_trees == 0) throw EmptyOOB("no tree has labeled out-of-bag examples");

    imp.normalized.assign(D, 0.0);
    double max_raw = 0.0;
    for (int d = 0; d < D; ++d) {
        imp.raw[d] /= static_cast<double>(used_trees);
        max_raw = std::max(max_raw, imp.raw[d]);
    }
    if (max_raw > 0.0)
        for (int d = 0; d < D; ++d) imp.normalized[d] = std::max(0.0, imp.raw[d]) / max_raw;
    return imp;
}

FeatureWeightedResult train_feature_weighted(const Dataset& ds, const VarianceContext& ctx,
                                             const FeatureWeightedOptions& opts) {
    // Stage 1: supervised forest on the labeled part only.
    Dataset labeled = labeled_subset(ds);
    if (labeled.n_labeled < 2) throw NoLabeledData("feature weighting needs 2 labeled examples");
    VarianceContext sup_ctx = make_context(labeled, 1.0);
    ForestOptions rank_opts;
    rank_opts.trees = opts.ranking_trees;
    rank_opts.seed = hash_str(opts.forest.seed, "feature-ranking");
    rank_opts.threads = opts.forest.threads;
    ForestModel ranking = train_forest(labeled, sup_ctx, rank_opts);
    FeatureImportance imp = oob_importance(ranking, labeled);

    FeatureWeightedResult result;
    result.sigma = imp.normalized;
    result.raw_importance = imp.raw;

    // Stage 2: the semi-supervised learner with sigma in the heuristic.
    VarianceContext weighted = ctx;
    weighted.feature_weights = result.sigma;
    if (opts.forest.trees == 0)
        result.tree = induce(ds, weighted);
    else
        result.forest = train_forest(ds, weighted, opts.forest);
    return result;
}

std::string importance_csv(const Dataset& ds, const FeatureImportance& importance) {
    std::ostringstream out;
    out << "attribute,raw,sigma\n";
    for (int d = 0; d < ds.num_descriptive(); ++d) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g\n", ds.descriptive_attr(d).name.c_str(),
                      importance.raw[d], importance.normalized[d]);
        out << buf;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize_forest(const ForestModel& forest) {
    std::ostringstream out;
    out << "sslpct forest 1\n";
    out << "trees " << forest.trees.size() << "\n";
    out << "seed " << forest.master_seed << "\n";
    out << "subspace " << forest.subspace_size << "\n";
    for (const auto& tree : forest.trees) out << serialize_model(tree);
    return out.str();
}

ForestModel parse_forest(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "sslpct forest 1")
        throw ParseError("not a forest file");
    ForestModel forest;
    int k = 0;
    std::string key;
    in >> key >> k;
    in >> key >> forest.master_seed;
    in >> key >> forest.subspace_size;
    std::getline(in, line);

    // Split the remainder into per-tree chunks on the 'end' marker.
    std::string chunk;
    while (std::getline(in, line)) {
        chunk += line;
        chunk += "\n";
        if (line == "end") {
            forest.trees.push_back(parse_model(chunk));
            chunk.clear();
        }
    }
    if (static_cast<int>(forest.trees.size()) != k)
        throw ParseError("forest tree count mismatch");
    return forest;
}

ForestModel load_forest(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_forest(ss.str());
}

void save_forest(const ForestModel& forest, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << serialize_forest(forest);
}

}  // namespace sslpct
