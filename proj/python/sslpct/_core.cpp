// Python bindings for the main operations: data handling, tree/forest
// training, prediction, tuning, evaluation and the experiment harness.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>

#include "sslpct/harness.hpp"

namespace py = pybind11;
using namespace sslpct;

namespace {

Task task_from_string(const std::string& s) {
    if (s == "mlc" || s == "MLC") return Task::MLC;
    if (s == "hmlc" || s == "HMLC") return Task::HMLC;
    throw InvalidArgument("task must be 'mlc' or 'hmlc'");
}

// Tree or forest behind one handle.
struct PyModel {
    std::optional<PCTModel> tree;
    std::optional<ForestModel> forest;

    const Dataset& header() const { return tree ? tree->header : forest->trees.front().header; }
    int size() const { return tree ? tree->size() : forest->total_nodes(); }
    std::string kind() const { return tree ? "tree" : "forest"; }
    double w() const { return tree ? tree->w_used : forest->trees.front().w_used; }

    LabelVector score(const Example& ex) const {
        return tree ? predict(*tree, ex) : vote(*forest, ex);
    }
    std::vector<LabelVector> predict_dataset(const Dataset& ds) const {
        const PCTModel& ref = tree ? *tree : forest->trees.front();
        Dataset aligned = align_to_model(ref, ds);
        std::vector<LabelVector> out;
        out.reserve(aligned.examples.size());
        for (const auto& ex : aligned.examples) out.push_back(score(ex));
        return out;
    }
    std::string serialize() const {
        return tree ? serialize_model(*tree) : serialize_forest(*forest);
    }
};

std::vector<LabelVector> labeled_truths(const Dataset& ds) {
    std::vector<LabelVector> out;
    for (const auto& ex : ds.examples)
        if (ex.labeled) out.push_back(truth_vector(ds, ex));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Semi-supervised predictive clustering trees for multi-label "
              "and hierarchical multi-label classification";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<NoLabeledData>(m, "NoLabeledDataError", PyExc_ValueError);
    py::register_exception<TooFewLabeled>(m, "TooFewLabeledError", PyExc_ValueError);
    py::register_exception<EmptyOOB>(m, "EmptyOOBError", PyExc_ValueError);

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("n_examples",
                               [](const Dataset& ds) { return ds.examples.size(); })
        .def_property_readonly("n_labeled", [](const Dataset& ds) { return ds.n_labeled; })
        .def_property_readonly("n_unlabeled", [](const Dataset& ds) { return ds.n_unlabeled; })
        .def_property_readonly("n_descriptive",
                               [](const Dataset& ds) { return ds.num_descriptive(); })
        .def_property_readonly("n_label_components",
                               [](const Dataset& ds) { return ds.num_label_components(); })
        .def_property_readonly(
            "task",
            [](const Dataset& ds) { return ds.task == Task::MLC ? "mlc" : "hmlc"; })
        .def_property_readonly("label_names",
                               [](const Dataset& ds) { return ds.label_component_names(); })
        .def("truths", &labeled_truths,
             "Binary truth vectors of the labeled examples, in dataset order")
        .def("labeled_only", &labeled_subset)
        .def("to_arff", &write_dataset)
        .def("save", &save_dataset, py::arg("path"))
        .def("__repr__", [](const Dataset& ds) {
            return "<Dataset " + std::to_string(ds.examples.size()) + " examples, " +
                   std::to_string(ds.n_labeled) + " labeled>";
        });

    m.def(
        "load_dataset",
        [](const std::string& path, const std::string& task, const std::string& targets,
           double omega0) { return load_dataset(path, task_from_string(task),
                                                TargetSpec::parse(targets), omega0).dataset; },
        py::arg("path"), py::arg("task") = "mlc", py::arg("targets") = "last:1",
        py::arg("omega0") = 0.75);
    m.def(
        "parse_arff",
        [](const std::string& text, const std::string& task, const std::string& targets,
           double omega0) { return parse_dataset(text, task_from_string(task),
                                                 TargetSpec::parse(targets), omega0).dataset; },
        py::arg("text"), py::arg("task") = "mlc", py::arg("targets") = "last:1",
        py::arg("omega0") = 0.75);

    m.def(
        "synth",
        [](int clusters, int dims, int informative, double separation, std::vector<int> sizes,
           int labels, const std::string& task, std::vector<std::string> hierarchy,
           std::vector<std::vector<std::string>> cluster_classes,
           std::vector<std::vector<int>> cluster_labels, double omega0, uint64_t seed) {
            SyntheticSpec spec;
            spec.task = task_from_string(task);
            spec.clusters = clusters;
            spec.dims = dims;
            spec.informative_dims = informative;
            spec.separation = separation;
            spec.sizes = std::move(sizes);
            spec.num_labels = labels;
            spec.hierarchy_paths = std::move(hierarchy);
            spec.cluster_classes = std::move(cluster_classes);
            spec.cluster_labels = std::move(cluster_labels);
            spec.omega0 = omega0;
            return generate_synthetic(spec, seed);
        },
        py::arg("clusters") = 2, py::arg("dims") = 2, py::arg("informative") = 0,
        py::arg("separation") = 6.0, py::arg("sizes") = std::vector<int>{},
        py::arg("labels") = 2, py::arg("task") = "mlc",
        py::arg("hierarchy") = std::vector<std::string>{},
        py::arg("cluster_classes") = std::vector<std::vector<std::string>>{},
        py::arg("cluster_labels") = std::vector<std::vector<int>>{}, py::arg("omega0") = 0.75,
        py::arg("seed") = 1);

    m.def(
        "transductive_split",
        [](const Dataset& ds, int labeled_size, uint64_t seed) {
            TransductiveSplit split = transductive_split(ds, labeled_size, seed);
            return py::make_tuple(std::move(split.train), std::move(split.test));
        },
        py::arg("dataset"), py::arg("labeled_size"), py::arg("seed") = 1);

    py::class_<PyModel>(m, "Model")
        .def_property_readonly("size", &PyModel::size)
        .def_property_readonly("kind", &PyModel::kind)
        .def_property_readonly("w", &PyModel::w)
        .def("predict", &PyModel::predict_dataset, py::arg("dataset"),
             "Per-example score vectors (aligned to the model schema by name)")
        .def("serialize", &PyModel::serialize)
        .def("save",
             [](const PyModel& model, const std::string& path) {
                 if (model.tree)
                     save_model(*model.tree, path);
                 else
                     save_forest(*model.forest, path);
             })
        .def("__repr__", [](const PyModel& model) {
            return "<Model " + model.kind() + ", " + std::to_string(model.size()) + " nodes>";
        });

    m.def(
        "train_tree",
        [](const Dataset& ds, double w, bool do_prune,
           const std::optional<std::vector<double>>& sigma) {
            VarianceContext ctx = make_context(ds, w);
            ctx.feature_weights = sigma;
            PyModel out;
            PCTModel model = induce(ds, ctx);
            if (do_prune) model = prune(model, ds, ctx);
            out.tree = std::move(model);
            return out;
        },
        py::arg("dataset"), py::arg("w") = 1.0, py::arg("prune") = true,
        py::arg("feature_weights") = std::nullopt);

    m.def(
        "train_forest",
        [](const Dataset& ds, double w, int trees, uint64_t seed, int threads, int subspace,
           const std::optional<std::vector<double>>& sigma) {
            VarianceContext ctx = make_context(ds, w);
            ctx.feature_weights = sigma;
            ForestOptions opts;
            opts.trees = trees;
            opts.seed = seed;
            opts.threads = threads;
            opts.subspace_size = subspace;
            PyModel out;
            out.forest = train_forest(ds, ctx, opts);
            return out;
        },
        py::arg("dataset"), py::arg("w") = 1.0, py::arg("trees") = 100, py::arg("seed") = 1,
        py::arg("threads") = 1, py::arg("subspace") = -1,
        py::arg("feature_weights") = std::nullopt);

    m.def(
        "train_feature_weighted",
        [](const Dataset& ds, double w, int trees, int ranking_trees, uint64_t seed,
           int threads) {
            VarianceContext ctx = make_context(ds, w);
            FeatureWeightedOptions opts;
            opts.ranking_trees = ranking_trees;
            opts.forest.trees = trees;
            opts.forest.seed = seed;
            opts.forest.threads = threads;
            FeatureWeightedResult result = train_feature_weighted(ds, ctx, opts);
            PyModel model;
            if (result.tree)
                model.tree = std::move(*result.tree);
            else
                model.forest = std::move(*result.forest);
            return py::make_tuple(std::move(model), result.sigma);
        },
        py::arg("dataset"), py::arg("w") = 1.0, py::arg("trees") = 0,
        py::arg("ranking_trees") = 100, py::arg("seed") = 1, py::arg("threads") = 1);

    m.def("load_model", [](const std::string& path) {
        std::ifstream f(path);
        if (!f) throw ParseError("cannot open '" + path + "'");
        std::string first;
        std::getline(f, first);
        PyModel out;
        if (first == "sslpct forest 1")
            out.forest = load_forest(path);
        else
            out.tree = load_model(path);
        return out;
    });

    m.def(
        "feature_importance",
        [](const PyModel& model, const Dataset& ds) {
            if (!model.forest) throw InvalidArgument("importance needs a forest model");
            FeatureImportance imp = oob_importance(*model.forest, ds);
            return py::make_tuple(imp.raw, imp.normalized);
        },
        py::arg("model"), py::arg("dataset"));

    m.def(
        "tune_w",
        [](const Dataset& ds, int folds, std::vector<double> grid, int forest_trees,
           uint64_t seed, int threads) {
            WGrid g;
            g.values = grid.empty() ? WGrid::standard().values : std::move(grid);
            LearnerSpec learner;
            learner.kind =
                forest_trees > 0 ? LearnerSpec::Kind::Forest : LearnerSpec::Kind::Tree;
            learner.trees = forest_trees;
            learner.threads = threads;
            TuneResult r = optimize_w(ds, g, folds, learner, seed);
            py::dict out;
            out["chosen_w"] = r.chosen_w;
            out["grid"] = r.grid;
            out["scores"] = r.scores;
            out["folds"] = r.folds;
            return out;
        },
        py::arg("dataset"), py::arg("folds") = 3, py::arg("grid") = std::vector<double>{},
        py::arg("forest_trees") = 0, py::arg("seed") = 1, py::arg("threads") = 1);

    m.def(
        "decide_labels",
        [](const LabelVector& scores, const std::string& task, std::optional<double> tau) {
            const DecisionRule rule =
                tau ? DecisionRule::threshold(*tau) : DecisionRule::majority();
            return decide_labels(scores, task_from_string(task), rule);
        },
        py::arg("scores"), py::arg("task") = "mlc", py::arg("tau") = std::nullopt);

    m.def("micro_pr_curve",
          [](const std::vector<LabelVector>& scores, const std::vector<LabelVector>& truths) {
              PRCurve c = micro_pr_curve(scores, truths);
              py::dict out;
              out["recall"] = c.recall;
              out["precision"] = c.precision;
              out["thresholds"] = c.thresholds;
              return out;
          });
    m.def("micro_auprc", &micro_auprc, py::arg("scores"), py::arg("truths"));

    m.def(
        "wilcoxon_signed_rank",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            WilcoxonResult r = wilcoxon_signed_rank(a, b);
            py::dict out;
            out["statistic"] = r.statistic;
            out["p"] = r.p;
            out["direction"] = r.direction;
            out["n"] = r.n;
            return out;
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "run_experiment",
        [](const Dataset& ds, std::vector<int> labeled_sizes, int runs, int folds,
           std::vector<std::string> learners, int trees, std::vector<double> grid,
           uint64_t seed, int threads, bool measure_time) {
            ExperimentConfig config;
            config.labeled_sizes = std::move(labeled_sizes);
            config.runs = runs;
            config.folds = folds;
            config.learners = std::move(learners);
            config.trees = trees;
            if (!grid.empty()) config.w_grid.values = std::move(grid);
            config.master_seed = seed;
            config.threads = threads;
            config.measure_time = measure_time;
            ExperimentResult result = run_experiment(ds, config);
            py::list records;
            for (const auto& r : result.records) {
                py::dict rec;
                rec["learner"] = r.learner;
                rec["labeled_size"] = r.labeled_size;
                rec["run"] = r.run;
                rec["chosen_w"] = r.chosen_w;
                rec["auprc"] = r.auprc;
                rec["tree_size"] = r.tree_size;
                rec["train_seconds"] = r.train_seconds;
                rec["status"] = r.status;
                records.append(rec);
            }
            py::dict out;
            out["records"] = records;
            out["records_csv"] = records_csv(result.records);
            out["summary_json"] = summary_json(result, config);
            return out;
        },
        py::arg("dataset"), py::arg("labeled_sizes"), py::arg("runs") = 10,
        py::arg("folds") = 3, py::arg("learners") = std::vector<std::string>{"SL-PCT", "SSL-PCT"},
        py::arg("trees") = 100, py::arg("w_grid") = std::vector<double>{}, py::arg("seed") = 1,
        py::arg("threads") = 1, py::arg("measure_time") = false);
}
