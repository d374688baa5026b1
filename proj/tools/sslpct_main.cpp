// Command line front end: train, predict, evaluate, tune, experiment, synth.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sslpct/harness.hpp"

using namespace sslpct;

namespace {

Task parse_task(const std::string& s) {
    if (s == "mlc" || s == "MLC") return Task::MLC;
    if (s == "hmlc" || s == "HMLC") return Task::HMLC;
    throw CLI::ValidationError("--task must be mlc or hmlc");
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

WGrid parse_grid(const std::vector<double>& values) {
    if (values.empty()) return WGrid::standard();
    WGrid g;
    g.values = values;
    g.check();
    return g;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << content;
}

// Tree or forest file, detected from the first line.
struct LoadedModel {
    std::optional<PCTModel> tree;
    std::optional<ForestModel> forest;

    static LoadedModel open(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw ParseError("cannot open '" + path + "'");
        std::string first;
        std::getline(f, first);
        LoadedModel m;
        if (first == "sslpct forest 1")
            m.forest = load_forest(path);
        else
            m.tree = load_model(path);
        return m;
    }
    const Dataset& header() const { return tree ? tree->header : forest->trees.front().header; }
    int size() const { return tree ? tree->size() : forest->total_nodes(); }
    LabelVector score(const Example& ex) const {
        return tree ? predict(*tree, ex) : vote(*forest, ex);
    }
};

struct DataFlags {
    std::string path;
    std::string task = "mlc";
    std::string targets = "last:1";
    double omega0 = 0.75;

    void attach(CLI::App* cmd, bool need_task = true) {
        cmd->add_option("--data", path, "input ARFF file")->required();
        if (need_task) {
            cmd->add_option("--task", task, "mlc or hmlc");
            cmd->add_option("--targets", targets,
                            "MLC target columns: last:N or names:a,b,...");
            cmd->add_option("--omega0", omega0, "HMLC class weight decay base");
        }
    }
    Dataset load() const {
        auto res = load_dataset(path, parse_task(task), TargetSpec::parse(targets), omega0);
        for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
        return std::move(res.dataset);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-supervised predictive clustering trees"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file mirroring the flags; flags win");

    // train ------------------------------------------------------------
    auto* train_cmd = app.add_subcommand("train", "fit a tree or forest");
    train_cmd->configurable();
    DataFlags train_data;
    train_data.attach(train_cmd);
    double w = 1.0;
    bool forest_flag = false, feature_weighted = false, no_prune = false;
    int trees = 100, threads = 1;
    uint64_t seed = 1;
    std::string out_path;
    train_cmd->add_option("--w", w, "supervision weight in [0,1]")->check(CLI::Range(0.0, 1.0));
    train_cmd->add_flag("--forest", forest_flag, "train a random forest");
    train_cmd->add_option("--trees", trees, "forest size");
    train_cmd->add_flag("--feature-weighted", feature_weighted,
                        "rank features on the labeled part first");
    train_cmd->add_flag("--no-prune", no_prune, "skip M5 pruning of single trees");
    train_cmd->add_option("--seed", seed, "random seed");
    train_cmd->add_option("--threads", threads, "worker threads for forests");
    std::string importance_out;
    train_cmd->add_option("--importance-out", importance_out,
                          "feature importance CSV (with --feature-weighted)");
    train_cmd->add_option("--out", out_path, "model file")->required();

    // predict ----------------------------------------------------------
    auto* predict_cmd = app.add_subcommand("predict", "score examples with a model");
    predict_cmd->configurable();
    std::string model_path, pred_out;
    DataFlags predict_data;
    predict_data.attach(predict_cmd);
    double tau = 0.5;
    bool majority = false;
    predict_cmd->add_option("--model", model_path, "model file")->required();
    predict_cmd->add_option("--tau", tau, "decision threshold for the decisions column");
    predict_cmd->add_flag("--majority", majority, "MLC majority decisions");
    predict_cmd->add_option("--out", pred_out, "scores CSV")->required();

    // evaluate ----------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("evaluate", "micro-averaged AUPRC report");
    eval_cmd->configurable();
    std::string eval_model, eval_out, curve_out, eval_csv;
    DataFlags eval_data;
    eval_data.attach(eval_cmd);
    double eval_tau = 0.5;
    eval_cmd->add_option("--model", eval_model, "model file")->required();
    eval_cmd->add_option("--tau", eval_tau, "reference threshold for TP/FP/FN");
    eval_cmd->add_option("--out", eval_out, "report JSON");
    eval_cmd->add_option("--csv", eval_csv, "report CSV row");
    eval_cmd->add_option("--curve", curve_out, "precision-recall curve CSV");

    // tune ----------------------------------------------------------------
    auto* tune_cmd = app.add_subcommand("tune", "internal cross-validation of w");
    tune_cmd->configurable();
    DataFlags tune_data;
    tune_data.attach(tune_cmd);
    std::vector<double> grid_values;
    int folds = 3;
    bool tune_forest = false;
    int tune_trees = 100;
    uint64_t tune_seed = 1;
    int tune_threads = 1;
    std::string tune_out;
    tune_cmd->add_option("--w-grid", grid_values, "comma list of w candidates (must include 1)")
        ->delimiter(',');
    tune_cmd->add_option("--folds", folds, "internal folds");
    tune_cmd->add_flag("--forest", tune_forest, "tune the forest learner");
    tune_cmd->add_option("--trees", tune_trees, "forest size");
    tune_cmd->add_option("--seed", tune_seed, "random seed");
    tune_cmd->add_option("--threads", tune_threads, "worker threads");
    tune_cmd->add_option("--out", tune_out, "TuneResult JSON (stdout when omitted)");

    // experiment ---------------------------------------------------------
    auto* exp_cmd = app.add_subcommand("experiment", "transductive learner matrix");
    exp_cmd->configurable();
    DataFlags exp_data;
    exp_data.attach(exp_cmd);
    std::vector<int> exp_sizes = {50, 100, 200, 350, 500};
    std::vector<std::string> exp_learners = {"SL-PCT", "SSL-PCT"};
    std::vector<double> exp_grid;
    int exp_runs = 10, exp_folds = 3, exp_trees = 100, exp_threads = 1;
    uint64_t exp_seed = 1;
    std::string exp_out = "experiment-out";
    exp_cmd->add_option("--labeled-sizes", exp_sizes, "comma list of labeled sample sizes")
        ->delimiter(',');
    exp_cmd->add_option("--runs", exp_runs, "repetitions per size");
    exp_cmd->add_option("--folds", exp_folds, "internal CV folds");
    exp_cmd->add_option("--trees", exp_trees, "forest size");
    exp_cmd->add_option("--learners", exp_learners,
                        "comma list from SL-PCT,SSL-PCT,SSL-PCT-FR,CLUS-RF,SSL-RF,SSL-RF-FR,SL-PCT-DT")
        ->delimiter(',');
    exp_cmd->add_option("--w-grid", exp_grid, "comma list of w candidates")->delimiter(',');
    exp_cmd->add_option("--seed", exp_seed, "master seed");
    exp_cmd->add_option("--threads", exp_threads, "worker threads inside forests");
    exp_cmd->add_option("--out", exp_out, "output directory");

    // synth ----------------------------------------------------------------
    auto* synth_cmd = app.add_subcommand("synth", "Gaussian-cluster dataset generator");
    synth_cmd->configurable();
    std::string synth_task = "mlc", synth_out;
    std::vector<int> synth_sizes = {100, 100};
    std::vector<std::string> hierarchy_paths;
    std::string cluster_labels_text, cluster_classes_text;
    int clusters = 2, dims = 2, informative = 0, num_labels = 2;
    double separation = 6.0, synth_omega0 = 0.75;
    uint64_t synth_seed = 1;
    synth_cmd->add_option("--task", synth_task, "mlc or hmlc");
    synth_cmd->add_option("--clusters", clusters, "cluster count");
    synth_cmd->add_option("--dims", dims, "descriptive dimensionality");
    synth_cmd->add_option("--informative", informative,
                          "dims that separate the clusters (0 = all)");
    synth_cmd->add_option("--separation", separation, "center spacing in sigma units");
    synth_cmd->add_option("--sizes", synth_sizes, "comma list of per-cluster counts")
        ->delimiter(',');
    synth_cmd->add_option("--labels", num_labels, "MLC label count");
    synth_cmd->add_option("--cluster-labels", cluster_labels_text,
                          "semicolon list of 0/1 strings, one per cluster");
    synth_cmd->add_option("--hierarchy", hierarchy_paths, "HMLC class paths, comma separated")
        ->delimiter(',');
    synth_cmd->add_option("--cluster-classes", cluster_classes_text,
                          "semicolon list of comma lists of classes");
    synth_cmd->add_option("--omega0", synth_omega0, "HMLC weight decay base");
    synth_cmd->add_option("--seed", synth_seed, "random seed");
    synth_cmd->add_option("--out", synth_out, "output ARFF")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*train_cmd) {
            Dataset ds = train_data.load();
            VarianceContext ctx = make_context(ds, w);
            if (feature_weighted) {
                FeatureWeightedOptions opts;
                opts.ranking_trees = trees;
                opts.forest.trees = forest_flag ? trees : 0;
                opts.forest.seed = seed;
                opts.forest.threads = threads;
                auto result = train_feature_weighted(ds, ctx, opts);
                if (!importance_out.empty()) {
                    FeatureImportance imp;
                    imp.raw = result.raw_importance;
                    imp.normalized = result.sigma;
                    write_file(importance_out, importance_csv(ds, imp));
                }
                if (result.forest) {
                    save_forest(*result.forest, out_path);
                } else {
                    PCTModel model = std::move(*result.tree);
                    if (!no_prune) {
                        VarianceContext wctx = ctx;
                        wctx.feature_weights = result.sigma;
                        model = prune(model, ds, wctx);
                    }
                    save_model(model, out_path);
                }
            } else if (forest_flag) {
                ForestOptions opts;
                opts.trees = trees;
                opts.seed = seed;
                opts.threads = threads;
                save_forest(train_forest(ds, ctx, opts), out_path);
            } else {
                PCTModel model = induce(ds, ctx);
                if (!no_prune) model = prune(model, ds, ctx);
                save_model(model, out_path);
            }
            std::cerr << "model written to " << out_path << "\n";
        } else if (*predict_cmd) {
            LoadedModel model = LoadedModel::open(model_path);
            predict_data.task = model.header().task == Task::MLC ? "mlc" : "hmlc";
            Dataset raw = predict_data.load();
            Dataset ds = model.tree ? align_to_model(*model.tree, raw)
                                    : align_to_model(model.forest->trees.front(), raw);
            std::ostringstream out;
            const auto names = model.header().label_component_names();
            out << "id";
            for (const auto& n : names) out << ",score_" << n;
            for (const auto& n : names) out << ",decided_" << n;
            out << "\n";
            const DecisionRule rule =
                majority ? DecisionRule::majority() : DecisionRule::threshold(tau);
            for (const auto& ex : ds.examples) {
                LabelVector s = model.score(ex);
                LabelVector d = decide_labels(s, ds.task, rule);
                out << ex.id;
                char buf[40];
                for (double v : s) {
                    std::snprintf(buf, sizeof(buf), "%.12g", v);
                    out << "," << buf;
                }
                for (double v : d) out << "," << (v > 0.5 ? 1 : 0);
                out << "\n";
            }
            write_file(pred_out, out.str());
        } else if (*eval_cmd) {
            LoadedModel model = LoadedModel::open(eval_model);
            eval_data.task = model.header().task == Task::MLC ? "mlc" : "hmlc";
            Dataset raw = eval_data.load();
            Dataset ds = model.tree ? align_to_model(*model.tree, raw)
                                    : align_to_model(model.forest->trees.front(), raw);
            std::vector<LabelVector> scores, truths;
            const auto started = std::chrono::steady_clock::now();
            for (const auto& ex : ds.examples) {
                if (!ex.labeled) continue;
                scores.push_back(model.score(ex));
                truths.push_back(truth_vector(ds, ex));
            }
            if (scores.empty()) throw InvalidArgument("no labeled examples to evaluate");
            PRCurve curve = micro_pr_curve(scores, truths);
            EvalReport report;
            report.auprc = auprc(curve);
            report.reference_tau = eval_tau;
            pooled_counts(scores, truths, eval_tau, report.tp, report.fp, report.fn);
            report.model_size = model.size();
            report.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                    .count();
            if (!eval_out.empty()) write_file(eval_out, eval_report_json(report));
            if (!eval_csv.empty())
                write_file(eval_csv,
                           "auprc,tp,fp,fn,reference_tau,model_size,wall_seconds\n" +
                               eval_report_csv_row(report));
            if (!curve_out.empty()) write_file(curve_out, curve_csv(curve));
            std::cout << eval_report_json(report);
        } else if (*tune_cmd) {
            Dataset ds = tune_data.load();
            LearnerSpec learner;
            learner.kind = tune_forest ? LearnerSpec::Kind::Forest : LearnerSpec::Kind::Tree;
            learner.trees = tune_trees;
            learner.threads = tune_threads;
            TuneResult result = optimize_w(ds, parse_grid(grid_values), folds, learner, tune_seed);
            const std::string json = tune_result_json(result);
            if (!tune_out.empty()) write_file(tune_out, json);
            std::cout << json;
        } else if (*exp_cmd) {
            Dataset ds = exp_data.load();
            ExperimentConfig config;
            config.labeled_sizes = exp_sizes;
            config.runs = exp_runs;
            config.folds = exp_folds;
            config.trees = exp_trees;
            config.learners = exp_learners;
            config.w_grid = parse_grid(exp_grid);
            config.master_seed = exp_seed;
            config.threads = exp_threads;
            ExperimentResult result = run_experiment(ds, config);
            std::filesystem::create_directories(exp_out);
            write_file(exp_out + "/records.csv", records_csv(result.records));
            write_file(exp_out + "/summary.json", summary_json(result, config));
            std::cerr << result.records.size() << " records written to " << exp_out << "\n";
        } else if (*synth_cmd) {
            SyntheticSpec spec;
            spec.task = parse_task(synth_task);
            spec.clusters = clusters;
            spec.dims = dims;
            spec.informative_dims = informative;
            spec.separation = separation;
            spec.num_labels = num_labels;
            spec.omega0 = synth_omega0;
            spec.sizes = synth_sizes;
            for (const auto& group : split_list(cluster_labels_text, ';')) {
                std::vector<int> bits;
                for (char c : group) bits.push_back(c == '1' ? 1 : 0);
                spec.cluster_labels.push_back(std::move(bits));
            }
            spec.hierarchy_paths = hierarchy_paths;
            for (const auto& group : split_list(cluster_classes_text, ';'))
                spec.cluster_classes.push_back(split_list(group, ','));
            save_dataset(generate_synthetic(spec, synth_seed), synth_out);
            std::cerr << "dataset written to " << synth_out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
