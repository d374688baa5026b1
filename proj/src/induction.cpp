#include "sslpct/induction.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace sslpct {

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Dataset schema_only(const Dataset& ds) {
    Dataset h;
    h.task = ds.task;
    h.relation = ds.relation;
    h.schema = ds.schema;
    h.descriptive_cols = ds.descriptive_cols;
    h.target_cols = ds.target_cols;
    h.hierarchy = ds.hierarchy;
    return h;
}

LabelVector prototype_from_stats(const SubsetStats& st, int components) {
    LabelVector p(components, 0.0);
    if (st.labeled() > 0)
        for (int c = 0; c < components; ++c)
            p[c] = static_cast<double>(st.label_positive(c)) / static_cast<double>(st.labeled());
    return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Test enumeration

std::vector<SplitTest> enumerate_tests(const Dataset& ds, std::span<const int32_t> subset) {
    std::vector<SplitTest> tests;
    const int D = ds.num_descriptive();
    std::vector<double> values;
    for (int d = 0; d < D; ++d) {
        values.clear();
        for (int32_t i : subset) {
            double v = ds.examples[i].descr[d];
            if (!is_missing(v)) values.push_back(v);
        }
        if (ds.descriptive_is_numeric(d)) {
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            for (size_t j = 0; j + 1 < values.size(); ++j) {
                SplitTest t;
                t.attribute = d;
                t.numeric = true;
                t.threshold = (values[j] + values[j + 1]) / 2.0;
                tests.push_back(t);
            }
        } else {
            const int card = ds.descriptive_cardinality(d);
            std::vector<bool> observed(card, false);
            int distinct = 0;
            for (double v : values) {
                int idx = static_cast<int>(v);
                if (!observed[idx]) {
                    observed[idx] = true;
                    ++distinct;
                }
            }
            if (distinct < 2) continue;  // constant in subset
            for (int v = 0; v < card; ++v)
                if (observed[v]) {
                    SplitTest t;
                    t.attribute = d;
                    t.numeric = false;
                    t.nominal_value = v;
                    tests.push_back(t);
                }
        }
    }
    return tests;
}

// ---------------------------------------------------------------------------
// Split search

namespace {

struct SearchScratch {
    SubsetStats no_side, yes_side;
    std::vector<std::pair<double, int32_t>> sorted;  // (value, example id)
    std::vector<int32_t> missing;
};

// Child labeled counts must be 0 or >= min_labeled.
bool acceptable(int64_t labeled, int min_labeled) {
    return labeled == 0 || labeled >= min_labeled;
}

struct Candidate {
    SplitTest test;
    double score;
};

// Evaluates the partition currently held in scratch (no_side filled,
// yes_side derived) and folds it into `best` under the canonical order.
void consider(const Dataset& ds, const VarianceContext& ctx, const NodeVariances& node_vars,
              const SubsetStats& total, SearchScratch& scratch, const SplitTest& test,
              double epsilon, int min_labeled, std::optional<Candidate>& best) {
    const SubsetStats& no = scratch.no_side;
    if (no.size() == 0 || no.size() == total.size()) return;
    scratch.yes_side.assign_difference(total, no);
    const SubsetStats& yes = scratch.yes_side;
    if (!acceptable(yes.labeled(), min_labeled) || !acceptable(no.labeled(), min_labeled)) return;

    NodeVariances vy = resolve_variances(yes, ds, ctx, &node_vars);
    NodeVariances vn = resolve_variances(no, ds, ctx, &node_vars);
    const double n = static_cast<double>(total.size());
    const double h = node_vars.combined(ctx.w) -
                     (static_cast<double>(yes.size()) / n) * vy.combined(ctx.w) -
                     (static_cast<double>(no.size()) / n) * vn.combined(ctx.w);
    if (h <= epsilon) return;
    // Strict improvement keeps the first test in enumeration order on ties,
    // which is exactly the attribute-then-threshold tie-break.
    if (!best || h > best->score) best = Candidate{test, h};
}

}  // namespace

std::optional<BestSplit> best_test(const Dataset& ds, std::span<const int32_t> subset,
                                   const VarianceContext& ctx, const NodeVariances& node_vars,
                                   double epsilon, const InductionParams& params) {
    const int D = ds.num_descriptive();
    std::vector<int> candidates;
    for (int d = 0; d < D; ++d)
        if (!ctx.norm.descriptive_inert[d]) candidates.push_back(d);
    if (params.subspace_size > 0 && params.subspace_size < static_cast<int>(candidates.size())) {
        if (!params.rng) throw InvalidArgument("subspace sampling needs an rng");
        // Partial Fisher-Yates, then restore ascending order for determinism.
        for (int i = 0; i < params.subspace_size; ++i) {
            size_t j = i + static_cast<size_t>(params.rng->next_below(candidates.size() - i));
            std::swap(candidates[i], candidates[j]);
        }
        candidates.resize(params.subspace_size);
        std::sort(candidates.begin(), candidates.end());
    }

    SubsetStats total(ds);
    total.add_all(ds, subset);

    SearchScratch scratch;
    scratch.no_side = SubsetStats(ds);
    scratch.yes_side = SubsetStats(ds);

    std::optional<Candidate> best;
    for (int d : candidates) {
        if (ds.descriptive_is_numeric(d)) {
            scratch.sorted.clear();
            scratch.missing.clear();
            for (int32_t i : subset) {
                double v = ds.examples[i].descr[d];
                if (is_missing(v))
                    scratch.missing.push_back(i);
                else
                    scratch.sorted.emplace_back(v, i);
            }
            if (scratch.sorted.size() < 2) continue;
            std::sort(scratch.sorted.begin(), scratch.sorted.end(),
                      [](const auto& a, const auto& b) {
                          return a.first < b.first || (a.first == b.first && a.second < b.second);
                      });
            scratch.no_side.clear();
            for (int32_t i : scratch.missing) scratch.no_side.add(ds, i);
            // Sweep ascending; thresholds fall between groups of equal values.
            size_t pos = 0;
            while (pos < scratch.sorted.size()) {
                const double v = scratch.sorted[pos].first;
                while (pos < scratch.sorted.size() && scratch.sorted[pos].first == v) {
                    scratch.no_side.add(ds, scratch.sorted[pos].second);
                    ++pos;
                }
                if (pos == scratch.sorted.size()) break;
                SplitTest t;
                t.attribute = d;
                t.numeric = true;
                t.threshold = (v + scratch.sorted[pos].first) / 2.0;
                consider(ds, ctx, node_vars, total, scratch, t, epsilon, params.min_labeled, best);
            }
        } else {
            const int card = ds.descriptive_cardinality(d);
            std::vector<int> observed(card, 0);
            for (int32_t i : subset) {
                double v = ds.examples[i].descr[d];
                if (!is_missing(v)) observed[static_cast<int>(v)] = 1;
            }
            if (std::accumulate(observed.begin(), observed.end(), 0) < 2) continue;
            for (int v = 0; v < card; ++v) {
                if (!observed[v]) continue;
                // NO side gathers everything except the matching value.
                scratch.no_side.clear();
                for (int32_t i : subset) {
                    double x = ds.examples[i].descr[d];
                    if (is_missing(x) || static_cast<int>(x) != v) scratch.no_side.add(ds, i);
                }
                SplitTest t;
                t.attribute = d;
                t.numeric = false;
                t.nominal_value = v;
                consider(ds, ctx, node_vars, total, scratch, t, epsilon, params.min_labeled, best);
            }
        }
    }

    if (!best) return std::nullopt;
    BestSplit out;
    out.test = best->test;
    out.score = best->score;
    for (int32_t i : subset) {
        double v = ds.examples[i].descr[out.test.attribute];
        (out.test.routes_yes(v) ? out.yes_subset : out.no_subset).push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Induction

namespace {

struct TreeBuilder {
    const Dataset& ds;
    const VarianceContext& ctx;
    const InductionParams& params;
    double epsilon = 0.0;

    std::unique_ptr<TreeNode> build(std::span<int32_t> subset, const NodeVariances* parent_vars,
                                    const LabelVector* ancestor_prototype) {
        auto node = std::make_unique<TreeNode>();
        SubsetStats stats(ds);
        for (int32_t i : subset) stats.add(ds, i);
        node->n_labeled = stats.labeled();
        node->n_unlabeled = stats.size() - stats.labeled();

        if (node->n_labeled > 0)
            node->prototype = prototype_from_stats(stats, ds.num_label_components());
        else
            node->prototype = *ancestor_prototype;  // unlabeled-only leaf

        // Only-unlabeled nodes are never split; labeled leaves keep >= 2.
        if (node->n_labeled < 2) return node;

        NodeVariances vars = resolve_variances(stats, ds, ctx, parent_vars);
        auto split = best_test(ds, subset, ctx, vars, epsilon, params);
        if (!split) return node;

        auto mid = std::stable_partition(subset.begin(), subset.end(), [&](int32_t i) {
            return split->test.routes_yes(ds.examples[i].descr[split->test.attribute]);
        });
        std::span<int32_t> yes_span(subset.begin(), mid);
        std::span<int32_t> no_span(mid, subset.end());

        node->test = split->test;
        node->fallback_yes = yes_span.size() > no_span.size();
        node->yes = build(yes_span, &vars, &node->prototype);
        node->no = build(no_span, &vars, &node->prototype);
        return node;
    }
};

}  // namespace

PCTModel induce_on(const Dataset& ds, std::vector<int32_t> subset, const VarianceContext& ctx,
                   const InductionParams& params) {
    ctx.check(ds);
    int64_t labeled = 0;
    for (int32_t i : subset) labeled += ds.examples[i].labeled ? 1 : 0;
    if (labeled < 2)
        throw NoLabeledData("induction needs at least 2 labeled examples, got " +
                            std::to_string(labeled));

    PCTModel model;
    model.header = schema_only(ds);
    model.w_used = ctx.w;
    model.pruned = false;

    TreeBuilder builder{ds, ctx, params};
    SubsetStats root_stats(ds);
    root_stats.add_all(ds, subset);
    NodeVariances root_vars = resolve_variances(root_stats, ds, ctx, nullptr);
    builder.epsilon = params.epsilon_fraction * root_vars.combined(ctx.w);
    model.root = builder.build(std::span<int32_t>(subset), nullptr, nullptr);
    return model;
}

PCTModel induce(const Dataset& ds, const VarianceContext& ctx, const InductionParams& params) {
    std::vector<int32_t> all(ds.examples.size());
    std::iota(all.begin(), all.end(), 0);
    return induce_on(ds, std::move(all), ctx, params);
}

LabelVector prototype(const Dataset& ds, std::span<const int32_t> labeled_subset) {
    SubsetStats st(ds);
    for (int32_t i : labeled_subset) {
        if (!ds.examples[i].labeled)
            throw InvalidArgument("prototype needs labeled examples only");
        st.add(ds, i);
    }
    if (st.labeled() < 1) throw InvalidArgument("prototype needs at least one labeled example");
    return prototype_from_stats(st, ds.num_label_components());
}

// ---------------------------------------------------------------------------
// Prediction

const TreeNode& route(const PCTModel& model, const Example& ex) {
    const TreeNode* node = model.root.get();
    while (!node->is_leaf()) {
        const SplitTest& t = *node->test;
        double v = ex.descr[t.attribute];
        bool yes;
        if (is_missing(v)) {
            yes = node->fallback_yes;
        } else if (!t.numeric &&
                   (v < 0 || static_cast<int>(v) >=
                                 model.header.descriptive_cardinality(t.attribute))) {
            yes = node->fallback_yes;  // unknown nominal value behaves as missing
        } else {
            yes = t.routes_yes(v);
        }
        node = yes ? node->yes.get() : node->no.get();
    }
    return *node;
}

LabelVector predict(const PCTModel& model, const Example& ex) {
    if (static_cast<int>(ex.descr.size()) != model.header.num_descriptive())
        throw InvalidArgument("example does not match the model schema");
    return route(model, ex).prototype;
}

LabelVector decide_labels(const LabelVector& scores, Task task, const DecisionRule& rule) {
    if (rule.mode == DecisionRule::Mode::Majority && task != Task::MLC)
        throw InvalidArgument("majority decisions are defined for MLC only");
    const double tau = rule.tau;
    LabelVector out(scores.size(), 0.0);
    for (size_t i = 0; i < scores.size(); ++i) out[i] = scores[i] > tau ? 1.0 : 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// Pruning

namespace {

// Routed training subsets, recomputed with the training-time rule that a
// missing test value goes to the NO branch.
void route_training(const TreeNode& node, const Dataset& ds, std::vector<int32_t>& subset,
                    std::map<const TreeNode*, std::vector<int32_t>>& out) {
    out[&node] = subset;
    if (node.is_leaf()) return;
    std::vector<int32_t> yes, no;
    for (int32_t i : subset)
        (node.test->routes_yes(ds.examples[i].descr[node.test->attribute]) ? yes : no).push_back(i);
    route_training(*node.yes, ds, yes, out);
    route_training(*node.no, ds, no, out);
}

struct PruneResult {
    std::unique_ptr<TreeNode> node;
    double error = 0.0;  // complexity-penalized, labeled examples only
    int64_t labeled = 0;
};

double leaf_error(double target_variance, int64_t n_labeled) {
    if (n_labeled < 2) return 0.0;  // weightless in parent aggregation
    const double n = static_cast<double>(n_labeled);
    return target_variance * (n + 1.0) / (n - 1.0);
}

PruneResult prune_rec(std::unique_ptr<TreeNode> node, const Dataset& ds,
                      const VarianceContext& ctx,
                      const std::map<const TreeNode*, std::vector<int32_t>>& subsets) {
    const auto& subset = subsets.at(node.get());
    SubsetStats st(ds);
    st.add_all(ds, subset);
    const int64_t labeled = st.labeled();
    const double tv = resolve_variances(st, ds, ctx, nullptr).target_mean;
    const double as_leaf = leaf_error(tv, labeled);

    if (node->is_leaf()) return {std::move(node), as_leaf, labeled};

    PruneResult y = prune_rec(std::move(node->yes), ds, ctx, subsets);
    PruneResult n = prune_rec(std::move(node->no), ds, ctx, subsets);
    node->yes = std::move(y.node);
    node->no = std::move(n.node);

    const double nl = static_cast<double>(labeled);
    const double subtree_error = (static_cast<double>(y.labeled) / nl) * y.error +
                                 (static_cast<double>(n.labeled) / nl) * n.error;

    if (as_leaf <= subtree_error) {
        node->test.reset();
        node->yes.reset();
        node->no.reset();
        return {std::move(node), as_leaf, labeled};
    }
    return {std::move(node), subtree_error, labeled};
}

std::unique_ptr<TreeNode> clone(const TreeNode& node) {
    auto out = std::make_unique<TreeNode>();
    out->test = node.test;
    out->fallback_yes = node.fallback_yes;
    out->n_labeled = node.n_labeled;
    out->n_unlabeled = node.n_unlabeled;
    out->prototype = node.prototype;
    if (!node.is_leaf()) {
        out->yes = clone(*node.yes);
        out->no = clone(*node.no);
    }
    return out;
}

}  // namespace

PCTModel prune(const PCTModel& model, const Dataset& ds, const VarianceContext& ctx) {
    PCTModel out;
    out.header = model.header;
    out.w_used = model.w_used;
    out.pruned = true;
    out.root = clone(*model.root);

    std::vector<int32_t> all(ds.examples.size());
    std::iota(all.begin(), all.end(), 0);
    std::map<const TreeNode*, std::vector<int32_t>> subsets;
    route_training(*out.root, ds, all, subsets);
    out.root = prune_rec(std::move(out.root), ds, ctx, subsets).node;
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

void serialize_node(const TreeNode& node, std::ostringstream& out) {
    if (node.is_leaf()) {
        out << "l";
    } else {
        const SplitTest& t = *node.test;
        out << "i " << t.attribute << " ";
        if (t.numeric)
            out << "gt " << fmt12(t.threshold);
        else
            out << "eq " << t.nominal_value;
        out << " f " << (node.fallback_yes ? "y" : "n");
    }
    out << " nl " << node.n_labeled << " nu " << node.n_unlabeled << " p";
    for (double v : node.prototype) out << " " << fmt12(v);
    out << "\n";
    if (!node.is_leaf()) {
        serialize_node(*node.yes, out);
        serialize_node(*node.no, out);
    }
}

}  // namespace

std::string serialize_model(const PCTModel& model) {
    std::ostringstream out;
    const Dataset& h = model.header;
    out << "sslpct tree 1\n";
    out << "task " << (h.task == Task::MLC ? "mlc" : "hmlc") << "\n";
    out << "relation " << h.relation << "\n";
    out << "w " << fmt12(model.w_used) << "\n";
    out << "pruned " << (model.pruned ? 1 : 0) << "\n";
    out << "attributes " << h.schema.size() << "\n";
    for (size_t i = 0; i < h.schema.size(); ++i) {
        const auto& a = h.schema[i];
        out << "a " << a.name << " ";
        if (a.kind == AttrKind::Numeric) {
            out << "numeric";
        } else if (a.kind == AttrKind::Nominal) {
            out << "nominal ";
            for (size_t j = 0; j < a.values.size(); ++j) out << (j ? "," : "") << a.values[j];
        } else {
            out << "hierarchical ";
            const auto& paths = h.hierarchy->declared_paths();
            for (size_t j = 0; j < paths.size(); ++j) out << (j ? "," : "") << paths[j];
        }
        out << " " << (a.role == AttrRole::Target ? "t" : "d") << "\n";
    }
    if (h.task == Task::HMLC) out << "omega0 " << fmt12(h.hierarchy->omega0()) << "\n";
    out << "nodes " << model.size() << "\n";
    serialize_node(*model.root, out);
    out << "end\n";
    return out.str();
}

namespace {

struct LineReader {
    std::vector<std::string> lines;
    size_t pos = 0;
    const std::string& next() {
        if (pos >= lines.size()) throw ParseError("model file truncated");
        return lines[pos++];
    }
};

std::vector<std::string> split_csv(const std::string& list) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : list) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::unique_ptr<TreeNode> parse_node(LineReader& r, int components) {
    std::istringstream in(r.next());
    std::string tag;
    in >> tag;
    auto node = std::make_unique<TreeNode>();
    if (tag == "i") {
        SplitTest t;
        std::string op, fword, fval;
        in >> t.attribute >> op;
        if (op == "gt") {
            t.numeric = true;
            in >> t.threshold;
        } else if (op == "eq") {
            t.numeric = false;
            in >> t.nominal_value;
        } else {
            throw ParseError("bad test operator '" + op + "' in model");
        }
        in >> fword >> fval;
        if (fword != "f") throw ParseError("bad internal node line in model");
        node->test = t;
        node->fallback_yes = fval == "y";
    } else if (tag != "l") {
        throw ParseError("bad node tag '" + tag + "' in model");
    }
    std::string w;
    in >> w >> node->n_labeled >> w >> node->n_unlabeled >> w;
    node->prototype.resize(components);
    for (int c = 0; c < components; ++c)
        if (!(in >> node->prototype[c])) throw ParseError("bad prototype vector in model");
    if (node->test) {
        node->yes = parse_node(r, components);
        node->no = parse_node(r, components);
    }
    return node;
}

}  // namespace

PCTModel parse_model(const std::string& text) {
    LineReader r;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) r.lines.push_back(line);

    if (r.next() != "sslpct tree 1") throw ParseError("not a model file");
    PCTModel model;
    Dataset& h = model.header;

    std::istringstream task_line(r.next());
    std::string key, val;
    task_line >> key >> val;
    if (key != "task") throw ParseError("model file missing task");
    h.task = val == "mlc" ? Task::MLC : Task::HMLC;

    std::istringstream rel(r.next());
    rel >> key;
    std::getline(rel, h.relation);
    h.relation = h.relation.empty() ? "data" : h.relation.substr(1);

    std::istringstream wline(r.next());
    wline >> key >> model.w_used;
    std::istringstream pline(r.next());
    int pr = 0;
    pline >> key >> pr;
    model.pruned = pr != 0;

    std::istringstream aline(r.next());
    int nattr = 0;
    aline >> key >> nattr;
    std::vector<std::string> hier_paths;
    for (int i = 0; i < nattr; ++i) {
        std::istringstream a(r.next());
        std::string tag, name, kind, role;
        a >> tag >> name >> kind;
        AttributeSchema attr;
        attr.name = name;
        if (kind == "numeric") {
            attr.kind = AttrKind::Numeric;
            a >> role;
        } else if (kind == "nominal") {
            attr.kind = AttrKind::Nominal;
            std::string list;
            a >> list >> role;
            attr.values = split_csv(list);
        } else {
            attr.kind = AttrKind::Hierarchical;
            std::string list;
            a >> list >> role;
            hier_paths = split_csv(list);
        }
        attr.role = role == "t" ? AttrRole::Target : AttrRole::Descriptive;
        if (attr.role == AttrRole::Target)
            h.target_cols.push_back(i);
        else
            h.descriptive_cols.push_back(i);
        h.schema.push_back(std::move(attr));
    }
    double omega0 = 0.75;
    if (h.task == Task::HMLC) {
        std::istringstream o(r.next());
        o >> key >> omega0;
        h.hierarchy = ClassHierarchy::from_paths(hier_paths, omega0);
    }
    std::istringstream nline(r.next());
    int nodes = 0;
    nline >> key >> nodes;
    model.root = parse_node(r, h.task == Task::MLC ? static_cast<int>(h.target_cols.size())
                                                   : h.hierarchy->num_classes());
    if (r.next() != "end") throw ParseError("model file missing end marker");
    if (model.size() != nodes) throw ParseError("model node count mismatch");
    return model;
}

PCTModel load_model(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_model(ss.str());
}

void save_model(const PCTModel& model, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << serialize_model(model);
}

// ---------------------------------------------------------------------------
// Schema alignment

Dataset align_to_model(const PCTModel& model, const Dataset& data) {
    const Dataset& h = model.header;
    if (data.task != h.task) throw InvalidArgument("task mismatch between model and data");

    // Target structure must agree exactly.
    if (h.task == Task::MLC) {
        if (data.target_cols.size() != h.target_cols.size())
            throw InvalidArgument("target count mismatch between model and data");
        for (size_t t = 0; t < h.target_cols.size(); ++t) {
            const auto& ma = h.schema[h.target_cols[t]];
            const auto& da = data.schema[data.target_cols[t]];
            if (ma.name != da.name || ma.values != da.values)
                throw InvalidArgument("target attribute '" + ma.name + "' differs between model and data");
        }
    } else if (h.hierarchy->num_classes() != data.hierarchy->num_classes()) {
        throw InvalidArgument("hierarchy mismatch between model and data");
    }

    Dataset out = schema_only(h);
    out.relation = data.relation;

    // Map each model descriptive attribute to the matching data column.
    const int D = h.num_descriptive();
    std::vector<int> src(D, -1);                  // data descriptive index
    std::vector<std::vector<int>> value_map(D);   // data value idx -> model value idx
    for (int d = 0; d < D; ++d) {
        const auto& ma = h.descriptive_attr(d);
        for (int sd = 0; sd < data.num_descriptive(); ++sd) {
            const auto& da = data.descriptive_attr(sd);
            if (da.name != ma.name) continue;
            if (da.kind != ma.kind) break;  // same name, different kind: treat as absent
            src[d] = sd;
            if (ma.kind == AttrKind::Nominal) {
                value_map[d].assign(da.values.size(), -1);
                for (size_t v = 0; v < da.values.size(); ++v) {
                    auto it = std::find(ma.values.begin(), ma.values.end(), da.values[v]);
                    if (it != ma.values.end())
                        value_map[d][v] = static_cast<int>(it - ma.values.begin());
                }
            }
            break;
        }
    }

    for (const auto& ex : data.examples) {
        Example ne;
        ne.id = static_cast<int32_t>(out.examples.size());
        ne.labeled = ex.labeled;
        ne.labels = ex.labels;
        ne.descr.assign(D, missing_value());
        for (int d = 0; d < D; ++d) {
            if (src[d] < 0) continue;
            double v = ex.descr[src[d]];
            if (is_missing(v)) continue;
            if (h.descriptive_is_numeric(d)) {
                ne.descr[d] = v;
            } else {
                int mapped = value_map[d][static_cast<int>(v)];
                if (mapped >= 0) ne.descr[d] = static_cast<double>(mapped);
                // unknown nominal value stays missing
            }
        }
        (ne.labeled ? out.n_labeled : out.n_unlabeled)++;
        out.examples.push_back(std::move(ne));
    }
    return out;
}

}  // namespace sslpct
