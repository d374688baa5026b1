#include "sslpct/heuristics.hpp"

#include <algorithm>
#include <cmath>

namespace sslpct {

void VarianceContext::check(const Dataset& ds) const {
    if (!(w >= 0.0 && w <= 1.0))
        throw InvalidArgument("w must lie in [0,1], got " + std::to_string(w));
    if (task != ds.task) throw InvalidArgument("context task does not match the dataset");
    if (static_cast<int>(norm.descriptive.size()) != ds.num_descriptive())
        throw InvalidArgument("normalization stats do not match the dataset");
    if (feature_weights) {
        if (static_cast<int>(feature_weights->size()) != ds.num_descriptive())
            throw InvalidArgument("feature weights do not match the dataset");
        for (double s : *feature_weights)
            if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("feature weights must lie in [0,1]");
    }
    if (task == Task::HMLC && hierarchy == nullptr)
        throw InvalidArgument("HMLC context needs a hierarchy");
}

VarianceContext make_context(const Dataset& ds, double w) {
    VarianceContext ctx;
    ctx.w = w;
    ctx.task = ds.task;
    ctx.norm = normalization_stats(ds);
    ctx.hierarchy = ds.hierarchy ? &*ds.hierarchy : nullptr;
    ctx.check(ds);
    return ctx;
}

// ---------------------------------------------------------------------------
// SubsetStats

SubsetStats::SubsetStats(const Dataset& ds) {
    const int D = ds.num_descriptive();
    num_known_.assign(D, 0);
    num_sum_.assign(D, 0.0);
    num_sumsq_.assign(D, 0.0);
    nominal_offset_.assign(D, -1);
    nominal_card_.assign(D, 0);
    int slots = 0;
    for (int d = 0; d < D; ++d)
        if (!ds.descriptive_is_numeric(d)) {
            nominal_offset_[d] = slots;
            nominal_card_[d] = ds.descriptive_cardinality(d);
            slots += nominal_card_[d];
        }
    nominal_counts_.assign(slots, 0);
    label_pos_.assign(ds.num_label_components(), 0);
}

void SubsetStats::clear() {
    n_ = n_labeled_ = 0;
    std::fill(num_known_.begin(), num_known_.end(), 0);
    std::fill(num_sum_.begin(), num_sum_.end(), 0.0);
    std::fill(num_sumsq_.begin(), num_sumsq_.end(), 0.0);
    std::fill(nominal_counts_.begin(), nominal_counts_.end(), 0);
    std::fill(label_pos_.begin(), label_pos_.end(), 0);
}

void SubsetStats::update(const Dataset& ds, int32_t idx, int sign) {
    const Example& ex = ds.examples[idx];
    n_ += sign;
    const int D = ds.num_descriptive();
    for (int d = 0; d < D; ++d) {
        double v = ex.descr[d];
        if (is_missing(v)) continue;
        if (nominal_offset_[d] < 0) {
            num_known_[d] += sign;
            num_sum_[d] += sign * v;
            num_sumsq_[d] += sign * v * v;
        } else {
            nominal_counts_[nominal_offset_[d] + static_cast<int>(v)] += sign;
        }
    }
    if (ex.labeled) {
        n_labeled_ += sign;
        const size_t L = ex.labels.size();
        for (size_t l = 0; l < L; ++l) label_pos_[l] += sign * ex.labels[l];
    }
}

void SubsetStats::add_all(const Dataset& ds, std::span<const int32_t> subset) {
    for (int32_t i : subset) add(ds, i);
}

void SubsetStats::assign_difference(const SubsetStats& a, const SubsetStats& b) {
    n_ = a.n_ - b.n_;
    n_labeled_ = a.n_labeled_ - b.n_labeled_;
    nominal_offset_ = a.nominal_offset_;
    nominal_card_ = a.nominal_card_;
    num_known_.resize(a.num_known_.size());
    num_sum_.resize(a.num_sum_.size());
    num_sumsq_.resize(a.num_sumsq_.size());
    nominal_counts_.resize(a.nominal_counts_.size());
    label_pos_.resize(a.label_pos_.size());
    for (size_t i = 0; i < num_known_.size(); ++i) {
        num_known_[i] = a.num_known_[i] - b.num_known_[i];
        num_sum_[i] = a.num_sum_[i] - b.num_sum_[i];
        num_sumsq_[i] = a.num_sumsq_[i] - b.num_sumsq_[i];
    }
    for (size_t i = 0; i < nominal_counts_.size(); ++i)
        nominal_counts_[i] = a.nominal_counts_[i] - b.nominal_counts_[i];
    for (size_t i = 0; i < label_pos_.size(); ++i)
        label_pos_[i] = a.label_pos_[i] - b.label_pos_[i];
}

std::optional<double> SubsetStats::numeric_variance(int d) const {
    const int64_t k = num_known_[d];
    if (k <= 1) return std::nullopt;
    const double nn = static_cast<double>(n_);
    const double kk = static_cast<double>(k);
    const double mean = num_sum_[d] / kk;
    const double v = ((nn - 1.0) / (kk - 1.0) * num_sumsq_[d] - nn * mean * mean) / nn;
    return std::max(0.0, v);
}

std::optional<double> SubsetStats::nominal_gini(int d) const {
    const int off = nominal_offset_[d];
    const int card = nominal_card_[d];
    int64_t known = 0;
    for (int v = 0; v < card; ++v) known += nominal_counts_[off + v];
    if (known <= 1) return std::nullopt;
    double g = 1.0;
    for (int v = 0; v < card; ++v) {
        double p = static_cast<double>(nominal_counts_[off + v]) / static_cast<double>(known);
        g -= p * p;
    }
    return std::max(0.0, g);
}

std::optional<double> SubsetStats::label_gini(int t) const {
    if (n_labeled_ <= 1) return std::nullopt;
    const double p = static_cast<double>(label_pos_[t]) / static_cast<double>(n_labeled_);
    return std::max(0.0, 1.0 - p * p - (1.0 - p) * (1.0 - p));
}

std::optional<double> SubsetStats::hierarchy_variance(const ClassHierarchy& h) const {
    if (n_labeled_ <= 1) return std::nullopt;
    // sum_l w_l * sum_i (L_il - mean_l)^2 with binary components reduces to
    // w_l * (S_l - S_l^2 / n) from the per-class positive counts S_l.
    const double n = static_cast<double>(n_labeled_);
    double acc = 0.0;
    for (int c = 0; c < h.num_classes(); ++c) {
        const double s = static_cast<double>(label_pos_[c]);
        acc += h.weight(c) * (s - s * s / n);
    }
    return std::max(0.0, acc / n / h.weight_sum());
}

// ---------------------------------------------------------------------------
// Resolution into node-level variances

NodeVariances resolve_variances(const SubsetStats& stats, const Dataset& ds,
                                const VarianceContext& ctx, const NodeVariances* parent) {
    NodeVariances out;
    const int D = ds.num_descriptive();
    out.descriptive.assign(D, 0.0);

    double desc_sum = 0.0;
    for (int d = 0; d < D; ++d) {
        if (ctx.norm.descriptive_inert[d]) continue;  // stays 0 everywhere
        std::optional<double> v = ds.descriptive_is_numeric(d) ? stats.numeric_variance(d)
                                                               : stats.nominal_gini(d);
        double resolved;
        if (v)
            resolved = *v / ctx.norm.descriptive[d];
        else
            resolved = parent ? parent->descriptive[d] : 0.0;
        out.descriptive[d] = resolved;
        const double sigma = ctx.feature_weights ? (*ctx.feature_weights)[d] : 1.0;
        desc_sum += sigma * resolved;
    }
    out.descriptive_mean = desc_sum / static_cast<double>(D);

    if (ctx.task == Task::MLC) {
        const int T = static_cast<int>(ds.target_cols.size());
        out.target.assign(T, 0.0);
        double tsum = 0.0;
        for (int t = 0; t < T; ++t) {
            if (ctx.norm.target_inert[t]) continue;
            std::optional<double> g = stats.label_gini(t);
            double resolved;
            if (g)
                resolved = *g / ctx.norm.target[t];
            else
                resolved = parent ? parent->target[t] : 0.0;
            out.target[t] = resolved;
            tsum += resolved;
        }
        out.target_mean = tsum / static_cast<double>(T);
    } else {
        out.target.assign(1, 0.0);
        std::optional<double> v = stats.hierarchy_variance(*ctx.hierarchy);
        double resolved;
        if (v)
            resolved = *v;
        else
            resolved = parent ? parent->target[0] : 0.0;
        out.target[0] = resolved;
        out.target_mean = resolved;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subset-level API

namespace {
SubsetStats collect(const Dataset& ds, std::span<const int32_t> subset) {
    SubsetStats st(ds);
    st.add_all(ds, subset);
    return st;
}
}  // namespace

std::optional<double> gini(const Dataset& ds, std::span<const int32_t> subset, int d) {
    if (ds.descriptive_is_numeric(d)) throw InvalidArgument("gini needs a nominal attribute");
    return collect(ds, subset).nominal_gini(d);
}

std::optional<double> numeric_variance(const Dataset& ds, std::span<const int32_t> subset, int d) {
    if (!ds.descriptive_is_numeric(d)) throw InvalidArgument("variance needs a numeric attribute");
    return collect(ds, subset).numeric_variance(d);
}

std::optional<double> target_variance_mlc(const Dataset& ds, std::span<const int32_t> subset,
                                          const VarianceContext& ctx) {
    SubsetStats st = collect(ds, subset);
    if (st.labeled() <= 1) return std::nullopt;
    NodeVariances nv = resolve_variances(st, ds, ctx, nullptr);
    return nv.target_mean;
}

std::optional<double> target_variance_hmlc(const Dataset& ds, std::span<const int32_t> subset,
                                           const VarianceContext& ctx) {
    SubsetStats st = collect(ds, subset);
    return st.hierarchy_variance(*ctx.hierarchy);
}

double descriptive_variance(const Dataset& ds, std::span<const int32_t> subset,
                            const VarianceContext& ctx, const NodeVariances* parent) {
    SubsetStats st = collect(ds, subset);
    return resolve_variances(st, ds, ctx, parent).descriptive_mean;
}

VarianceReport combined_variance(const Dataset& ds, std::span<const int32_t> subset,
                                 const VarianceContext& ctx, const NodeVariances* parent) {
    SubsetStats st = collect(ds, subset);
    NodeVariances nv = resolve_variances(st, ds, ctx, parent);
    VarianceReport rep;
    rep.descriptive = nv.descriptive_mean;
    const bool target_defined = st.labeled() > 1 || parent != nullptr;
    if (target_defined) {
        rep.target = nv.target_mean;
        rep.combined = nv.combined(ctx.w);
    }
    return rep;
}

double weighted_distance(const LabelVector& a, const LabelVector& b, const ClassHierarchy& h) {
    if (a.size() != b.size() || static_cast<int>(a.size()) != h.num_classes())
        throw InvalidArgument("class vectors do not match the hierarchy");
    double acc = 0.0;
    for (int c = 0; c < h.num_classes(); ++c) {
        const double dlt = a[c] - b[c];
        acc += h.weight(c) * dlt * dlt;
    }
    return std::sqrt(acc);
}

}  // namespace sslpct
