#include "sslpct/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sslpct {

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void check_shapes(const std::vector<LabelVector>& scores, const std::vector<LabelVector>& truths) {
    if (scores.size() != truths.size())
        throw InvalidArgument("score and truth lists differ in length");
    if (scores.empty()) throw InvalidArgument("empty evaluation input");
    const size_t width = scores.front().size();
    for (size_t i = 0; i < scores.size(); ++i)
        if (scores[i].size() != width || truths[i].size() != width)
            throw InvalidArgument("ragged score/truth vectors");
}

}  // namespace

PRCurve micro_pr_curve(const std::vector<LabelVector>& scores,
                       const std::vector<LabelVector>& truths) {
    check_shapes(scores, truths);

    // Flatten to (score, positive) cells.
    std::vector<std::pair<double, int8_t>> cells;
    cells.reserve(scores.size() * scores.front().size());
    int64_t total_pos = 0;
    for (size_t i = 0; i < scores.size(); ++i)
        for (size_t c = 0; c < scores[i].size(); ++c) {
            int8_t pos = truths[i][c] > 0.5 ? 1 : 0;
            total_pos += pos;
            cells.emplace_back(scores[i][c], pos);
        }
    if (total_pos == 0) throw InvalidArgument("no positive ground-truth labels; recall undefined");

    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    PRCurve curve;
    int64_t tp = 0, predicted = 0;
    size_t pos = 0;
    while (pos < cells.size()) {
        const double s = cells[pos].first;
        while (pos < cells.size() && cells[pos].first == s) {
            tp += cells[pos].second;
            ++predicted;
            ++pos;
        }
        curve.thresholds.push_back(s);
        curve.recall.push_back(static_cast<double>(tp) / static_cast<double>(total_pos));
        curve.precision.push_back(static_cast<double>(tp) / static_cast<double>(predicted));
    }

    // Anchor at recall zero with the first point's precision.
    curve.thresholds.insert(curve.thresholds.begin(), std::numeric_limits<double>::quiet_NaN());
    curve.recall.insert(curve.recall.begin(), 0.0);
    curve.precision.insert(curve.precision.begin(), curve.precision.front());
    return curve;
}

double auprc(const PRCurve& curve) {
    if (curve.recall.empty()) throw InvalidArgument("empty curve");
    double area = 0.0;
    for (size_t i = 0; i + 1 < curve.recall.size(); ++i)
        area += (curve.recall[i + 1] - curve.recall[i]) *
                (curve.precision[i + 1] + curve.precision[i]) / 2.0;
    return area;
}

double micro_auprc(const std::vector<LabelVector>& scores,
                   const std::vector<LabelVector>& truths) {
    return auprc(micro_pr_curve(scores, truths));
}

void pooled_counts(const std::vector<LabelVector>& scores, const std::vector<LabelVector>& truths,
                   double tau, int64_t& tp, int64_t& fp, int64_t& fn) {
    check_shapes(scores, truths);
    tp = fp = fn = 0;
    for (size_t i = 0; i < scores.size(); ++i)
        for (size_t c = 0; c < scores[i].size(); ++c) {
            const bool pred = scores[i][c] > tau;
            const bool pos = truths[i][c] > 0.5;
            if (pred && pos)
                ++tp;
            else if (pred)
                ++fp;
            else if (pos)
                ++fn;
        }
}

// ---------------------------------------------------------------------------
// Wilcoxon signed-rank

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw InvalidArgument("paired lists differ in length");

    struct Diff {
        double abs;
        int sign;
    };
    std::vector<Diff> diffs;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = b[i] - a[i];
        if (d != 0.0) diffs.push_back({std::fabs(d), d > 0 ? 1 : -1});
    }

    WilcoxonResult res;
    res.n = static_cast<int>(diffs.size());
    if (res.n == 0) return res;  // all ties: p = 1, direction 0
    if (res.n < 5)
        throw InvalidArgument("signed-rank test needs at least 5 non-zero differences, got " +
                              std::to_string(res.n));

    std::sort(diffs.begin(), diffs.end(), [](const Diff& x, const Diff& y) { return x.abs < y.abs; });
    const int n = res.n;
    std::vector<double> ranks(n);
    double tie_correction = 0.0;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && diffs[j].abs == diffs[i].abs) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (int k = i; k < j; ++k) ranks[k] = avg;
        const double t = static_cast<double>(j - i);
        tie_correction += t * t * t - t;
        i = j;
    }

    double w_plus = 0.0, w_minus = 0.0;
    for (int i = 0; i < n; ++i)
        (diffs[i].sign > 0 ? w_plus : w_minus) += ranks[i];
    res.statistic = std::min(w_plus, w_minus);
    res.direction = w_plus > w_minus ? 1 : (w_minus > w_plus ? -1 : 0);

    if (n <= 12) {
        // Exact: enumerate all sign assignments over the observed ranks.
        const uint32_t total = 1u << n;
        uint64_t count_le = 0, count_ge = 0;
        for (uint32_t mask = 0; mask < total; ++mask) {
            double w = 0.0;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) w += ranks[i];
            if (w <= w_plus) ++count_le;
            if (w >= w_plus) ++count_ge;
        }
        const double p_le = static_cast<double>(count_le) / static_cast<double>(total);
        const double p_ge = static_cast<double>(count_ge) / static_cast<double>(total);
        res.p = std::min(1.0, 2.0 * std::min(p_le, p_ge));
    } else {
        const double nn = static_cast<double>(n);
        const double mean = nn * (nn + 1.0) / 4.0;
        const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_correction / 48.0;
        const double z = (w_plus - mean) / std::sqrt(var);
        res.p = std::min(1.0, std::erfc(std::fabs(z) / std::sqrt(2.0)));
    }
    return res;
}

// ---------------------------------------------------------------------------
// Reports

std::string eval_report_json(const EvalReport& r) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"auprc\": " << fmt12(r.auprc) << ",\n";
    out << "  \"tp\": " << r.tp << ",\n";
    out << "  \"fp\": " << r.fp << ",\n";
    out << "  \"fn\": " << r.fn << ",\n";
    out << "  \"reference_tau\": " << fmt12(r.reference_tau) << ",\n";
    out << "  \"model_size\": " << r.model_size << ",\n";
    out << "  \"wall_seconds\": " << fmt12(r.wall_seconds) << "\n";
    out << "}\n";
    return out.str();
}

std::string eval_report_csv_row(const EvalReport& r) {
    std::ostringstream out;
    out << fmt12(r.auprc) << "," << r.tp << "," << r.fp << "," << r.fn << ","
        << fmt12(r.reference_tau) << "," << r.model_size << "," << fmt12(r.wall_seconds) << "\n";
    return out.str();
}

std::string curve_csv(const PRCurve& curve) {
    std::ostringstream out;
    out << "recall,precision\n";
    for (size_t i = 0; i < curve.recall.size(); ++i)
        out << fmt12(curve.recall[i]) << "," << fmt12(curve.precision[i]) << "\n";
    return out.str();
}

}  // namespace sslpct
