#pragma once

#include <string>
#include <vector>

#include "sslpct/dataset.hpp"

namespace sslpct {

/// Micro-averaged precision-recall curve: TP/FP/FN pooled over every
/// (example, class) cell. One operating point per distinct score value s,
/// predicting all cells scoring at least s; an anchor at recall 0 carries
/// the first point's precision.
struct PRCurve {
    std::vector<double> recall;      // non-decreasing, anchor first
    std::vector<double> precision;
    std::vector<double> thresholds;  // score generating each point; NaN for the anchor
};

PRCurve micro_pr_curve(const std::vector<LabelVector>& scores,
                       const std::vector<LabelVector>& truths);

/// Trapezoidal area over recall in [0, max recall].
double auprc(const PRCurve& curve);

double micro_auprc(const std::vector<LabelVector>& scores,
                   const std::vector<LabelVector>& truths);

struct WilcoxonResult {
    double statistic = 0.0;  // min of the signed rank sums
    double p = 1.0;          // two-sided
    int direction = 0;       // +1: second list ranks higher, -1: first, 0: tie
    int n = 0;               // pairs left after dropping zero differences
};

/// Paired two-sided signed-rank test; exact enumeration for n <= 12, normal
/// approximation with tie correction beyond that.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b);

struct EvalReport {
    double auprc = 0.0;
    int64_t tp = 0, fp = 0, fn = 0;  // pooled at the reference threshold
    double reference_tau = 0.5;
    int model_size = 0;
    double wall_seconds = 0.0;
};

std::string eval_report_json(const EvalReport& report);
std::string eval_report_csv_row(const EvalReport& report);
std::string curve_csv(const PRCurve& curve);

/// Pooled counts at a fixed threshold (strict score > tau).
void pooled_counts(const std::vector<LabelVector>& scores, const std::vector<LabelVector>& truths,
                   double tau, int64_t& tp, int64_t& fp, int64_t& fn);

}  // namespace sslpct
