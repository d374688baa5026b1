#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sslpct/errors.hpp"

namespace sslpct {

enum class Task { MLC, HMLC };

enum class AttrKind { Numeric, Nominal, Hierarchical };
enum class AttrRole { Descriptive, Target };

inline double missing_value() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_missing(double v) { return std::isnan(v); }

struct AttributeSchema {
    std::string name;
    AttrKind kind = AttrKind::Numeric;
    AttrRole role = AttrRole::Descriptive;
    std::vector<std::string> values;  // nominal only
};

/// Label hierarchy for HMLC. Classes are identified by the last segment of
/// their declared '/'-path; redeclaring a class name under a second parent
/// path turns the shape into a DAG.
class ClassHierarchy {
public:
    // Builds the hierarchy from '/'-separated paths. Intermediate segments
    // are created implicitly. Throws on cycles and duplicate declarations.
    static ClassHierarchy from_paths(const std::vector<std::string>& paths, double omega0 = 0.75);

    int num_classes() const { return static_cast<int>(names_.size()); }
    const std::string& name(int c) const { return names_[c]; }
    const std::string& canonical_path(int c) const { return canonical_paths_[c]; }
    const std::vector<int>& parents(int c) const { return parents_[c]; }
    const std::vector<std::string>& declared_paths() const { return declared_paths_; }
    bool is_dag() const { return is_dag_; }
    double omega0() const { return omega0_; }

    // omega0^depth for trees; the mean over all root-to-class paths for DAGs.
    double weight(int c) const { return weights_[c]; }
    const std::vector<double>& weights() const { return weights_; }
    double weight_sum() const { return weight_sum_; }

    // Class id for a bare name or a declared path; nullopt when unknown.
    std::optional<int> find(const std::string& name_or_path) const;

    // Sets membership of every ancestor of the classes already set in `vec`.
    // Returns true when something had to be added (input was not closed).
    bool close_upwards(std::vector<int8_t>& vec) const;
    bool is_ancestor_closed(const std::vector<int8_t>& vec) const;

private:
    std::vector<std::string> names_;
    std::vector<std::string> canonical_paths_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::string> declared_paths_;
    std::vector<double> weights_;
    double weight_sum_ = 0.0;
    double omega0_ = 0.75;
    bool is_dag_ = false;
};

struct Example {
    int32_t id = 0;
    bool labeled = false;
    std::vector<double> descr;    // indexed by descriptive attribute, NaN = missing,
                                  // nominal values stored as value-list indices
    std::vector<int8_t> labels;   // MLC: 0/1 per target; HMLC: ancestor-closed
                                  // membership per hierarchy class; empty if unlabeled
};

using LabelVector = std::vector<double>;

struct Dataset {
    Task task = Task::MLC;
    std::string relation = "data";
    std::vector<AttributeSchema> schema;   // file column order
    std::vector<int> descriptive_cols;     // schema indices
    std::vector<int> target_cols;          // schema indices (MLC: T entries, HMLC: 1)
    std::optional<ClassHierarchy> hierarchy;
    std::vector<Example> examples;
    int64_t n_labeled = 0;
    int64_t n_unlabeled = 0;

    int num_descriptive() const { return static_cast<int>(descriptive_cols.size()); }
    // Width of the label encoding: T for MLC, |C| for HMLC.
    int num_label_components() const {
        return task == Task::MLC ? static_cast<int>(target_cols.size())
                                 : hierarchy->num_classes();
    }
    const AttributeSchema& descriptive_attr(int d) const { return schema[descriptive_cols[d]]; }
    bool descriptive_is_numeric(int d) const {
        return descriptive_attr(d).kind == AttrKind::Numeric;
    }
    int descriptive_cardinality(int d) const {
        return static_cast<int>(descriptive_attr(d).values.size());
    }
    std::vector<std::string> label_component_names() const;

    void validate() const;  // throws ParseError on broken invariants
};

/// Designates which columns are targets when parsing an MLC file.
struct TargetSpec {
    enum class Mode { LastN, Names } mode = Mode::LastN;
    int last_n = 1;
    std::vector<std::string> names;

    static TargetSpec last(int n) { return {Mode::LastN, n, {}}; }
    static TargetSpec by_names(std::vector<std::string> n) {
        return {Mode::Names, 0, std::move(n)};
    }
    // Accepts "last:N" or "names:a,b,c".
    static TargetSpec parse(const std::string& text);
};

struct ParseResult {
    Dataset dataset;
    std::vector<std::string> warnings;  // e.g. auto-closed label sets
};

/// Parses the ARFF subset described in the README. `target_spec` is ignored
/// for HMLC, where the hierarchical attribute is the target.
ParseResult parse_dataset(const std::string& text, Task task,
                          const TargetSpec& target_spec = TargetSpec::last(1),
                          double omega0 = 0.75);
ParseResult load_dataset(const std::string& path, Task task,
                         const TargetSpec& target_spec = TargetSpec::last(1),
                         double omega0 = 0.75);

std::string write_dataset(const Dataset& ds);
void save_dataset(const Dataset& ds, const std::string& path);

ClassHierarchy build_hierarchy(const std::vector<std::string>& paths, double omega0 = 0.75);

/// Dense 0/1 membership vector over all hierarchy classes, ancestor-closed.
LabelVector encode_label_vector(const Example& ex, const ClassHierarchy& hierarchy);

/// Binary truth vector for any labeled example (MLC labels or HMLC encoding).
LabelVector truth_vector(const Dataset& ds, const Example& ex);

/// Per-attribute variance (numeric) or Gini (nominal) over the entire
/// training set, used as normalization denominators during induction.
/// `inert` marks attributes that are constant or almost entirely missing;
/// those never contribute to heuristics and are never split on.
struct NormalizationStats {
    std::vector<double> descriptive;      // size D
    std::vector<uint8_t> descriptive_inert;
    std::vector<double> target;           // size T for MLC, empty for HMLC
    std::vector<uint8_t> target_inert;
};

NormalizationStats normalization_stats(const Dataset& ds);

/// Returns a dataset containing only the labeled examples (ids renumbered).
Dataset labeled_subset(const Dataset& ds);

}  // namespace sslpct
