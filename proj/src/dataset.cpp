#include "sslpct/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace sslpct {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

bool iequals(const std::string& a, const char* b) {
    size_t n = std::char_traits<char>::length(b);
    if (a.size() != n) return false;
    for (size_t i = 0; i < n; ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

double parse_double(const std::string& tok, int line_no) {
    double v = 0.0;
    const char* b = tok.data();
    const char* e = tok.data() + tok.size();
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e)
        throw ParseError("line " + std::to_string(line_no) + ": bad numeric value '" + tok + "'");
    return v;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

// ---------------------------------------------------------------------------
// ClassHierarchy

ClassHierarchy ClassHierarchy::from_paths(const std::vector<std::string>& paths, double omega0) {
    if (paths.empty()) throw InvalidArgument("hierarchy needs at least one class path");
    if (!(omega0 > 0.0 && omega0 < 1.0))
        throw InvalidArgument("omega0 must lie in (0,1), got " + std::to_string(omega0));

    ClassHierarchy h;
    h.omega0_ = omega0;
    h.declared_paths_ = paths;

    std::unordered_map<std::string, int> by_name;
    auto get_class = [&](const std::string& name) {
        auto it = by_name.find(name);
        if (it != by_name.end()) return it->second;
        int id = static_cast<int>(h.names_.size());
        by_name.emplace(name, id);
        h.names_.push_back(name);
        h.parents_.emplace_back();
        return id;
    };
    auto add_edge = [&](int parent, int child) {
        auto& ps = h.parents_[child];
        if (std::find(ps.begin(), ps.end(), parent) == ps.end()) ps.push_back(parent);
    };

    std::vector<std::string> seen_paths;
    for (const auto& raw : paths) {
        std::string p = trim(raw);
        if (p.empty()) throw ParseError("empty class path in hierarchy declaration");
        if (std::find(seen_paths.begin(), seen_paths.end(), p) != seen_paths.end())
            throw ParseError("duplicate class declaration '" + p + "'");
        seen_paths.push_back(p);
        int prev = -1;  // virtual root
        for (const auto& seg : split(p, '/')) {
            std::string name = trim(seg);
            if (name.empty()) throw ParseError("empty segment in class path '" + p + "'");
            int c = get_class(name);
            if (prev >= 0) add_edge(prev, c);
            prev = c;
        }
    }

    const int n = h.num_classes();
    for (int c = 0; c < n; ++c) std::sort(h.parents_[c].begin(), h.parents_[c].end());

    // Kahn topological order; a leftover class means a parent cycle.
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> children(n);
    for (int c = 0; c < n; ++c)
        for (int p : h.parents_[c]) {
            children[p].push_back(c);
            ++indeg[c];
        }
    std::vector<int> topo;
    topo.reserve(n);
    for (int c = 0; c < n; ++c)
        if (indeg[c] == 0) topo.push_back(c);
    for (size_t head = 0; head < topo.size(); ++head)
        for (int ch : children[topo[head]])
            if (--indeg[ch] == 0) topo.push_back(ch);
    if (static_cast<int>(topo.size()) != n) throw ParseError("cycle detected in class hierarchy");

    // weight(c) = S(c)/P(c) where S sums omega0^len over all root paths and
    // P counts them; both follow the parent recursion.
    std::vector<double> path_weight_sum(n, 0.0);
    std::vector<double> path_count(n, 0.0);
    for (int c : topo) {
        if (h.parents_[c].empty()) {
            path_weight_sum[c] = omega0;
            path_count[c] = 1.0;
        } else {
            for (int p : h.parents_[c]) {
                path_weight_sum[c] += path_weight_sum[p] * omega0;
                path_count[c] += path_count[p];
            }
        }
    }
    h.weights_.resize(n);
    h.weight_sum_ = 0.0;
    for (int c = 0; c < n; ++c) {
        h.weights_[c] = path_weight_sum[c] / path_count[c];
        h.weight_sum_ += h.weights_[c];
        if (h.parents_[c].size() > 1) h.is_dag_ = true;
    }

    h.canonical_paths_.resize(n);
    for (int c : topo) {
        if (h.parents_[c].empty())
            h.canonical_paths_[c] = h.names_[c];
        else
            h.canonical_paths_[c] = h.canonical_paths_[h.parents_[c].front()] + "/" + h.names_[c];
    }
    return h;
}

std::optional<int> ClassHierarchy::find(const std::string& name_or_path) const {
    std::string key = trim(name_or_path);
    auto pos = key.rfind('/');
    std::string name = pos == std::string::npos ? key : key.substr(pos + 1);
    for (int c = 0; c < num_classes(); ++c)
        if (names_[c] == name) {
            if (pos == std::string::npos) return c;
            // Validate the given path: every segment must name an ancestor chain.
            auto segs = split(key, '/');
            int cur = c;
            for (int i = static_cast<int>(segs.size()) - 2; i >= 0; --i) {
                bool ok = false;
                for (int p : parents_[cur])
                    if (names_[p] == trim(segs[i])) {
                        cur = p;
                        ok = true;
                        break;
                    }
                if (!ok) return std::nullopt;
            }
            if (!parents_[cur].empty()) return std::nullopt;  // path did not start at a root class
            return c;
        }
    return std::nullopt;
}

bool ClassHierarchy::close_upwards(std::vector<int8_t>& vec) const {
    bool changed = false;
    // Repeated sweeps; class ids are not guaranteed topologically ordered.
    bool again = true;
    while (again) {
        again = false;
        for (int c = 0; c < num_classes(); ++c) {
            if (!vec[c]) continue;
            for (int p : parents_[c])
                if (!vec[p]) {
                    vec[p] = 1;
                    changed = again = true;
                }
        }
    }
    return changed;
}

bool ClassHierarchy::is_ancestor_closed(const std::vector<int8_t>& vec) const {
    for (int c = 0; c < num_classes(); ++c)
        if (vec[c])
            for (int p : parents_[c])
                if (!vec[p]) return false;
    return true;
}

ClassHierarchy build_hierarchy(const std::vector<std::string>& paths, double omega0) {
    return ClassHierarchy::from_paths(paths, omega0);
}

// ---------------------------------------------------------------------------
// Dataset

std::vector<std::string> Dataset::label_component_names() const {
    std::vector<std::string> out;
    if (task == Task::MLC) {
        for (int col : target_cols) out.push_back(schema[col].name);
    } else {
        for (int c = 0; c < hierarchy->num_classes(); ++c)
            out.push_back(hierarchy->canonical_path(c));
    }
    return out;
}

void Dataset::validate() const {
    if (descriptive_cols.empty()) throw ParseError("dataset has no descriptive attributes");
    if (task == Task::MLC) {
        if (target_cols.empty()) throw ParseError("dataset has no target attributes");
        if (hierarchy) throw ParseError("MLC dataset carries a hierarchy");
    } else {
        if (!hierarchy) throw ParseError("HMLC dataset lacks a hierarchy");
        if (target_cols.size() != 1) throw ParseError("HMLC dataset needs exactly one hierarchical attribute");
    }
    int64_t nl = 0, nu = 0;
    for (const auto& ex : examples)
        (ex.labeled ? nl : nu)++;
    if (nl != n_labeled || nu != n_unlabeled)
        throw ParseError("labeled/unlabeled counts out of sync");
}

// ---------------------------------------------------------------------------
// TargetSpec

TargetSpec TargetSpec::parse(const std::string& text) {
    std::string t = trim(text);
    if (t.rfind("last:", 0) == 0) {
        int n = std::stoi(t.substr(5));
        if (n < 1) throw InvalidArgument("target spec last:N needs N >= 1");
        return last(n);
    }
    if (t.rfind("names:", 0) == 0) {
        std::vector<std::string> names;
        for (auto& s : split(t.substr(6), ','))
            if (!trim(s).empty()) names.push_back(trim(s));
        if (names.empty()) throw InvalidArgument("target spec names: needs at least one name");
        return by_names(names);
    }
    throw InvalidArgument("target spec must be 'last:N' or 'names:a,b,...', got '" + t + "'");
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct RawAttr {
    std::string name;
    AttrKind kind;
    std::vector<std::string> values;  // nominal values or hierarchy paths
};

RawAttr parse_attribute_line(const std::string& body, int line_no) {
    // body is everything after '@attribute'
    std::string s = trim(body);
    size_t sp = s.find_first_of(" \t");
    if (sp == std::string::npos)
        throw ParseError("line " + std::to_string(line_no) + ": attribute needs a name and a type");
    RawAttr a;
    a.name = s.substr(0, sp);
    std::string rest = trim(s.substr(sp));
    if (iequals(rest, "numeric") || iequals(rest, "real") || iequals(rest, "integer")) {
        a.kind = AttrKind::Numeric;
    } else if (!rest.empty() && rest.front() == '{') {
        if (rest.back() != '}')
            throw ParseError("line " + std::to_string(line_no) + ": unterminated nominal value list");
        a.kind = AttrKind::Nominal;
        for (auto& v : split(rest.substr(1, rest.size() - 2), ',')) {
            std::string val = trim(v);
            if (val.empty())
                throw ParseError("line " + std::to_string(line_no) + ": empty nominal value");
            if (std::find(a.values.begin(), a.values.end(), val) != a.values.end())
                throw ParseError("line " + std::to_string(line_no) + ": duplicate nominal value '" + val + "'");
            a.values.push_back(val);
        }
        if (a.values.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty nominal value list");
    } else if (rest.size() >= 12 && iequals(rest.substr(0, 12), "hierarchical")) {
        a.kind = AttrKind::Hierarchical;
        for (auto& p : split(trim(rest.substr(12)), ','))
            if (!trim(p).empty()) a.values.push_back(trim(p));
        if (a.values.empty())
            throw ParseError("line " + std::to_string(line_no) + ": hierarchical attribute lists no class paths");
    } else {
        throw ParseError("line " + std::to_string(line_no) + ": unsupported attribute type '" + rest + "'");
    }
    return a;
}

}  // namespace

ParseResult parse_dataset(const std::string& text, Task task, const TargetSpec& target_spec,
                          double omega0) {
    ParseResult result;
    Dataset& ds = result.dataset;
    ds.task = task;

    std::vector<RawAttr> attrs;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool in_data = false;
    int data_header_line = 0;

    std::vector<std::pair<int, std::string>> rows;  // (line, content)
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '%') continue;
        if (!in_data) {
            if (t.size() >= 9 && iequals(t.substr(0, 9), "@relation")) {
                ds.relation = trim(t.substr(9));
                if (ds.relation.empty()) ds.relation = "data";
            } else if (t.size() >= 10 && iequals(t.substr(0, 10), "@attribute")) {
                attrs.push_back(parse_attribute_line(t.substr(10), line_no));
            } else if (iequals(t, "@data")) {
                in_data = true;
                data_header_line = line_no;
            } else {
                throw ParseError("line " + std::to_string(line_no) + ": unexpected header line '" + t + "'");
            }
        } else {
            rows.emplace_back(line_no, t);
        }
    }
    if (!in_data) throw ParseError("missing @data section");
    if (attrs.empty()) throw ParseError("no attributes declared before line " + std::to_string(data_header_line));

    // Decide column roles.
    const int ncols = static_cast<int>(attrs.size());
    std::vector<bool> is_target(ncols, false);
    int hier_col = -1;
    for (int i = 0; i < ncols; ++i)
        if (attrs[i].kind == AttrKind::Hierarchical) {
            if (hier_col >= 0) throw ParseError("multiple hierarchical attributes declared");
            hier_col = i;
        }
    if (task == Task::HMLC) {
        if (hier_col < 0) throw ParseError("HMLC task needs a hierarchical attribute");
        is_target[hier_col] = true;
    } else {
        if (hier_col >= 0) throw ParseError("MLC task cannot use a hierarchical attribute");
        if (target_spec.mode == TargetSpec::Mode::LastN) {
            if (target_spec.last_n >= ncols)
                throw ParseError("target spec claims " + std::to_string(target_spec.last_n) +
                                 " columns but only " + std::to_string(ncols) + " are declared");
            for (int i = ncols - target_spec.last_n; i < ncols; ++i) is_target[i] = true;
        } else {
            for (const auto& name : target_spec.names) {
                bool found = false;
                for (int i = 0; i < ncols; ++i)
                    if (attrs[i].name == name) {
                        if (is_target[i]) throw ParseError("target '" + name + "' listed twice");
                        is_target[i] = found = true;
                        break;
                    }
                if (!found) throw ParseError("target attribute '" + name + "' not declared");
            }
        }
    }

    for (int i = 0; i < ncols; ++i) {
        AttributeSchema a;
        a.name = attrs[i].name;
        a.kind = attrs[i].kind;
        // hierarchy paths live on the ClassHierarchy, not the schema column
        if (a.kind != AttrKind::Hierarchical) a.values = attrs[i].values;
        a.role = is_target[i] ? AttrRole::Target : AttrRole::Descriptive;
        if (is_target[i]) {
            if (task == Task::MLC) {
                if (a.kind != AttrKind::Nominal || a.values.size() != 2)
                    throw ParseError("MLC target '" + a.name + "' must be a binary nominal attribute");
            }
            ds.target_cols.push_back(i);
        } else {
            if (a.kind == AttrKind::Hierarchical)
                throw ParseError("hierarchical attribute '" + a.name + "' cannot be descriptive");
            ds.descriptive_cols.push_back(i);
        }
        ds.schema.push_back(std::move(a));
    }
    if (ds.descriptive_cols.empty()) throw ParseError("dataset has no descriptive attributes");
    if (ds.target_cols.empty()) throw ParseError("dataset has no target attributes");

    if (task == Task::HMLC)
        ds.hierarchy = ClassHierarchy::from_paths(attrs[hier_col].values, omega0);

    const int ncls = task == Task::HMLC ? ds.hierarchy->num_classes() : 0;
    const int T = static_cast<int>(ds.target_cols.size());

    for (const auto& [row_line, row] : rows) {
        auto fields = split(row, ',');
        if (static_cast<int>(fields.size()) != ncols)
            throw ParseError("line " + std::to_string(row_line) + ": expected " + std::to_string(ncols) +
                             " fields, got " + std::to_string(fields.size()));
        Example ex;
        ex.id = static_cast<int32_t>(ds.examples.size());
        ex.descr.resize(ds.descriptive_cols.size());
        for (size_t d = 0; d < ds.descriptive_cols.size(); ++d) {
            const int col = ds.descriptive_cols[d];
            std::string tok = trim(fields[col]);
            if (tok == "?") {
                ex.descr[d] = missing_value();
            } else if (ds.schema[col].kind == AttrKind::Numeric) {
                ex.descr[d] = parse_double(tok, row_line);
            } else {
                const auto& vals = ds.schema[col].values;
                auto it = std::find(vals.begin(), vals.end(), tok);
                if (it == vals.end())
                    throw ParseError("line " + std::to_string(row_line) + ": value '" + tok +
                                     "' outside the nominal list of '" + ds.schema[col].name + "'");
                ex.descr[d] = static_cast<double>(it - vals.begin());
            }
        }

        int missing_targets = 0;
        for (int col : ds.target_cols)
            if (trim(fields[col]) == "?") ++missing_targets;
        if (missing_targets == T) {
            ex.labeled = false;
        } else if (missing_targets > 0) {
            throw ParseError("line " + std::to_string(row_line) +
                             ": partially missing target values are not supported");
        } else {
            ex.labeled = true;
            if (task == Task::MLC) {
                ex.labels.resize(T);
                for (int t = 0; t < T; ++t) {
                    const int col = ds.target_cols[t];
                    std::string tok = trim(fields[col]);
                    const auto& vals = ds.schema[col].values;
                    auto it = std::find(vals.begin(), vals.end(), tok);
                    if (it == vals.end())
                        throw ParseError("line " + std::to_string(row_line) + ": value '" + tok +
                                         "' outside the nominal list of '" + ds.schema[col].name + "'");
                    ex.labels[t] = static_cast<int8_t>(it - vals.begin());
                }
            } else {
                ex.labels.assign(ncls, 0);
                std::string tok = trim(fields[ds.target_cols[0]]);
                if (!tok.empty()) {
                    for (const auto& path : split(tok, '@')) {
                        auto c = ds.hierarchy->find(path);
                        if (!c)
                            throw ParseError("line " + std::to_string(row_line) + ": class path '" +
                                             trim(path) + "' not in hierarchy");
                        ex.labels[*c] = 1;
                    }
                    if (ds.hierarchy->close_upwards(ex.labels))
                        result.warnings.push_back("line " + std::to_string(row_line) +
                                                  ": label set auto-closed under ancestors");
                }
            }
        }
        (ex.labeled ? ds.n_labeled : ds.n_unlabeled)++;
        ds.examples.push_back(std::move(ex));
    }

    ds.validate();
    return result;
}

ParseResult load_dataset(const std::string& path, Task task, const TargetSpec& target_spec,
                         double omega0) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_dataset(ss.str(), task, target_spec, omega0);
}

// ---------------------------------------------------------------------------
// Writing

std::string write_dataset(const Dataset& ds) {
    std::ostringstream out;
    out << "@relation " << ds.relation << "\n";
    for (const auto& a : ds.schema) {
        out << "@attribute " << a.name << " ";
        if (a.kind == AttrKind::Numeric) {
            out << "numeric";
        } else if (a.kind == AttrKind::Nominal) {
            out << "{";
            for (size_t i = 0; i < a.values.size(); ++i) out << (i ? "," : "") << a.values[i];
            out << "}";
        } else {
            out << "hierarchical ";
            const auto& paths = ds.hierarchy->declared_paths();
            for (size_t i = 0; i < paths.size(); ++i) out << (i ? "," : "") << paths[i];
        }
        out << "\n";
    }
    out << "@data\n";
    for (const auto& ex : ds.examples) {
        size_t d = 0;
        int t = 0;
        for (size_t col = 0; col < ds.schema.size(); ++col) {
            if (col) out << ",";
            const auto& a = ds.schema[col];
            if (a.role == AttrRole::Descriptive) {
                double v = ex.descr[d++];
                if (is_missing(v))
                    out << "?";
                else if (a.kind == AttrKind::Numeric)
                    out << format_double(v);
                else
                    out << a.values[static_cast<size_t>(v)];
            } else if (!ex.labeled) {
                out << "?";
            } else if (ds.task == Task::MLC) {
                out << a.values[static_cast<size_t>(ex.labels[t++])];
            } else {
                bool first = true;
                for (int c = 0; c < ds.hierarchy->num_classes(); ++c)
                    if (ex.labels[c]) {
                        if (!first) out << "@";
                        out << ds.hierarchy->canonical_path(c);
                        first = false;
                    }
            }
        }
        out << "\n";
    }
    return out.str();
}

void save_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << write_dataset(ds);
}

// ---------------------------------------------------------------------------
// Label encodings

LabelVector encode_label_vector(const Example& ex, const ClassHierarchy& hierarchy) {
    if (!ex.labeled) throw InvalidArgument("cannot encode an unlabeled example");
    if (static_cast<int>(ex.labels.size()) != hierarchy.num_classes())
        throw InvalidArgument("example labels do not match the hierarchy size");
    LabelVector v(ex.labels.begin(), ex.labels.end());
    return v;
}

LabelVector truth_vector(const Dataset& ds, const Example& ex) {
    if (!ex.labeled) throw InvalidArgument("example " + std::to_string(ex.id) + " is unlabeled");
    if (ds.task == Task::MLC) return LabelVector(ex.labels.begin(), ex.labels.end());
    return encode_label_vector(ex, *ds.hierarchy);
}

// ---------------------------------------------------------------------------
// Normalization denominators

namespace {

// Eq-style estimator over a full column: N examples, K with known values.
struct ColumnAccum {
    int64_t n = 0, known = 0;
    double sum = 0.0, sumsq = 0.0;
    double first = 0.0;
    bool all_equal = true;

    void add(double v) {
        ++n;
        if (is_missing(v)) return;
        if (known == 0)
            first = v;
        else if (v != first)
            all_equal = false;
        ++known;
        sum += v;
        sumsq += v * v;
    }
    // nullopt when K <= 1. A fully observed constant column is exactly zero;
    // with missing values present the K-correction legitimately keeps the
    // estimate positive even for constant observed values.
    std::optional<double> variance() const {
        if (known <= 1) return std::nullopt;
        if (all_equal && known == n) return 0.0;
        double nn = static_cast<double>(n), k = static_cast<double>(known);
        double mean = sum / k;
        double v = ((nn - 1.0) / (k - 1.0) * sumsq - nn * mean * mean) / nn;
        return std::max(0.0, v);
    }
};

}  // namespace

NormalizationStats normalization_stats(const Dataset& ds) {
    if (ds.examples.empty()) throw InvalidArgument("normalization stats need a non-empty dataset");
    NormalizationStats st;
    const int D = ds.num_descriptive();
    st.descriptive.assign(D, 0.0);
    st.descriptive_inert.assign(D, 0);

    for (int d = 0; d < D; ++d) {
        if (ds.descriptive_is_numeric(d)) {
            ColumnAccum acc;
            for (const auto& ex : ds.examples) acc.add(ex.descr[d]);
            auto v = acc.variance();
            if (!v || *v == 0.0)
                st.descriptive_inert[d] = 1;
            else
                st.descriptive[d] = *v;
        } else {
            const int card = ds.descriptive_cardinality(d);
            std::vector<int64_t> counts(card, 0);
            int64_t known = 0;
            for (const auto& ex : ds.examples) {
                double v = ex.descr[d];
                if (is_missing(v)) continue;
                ++counts[static_cast<int>(v)];
                ++known;
            }
            if (known <= 1) {
                st.descriptive_inert[d] = 1;
                continue;
            }
            double g = 1.0;
            for (int64_t c : counts) {
                double p = static_cast<double>(c) / static_cast<double>(known);
                g -= p * p;
            }
            if (g <= 0.0)
                st.descriptive_inert[d] = 1;
            else
                st.descriptive[d] = g;
        }
    }

    if (ds.task == Task::MLC) {
        const int T = static_cast<int>(ds.target_cols.size());
        st.target.assign(T, 0.0);
        st.target_inert.assign(T, 0);
        for (int t = 0; t < T; ++t) {
            int64_t pos = 0, known = 0;
            for (const auto& ex : ds.examples) {
                if (!ex.labeled) continue;
                ++known;
                pos += ex.labels[t];
            }
            if (known <= 1) {
                st.target_inert[t] = 1;
                continue;
            }
            double p = static_cast<double>(pos) / static_cast<double>(known);
            double g = 1.0 - p * p - (1.0 - p) * (1.0 - p);
            if (g <= 0.0)
                st.target_inert[t] = 1;
            else
                st.target[t] = g;
        }
    }
    return st;
}

Dataset labeled_subset(const Dataset& ds) {
    Dataset out;
    out.task = ds.task;
    out.relation = ds.relation;
    out.schema = ds.schema;
    out.descriptive_cols = ds.descriptive_cols;
    out.target_cols = ds.target_cols;
    out.hierarchy = ds.hierarchy;
    for (const auto& ex : ds.examples)
        if (ex.labeled) {
            Example copy = ex;
            copy.id = static_cast<int32_t>(out.examples.size());
            out.examples.push_back(std::move(copy));
        }
    out.n_labeled = static_cast<int64_t>(out.examples.size());
    out.n_unlabeled = 0;
    return out;
}

}  // namespace sslpct
