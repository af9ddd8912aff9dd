#ifndef IMBALSVM_DATA_HPP_
#define IMBALSVM_DATA_HPP_
#pragma once

#include "imbalsvm/errors.hpp"

#include "Eigen/Core"

#include <algorithm>  // std::find, std::shuffle, std::all_of
#include <cctype>     // std::tolower, std::isspace
#include <cerrno>     // errno
#include <cstddef>    // std::size_t
#include <cstdint>    // std::uint64_t
#include <cstdlib>    // std::strtod
#include <istream>    // std::istream
#include <limits>     // std::numeric_limits
#include <numeric>    // std::accumulate
#include <ostream>    // std::ostream
#include <optional>   // std::optional
#include <random>     // std::mt19937_64
#include <string>     // std::string, std::getline
#include <string_view>
#include <utility>  // std::pair, std::move
#include <vector>   // std::vector

namespace imbalsvm {

enum class attribute_kind { numeric,
                            nominal,
                            class_label };

struct attribute_spec {
    std::string name;
    attribute_kind kind{ attribute_kind::numeric };
    /// Category tokens for nominal and class attributes, in declaration order.
    std::vector<std::string> domain{};
    /// Declared [min, max] of a numeric attribute, if any.
    std::optional<std::pair<double, double>> range{};

    [[nodiscard]] bool is_categorical() const noexcept { return kind != attribute_kind::numeric; }

    [[nodiscard]] std::optional<std::size_t> category_index(std::string_view token) const {
        const auto it = std::find(domain.begin(), domain.end(), token);
        if (it == domain.end()) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - domain.begin());
    }
};

/// A single raw cell. Categorical values are stored as an index into the attribute domain.
struct raw_value {
    bool missing{ false };
    double value{ 0.0 };

    [[nodiscard]] static raw_value missing_value() noexcept { return raw_value{ true, 0.0 }; }
};

struct raw_dataset {
    std::string name;
    std::vector<attribute_spec> attributes;
    std::size_t class_attribute{ 0 };
    std::vector<std::vector<raw_value>> rows;

    [[nodiscard]] std::size_t num_rows() const noexcept { return rows.size(); }

    /// Input attributes, i.e. everything except the class attribute.
    [[nodiscard]] std::size_t num_inputs() const noexcept { return attributes.size() - 1; }

    [[nodiscard]] std::size_t num_numeric() const {
        return static_cast<std::size_t>(std::count_if(attributes.begin(), attributes.end(), [](const attribute_spec &a) { return a.kind == attribute_kind::numeric; }));
    }

    [[nodiscard]] std::size_t num_nominal() const {
        return static_cast<std::size_t>(std::count_if(attributes.begin(), attributes.end(), [](const attribute_spec &a) { return a.kind == attribute_kind::nominal; }));
    }

    [[nodiscard]] std::size_t num_classes() const { return attributes.at(class_attribute).domain.size(); }
};

/// Where a preprocessed feature column came from.
struct column_provenance {
    std::size_t source_attribute{ 0 };
    /// Numeric columns: the min/max used for scaling. One-hot columns: unused.
    double scale_min{ 0.0 };
    double scale_max{ 1.0 };
    /// One-hot columns: category index inside the source domain.
    std::optional<std::size_t> category{};
};

struct dataset {
    Eigen::MatrixXd features;
    std::vector<int> labels;
    std::vector<std::size_t> class_counts;
    std::vector<std::string> class_names{};
    std::vector<column_provenance> provenance{};
    std::vector<std::string> warnings{};

    [[nodiscard]] std::size_t num_samples() const noexcept { return labels.size(); }
    [[nodiscard]] std::size_t num_features() const noexcept { return static_cast<std::size_t>(features.cols()); }
    [[nodiscard]] std::size_t num_classes() const noexcept { return class_counts.size(); }
};

struct fold_assignment {
    std::size_t k{ 0 };
    std::vector<std::size_t> fold_of;

    [[nodiscard]] std::vector<std::size_t> test_indices(std::size_t fold) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < fold_of.size(); ++i) {
            if (fold_of[i] == fold) {
                out.push_back(i);
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<std::size_t> train_indices(std::size_t fold) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < fold_of.size(); ++i) {
            if (fold_of[i] != fold) {
                out.push_back(i);
            }
        }
        return out;
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::string to_lower(std::string_view s) {
    std::string out{ s };
    for (char &c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

inline std::string unquote(std::string_view s) {
    s = trim(s);
    if (s.size() >= 2 && ((s.front() == '\'' && s.back() == '\'') || (s.front() == '"' && s.back() == '"'))) {
        s = s.substr(1, s.size() - 2);
    }
    return std::string{ s };
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(unquote(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

inline std::optional<double> parse_double(std::string_view token) {
    const std::string buf{ trim(token) };
    if (buf.empty()) {
        return std::nullopt;
    }
    char *end = nullptr;
    errno = 0;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || errno == ERANGE) {
        return std::nullopt;
    }
    return v;
}

// Parses one comma separated data row against the attribute list.
inline std::vector<raw_value> parse_row(std::string_view line, const std::vector<attribute_spec> &attributes, std::size_t line_no) {
    const std::vector<std::string> tokens = split(line, ',');
    if (tokens.size() != attributes.size()) {
        throw parse_error{ "expected " + std::to_string(attributes.size()) + " values, found " + std::to_string(tokens.size()), line_no };
    }
    std::vector<raw_value> row(tokens.size());
    for (std::size_t c = 0; c < tokens.size(); ++c) {
        const std::string &tok = tokens[c];
        const attribute_spec &attr = attributes[c];
        if (tok == "?") {
            row[c] = raw_value::missing_value();
            continue;
        }
        if (attr.is_categorical()) {
            const auto idx = attr.category_index(tok);
            if (!idx) {
                throw parse_error{ "column " + std::to_string(c + 1) + " ('" + attr.name + "'): unknown category '" + tok + "'", line_no };
            }
            row[c].value = static_cast<double>(*idx);
        } else {
            const auto v = parse_double(tok);
            if (!v) {
                throw parse_error{ "column " + std::to_string(c + 1) + " ('" + attr.name + "'): cannot parse '" + tok + "' as a number", line_no };
            }
            row[c].value = *v;
        }
    }
    return row;
}

// "@attribute name real [a, b]" / "@attribute name {A, B}" / "@attribute name integer[1,5]"
inline attribute_spec parse_attribute_line(std::string_view rest, std::size_t line_no) {
    rest = trim(rest);
    std::string name;
    if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
        const char q = rest.front();
        const std::size_t close = rest.find(q, 1);
        if (close == std::string_view::npos) {
            throw parse_error{ "unterminated quoted attribute name", line_no };
        }
        name = std::string{ rest.substr(1, close - 1) };
        rest = trim(rest.substr(close + 1));
    } else {
        std::size_t end = 0;
        while (end < rest.size() && !std::isspace(static_cast<unsigned char>(rest[end])) && rest[end] != '{' && rest[end] != '[') {
            ++end;
        }
        name = std::string{ rest.substr(0, end) };
        rest = trim(rest.substr(end));
    }
    if (name.empty()) {
        throw parse_error{ "@attribute without a name", line_no };
    }

    attribute_spec spec{ name };
    if (!rest.empty() && rest.front() == '{') {
        const std::size_t close = rest.find('}');
        if (close == std::string_view::npos) {
            throw parse_error{ "unterminated category list for attribute '" + name + "'", line_no };
        }
        spec.kind = attribute_kind::nominal;
        for (std::string &tok : split(rest.substr(1, close - 1), ',')) {
            if (tok.empty()) {
                throw parse_error{ "empty category in attribute '" + name + "'", line_no };
            }
            if (spec.category_index(tok)) {
                throw parse_error{ "duplicate category '" + tok + "' in attribute '" + name + "'", line_no };
            }
            spec.domain.push_back(std::move(tok));
        }
        if (spec.domain.empty()) {
            throw parse_error{ "empty category list for attribute '" + name + "'", line_no };
        }
        return spec;
    }

    std::size_t type_end = 0;
    while (type_end < rest.size() && std::isalpha(static_cast<unsigned char>(rest[type_end]))) {
        ++type_end;
    }
    const std::string type = to_lower(rest.substr(0, type_end));
    if (type != "real" && type != "integer" && type != "numeric") {
        throw parse_error{ "unsupported type '" + std::string{ rest.substr(0, type_end) } + "' for attribute '" + name + "'", line_no };
    }
    spec.kind = attribute_kind::numeric;
    rest = trim(rest.substr(type_end));
    if (!rest.empty()) {
        if (rest.front() != '[' || rest.back() != ']') {
            throw parse_error{ "malformed range for attribute '" + name + "'", line_no };
        }
        const std::vector<std::string> bounds = split(rest.substr(1, rest.size() - 2), ',');
        if (bounds.size() != 2) {
            throw parse_error{ "malformed range for attribute '" + name + "'", line_no };
        }
        const auto lo = parse_double(bounds[0]);
        const auto hi = parse_double(bounds[1]);
        if (!lo || !hi) {
            throw parse_error{ "malformed range for attribute '" + name + "'", line_no };
        }
        spec.range = std::pair{ *lo, *hi };
    }
    return spec;
}

}  // namespace detail

/// Parses a KEEL `.dat` file. The `@outputs` attribute (or the last one) becomes the class attribute.
inline raw_dataset parse_keel(std::istream &in) {
    raw_dataset ds;
    std::string line;
    std::size_t line_no = 0;
    bool in_data = false;
    std::optional<std::string> output_name;
    std::vector<std::pair<std::string, std::size_t>> integer_class_candidates;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = detail::trim(line);
        if (view.empty() || view.front() == '%') {
            continue;
        }
        if (in_data) {
            ds.rows.push_back(detail::parse_row(view, ds.attributes, line_no));
            continue;
        }
        if (view.front() != '@') {
            throw parse_error{ "expected a header directive before @data", line_no };
        }
        std::size_t kw_end = 1;
        while (kw_end < view.size() && !std::isspace(static_cast<unsigned char>(view[kw_end]))) {
            ++kw_end;
        }
        const std::string keyword = detail::to_lower(view.substr(0, kw_end));
        const std::string_view rest = detail::trim(view.substr(kw_end));
        if (keyword == "@relation") {
            ds.name = detail::unquote(rest);
        } else if (keyword == "@attribute") {
            attribute_spec spec = detail::parse_attribute_line(rest, line_no);
            for (const attribute_spec &a : ds.attributes) {
                if (a.name == spec.name) {
                    throw parse_error{ "duplicate attribute '" + spec.name + "'", line_no };
                }
            }
            if (spec.kind == attribute_kind::numeric && detail::to_lower(rest).find("integer") != std::string::npos) {
                integer_class_candidates.emplace_back(spec.name, ds.attributes.size());
            }
            ds.attributes.push_back(std::move(spec));
        } else if (keyword == "@inputs" || keyword == "@input") {
            // inputs are implied by the class attribute
        } else if (keyword == "@outputs" || keyword == "@output") {
            const std::vector<std::string> outs = detail::split(rest, ',');
            if (outs.size() != 1 || outs.front().empty()) {
                throw parse_error{ "exactly one output attribute is supported", line_no };
            }
            output_name = outs.front();
        } else if (keyword == "@data") {
            if (ds.attributes.size() < 2) {
                throw parse_error{ "at least one input and one class attribute are required", line_no };
            }
            std::size_t cls = ds.attributes.size() - 1;
            if (output_name) {
                const auto it = std::find_if(ds.attributes.begin(), ds.attributes.end(), [&](const attribute_spec &a) { return a.name == *output_name; });
                if (it == ds.attributes.end()) {
                    throw parse_error{ "@outputs names unknown attribute '" + *output_name + "'", line_no };
                }
                cls = static_cast<std::size_t>(it - ds.attributes.begin());
            }
            attribute_spec &class_attr = ds.attributes[cls];
            if (class_attr.kind == attribute_kind::numeric) {
                const bool is_integer = std::any_of(integer_class_candidates.begin(), integer_class_candidates.end(), [&](const auto &c) { return c.second == cls; });
                if (!is_integer || !class_attr.range) {
                    throw parse_error{ "class attribute '" + class_attr.name + "' must be nominal or a bounded integer", line_no };
                }
                const auto lo = static_cast<long long>(class_attr.range->first);
                const auto hi = static_cast<long long>(class_attr.range->second);
                for (long long v = lo; v <= hi; ++v) {
                    class_attr.domain.push_back(std::to_string(v));
                }
            }
            class_attr.kind = attribute_kind::class_label;
            ds.class_attribute = cls;
            in_data = true;
        } else {
            throw parse_error{ "unknown header directive '" + std::string{ view.substr(0, kw_end) } + "'", line_no };
        }
    }
    if (!in_data) {
        throw parse_error{ "missing @data section", line_no };
    }
    return ds;
}

/// Parses a CSV file with a header row against a declared schema.
/// Exactly one schema entry must be of kind `class_label`.
inline raw_dataset parse_csv(std::istream &in, const std::vector<attribute_spec> &schema) {
    const auto n_class = std::count_if(schema.begin(), schema.end(), [](const attribute_spec &a) { return a.kind == attribute_kind::class_label; });
    if (n_class != 1) {
        throw config_error{ "CSV schema must declare exactly one class attribute" };
    }
    for (const attribute_spec &a : schema) {
        if (a.is_categorical() && a.domain.empty()) {
            throw config_error{ "categorical attribute '" + a.name + "' has an empty domain" };
        }
    }

    raw_dataset ds;
    ds.attributes = schema;
    ds.class_attribute = static_cast<std::size_t>(std::find_if(schema.begin(), schema.end(), [](const attribute_spec &a) { return a.kind == attribute_kind::class_label; }) - schema.begin());

    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = detail::trim(line);
        if (view.empty()) {
            continue;
        }
        if (!header_seen) {
            const std::vector<std::string> names = detail::split(view, ',');
            if (names.size() != schema.size()) {
                throw parse_error{ "header has " + std::to_string(names.size()) + " columns, schema declares " + std::to_string(schema.size()), line_no };
            }
            for (std::size_t c = 0; c < names.size(); ++c) {
                if (names[c] != schema[c].name) {
                    throw parse_error{ "header column " + std::to_string(c + 1) + " is '" + names[c] + "', schema expects '" + schema[c].name + "'", line_no };
                }
            }
            header_seen = true;
            continue;
        }
        ds.rows.push_back(detail::parse_row(view, ds.attributes, line_no));
    }
    if (!header_seen) {
        throw parse_error{ "missing CSV header row", line_no };
    }
    return ds;
}

/// Removes rows with missing values, min-max scales numeric attributes, one-hot encodes nominal ones
/// and maps class tokens to indices in declaration order.
///
/// Scaling statistics are taken over every surviving row, before any fold split. A constant numeric
/// column becomes all zeros and a warning is recorded.
inline dataset preprocess(const raw_dataset &raw) {
    const std::size_t n_attr = raw.attributes.size();
    std::vector<const std::vector<raw_value> *> kept;
    kept.reserve(raw.rows.size());
    for (const auto &row : raw.rows) {
        if (row.size() != n_attr) {
            throw data_error{ "row arity does not match the attribute list" };
        }
        if (std::none_of(row.begin(), row.end(), [](const raw_value &v) { return v.missing; })) {
            kept.push_back(&row);
        }
    }

    dataset ds;
    const attribute_spec &class_attr = raw.attributes.at(raw.class_attribute);
    ds.class_names = class_attr.domain;
    ds.class_counts.assign(class_attr.domain.size(), 0);
    ds.labels.reserve(kept.size());
    for (const auto *row : kept) {
        const auto label = static_cast<int>((*row)[raw.class_attribute].value);
        ds.labels.push_back(label);
        ++ds.class_counts[static_cast<std::size_t>(label)];
    }
    const auto nonempty = std::count_if(ds.class_counts.begin(), ds.class_counts.end(), [](std::size_t c) { return c > 0; });
    if (nonempty < 2) {
        throw data_error{ "at least two classes need surviving rows after missing-value removal" };
    }

    for (std::size_t a = 0; a < n_attr; ++a) {
        if (a == raw.class_attribute) {
            continue;
        }
        const attribute_spec &attr = raw.attributes[a];
        if (attr.kind == attribute_kind::nominal) {
            for (std::size_t cat = 0; cat < attr.domain.size(); ++cat) {
                ds.provenance.push_back(column_provenance{ a, 0.0, 1.0, cat });
            }
        } else {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            for (const auto *row : kept) {
                lo = std::min(lo, (*row)[a].value);
                hi = std::max(hi, (*row)[a].value);
            }
            if (kept.empty()) {
                lo = hi = 0.0;
            }
            if (!(hi > lo)) {
                ds.warnings.push_back("attribute '" + attr.name + "' is constant; mapped to zeros");
            }
            ds.provenance.push_back(column_provenance{ a, lo, hi, std::nullopt });
        }
    }

    ds.features.resize(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(ds.provenance.size()));
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const auto &row = *kept[r];
        for (std::size_t c = 0; c < ds.provenance.size(); ++c) {
            const column_provenance &p = ds.provenance[c];
            double v = 0.0;
            if (p.category) {
                v = static_cast<std::size_t>(row[p.source_attribute].value) == *p.category ? 1.0 : 0.0;
            } else if (p.scale_max > p.scale_min) {
                v = (row[p.source_attribute].value - p.scale_min) / (p.scale_max - p.scale_min);
            }
            ds.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    }
    return ds;
}

/// Builds a dataset directly from features and labels in [0, num_classes).
inline dataset make_dataset(Eigen::MatrixXd features, std::vector<int> labels, std::size_t num_classes) {
    if (static_cast<std::size_t>(features.rows()) != labels.size()) {
        throw data_error{ "feature rows and label count differ" };
    }
    dataset ds;
    ds.features = std::move(features);
    ds.labels = std::move(labels);
    ds.class_counts.assign(num_classes, 0);
    for (const int l : ds.labels) {
        if (l < 0 || static_cast<std::size_t>(l) >= num_classes) {
            throw data_error{ "label " + std::to_string(l) + " outside [0, " + std::to_string(num_classes) + ")" };
        }
        ++ds.class_counts[static_cast<std::size_t>(l)];
    }
    for (std::size_t c = 0; c < num_classes; ++c) {
        ds.class_names.push_back(std::to_string(c));
    }
    for (Eigen::Index c = 0; c < ds.features.cols(); ++c) {
        ds.provenance.push_back(column_provenance{ static_cast<std::size_t>(c), 0.0, 1.0, std::nullopt });
    }
    return ds;
}

/// Rows `indices` of `ds`, keeping the class count and class names.
inline dataset subset(const dataset &ds, const std::vector<std::size_t> &indices) {
    dataset out;
    out.features.resize(static_cast<Eigen::Index>(indices.size()), ds.features.cols());
    out.labels.reserve(indices.size());
    out.class_counts.assign(ds.num_classes(), 0);
    for (std::size_t r = 0; r < indices.size(); ++r) {
        out.features.row(static_cast<Eigen::Index>(r)) = ds.features.row(static_cast<Eigen::Index>(indices[r]));
        const int l = ds.labels.at(indices[r]);
        out.labels.push_back(l);
        ++out.class_counts[static_cast<std::size_t>(l)];
    }
    out.class_names = ds.class_names;
    out.provenance = ds.provenance;
    return out;
}

/// Features of every row of `raw` under an existing column transform (e.g. one stored with a model).
/// Rows with missing inputs are rejected.
inline Eigen::MatrixXd transform_rows(const raw_dataset &raw, const std::vector<column_provenance> &columns) {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(raw.rows.size()), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        const auto &row = raw.rows[r];
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const column_provenance &p = columns[c];
            if (p.source_attribute >= row.size()) {
                throw dimension_error{ p.source_attribute + 1, row.size() };
            }
            const raw_value &v = row[p.source_attribute];
            if (v.missing) {
                throw data_error{ "row " + std::to_string(r + 1) + " has a missing value in attribute " + std::to_string(p.source_attribute + 1) };
            }
            double x = 0.0;
            if (p.category) {
                x = static_cast<std::size_t>(v.value) == *p.category ? 1.0 : 0.0;
            } else if (p.scale_max > p.scale_min) {
                x = (v.value - p.scale_min) / (p.scale_max - p.scale_min);
            }
            X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = x;
        }
    }
    return X;
}

/// Numeric CSV of a preprocessed dataset: a `#classes=` line with the class tokens in index order,
/// a header, then one row per sample with the class token last.
inline void write_preprocessed_csv(std::ostream &out, const dataset &ds) {
    out << "#classes=";
    for (std::size_t c = 0; c < ds.class_names.size(); ++c) {
        out << (c ? "," : "") << ds.class_names[c];
    }
    out << '\n';
    for (std::size_t c = 0; c < ds.num_features(); ++c) {
        out << 'f' << c << ',';
    }
    out << "class\n";
    const auto old = out.precision(17);
    for (std::size_t r = 0; r < ds.num_samples(); ++r) {
        for (std::size_t c = 0; c < ds.num_features(); ++c) {
            out << ds.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) << ',';
        }
        out << ds.class_names.at(static_cast<std::size_t>(ds.labels[r])) << '\n';
    }
    out.precision(old);
}

/// Reads write_preprocessed_csv output. Without a `#classes=` line, classes are numbered in order
/// of first appearance.
inline dataset parse_preprocessed_csv(std::istream &in) {
    std::vector<std::string> classes;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> tokens;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = detail::trim(line);
        if (view.empty()) {
            continue;
        }
        if (view.starts_with("#classes=")) {
            classes = detail::split(view.substr(9), ',');
            continue;
        }
        if (view.front() == '#' || view.front() == '%') {
            continue;
        }
        const std::vector<std::string> cells = detail::split(view, ',');
        if (!header_seen) {
            header_seen = true;
            width = cells.size();
            if (width < 2) {
                throw parse_error{ "need at least one feature column and a class column", line_no };
            }
            continue;
        }
        if (cells.size() != width) {
            throw parse_error{ "expected " + std::to_string(width) + " columns, found " + std::to_string(cells.size()), line_no };
        }
        std::vector<double> row;
        for (std::size_t c = 0; c + 1 < width; ++c) {
            const auto v = detail::parse_double(cells[c]);
            if (!v) {
                throw parse_error{ "non-numeric value '" + cells[c] + "' in column " + std::to_string(c + 1), line_no };
            }
            row.push_back(*v);
        }
        rows.push_back(std::move(row));
        tokens.push_back(cells.back());
    }
    if (!header_seen) {
        throw parse_error{ "missing CSV header row", line_no };
    }
    std::vector<int> labels;
    for (const std::string &t : tokens) {
        auto it = std::find(classes.begin(), classes.end(), t);
        if (it == classes.end()) {
            classes.push_back(t);
            it = classes.end() - 1;
        }
        labels.push_back(static_cast<int>(it - classes.begin()));
    }
    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width - 1));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c + 1 < width; ++c) {
            X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    dataset ds = make_dataset(std::move(X), std::move(labels), classes.size());
    ds.class_names = classes;
    return ds;
}

/// Stratified k-fold assignment: each class is shuffled with the seeded generator and dealt
/// round-robin. The deal continues from where the previous class stopped so fold sizes stay balanced.
inline fold_assignment stratified_folds(const dataset &ds, std::size_t k, std::uint64_t seed) {
    if (k < 2) {
        throw config_error{ "fold count must be at least 2" };
    }
    if (k > ds.num_samples()) {
        throw data_error{ "fold count " + std::to_string(k) + " exceeds sample count " + std::to_string(ds.num_samples()) };
    }
    std::mt19937_64 rng{ seed };
    fold_assignment fa{ k, std::vector<std::size_t>(ds.num_samples(), 0) };
    std::size_t next = 0;
    for (std::size_t c = 0; c < ds.num_classes(); ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < ds.num_samples(); ++i) {
            if (static_cast<std::size_t>(ds.labels[i]) == c) {
                members.push_back(i);
            }
        }
        std::shuffle(members.begin(), members.end(), rng);
        for (const std::size_t idx : members) {
            fa.fold_of[idx] = next;
            next = (next + 1) % k;
        }
    }
    return fa;
}

}  // namespace imbalsvm

#endif  // IMBALSVM_DATA_HPP_
