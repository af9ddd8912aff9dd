#ifndef IMBALSVM_MODEL_IO_HPP_
#define IMBALSVM_MODEL_IO_HPP_
#pragma once

#include "imbalsvm/data.hpp"
#include "imbalsvm/errors.hpp"
#include "imbalsvm/ovo.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace imbalsvm {

inline constexpr const char *model_format = "imbalsvm-model";
inline constexpr int model_version = 1;

/// A trained model plus the column transform that produced its features.
struct model_bundle {
    multi_class_model model{};
    std::vector<column_provenance> provenance{};
    /// Number of raw attributes, class attribute included (0 when trained on numeric features).
    std::size_t raw_attributes{ 0 };
    std::size_t class_attribute{ 0 };
};

namespace detail {

using json = nlohmann::json;

inline json kernel_to_json(const kernel_spec &k) {
    return { { "family", to_string(k.family) }, { "sigma", k.sigma }, { "degree", k.degree } };
}

inline kernel_spec kernel_from_json(const json &j) {
    kernel_spec k;
    const std::string f = j.at("family").get<std::string>();
    if (f == "linear") {
        k.family = kernel_family::linear;
    } else if (f == "rbf") {
        k.family = kernel_family::rbf;
    } else if (f == "polynomial") {
        k.family = kernel_family::polynomial;
    } else {
        throw data_error{ "model file: unknown kernel family '" + f + "'" };
    }
    k.sigma = j.at("sigma").get<double>();
    k.degree = j.at("degree").get<int>();
    k.validate();
    return k;
}

}  // namespace detail

[[nodiscard]] inline nlohmann::json to_json(const model_bundle &b) {
    using detail::json;
    const multi_class_model &m = b.model;
    json clfs = json::array();
    for (std::size_t p = 0; p < m.classifiers.size(); ++p) {
        if (!m.classifiers[p]) {
            clfs.push_back(nullptr);
            continue;
        }
        const binary_classifier &c = *m.classifiers[p];
        json sv = json::array();
        for (Eigen::Index r = 0; r < c.support_vectors.rows(); ++r) {
            std::vector<double> row(static_cast<std::size_t>(c.support_vectors.cols()));
            for (Eigen::Index k = 0; k < c.support_vectors.cols(); ++k) {
                row[static_cast<std::size_t>(k)] = c.support_vectors(r, k);
            }
            sv.push_back(row);
        }
        clfs.push_back({ { "positive_class", c.class_pair.first },
                         { "negative_class", c.class_pair.second },
                         { "kernel", detail::kernel_to_json(c.kernel) },
                         { "bias", c.bias },
                         { "n_train", c.n_train },
                         { "converged", c.converged },
                         { "iterations", c.iterations },
                         { "support_vectors", sv },
                         { "support_labels", c.support_labels },
                         { "support_alphas", c.support_alphas } });
    }
    json prov = json::array();
    for (const column_provenance &p : b.provenance) {
        prov.push_back({ { "source_attribute", p.source_attribute },
                         { "scale_min", p.scale_min },
                         { "scale_max", p.scale_max },
                         { "category", p.category ? json(*p.category) : json(nullptr) } });
    }
    json pairs = json::array();
    for (const auto &[i, j] : m.index.pairs()) {
        pairs.push_back({ i, j });
    }
    return { { "format", model_format },
             { "version", model_version },
             { "num_features", m.num_features },
             { "class_names", m.class_names },
             { "class_counts", m.class_counts },
             { "sigmoid", m.sigmoid == sigmoid_sign::platt ? "platt" : "negated" },
             { "pairs", pairs },
             { "classifiers", clfs },
             { "preprocessing", { { "raw_attributes", b.raw_attributes }, { "class_attribute", b.class_attribute }, { "columns", prov } } } };
}

[[nodiscard]] inline model_bundle from_json(const nlohmann::json &j) {
    try {
        if (j.at("format").get<std::string>() != model_format) {
            throw data_error{ "model file: not an imbalsvm model" };
        }
        const int version = j.at("version").get<int>();
        if (version != model_version) {
            throw data_error{ "model file: unsupported version " + std::to_string(version) };
        }
        model_bundle b;
        multi_class_model &m = b.model;
        m.num_features = j.at("num_features").get<std::size_t>();
        m.class_names = j.at("class_names").get<std::vector<std::string>>();
        m.class_counts = j.at("class_counts").get<std::vector<std::size_t>>();
        const std::string sig = j.at("sigmoid").get<std::string>();
        if (sig != "platt" && sig != "negated") {
            throw data_error{ "model file: unknown sigmoid '" + sig + "'" };
        }
        m.sigmoid = sig == "platt" ? sigmoid_sign::platt : sigmoid_sign::negated;
        m.index = pair_index{ m.class_counts.size() };
        const auto &clfs = j.at("classifiers");
        if (clfs.size() != m.index.size()) {
            throw data_error{ "model file: expected " + std::to_string(m.index.size()) + " classifiers" };
        }
        for (const auto &cj : clfs) {
            if (cj.is_null()) {
                m.classifiers.emplace_back(std::nullopt);
                continue;
            }
            binary_classifier c;
            c.class_pair = { cj.at("positive_class").get<int>(), cj.at("negative_class").get<int>() };
            c.kernel = detail::kernel_from_json(cj.at("kernel"));
            c.bias = cj.at("bias").get<double>();
            c.n_train = cj.at("n_train").get<std::size_t>();
            c.converged = cj.at("converged").get<bool>();
            c.iterations = cj.at("iterations").get<std::size_t>();
            c.num_features = m.num_features;
            c.support_labels = cj.at("support_labels").get<std::vector<int>>();
            c.support_alphas = cj.at("support_alphas").get<std::vector<double>>();
            const auto &sv = cj.at("support_vectors");
            if (sv.size() != c.support_labels.size() || c.support_alphas.size() != c.support_labels.size()) {
                throw data_error{ "model file: support vector arrays differ in length" };
            }
            c.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), static_cast<Eigen::Index>(m.num_features));
            for (std::size_t r = 0; r < sv.size(); ++r) {
                const auto row = sv[r].get<std::vector<double>>();
                if (row.size() != m.num_features) {
                    throw dimension_error{ m.num_features, row.size() };
                }
                for (std::size_t k = 0; k < row.size(); ++k) {
                    c.support_vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = row[k];
                }
            }
            m.classifiers.emplace_back(std::move(c));
        }
        const auto &pre = j.at("preprocessing");
        b.raw_attributes = pre.at("raw_attributes").get<std::size_t>();
        b.class_attribute = pre.at("class_attribute").get<std::size_t>();
        for (const auto &pj : pre.at("columns")) {
            column_provenance p;
            p.source_attribute = pj.at("source_attribute").get<std::size_t>();
            p.scale_min = pj.at("scale_min").get<double>();
            p.scale_max = pj.at("scale_max").get<double>();
            if (!pj.at("category").is_null()) {
                p.category = pj.at("category").get<std::size_t>();
            }
            b.provenance.push_back(p);
        }
        return b;
    } catch (const nlohmann::json::exception &e) {
        throw data_error{ std::string{ "model file: " } + e.what() };
    }
}

inline void save_model(std::ostream &out, const model_bundle &b) { out << to_json(b).dump(1) << '\n'; }

[[nodiscard]] inline model_bundle load_model(std::istream &in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw data_error{ std::string{ "model file: " } + e.what() };
    }
    return from_json(j);
}

}  // namespace imbalsvm

#endif  // IMBALSVM_MODEL_IO_HPP_
