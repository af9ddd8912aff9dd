#ifndef IMBALSVM_FITNESS_HPP_
#define IMBALSVM_FITNESS_HPP_
#pragma once

#include "imbalsvm/data.hpp"
#include "imbalsvm/errors.hpp"
#include "imbalsvm/isvm_solver.hpp"
#include "imbalsvm/ovo.hpp"

#include <algorithm>  // std::max
#include <cmath>      // std::log, std::sqrt, std::isfinite
#include <cstddef>    // std::size_t
#include <limits>     // std::numeric_limits
#include <span>       // std::span
#include <vector>     // std::vector

namespace imbalsvm {

enum class fitness_variant { ave,
                             max };

enum class log_base { e,
                      ten };

struct fitness_config {
    /// Confidence parameter of the capacity term.
    double delta{ 0.05 };
    fitness_variant variant{ fitness_variant::ave };
    sigmoid_sign sigmoid{ sigmoid_sign::platt };
    log_base base{ log_base::e };

    void validate() const {
        if (!(delta > 0.0 && delta < 1.0)) {
            throw config_error{ "fitness delta must lie in (0, 1)" };
        }
    }
};

/// e = 1 - P(+1|f) for y = +1 and e = P(+1|f) for y = -1.
[[nodiscard]] inline double sample_loss(double f, int y, sigmoid_sign sign = sigmoid_sign::platt) noexcept {
    const double pos = sigmoid_probability(f, sign);
    return y > 0 ? 1.0 - pos : pos;
}

template <typename Derived>
[[nodiscard]] double sample_loss(const binary_classifier &clf, const Eigen::MatrixBase<Derived> &x, int y, sigmoid_sign sign = sigmoid_sign::platt) {
    return sample_loss(decision_value(clf, x), y, sign);
}

/// sqrt((log nsv + log(1/delta)) / (2N)). nsv = 0 is treated as nsv = 1.
[[nodiscard]] inline double generalization_term(std::size_t nsv, std::size_t n, double delta, log_base base = log_base::e) {
    if (n == 0) {
        throw config_error{ "generalization term needs N >= 1" };
    }
    const auto lg = [base](double v) { return base == log_base::e ? std::log(v) : std::log10(v); };
    const double num = lg(static_cast<double>(std::max<std::size_t>(nsv, 1))) + lg(1.0 / delta);
    return std::sqrt(std::max(0.0, num) / (2.0 * static_cast<double>(n)));
}

/// Decision values of one trained pair classifier on the training samples it involves.
struct pair_evaluation {
    int positive_class{ 0 };
    int negative_class{ 1 };
    bool degenerate{ false };
    std::size_t nsv{ 0 };
    /// Training-set size of the pair classifier.
    std::size_t n_train{ 0 };
    /// Sample ids (indices into the label array) and their decision values.
    std::vector<std::size_t> samples{};
    std::vector<double> decision{};
};

struct fitness_result {
    double value{ 0.0 };
    /// Class-averaged per-sample error, one entry per class (NaN for classes without samples).
    std::vector<double> class_error{};
    /// Classes whose every pair classifier was degenerate; their samples count as error 1.
    std::vector<int> flagged_classes{};
};

/// Class-balanced fitness. Per sample, the (loss + capacity term) of each involving classifier is
/// averaged (ave) or maximised (max); per-sample errors are averaged within each class and the class
/// means are averaged over the classes that have samples. Lower is better.
[[nodiscard]] inline fitness_result evaluate_fitness(std::span<const pair_evaluation> pairs, std::span<const int> labels, std::size_t num_classes, const fitness_config &cfg) {
    cfg.validate();
    const std::size_t n = labels.size();
    std::vector<double> acc(n, 0.0);
    std::vector<std::size_t> involved(n, 0);
    for (const pair_evaluation &pe : pairs) {
        if (pe.degenerate) {
            continue;
        }
        if (pe.samples.size() != pe.decision.size()) {
            throw data_error{ "pair evaluation: sample and decision counts differ" };
        }
        const double term = generalization_term(pe.nsv, pe.n_train, cfg.delta, cfg.base);
        for (std::size_t s = 0; s < pe.samples.size(); ++s) {
            const std::size_t id = pe.samples[s];
            const int y = labels[id] == pe.positive_class ? 1 : -1;
            double q = sample_loss(pe.decision[s], y, cfg.sigmoid) + term;
            if (!std::isfinite(q)) {
                q = 1.0 + term;
            }
            if (cfg.variant == fitness_variant::ave) {
                acc[id] += q;
            } else {
                acc[id] = involved[id] == 0 ? q : std::max(acc[id], q);
            }
            ++involved[id];
        }
    }

    fitness_result res;
    res.class_error.assign(num_classes, 0.0);
    std::vector<std::size_t> class_size(num_classes, 0);
    std::vector<bool> all_degenerate(num_classes, true);
    for (std::size_t id = 0; id < n; ++id) {
        const auto c = static_cast<std::size_t>(labels[id]);
        double err = 1.0;
        if (involved[id] > 0) {
            err = cfg.variant == fitness_variant::ave ? acc[id] / static_cast<double>(involved[id]) : acc[id];
            all_degenerate[c] = false;
        }
        res.class_error[c] += err;
        ++class_size[c];
    }
    double total = 0.0;
    std::size_t present = 0;
    for (std::size_t c = 0; c < num_classes; ++c) {
        if (class_size[c] == 0) {
            res.class_error[c] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        if (all_degenerate[c]) {
            res.flagged_classes.push_back(static_cast<int>(c));
        }
        res.class_error[c] /= static_cast<double>(class_size[c]);
        total += res.class_error[c];
        ++present;
    }
    res.value = present > 0 ? total / static_cast<double>(present) : std::numeric_limits<double>::quiet_NaN();
    return res;
}

[[nodiscard]] inline fitness_result fitness_ave(std::span<const pair_evaluation> pairs, std::span<const int> labels, std::size_t num_classes, fitness_config cfg) {
    cfg.variant = fitness_variant::ave;
    return evaluate_fitness(pairs, labels, num_classes, cfg);
}

[[nodiscard]] inline fitness_result fitness_max(std::span<const pair_evaluation> pairs, std::span<const int> labels, std::size_t num_classes, fitness_config cfg) {
    cfg.variant = fitness_variant::max;
    return evaluate_fitness(pairs, labels, num_classes, cfg);
}

/// Collects pair evaluations of a model trained on `ds` with the decomposition `pairs`.
/// Cached training decision values are used when present.
[[nodiscard]] inline std::vector<pair_evaluation> evaluate_pairs(const multi_class_model &model, const std::vector<pair_problem> &pairs, const dataset &ds) {
    std::vector<pair_evaluation> out(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const pair_problem &pp = pairs[p];
        pair_evaluation &pe = out[p];
        pe.positive_class = pp.positive_class;
        pe.negative_class = pp.negative_class;
        pe.degenerate = pp.degenerate || !model.classifiers[p];
        if (pe.degenerate) {
            continue;
        }
        const binary_classifier &clf = *model.classifiers[p];
        pe.nsv = clf.nsv();
        pe.n_train = clf.n_train > 0 ? clf.n_train : pp.size();
        pe.samples = pp.indices;
        pe.decision.resize(pp.size());
        const bool cached = static_cast<std::size_t>(clf.training_decision.size()) == pp.size();
        for (std::size_t s = 0; s < pp.size(); ++s) {
            pe.decision[s] = cached ? clf.training_decision(static_cast<Eigen::Index>(s)) : decision_value(clf, ds.features.row(static_cast<Eigen::Index>(pp.indices[s])));
        }
    }
    return out;
}

}  // namespace imbalsvm

#endif  // IMBALSVM_FITNESS_HPP_
