#ifndef IMBALSVM_OVO_HPP_
#define IMBALSVM_OVO_HPP_
#pragma once

#include "imbalsvm/data.hpp"
#include "imbalsvm/errors.hpp"
#include "imbalsvm/isvm_solver.hpp"
#include "imbalsvm/kernel.hpp"

#include "Eigen/Core"

#include <algorithm>  // std::min, std::max
#include <cstddef>   // std::size_t
#include <limits>    // std::numeric_limits
#include <optional>  // std::optional
#include <span>      // std::span
#include <string>    // std::string
#include <utility>   // std::pair
#include <vector>    // std::vector

namespace imbalsvm {

/// Lexicographic list of class pairs (i, j), i < j.
class pair_index {
  public:
    pair_index() = default;

    explicit pair_index(std::size_t num_classes) :
        num_classes_{ num_classes } {
        for (std::size_t i = 0; i < num_classes; ++i) {
            for (std::size_t j = i + 1; j < num_classes; ++j) {
                pairs_.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }

    [[nodiscard]] std::size_t num_classes() const noexcept { return num_classes_; }
    [[nodiscard]] std::size_t size() const noexcept { return pairs_.size(); }
    [[nodiscard]] const std::vector<std::pair<int, int>> &pairs() const noexcept { return pairs_; }
    [[nodiscard]] const std::pair<int, int> &operator[](std::size_t p) const { return pairs_.at(p); }

    /// Flat slot of the unordered pair {a, b}.
    [[nodiscard]] std::size_t flat(int a, int b) const {
        if (a == b || a < 0 || b < 0 || static_cast<std::size_t>(a) >= num_classes_ || static_cast<std::size_t>(b) >= num_classes_) {
            throw config_error{ "invalid class pair" };
        }
        const auto i = static_cast<std::size_t>(std::min(a, b));
        const auto j = static_cast<std::size_t>(std::max(a, b));
        // pairs before row i: sum_{r < i} (M - 1 - r)
        return i * (2 * num_classes_ - i - 1) / 2 + (j - i - 1);
    }

  private:
    std::size_t num_classes_{ 0 };
    std::vector<std::pair<int, int>> pairs_{};
};

/// Samples of one class pair with their +1 / -1 labels. Label +1 marks the class with fewer
/// samples (the lower class index on ties).
struct pair_problem {
    int class_i{ 0 };
    int class_j{ 1 };
    int positive_class{ 0 };
    int negative_class{ 1 };
    std::vector<std::size_t> indices{};
    std::vector<int> y{};
    bool degenerate{ false };

    [[nodiscard]] std::size_t size() const noexcept { return indices.size(); }
};

/// Per-pair i-SVM parameters with final (already multiplied) costs.
struct pair_params {
    kernel_spec kernel{};
    double c_plus{ 1.0 };
    double c_minus{ 1.0 };
    double lambda1{ 1.0 };
    double lambda2{ 1.0 };
};

[[nodiscard]] inline std::vector<pair_problem> decompose(const dataset &ds) {
    const std::size_t M = ds.num_classes();
    if (M < 2) {
        throw data_error{ "one-versus-one decomposition needs at least two classes" };
    }
    const pair_index index{ M };
    std::vector<pair_problem> out;
    out.reserve(index.size());
    for (const auto &[i, j] : index.pairs()) {
        pair_problem pp;
        pp.class_i = i;
        pp.class_j = j;
        const std::size_t ni = ds.class_counts[static_cast<std::size_t>(i)];
        const std::size_t nj = ds.class_counts[static_cast<std::size_t>(j)];
        pp.positive_class = nj < ni ? j : i;
        pp.negative_class = pp.positive_class == i ? j : i;
        pp.degenerate = ni == 0 || nj == 0;
        for (std::size_t s = 0; s < ds.num_samples(); ++s) {
            const int l = ds.labels[s];
            if (l == i || l == j) {
                pp.indices.push_back(s);
                pp.y.push_back(l == pp.positive_class ? 1 : -1);
            }
        }
        out.push_back(std::move(pp));
    }
    return out;
}

[[nodiscard]] inline binary_problem make_problem(const dataset &ds, const pair_problem &pp, const pair_params &params) {
    binary_problem p;
    p.X.resize(static_cast<Eigen::Index>(pp.size()), ds.features.cols());
    for (std::size_t r = 0; r < pp.size(); ++r) {
        p.X.row(static_cast<Eigen::Index>(r)) = ds.features.row(static_cast<Eigen::Index>(pp.indices[r]));
    }
    p.y = pp.y;
    p.kernel = params.kernel;
    p.c_plus = params.c_plus;
    p.c_minus = params.c_minus;
    p.lambda1 = params.lambda1;
    p.lambda2 = params.lambda2;
    return p;
}

/// All pairwise classifiers plus the training class frequencies used for tie-breaking.
/// Degenerate pairs have no classifier.
struct multi_class_model {
    pair_index index{};
    std::vector<std::optional<binary_classifier>> classifiers{};
    std::vector<std::size_t> class_counts{};
    std::vector<std::string> class_names{};
    sigmoid_sign sigmoid{ sigmoid_sign::platt };
    std::size_t num_features{ 0 };

    [[nodiscard]] std::size_t num_classes() const noexcept { return class_counts.size(); }
};

[[nodiscard]] inline multi_class_model train_ovo(const dataset &ds, const std::vector<pair_problem> &pairs, std::span<const pair_params> params, const solver_config &cfg, sigmoid_sign sigmoid) {
    if (params.size() != pairs.size()) {
        throw config_error{ "one parameter set per class pair is required" };
    }
    multi_class_model model;
    model.index = pair_index{ ds.num_classes() };
    model.class_counts = ds.class_counts;
    model.class_names = ds.class_names;
    model.sigmoid = sigmoid;
    model.num_features = ds.num_features();
    model.classifiers.resize(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const pair_problem &pp = pairs[p];
        if (pp.degenerate) {
            continue;
        }
        binary_classifier clf = solve_dual(make_problem(ds, pp, params[p]), cfg);
        clf.class_pair = { pp.positive_class, pp.negative_class };
        model.classifiers[p] = std::move(clf);
    }
    return model;
}

/// k(i, j): confidence that x belongs to class i under the (i, j) classifier. k(j, i) = 1 - k(i, j).
/// Degenerate pairs give 0.5 both ways; the diagonal is NaN.
template <typename Derived>
[[nodiscard]] Eigen::MatrixXd score_matrix(const multi_class_model &model, const Eigen::MatrixBase<Derived> &x) {
    if (static_cast<std::size_t>(x.size()) != model.num_features) {
        throw dimension_error{ model.num_features, static_cast<std::size_t>(x.size()) };
    }
    const auto M = static_cast<Eigen::Index>(model.num_classes());
    Eigen::MatrixXd k = Eigen::MatrixXd::Constant(M, M, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t p = 0; p < model.index.size(); ++p) {
        const auto [i, j] = model.index[p];
        double kij = 0.5;
        if (const auto &clf = model.classifiers[p]) {
            const double pos = prob_positive(*clf, x, model.sigmoid);
            kij = clf->class_pair.first == i ? pos : 1.0 - pos;
        }
        k(i, j) = kij;
        k(j, i) = 1.0 - kij;
    }
    return k;
}

/// s(i, j) = 1 iff k(i, j) >= k(j, i); exact ties vote both ways. Degenerate pairs abstain.
[[nodiscard]] inline std::vector<std::size_t> votes_from_scores(const multi_class_model &model, const Eigen::MatrixXd &k) {
    std::vector<std::size_t> votes(model.num_classes(), 0);
    for (std::size_t p = 0; p < model.index.size(); ++p) {
        if (!model.classifiers[p]) {
            continue;
        }
        const auto [i, j] = model.index[p];
        if (k(i, j) >= k(j, i)) {
            ++votes[static_cast<std::size_t>(i)];
        }
        if (k(j, i) >= k(i, j)) {
            ++votes[static_cast<std::size_t>(j)];
        }
    }
    return votes;
}

template <typename Derived>
[[nodiscard]] std::vector<std::size_t> votes(const multi_class_model &model, const Eigen::MatrixBase<Derived> &x) {
    return votes_from_scores(model, score_matrix(model, x));
}

/// Most votes wins; ties go to the class with fewer training samples, then to the smaller index.
[[nodiscard]] inline int winner(const std::vector<std::size_t> &vote_counts, const std::vector<std::size_t> &class_counts) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < vote_counts.size(); ++c) {
        if (vote_counts[c] > vote_counts[best] || (vote_counts[c] == vote_counts[best] && class_counts[c] < class_counts[best])) {
            best = c;
        }
    }
    return static_cast<int>(best);
}

template <typename Derived>
[[nodiscard]] int predict(const multi_class_model &model, const Eigen::MatrixBase<Derived> &x) {
    return winner(votes(model, x), model.class_counts);
}

[[nodiscard]] inline std::vector<int> predict_all(const multi_class_model &model, const Eigen::MatrixXd &X) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(X.rows()));
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
        out.push_back(predict(model, X.row(r)));
    }
    return out;
}

}  // namespace imbalsvm

#endif  // IMBALSVM_OVO_HPP_
