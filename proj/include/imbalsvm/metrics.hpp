#ifndef IMBALSVM_METRICS_HPP_
#define IMBALSVM_METRICS_HPP_
#pragma once

#include "imbalsvm/errors.hpp"

#include <algorithm>  // std::max
#include <cmath>    // std::pow
#include <cstddef>  // std::size_t
#include <cstdint>  // std::uint64_t
#include <span>     // std::span
#include <string>   // std::to_string
#include <vector>   // std::vector

namespace imbalsvm {

/// mat(i, j): samples of true class i predicted as class j.
class confusion_matrix {
  public:
    explicit confusion_matrix(std::size_t num_classes) :
        m_{ num_classes },
        counts_(num_classes * num_classes, 0) {}

    [[nodiscard]] std::size_t num_classes() const noexcept { return m_; }

    [[nodiscard]] std::uint64_t operator()(std::size_t truth, std::size_t pred) const { return counts_.at(truth * m_ + pred); }
    std::uint64_t &operator()(std::size_t truth, std::size_t pred) { return counts_.at(truth * m_ + pred); }

    [[nodiscard]] std::uint64_t row_sum(std::size_t i) const {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < m_; ++j) {
            s += (*this)(i, j);
        }
        return s;
    }

    [[nodiscard]] std::uint64_t col_sum(std::size_t j) const {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            s += (*this)(i, j);
        }
        return s;
    }

    [[nodiscard]] std::uint64_t total() const {
        std::uint64_t s = 0;
        for (const std::uint64_t c : counts_) {
            s += c;
        }
        return s;
    }

    confusion_matrix &operator+=(const confusion_matrix &other) {
        if (other.m_ != m_) {
            throw data_error{ "confusion matrices of different size" };
        }
        for (std::size_t k = 0; k < counts_.size(); ++k) {
            counts_[k] += other.counts_[k];
        }
        return *this;
    }

    friend bool operator==(const confusion_matrix &, const confusion_matrix &) = default;

  private:
    std::size_t m_;
    std::vector<std::uint64_t> counts_;
};

[[nodiscard]] inline confusion_matrix confusion(std::span<const int> predicted, std::span<const int> truth, std::size_t num_classes) {
    if (predicted.size() != truth.size()) {
        throw data_error{ "confusion: " + std::to_string(predicted.size()) + " predictions for " + std::to_string(truth.size()) + " labels" };
    }
    confusion_matrix cm{ num_classes };
    for (std::size_t s = 0; s < truth.size(); ++s) {
        if (truth[s] < 0 || predicted[s] < 0 || static_cast<std::size_t>(truth[s]) >= num_classes || static_cast<std::size_t>(predicted[s]) >= num_classes) {
            throw data_error{ "confusion: label outside [0, " + std::to_string(num_classes) + ")" };
        }
        ++cm(static_cast<std::size_t>(truth[s]), static_cast<std::size_t>(predicted[s]));
    }
    return cm;
}

/// tp / (tp + fn); a class without true samples has recall 0.
[[nodiscard]] inline std::vector<double> per_class_recall(const confusion_matrix &cm) {
    std::vector<double> r(cm.num_classes(), 0.0);
    for (std::size_t i = 0; i < cm.num_classes(); ++i) {
        const std::uint64_t row = cm.row_sum(i);
        r[i] = row == 0 ? 0.0 : static_cast<double>(cm(i, i)) / static_cast<double>(row);
    }
    return r;
}

/// Classes with no true samples in the matrix.
[[nodiscard]] inline std::vector<std::size_t> absent_classes(const confusion_matrix &cm) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cm.num_classes(); ++i) {
        if (cm.row_sum(i) == 0) {
            out.push_back(i);
        }
    }
    return out;
}

/// Mean per-class F-beta in percent. A class with tp = 0 scores 0.
[[nodiscard]] inline double av_f_beta(const confusion_matrix &cm, double beta = 1.0) {
    if (!(beta > 0.0)) {
        throw config_error{ "beta must be positive" };
    }
    const double b2 = beta * beta;
    double sum = 0.0;
    for (std::size_t i = 0; i < cm.num_classes(); ++i) {
        const auto tp = static_cast<double>(cm(i, i));
        if (tp == 0.0) {
            continue;
        }
        const double recall = tp / static_cast<double>(cm.row_sum(i));
        const double precision = tp / static_cast<double>(cm.col_sum(i));
        sum += (1.0 + b2) * precision * recall / (b2 * precision + recall);
    }
    return 100.0 * sum / static_cast<double>(cm.num_classes());
}

/// Class balance accuracy in percent: mean of mat(i,i) / max(row_i, col_i), with 0/0 = 0.
[[nodiscard]] inline double cba(const confusion_matrix &cm) {
    double sum = 0.0;
    for (std::size_t i = 0; i < cm.num_classes(); ++i) {
        const std::uint64_t denom = std::max(cm.row_sum(i), cm.col_sum(i));
        if (denom > 0) {
            sum += static_cast<double>(cm(i, i)) / static_cast<double>(denom);
        }
    }
    return 100.0 * sum / static_cast<double>(cm.num_classes());
}

/// Geometric mean of per-class recalls in percent; any zero recall gives 0.
[[nodiscard]] inline double g_mean(const confusion_matrix &cm) {
    const std::vector<double> r = per_class_recall(cm);
    double prod = 1.0;
    for (const double v : r) {
        if (v == 0.0) {
            return 0.0;
        }
        prod *= v;
    }
    return 100.0 * std::pow(prod, 1.0 / static_cast<double>(r.size()));
}

}  // namespace imbalsvm

#endif  // IMBALSVM_METRICS_HPP_
