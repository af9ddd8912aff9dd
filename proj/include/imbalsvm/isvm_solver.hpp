#ifndef IMBALSVM_ISVM_SOLVER_HPP_
#define IMBALSVM_ISVM_SOLVER_HPP_
#pragma once

#include "imbalsvm/errors.hpp"
#include "imbalsvm/kernel.hpp"

#include "Eigen/Core"

#include <algorithm>  // std::max, std::min
#include <cassert>    // assert
#include <cmath>      // std::exp, std::abs, std::isfinite
#include <cstddef>    // std::size_t
#include <limits>     // std::numeric_limits
#include <numeric>    // std::iota
#include <string>     // std::string
#include <utility>    // std::pair
#include <vector>     // std::vector

namespace imbalsvm {

/// Sign convention of the sigmoid mapping a decision value f to P(+1 | f).
///   negated: 1 / (1 + exp(f)); it ranks a confident +1 decision as unlikely +1
///   platt: 1 / (1 + exp(-f)), the default
enum class sigmoid_sign { negated,
                          platt };

inline constexpr double min_box = 1e-6;

/// One binary i-SVM training problem. Label +1 marks the minority class of the pair.
struct binary_problem {
    Eigen::MatrixXd X;
    std::vector<int> y;
    kernel_spec kernel{};
    /// Final box bound of +1 samples (base cost times relative minority cost).
    double c_plus{ 1.0 };
    /// Final box bound of -1 samples.
    double c_minus{ 1.0 };
    /// Functional margin target of +1 samples.
    double lambda1{ 1.0 };
    /// Functional margin target of -1 samples.
    double lambda2{ 1.0 };

    [[nodiscard]] std::size_t size() const noexcept { return y.size(); }

    [[nodiscard]] double box(std::size_t i) const noexcept { return y[i] > 0 ? std::max(c_plus, min_box) : std::max(c_minus, min_box); }
    [[nodiscard]] double target(std::size_t i) const noexcept { return y[i] > 0 ? lambda1 : lambda2; }
    [[nodiscard]] double max_box() const noexcept { return std::max(std::max(c_plus, min_box), std::max(c_minus, min_box)); }

    void validate() const {
        if (static_cast<std::size_t>(X.rows()) != y.size()) {
            throw data_error{ "binary problem: feature rows and label count differ" };
        }
        bool pos = false;
        bool neg = false;
        for (const int v : y) {
            if (v == 1) {
                pos = true;
            } else if (v == -1) {
                neg = true;
            } else {
                throw data_error{ "binary problem: labels must be +1 or -1" };
            }
        }
        if (!pos || !neg) {
            throw data_error{ "binary problem: both classes need at least one sample" };
        }
        if (!std::isfinite(c_plus) || !std::isfinite(c_minus) || c_plus < 0.0 || c_minus < 0.0) {
            throw config_error{ "binary problem: costs must be finite and non-negative" };
        }
        if (!(lambda1 >= 0.0 && lambda1 <= 1.0 && lambda2 >= 0.0 && lambda2 <= 1.0)) {
            throw config_error{ "binary problem: margin targets must lie in [0, 1]" };
        }
        kernel.validate();
    }
};

struct solver_config {
    /// Stop once the maximal KKT violation of the working-set pair is at most this value.
    double kkt_tol{ 1e-3 };
    /// Pair-selection cap; 0 selects max(10 * N^2, 100000).
    std::size_t max_iterations{ 0 };
    /// Temporarily drop bound variables that are unlikely to move; optimality is re-checked on the
    /// full problem before returning.
    bool shrinking{ true };
    /// Verify after every step that the dual objective did not decrease.
    bool check_monotone{
#ifndef NDEBUG
        true
#else
        false
#endif
    };
};

struct binary_classifier {
    /// (class carrying label +1, class carrying label -1).
    std::pair<int, int> class_pair{ 0, 1 };
    kernel_spec kernel{};
    double bias{ 0.0 };
    std::size_t num_features{ 0 };
    std::size_t n_train{ 0 };

    /// Dual coefficients over the training rows (empty after loading a model file).
    std::vector<double> alphas{};
    std::vector<std::size_t> support_indices{};
    Eigen::MatrixXd support_vectors{};
    std::vector<int> support_labels{};
    std::vector<double> support_alphas{};

    bool converged{ true };
    std::size_t iterations{ 0 };
    double objective{ 0.0 };
    /// Decision values on the training rows, filled by solve_dual.
    Eigen::VectorXd training_decision{};

    [[nodiscard]] std::size_t nsv() const noexcept { return support_labels.size(); }
};

/// lambda^T alpha - 1/2 alpha^T Q alpha with Q_ij = y_i y_j K_ij.
[[nodiscard]] inline double dual_objective(const binary_problem &p, const Eigen::MatrixXd &K, const std::vector<double> &alpha) {
    const std::size_t n = p.size();
    double lin = 0.0;
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lin += p.target(i) * alpha[i];
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            row += p.y[j] * alpha[j] * K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        quad += p.y[i] * alpha[i] * row;
    }
    return lin - 0.5 * quad;
}

/// Largest violation of the margin-target KKT conditions:
///   alpha_i = 0        => y_i f(x_i) >= lambda_i
///   0 < alpha_i < C_i  => y_i f(x_i) == lambda_i
///   alpha_i = C_i      => y_i f(x_i) <= lambda_i
[[nodiscard]] inline double max_kkt_violation(const binary_problem &p, const Eigen::MatrixXd &K, const std::vector<double> &alpha, double bias) {
    const std::size_t n = p.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = bias;
        for (std::size_t j = 0; j < n; ++j) {
            f += p.y[j] * alpha[j] * K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        const double r = p.y[i] * f - p.target(i);
        const double bound_tol = 1e-12 * p.max_box();
        const bool at_lower = alpha[i] <= bound_tol;
        const bool at_upper = alpha[i] >= p.box(i) - bound_tol;
        double v = 0.0;
        if (at_lower && at_upper) {
            v = 0.0;
        } else if (at_lower) {
            v = std::max(0.0, -r);
        } else if (at_upper) {
            v = std::max(0.0, r);
        } else {
            v = std::abs(r);
        }
        worst = std::max(worst, v);
    }
    return worst;
}

namespace detail {

struct working_set {
    std::ptrdiff_t i{ -1 };
    std::ptrdiff_t j{ -1 };
    double up_max{ -std::numeric_limits<double>::infinity() };
    double low_min{ std::numeric_limits<double>::infinity() };
};

}  // namespace detail

/// Solves
///   max  sum_i lambda_i alpha_i - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij
///   s.t. sum_i y_i alpha_i = 0,  0 <= alpha_i <= C_i
/// with a two-variable working-set method (maximal violating pair with second order selection).
///
/// A run that hits the iteration cap returns the last iterate with `converged == false`.
[[nodiscard]] inline binary_classifier solve_dual(const binary_problem &p, const Eigen::MatrixXd &K, const solver_config &cfg = {}) {
    p.validate();
    const std::size_t n = p.size();
    if (static_cast<std::size_t>(K.rows()) != n || static_cast<std::size_t>(K.cols()) != n) {
        throw dimension_error{ n, static_cast<std::size_t>(K.rows()) };
    }
    constexpr double tau = 1e-12;

    std::vector<double> y(n);
    std::vector<double> box(n);
    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n);  // Q alpha - lambda
    for (std::size_t t = 0; t < n; ++t) {
        y[t] = static_cast<double>(p.y[t]);
        box[t] = p.box(t);
        grad[t] = -p.target(t);
    }

    const auto in_up = [&](std::size_t t) { return y[t] > 0 ? alpha[t] < box[t] : alpha[t] > 0.0; };
    const auto in_low = [&](std::size_t t) { return y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < box[t]; };
    const auto kdiag = [&](std::size_t t) { return K(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t)); };

    std::vector<std::size_t> active(n);
    for (std::size_t t = 0; t < n; ++t) {
        active[t] = t;
    }

    const auto select = [&]() {
        detail::working_set ws;
        for (const std::size_t t : active) {
            if (in_up(t)) {
                const double v = -y[t] * grad[t];
                if (v >= ws.up_max) {
                    ws.up_max = v;
                    ws.i = static_cast<std::ptrdiff_t>(t);
                }
            }
        }
        if (ws.i < 0) {
            return ws;
        }
        const auto i = static_cast<std::size_t>(ws.i);
        const double *Ki = K.data() + static_cast<Eigen::Index>(i) * K.rows();
        const double kii = kdiag(i);
        double best = std::numeric_limits<double>::infinity();
        for (const std::size_t t : active) {
            if (!in_low(t)) {
                continue;
            }
            const double v = -y[t] * grad[t];
            ws.low_min = std::min(ws.low_min, v);
            const double b = ws.up_max - v;
            if (b > 0.0) {
                double a = kii + kdiag(t) - 2.0 * Ki[t];
                if (a <= 0.0) {
                    a = tau;
                }
                const double score = -(b * b) / a;
                if (score <= best) {
                    best = score;
                    ws.j = static_cast<std::ptrdiff_t>(t);
                }
            }
        }
        return ws;
    };

    // G = Q alpha - lambda from scratch over every variable
    const auto rebuild_gradient = [&]() {
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] = -p.target(t);
        }
        for (std::size_t s = 0; s < n; ++s) {
            if (alpha[s] == 0.0) {
                continue;
            }
            const double *Ks = K.data() + static_cast<Eigen::Index>(s) * K.rows();
            const double ys = y[s] * alpha[s];
            for (std::size_t t = 0; t < n; ++t) {
                grad[t] += y[t] * ys * Ks[t];
            }
        }
    };

    const auto unshrink = [&]() {
        if (active.size() == n) {
            return;
        }
        rebuild_gradient();
        active.resize(n);
        std::iota(active.begin(), active.end(), std::size_t{ 0 });
    };

    // a bound variable whose violation points outward from the current extreme pair
    const auto shrink = [&](double up_max, double low_min) {
        std::size_t keep = 0;
        for (const std::size_t t : active) {
            const double v = -y[t] * grad[t];
            const bool at_upper = alpha[t] >= box[t];
            const bool at_lower = alpha[t] <= 0.0;
            bool drop = false;
            if (at_upper != at_lower) {
                // only in I_up: can be dropped when v < low_min; only in I_low: when v > up_max
                drop = in_up(t) ? v < low_min : v > up_max;
            }
            if (!drop) {
                active[keep++] = t;
            }
        }
        active.resize(keep);
    };

    const auto objective = [&]() {
        double obj = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            obj += alpha[t] * (p.target(t) - grad[t]);
        }
        return 0.5 * obj;
    };

    const std::size_t cap = cfg.max_iterations > 0 ? cfg.max_iterations : std::max<std::size_t>(10 * n * n, 100000);
    const std::size_t shrink_interval = std::min<std::size_t>(n, 1000);
    std::size_t until_shrink = shrink_interval;
    std::size_t iter = 0;
    bool converged = false;
    double last_obj = 0.0;
    detail::working_set ws;
    while (true) {
        if (cfg.shrinking && --until_shrink == 0) {
            until_shrink = shrink_interval;
            const detail::working_set probe = select();
            if (probe.i >= 0 && probe.j >= 0) {
                shrink(probe.up_max, probe.low_min);
            }
        }
        ws = select();
        const auto optimal = [&] { return ws.i < 0 || ws.j < 0 || ws.up_max - ws.low_min <= cfg.kkt_tol; };
        if (optimal() && active.size() < n) {
            unshrink();
            ws = select();
            until_shrink = 1;
        }
        if (optimal()) {
            converged = true;
            break;
        }
        if (iter >= cap) {
            unshrink();
            break;
        }
        ++iter;

        const auto i = static_cast<std::size_t>(ws.i);
        const auto j = static_cast<std::size_t>(ws.j);
        const double Ci = box[i];
        const double Cj = box[j];
        const double kij = K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        const double old_i = alpha[i];
        const double old_j = alpha[j];
        double quad = kdiag(i) + kdiag(j) - 2.0 * kij;
        if (quad <= 0.0) {
            quad = tau;
        }

        if (y[i] != y[j]) {
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if (diff > Ci - Cj) {
                if (alpha[i] > Ci) {
                    alpha[i] = Ci;
                    alpha[j] = Ci - diff;
                }
            } else if (alpha[j] > Cj) {
                alpha[j] = Cj;
                alpha[i] = Cj + diff;
            }
        } else {
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > Ci) {
                if (alpha[i] > Ci) {
                    alpha[i] = Ci;
                    alpha[j] = sum - Ci;
                }
            } else if (alpha[j] < 0.0) {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if (sum > Cj) {
                if (alpha[j] > Cj) {
                    alpha[j] = Cj;
                    alpha[i] = sum - Cj;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }

        const double di = (alpha[i] - old_i) * y[i];
        const double dj = (alpha[j] - old_j) * y[j];
        const double *Ki = K.data() + static_cast<Eigen::Index>(i) * K.rows();
        const double *Kj = K.data() + static_cast<Eigen::Index>(j) * K.rows();
        for (const std::size_t t : active) {
            grad[t] += y[t] * (Ki[t] * di + Kj[t] * dj);
        }

        if (cfg.check_monotone) {
            const double obj = active.size() == n ? objective() : dual_objective(p, K, alpha);
            if (obj < last_obj - 1e-9 * std::max(1.0, std::abs(last_obj))) {
                throw numerical_error{ "dual objective decreased during working-set iteration" };
            }
            last_obj = obj;
        }
    }

    // bias: mean over free vectors, otherwise the midpoint of the feasible interval
    double free_sum = 0.0;
    std::size_t free_count = 0;
    double up_max = -std::numeric_limits<double>::infinity();
    double low_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        const double v = -y[t] * grad[t];
        if (alpha[t] > 0.0 && alpha[t] < box[t]) {
            free_sum += v;
            ++free_count;
        }
        if (in_up(t)) {
            up_max = std::max(up_max, v);
        }
        if (in_low(t)) {
            low_min = std::min(low_min, v);
        }
    }
    double bias = 0.0;
    if (free_count > 0) {
        bias = free_sum / static_cast<double>(free_count);
    } else if (std::isfinite(up_max) && std::isfinite(low_min)) {
        bias = 0.5 * (up_max + low_min);
    } else if (std::isfinite(up_max)) {
        bias = up_max;
    } else if (std::isfinite(low_min)) {
        bias = low_min;
    }

    binary_classifier clf;
    clf.kernel = p.kernel;
    clf.bias = bias;
    clf.num_features = static_cast<std::size_t>(p.X.cols());
    clf.n_train = n;
    clf.converged = converged;
    clf.iterations = iter;
    clf.objective = objective();
    clf.alphas = alpha;
    clf.training_decision.resize(static_cast<Eigen::Index>(n));
    const double threshold = 1e-8 * p.max_box();
    for (std::size_t t = 0; t < n; ++t) {
        clf.training_decision(static_cast<Eigen::Index>(t)) = y[t] * (grad[t] + p.target(t)) + bias;
        if (alpha[t] > threshold) {
            clf.support_indices.push_back(t);
        }
    }
    clf.support_vectors.resize(static_cast<Eigen::Index>(clf.support_indices.size()), p.X.cols());
    for (std::size_t s = 0; s < clf.support_indices.size(); ++s) {
        const std::size_t t = clf.support_indices[s];
        clf.support_vectors.row(static_cast<Eigen::Index>(s)) = p.X.row(static_cast<Eigen::Index>(t));
        clf.support_labels.push_back(p.y[t]);
        clf.support_alphas.push_back(alpha[t]);
    }
    return clf;
}

[[nodiscard]] inline binary_classifier solve_dual(const binary_problem &p, const solver_config &cfg = {}) {
    p.validate();
    return solve_dual(p, gram_matrix(p.kernel, p.X), cfg);
}

/// f(x) = sum over support vectors of y_j alpha_j K(x_j, x) + b.
template <typename Derived>
[[nodiscard]] double decision_value(const binary_classifier &clf, const Eigen::MatrixBase<Derived> &x) {
    if (static_cast<std::size_t>(x.size()) != clf.num_features) {
        throw dimension_error{ clf.num_features, static_cast<std::size_t>(x.size()) };
    }
    double f = clf.bias;
    for (std::size_t s = 0; s < clf.support_labels.size(); ++s) {
        f += clf.support_labels[s] * clf.support_alphas[s] * kernel_eval(clf.kernel, clf.support_vectors.row(static_cast<Eigen::Index>(s)), x);
    }
    return f;
}

/// P(+1 | f). Overflow of exp saturates to the 0 / 1 limits.
[[nodiscard]] inline double sigmoid_probability(double f, sigmoid_sign sign = sigmoid_sign::platt) noexcept {
    const double z = sign == sigmoid_sign::negated ? f : -f;
    // 1 / (1 + e^z) computed without overflow for either sign of z
    if (z >= 0.0) {
        const double e = std::exp(-z);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(z));
}

template <typename Derived>
[[nodiscard]] double prob_positive(const binary_classifier &clf, const Eigen::MatrixBase<Derived> &x, sigmoid_sign sign = sigmoid_sign::platt) {
    return sigmoid_probability(decision_value(clf, x), sign);
}

template <typename Derived>
[[nodiscard]] double prob_negative(const binary_classifier &clf, const Eigen::MatrixBase<Derived> &x, sigmoid_sign sign = sigmoid_sign::platt) {
    return 1.0 - prob_positive(clf, x, sign);
}

}  // namespace imbalsvm

#endif  // IMBALSVM_ISVM_SOLVER_HPP_
