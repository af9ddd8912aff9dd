#ifndef IMBALSVM_KERNEL_HPP_
#define IMBALSVM_KERNEL_HPP_
#pragma once

#include "imbalsvm/errors.hpp"

#include "Eigen/Core"

#include <cmath>    // std::exp
#include <cstddef>  // std::size_t
#include <string>   // std::string

namespace imbalsvm {

/// Numbering matches the kernel gene of the evolutionary encoding.
enum class kernel_family : int { linear = 0,
                                 rbf = 1,
                                 polynomial = 2 };

[[nodiscard]] inline std::string to_string(kernel_family f) {
    switch (f) {
        case kernel_family::linear:
            return "linear";
        case kernel_family::rbf:
            return "rbf";
        case kernel_family::polynomial:
            return "polynomial";
    }
    return "unknown";
}

struct kernel_spec {
    kernel_family family{ kernel_family::linear };
    /// RBF width: K(x, z) = exp(-|x - z|^2 / (2 sigma^2)).
    double sigma{ 1.0 };
    /// Polynomial degree: K(x, z) = (1 + x.z)^degree.
    int degree{ 1 };

    [[nodiscard]] static kernel_spec linear() { return {}; }
    [[nodiscard]] static kernel_spec rbf(double sigma) { return { kernel_family::rbf, sigma, 1 }; }
    [[nodiscard]] static kernel_spec polynomial(int degree) { return { kernel_family::polynomial, 1.0, degree }; }

    void validate() const {
        if (family == kernel_family::rbf && !(sigma > 0.0)) {
            throw config_error{ "RBF kernel width must be positive" };
        }
        if (family == kernel_family::polynomial && (degree < 1 || degree > 5)) {
            throw config_error{ "polynomial degree must be in {1, ..., 5}" };
        }
    }

    friend bool operator==(const kernel_spec &, const kernel_spec &) = default;
};

namespace detail {

inline double int_pow(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

}  // namespace detail

template <typename DerivedX, typename DerivedZ>
[[nodiscard]] double kernel_eval(const kernel_spec &spec, const Eigen::MatrixBase<DerivedX> &x, const Eigen::MatrixBase<DerivedZ> &z) {
    if (x.size() != z.size()) {
        throw dimension_error{ static_cast<std::size_t>(x.size()), static_cast<std::size_t>(z.size()) };
    }
    // coefficient loops accept any mix of row and column vectors
    const Eigen::Index m = x.size();
    switch (spec.family) {
        case kernel_family::linear: {
            double dot = 0.0;
            for (Eigen::Index k = 0; k < m; ++k) {
                dot += x.coeff(k) * z.coeff(k);
            }
            return dot;
        }
        case kernel_family::rbf: {
            double sq = 0.0;
            for (Eigen::Index k = 0; k < m; ++k) {
                const double d = x.coeff(k) - z.coeff(k);
                sq += d * d;
            }
            return std::exp(-sq / (2.0 * spec.sigma * spec.sigma));
        }
        case kernel_family::polynomial: {
            double dot = 0.0;
            for (Eigen::Index k = 0; k < m; ++k) {
                dot += x.coeff(k) * z.coeff(k);
            }
            return detail::int_pow(1.0 + dot, spec.degree);
        }
    }
    return 0.0;
}

/// Dense Gram matrix over the rows of `X`. Each unordered pair is evaluated once, so the
/// result is exactly symmetric.
[[nodiscard]] inline Eigen::MatrixXd gram_matrix(const kernel_spec &spec, const Eigen::Ref<const Eigen::MatrixXd> &X) {
    const Eigen::Index n = X.rows();
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = kernel_eval(spec, X.row(i), X.row(j));
            K(i, j) = v;
            K(j, i) = v;
        }
    }
    return K;
}

/// Kernel values between every row of `A` and every row of `B`.
[[nodiscard]] inline Eigen::MatrixXd cross_kernel(const kernel_spec &spec, const Eigen::Ref<const Eigen::MatrixXd> &A, const Eigen::Ref<const Eigen::MatrixXd> &B) {
    if (A.cols() != B.cols()) {
        throw dimension_error{ static_cast<std::size_t>(B.cols()), static_cast<std::size_t>(A.cols()) };
    }
    Eigen::MatrixXd K(A.rows(), B.rows());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < B.rows(); ++j) {
            K(i, j) = kernel_eval(spec, A.row(i), B.row(j));
        }
    }
    return K;
}

}  // namespace imbalsvm

#endif  // IMBALSVM_KERNEL_HPP_
