#ifndef IMBALSVM_TESTS_QP_ORACLE_HPP_
#define IMBALSVM_TESTS_QP_ORACLE_HPP_
#pragma once

// Exact reference solver for tiny box-and-equality constrained dual problems.
//
// Every assignment of each variable to {lower bound, upper bound, free} is enumerated. On each
// face the stationarity system of the free variables (plus the equality multiplier) is solved by a
// complete orthogonal decomposition; feasible stationary points are kept and the best objective
// wins. Vertices of the optimal set are unique solutions of their face system, so the global
// maximum is always among the candidates.

#include "Eigen/Dense"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace imbalsvm::test {

struct qp_instance {
    Eigen::MatrixXd K;        // kernel Gram matrix
    Eigen::VectorXd y;        // +1 / -1
    Eigen::VectorXd target;   // per-sample linear coefficient (margin target)
    Eigen::VectorXd upper;    // per-sample box bound
};

struct qp_solution {
    Eigen::VectorXd alpha;
    double objective{ -std::numeric_limits<double>::infinity() };
    bool found{ false };
};

inline double qp_objective(const qp_instance &q, const Eigen::VectorXd &a) {
    const Eigen::VectorXd ya = q.y.cwiseProduct(a);
    return q.target.dot(a) - 0.5 * ya.dot(q.K * ya);
}

inline qp_solution solve_by_enumeration(const qp_instance &q) {
    const auto n = static_cast<std::size_t>(q.y.size());
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= 3;
    }
    const double scale = std::max(1.0, q.upper.maxCoeff());
    qp_solution best;
    std::vector<int> state(n);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        std::vector<std::size_t> free_idx;
        Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            state[i] = static_cast<int>(c % 3);
            c /= 3;
            if (state[i] == 1) {
                a(static_cast<Eigen::Index>(i)) = q.upper(static_cast<Eigen::Index>(i));
            } else if (state[i] == 2) {
                free_idx.push_back(i);
            }
        }
        const auto f = static_cast<Eigen::Index>(free_idx.size());
        if (f == 0) {
            if (std::abs(q.y.dot(a)) > 1e-12 * scale) {
                continue;
            }
        } else {
            // [Q_FF  y_F] [a_F]   [t_F - Q_FB a_B]
            // [y_F^T  0 ] [nu ] = [   -y_B^T a_B  ]
            Eigen::MatrixXd A = Eigen::MatrixXd::Zero(f + 1, f + 1);
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(f + 1);
            for (Eigen::Index r = 0; r < f; ++r) {
                const auto ir = static_cast<Eigen::Index>(free_idx[static_cast<std::size_t>(r)]);
                for (Eigen::Index s = 0; s < f; ++s) {
                    const auto is = static_cast<Eigen::Index>(free_idx[static_cast<std::size_t>(s)]);
                    A(r, s) = q.y(ir) * q.y(is) * q.K(ir, is);
                }
                A(r, f) = q.y(ir);
                A(f, r) = q.y(ir);
                double fixed = 0.0;
                for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(n); ++j) {
                    fixed += q.y(ir) * q.y(j) * q.K(ir, j) * a(j);
                }
                rhs(r) = q.target(ir) - fixed;
            }
            rhs(f) = -q.y.dot(a);
            const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
            const Eigen::VectorXd sol = cod.solve(rhs);
            if ((A * sol - rhs).norm() > 1e-9 * std::max(1.0, rhs.norm())) {
                continue;
            }
            bool feasible = true;
            for (Eigen::Index r = 0; r < f; ++r) {
                const auto ir = static_cast<Eigen::Index>(free_idx[static_cast<std::size_t>(r)]);
                const double v = sol(r);
                if (v < -1e-12 * scale || v > q.upper(ir) + 1e-12 * scale) {
                    feasible = false;
                    break;
                }
                a(ir) = std::clamp(v, 0.0, q.upper(ir));
            }
            if (!feasible) {
                continue;
            }
        }
        const double obj = qp_objective(q, a);
        if (obj > best.objective) {
            best.objective = obj;
            best.alpha = a;
            best.found = true;
        }
    }
    return best;
}

}  // namespace imbalsvm::test

#endif  // IMBALSVM_TESTS_QP_ORACLE_HPP_
