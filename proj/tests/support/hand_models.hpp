#ifndef IMBALSVM_TESTS_HAND_MODELS_HPP_
#define IMBALSVM_TESTS_HAND_MODELS_HPP_
#pragma once

#include "imbalsvm/ovo.hpp"

namespace imbalsvm::test {

/// Linear classifier on 1-D inputs with f(x) = slope * x + bias (one support vector at x = 1).
inline binary_classifier affine_classifier(int pos, int neg, double slope, double bias, std::size_t n_train = 10, std::size_t nsv = 1) {
    binary_classifier c;
    c.class_pair = { pos, neg };
    c.kernel = kernel_spec::linear();
    c.bias = bias;
    c.num_features = 1;
    c.n_train = n_train;
    c.support_vectors = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nsv), 1);
    c.support_vectors(0, 0) = 1.0;
    c.support_labels.assign(nsv, 1);
    c.support_alphas.assign(nsv, 0.0);
    c.support_alphas[0] = slope;
    return c;
}

}  // namespace imbalsvm::test

#endif  // IMBALSVM_TESTS_HAND_MODELS_HPP_
