#include "imbalsvm/kernel.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace imbalsvm;

TEST(Kernel, PointValues) {
    Eigen::Vector2d x{ 1.0, 0.0 };
    EXPECT_DOUBLE_EQ(kernel_eval(kernel_spec::linear(), x, x), 1.0);
    for (const double s : { 0.01, 1.0, 100.0 }) {
        EXPECT_DOUBLE_EQ(kernel_eval(kernel_spec::rbf(s), x, x), 1.0);
    }
    Eigen::Vector2d o{ 1.0, 1.0 };
    EXPECT_DOUBLE_EQ(kernel_eval(kernel_spec::polynomial(2), o, o), 9.0);
    EXPECT_DOUBLE_EQ(kernel_eval(kernel_spec::polynomial(5), o, o), 243.0);
}

TEST(Kernel, RowAndColumnVectorsMix) {
    Eigen::MatrixXd X(1, 3);
    X << 1.0, 2.0, 3.0;
    Eigen::Vector3d z{ 0.5, -1.0, 2.0 };
    EXPECT_DOUBLE_EQ(kernel_eval(kernel_spec::linear(), X.row(0), z), 4.5);
}

TEST(Kernel, DimensionMismatch) {
    Eigen::Vector2d x{ 1.0, 0.0 };
    Eigen::Vector3d z{ 1.0, 0.0, 0.0 };
    EXPECT_THROW((void)kernel_eval(kernel_spec::rbf(1.0), x, z), dimension_error);
    Eigen::MatrixXd A(2, 2);
    Eigen::MatrixXd B(2, 3);
    EXPECT_THROW((void)cross_kernel(kernel_spec::linear(), A, B), dimension_error);
}

TEST(Kernel, Validation) {
    EXPECT_THROW(kernel_spec::rbf(0.0).validate(), config_error);
    EXPECT_THROW(kernel_spec::rbf(-1.0).validate(), config_error);
    EXPECT_THROW(kernel_spec::polynomial(0).validate(), config_error);
    EXPECT_THROW(kernel_spec::polynomial(6).validate(), config_error);
    EXPECT_NO_THROW(kernel_spec::polynomial(5).validate());
    EXPECT_NO_THROW(kernel_spec::linear().validate());
}

TEST(Gram, RbfOnLine) {
    Eigen::MatrixXd X(3, 1);
    X << 0.0, 1.0, 3.0;
    const Eigen::MatrixXd K = gram_matrix(kernel_spec::rbf(1.0), X);
    EXPECT_DOUBLE_EQ(K(0, 0), 1.0);
    EXPECT_NEAR(K(0, 1), std::exp(-0.5), 1e-15);
    EXPECT_NEAR(K(0, 2), std::exp(-4.5), 1e-15);
    EXPECT_NEAR(K(1, 2), std::exp(-2.0), 1e-15);
}

TEST(Gram, LinearEqualsOuterProduct) {
    std::mt19937_64 rng{ 1 };
    std::normal_distribution<double> nd;
    Eigen::MatrixXd X(5, 3);
    for (Eigen::Index i = 0; i < X.size(); ++i) {
        X.data()[i] = nd(rng);
    }
    EXPECT_TRUE(gram_matrix(kernel_spec::linear(), X).isApprox(X * X.transpose(), 1e-14));
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(4, 4);
    EXPECT_EQ(gram_matrix(kernel_spec::linear(), I), I);
}

TEST(Gram, SymmetryRangeAndPsd) {
    std::mt19937_64 rng{ 8 };
    std::uniform_real_distribution<double> u{ -2.0, 2.0 };
    for (int t = 0; t < 50; ++t) {
        Eigen::MatrixXd X(7, 4);
        for (Eigen::Index i = 0; i < X.size(); ++i) {
            X.data()[i] = u(rng);
        }
        for (const auto &spec : { kernel_spec::linear(), kernel_spec::rbf(0.7), kernel_spec::polynomial(3) }) {
            const Eigen::MatrixXd K = gram_matrix(spec, X);
            for (Eigen::Index i = 0; i < 7; ++i) {
                for (Eigen::Index j = 0; j < 7; ++j) {
                    EXPECT_EQ(K(i, j), K(j, i));
                    EXPECT_EQ(K(i, j), kernel_eval(spec, X.row(i), X.row(j)));
                    if (spec.family == kernel_family::rbf) {
                        EXPECT_GT(K(i, j), 0.0);
                        EXPECT_LE(K(i, j), 1.0);
                    }
                }
            }
            if (spec.family == kernel_family::linear) {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
                EXPECT_GE(es.eigenvalues().minCoeff(), -1e-8);
            }
        }
        const Eigen::MatrixXd C = cross_kernel(kernel_spec::rbf(0.7), X, X);
        EXPECT_TRUE(C.isApprox(gram_matrix(kernel_spec::rbf(0.7), X), 0.0));
    }
}
