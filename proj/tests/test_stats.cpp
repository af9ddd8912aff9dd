#include "imbalsvm/fixtures.hpp"
#include "imbalsvm/stat_tests.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

using namespace imbalsvm;

namespace {

// rank = 1 + #smaller + #equal-others / 2
std::vector<double> counting_ranks(const std::vector<double> &v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double less = 0.0;
        double eq = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (j == i) {
                continue;
            }
            less += v[j] < v[i] ? 1.0 : 0.0;
            eq += v[j] == v[i] ? 1.0 : 0.0;
        }
        r[i] = 1.0 + less + 0.5 * eq;
    }
    return r;
}

double reference_far(const Eigen::MatrixXd &s) {
    const auto n = static_cast<std::size_t>(s.rows());
    const auto k = static_cast<std::size_t>(s.cols());
    std::vector<double> flat;
    for (std::size_t i = 0; i < n; ++i) {
        double mean = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            mean += s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        mean /= static_cast<double>(k);
        for (std::size_t j = 0; j < k; ++j) {
            flat.push_back(s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - mean);
        }
    }
    const auto r = counting_ranks(flat);
    std::vector<double> col(k, 0.0);
    std::vector<double> row(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            col[j] += r[i * k + j];
            row[i] += r[i * k + j];
        }
    }
    const double kn = static_cast<double>(k * n);
    double sc = 0.0;
    double sr = 0.0;
    for (const double c : col) {
        sc += c * c;
    }
    for (const double x : row) {
        sr += x * x;
    }
    const double dk = static_cast<double>(k);
    const double dn = static_cast<double>(n);
    return (dk - 1.0) * (sc - (dk * dn * dn / 4.0) * (kn + 1.0) * (kn + 1.0)) / (kn * (kn + 1.0) * (2.0 * kn + 1.0) / 6.0 - sr / dk);
}

// 2^n enumeration of sign assignments
double reference_signed_rank_cdf(int n, double t) {
    std::size_t hits = 0;
    const std::size_t total = std::size_t{ 1 } << n;
    for (std::size_t mask = 0; mask < total; ++mask) {
        int sum = 0;
        for (int b = 0; b < n; ++b) {
            if (mask & (std::size_t{ 1 } << b)) {
                sum += b + 1;
            }
        }
        hits += sum <= t ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

results_table random_table(std::mt19937_64 &rng, int n, int k) {
    std::uniform_int_distribution<int> d{ 0, 20 };
    results_table rt;
    for (int j = 0; j < k; ++j) {
        rt.algorithms.push_back("a" + std::to_string(j));
    }
    for (int i = 0; i < n; ++i) {
        rt.datasets.push_back("d" + std::to_string(i));
    }
    rt.score.resize(n, k);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) {
            rt.score(i, j) = d(rng) * 0.5;
        }
    }
    return rt;
}

}  // namespace

TEST(Ranks, AverageRanksMatchCountingDefinition) {
    std::mt19937_64 rng{ 3 };
    std::uniform_int_distribution<int> d{ 0, 6 };
    for (int t = 0; t < 50; ++t) {
        std::vector<double> v(17);
        for (auto &x : v) {
            x = d(rng);
        }
        const auto a = average_ranks(v);
        const auto b = counting_ranks(v);
        for (std::size_t i = 0; i < v.size(); ++i) {
            EXPECT_DOUBLE_EQ(a[i], b[i]);
        }
    }
}

TEST(Friedman, GrandSumAndShiftInvariance) {
    std::mt19937_64 rng{ 5 };
    for (int t = 0; t < 20; ++t) {
        auto rt = random_table(rng, 6, 4);
        const auto res = friedman_aligned(rt);
        const double kn = 24.0;
        EXPECT_DOUBLE_EQ(res.ranks.rank.sum(), kn * (kn + 1.0) / 2.0);
        EXPECT_NEAR(res.statistic, reference_far(rt.score), 1e-9);
        rt.score.row(2).array() += 37.0;
        EXPECT_NEAR(friedman_aligned(rt).statistic, res.statistic, 1e-9);
    }
}

TEST(Friedman, FixtureValues) {
    const std::pair<const char *, double> expected[] = { { "gmean", 44.37740 }, { "avf", 45.63536 }, { "cba", 51.51837 } };
    for (const auto &[name, value] : expected) {
        const auto rt = fixtures::load(name);
        ASSERT_EQ(rt.datasets.size(), 15u);
        ASSERT_EQ(rt.algorithms.size(), 9u);
        const auto res = friedman_aligned(rt);
        EXPECT_NEAR(res.statistic, value, 1e-3) << name;
        EXPECT_NEAR(res.statistic, reference_far(rt.score), 1e-9) << name;
        EXPECT_EQ(res.df, 8u);
        EXPECT_NEAR(res.critical_value, 15.50731, 1e-5);
        EXPECT_TRUE(res.reject);
        EXPECT_LT(res.p_value, 1e-5);
    }
}

TEST(Friedman, NoVariationIsFlagged) {
    results_table rt;
    rt.algorithms = { "a", "b", "c" };
    rt.datasets = { "x", "y" };
    rt.score = Eigen::MatrixXd::Constant(2, 3, 5.0);
    const auto res = friedman_aligned(rt);
    EXPECT_TRUE(res.no_variation);
    EXPECT_FALSE(res.reject);
    EXPECT_EQ(res.p_value, 1.0);
}

TEST(Distributions, ChiSquareAndNormal) {
    // df = 2: survival is exp(-x / 2)
    EXPECT_NEAR(chi_square_sf(3.0, 2.0), std::exp(-1.5), 1e-14);
    EXPECT_NEAR(chi_square_critical(0.05, 8.0), 15.507313055865453, 1e-9);
    EXPECT_NEAR(normal_two_sided_p(1.959963984540054), 0.05, 1e-12);
    EXPECT_DOUBLE_EQ(normal_two_sided_p(0.0), 1.0);
}

TEST(Holm, StepDown) {
    const auto out = holm({ { "a", 0.07 }, { "b", 0.001 }, { "c", 0.02 }, { "d", 0.012 } });
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(out[0].algorithm, "b");
    EXPECT_DOUBLE_EQ(out[0].threshold, 0.0125);
    EXPECT_TRUE(out[0].rejected);
    EXPECT_EQ(out[1].algorithm, "d");
    EXPECT_TRUE(out[1].rejected);  // 0.012 < 0.05/3
    EXPECT_EQ(out[2].algorithm, "c");
    EXPECT_TRUE(out[2].rejected);  // 0.02 < 0.025
    EXPECT_FALSE(out[3].rejected); // 0.07 >= 0.05
}

TEST(Holm, RejectionIsMonotone) {
    std::mt19937_64 rng{ 9 };
    std::uniform_real_distribution<double> u{ 0.0, 0.06 };
    for (int t = 0; t < 200; ++t) {
        std::vector<std::pair<std::string, double>> ps;
        for (int j = 0; j < 6; ++j) {
            ps.emplace_back(std::to_string(j), u(rng));
        }
        const auto out = holm(ps);
        for (std::size_t i = 1; i < out.size(); ++i) {
            EXPECT_LE(out[i - 1].p_value, out[i].p_value);
            if (out[i].rejected) {
                EXPECT_TRUE(out[i - 1].rejected);
            }
        }
    }
}

TEST(Holm, EqualMeanRankGivesPOne) {
    results_table rt;
    rt.algorithms = { "a", "b", "c" };
    rt.datasets = { "x", "y", "z" };
    rt.score.resize(3, 3);
    rt.score << 1, 1, 3, 2, 2, 0, 5, 5, 9;
    const auto ar = compute_aligned_ranks(rt);
    const auto ps = holm_pvalues_from_ranks(ar, rt.algorithms, 0);
    EXPECT_EQ(ps[0].first, "b");
    EXPECT_DOUBLE_EQ(ps[0].second, 1.0);
}

TEST(Holm, CbaFixturePattern) {
    const auto rt = fixtures::load("cba");
    const auto ar = compute_aligned_ranks(rt);
    const auto out = holm(holm_pvalues_from_ranks(ar, rt.algorithms, rt.algorithm_index("i-SVM-DE-AVE")));
    std::set<std::string> rejected;
    std::set<std::string> retained;
    for (const auto &e : out) {
        (e.rejected ? rejected : retained).insert(e.algorithm);
    }
    EXPECT_EQ(rejected, (std::set<std::string>{ "NBSVM", "WK-SMOTE", "PPSVM", "Cost-SVM", "SDC" }));
    EXPECT_EQ(retained, (std::set<std::string>{ "SVM", "Static-SMOTE", "i-SVM-DE-MAX" }));
}

TEST(Holm, LargerRankGapGivesSmallerP) {
    const auto rt = fixtures::load("avf");
    const auto ar = compute_aligned_ranks(rt);
    const std::size_t c = rt.algorithm_index("i-SVM-DE-AVE");
    const auto ps = holm_pvalues_from_ranks(ar, rt.algorithms, c);
    std::size_t q = 0;
    for (std::size_t j = 0; j < rt.algorithms.size(); ++j) {
        if (j == c) {
            continue;
        }
        std::size_t r = 0;
        for (std::size_t l = 0; l < rt.algorithms.size(); ++l) {
            if (l == c) {
                continue;
            }
            if (std::abs(ar.mean_rank(c) - ar.mean_rank(l)) > std::abs(ar.mean_rank(c) - ar.mean_rank(j))) {
                EXPECT_LT(ps[r].second, ps[q].second);
            }
            ++r;
        }
        ++q;
    }
}

TEST(Wilcoxon, ExactDistributionMatchesEnumeration) {
    for (int n = 1; n <= 14; ++n) {
        for (int t = -1; t <= n * (n + 1) / 2; t += 3) {
            EXPECT_NEAR(signed_rank_cdf(static_cast<std::size_t>(n), t), reference_signed_rank_cdf(n, t), 1e-14);
        }
    }
}

TEST(Wilcoxon, IdenticalColumns) {
    Eigen::VectorXd a(6);
    a << 1, 2, 3, 4, 5, 6;
    for (const auto z : { zero_handling::discard, zero_handling::split }) {
        const auto r = wilcoxon(a, a, z);
        EXPECT_TRUE(r.all_zero);
        EXPECT_EQ(r.r_plus, r.r_minus);
        EXPECT_EQ(r.p_value, 1.0);
        EXPECT_FALSE(r.reject);
    }
}

TEST(Wilcoxon, StrictlyDominatingColumn) {
    Eigen::VectorXd a(15);
    Eigen::VectorXd b(15);
    for (int i = 0; i < 15; ++i) {
        a(i) = 10.0 + (i + 1) * 1.5;
        b(i) = 10.0;
    }
    const auto r = wilcoxon(a, b);
    EXPECT_EQ(r.r_plus, 120.0);
    EXPECT_EQ(r.r_minus, 0.0);
    EXPECT_NEAR(r.p_value, 2.0 / 32768.0, 1e-15);
    EXPECT_TRUE(r.reject);
}

TEST(Wilcoxon, RankSumsAndSignInvariance) {
    std::mt19937_64 rng{ 21 };
    std::normal_distribution<double> nd{ 0.0, 1.0 };
    for (int t = 0; t < 50; ++t) {
        Eigen::VectorXd a(12);
        Eigen::VectorXd b(12);
        for (int i = 0; i < 12; ++i) {
            a(i) = nd(rng);
            b(i) = nd(rng);
        }
        const auto r = wilcoxon(a, b);
        EXPECT_DOUBLE_EQ(r.r_plus + r.r_minus, 78.0);
        // cube preserves sign and order of |d| only through the differences, so transform d directly
        Eigen::VectorXd d = a - b;
        Eigen::VectorXd d3 = d.array().cube();
        const auto r3 = wilcoxon(d3, Eigen::VectorXd::Zero(12));
        EXPECT_DOUBLE_EQ(r3.r_plus, r.r_plus);
        const auto swapped = wilcoxon(b, a);
        EXPECT_DOUBLE_EQ(swapped.r_plus, r.r_minus);
        EXPECT_DOUBLE_EQ(swapped.p_value, r.p_value);
    }
}

TEST(Wilcoxon, ZeroHandling) {
    Eigen::VectorXd a(5);
    Eigen::VectorXd b(5);
    a << 1, 2, 3, 4, 5;
    b << 1, 1, 1, 5, 5;
    // d = 0, 1, 2, -1, 0
    const auto discard = wilcoxon(a, b, zero_handling::discard);
    EXPECT_EQ(discard.n, 3u);
    EXPECT_DOUBLE_EQ(discard.r_plus, 1.5 + 3.0);
    EXPECT_DOUBLE_EQ(discard.r_minus, 1.5);
    const auto split = wilcoxon(a, b, zero_handling::split);
    EXPECT_EQ(split.n, 5u);
    // |d| ranks: zeros 1.5 each, ones 3.5 each, two 5
    EXPECT_DOUBLE_EQ(split.r_plus, 1.5 + 3.5 + 5.0);
    EXPECT_DOUBLE_EQ(split.r_minus, 1.5 + 3.5);
}

TEST(Wilcoxon, NormalApproximationAboveExactLimit) {
    std::mt19937_64 rng{ 4 };
    std::normal_distribution<double> nd{ 0.3, 1.0 };
    Eigen::VectorXd a(30);
    for (int i = 0; i < 30; ++i) {
        a(i) = nd(rng);
    }
    const auto r = wilcoxon(a, Eigen::VectorXd::Zero(30));
    EXPECT_FALSE(r.exact);
    const double mean = 30.0 * 31.0 / 4.0;
    const double sd = std::sqrt(30.0 * 31.0 * 61.0 / 24.0);
    const double z = (std::abs(r.r_plus - mean) - 0.5) / sd;
    EXPECT_NEAR(r.p_value, std::erfc(z / std::sqrt(2.0)), 1e-12);
}

TEST(Wilcoxon, FixturePairs) {
    const auto t3 = fixtures::load("gmean");
    const auto r3 = wilcoxon(t3.column("i-SVM-DE-MAX"), t3.column("i-SVM-DE-AVE"));
    EXPECT_DOUBLE_EQ(r3.r_plus, 70.5);
    EXPECT_DOUBLE_EQ(r3.r_minus, 49.5);
    EXPECT_NEAR(r3.p_value, 0.59949, 1e-5);
    EXPECT_FALSE(r3.reject);
    const auto t4 = fixtures::load("avf");
    const auto r4 = wilcoxon(t4.column("i-SVM-DE-MAX"), t4.column("i-SVM-DE-AVE"));
    EXPECT_DOUBLE_EQ(r4.r_plus, 45.0);
    EXPECT_DOUBLE_EQ(r4.r_minus, 60.0);
    const auto t5 = fixtures::load("cba");
    const auto r5 = wilcoxon(t5.column("i-SVM-DE-MAX"), t5.column("i-SVM-DE-AVE"));
    EXPECT_DOUBLE_EQ(r5.r_plus, 47.0);
    EXPECT_DOUBLE_EQ(r5.r_minus, 58.0);
}

TEST(ResultsCsv, ParsesAndValidates) {
    std::istringstream in{ "dataset,algorithm,metric,value\nd1,A,g,1\nd1,B,g,2\nd2,A,g,3\nd2,B,g,4.5\n" };
    const auto tables = parse_results_csv(in);
    const auto &rt = tables.at("g");
    EXPECT_EQ(rt.algorithms, (std::vector<std::string>{ "A", "B" }));
    EXPECT_EQ(rt.score(1, 1), 4.5);
    EXPECT_THROW((void)rt.algorithm_index("C"), data_error);

    std::istringstream missing{ "d1,A,g,1\nd1,B,g,2\nd2,A,g,3\n" };
    EXPECT_THROW((void)parse_results_csv(missing), data_error);
    std::istringstream bad{ "d1,A,g,x\n" };
    EXPECT_THROW((void)parse_results_csv(bad), parse_error);
    EXPECT_THROW((void)fixtures::load("g-mean"), config_error);
}
