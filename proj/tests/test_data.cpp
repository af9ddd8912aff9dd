#include "imbalsvm/data.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace imbalsvm;

namespace {

std::string balance_like() {
    std::ostringstream s;
    s << "@relation balance\n"
      << "@attribute Left-weight real [1.0, 5.0]\n"
      << "@attribute Left-distance real [1.0, 5.0]\n"
      << "@attribute Right-weight real [1.0, 5.0]\n"
      << "@attribute Right-distance real [1.0, 5.0]\n"
      << "@attribute Balance {L, B, R}\n"
      << "@inputs Left-weight, Left-distance, Right-weight, Right-distance\n"
      << "@outputs Balance\n"
      << "@data\n";
    const int counts[] = { 288, 49, 288 };
    const char *names[] = { "L", "B", "R" };
    int row = 0;
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < counts[c]; ++i, ++row) {
            s << 1 + row % 5 << ", " << 1 + (row / 5) % 5 << ", " << 1 + (row / 25) % 5 << ", " << 1 + (row / 125) % 5 << ", " << names[c] << "\n";
        }
    }
    return s.str();
}

raw_dataset parse(const std::string &text) {
    std::istringstream in{ text };
    return parse_keel(in);
}

std::size_t error_line(const std::string &text) {
    try {
        (void)parse(text);
    } catch (const parse_error &e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST(Keel, BalanceShape) {
    const raw_dataset raw = parse(balance_like());
    EXPECT_EQ(raw.name, "balance");
    EXPECT_EQ(raw.num_rows(), 625u);
    EXPECT_EQ(raw.num_inputs(), 4u);
    EXPECT_EQ(raw.num_classes(), 3u);
    EXPECT_EQ(raw.class_attribute, 4u);
    const dataset ds = preprocess(raw);
    EXPECT_EQ(ds.class_counts, (std::vector<std::size_t>{ 288, 49, 288 }));
    EXPECT_EQ(ds.class_names, (std::vector<std::string>{ "L", "B", "R" }));
    EXPECT_EQ(ds.num_features(), 4u);
    EXPECT_DOUBLE_EQ(ds.features.minCoeff(), 0.0);
    EXPECT_DOUBLE_EQ(ds.features.maxCoeff(), 1.0);
}

TEST(Keel, OutputsSelectsClassAttributeAndIntegerClass) {
    const std::string text =
        "% comment\n"
        "@RELATION t\n"
        "@attribute cls integer [1, 3]\n"
        "@attribute x real [0, 1]\n"
        "@Outputs cls\n"
        "@DATA\n"
        "1, 0.5\n3, 0.25\n";
    const raw_dataset raw = parse(text);
    EXPECT_EQ(raw.class_attribute, 0u);
    EXPECT_EQ(raw.num_classes(), 3u);
    const dataset ds = preprocess(raw);
    EXPECT_EQ(ds.labels, (std::vector<int>{ 0, 2 }));
    EXPECT_EQ(ds.class_counts, (std::vector<std::size_t>{ 1, 0, 1 }));
}

TEST(Keel, EmptyDataSection) {
    const raw_dataset raw = parse("@relation e\n@attribute x real\n@attribute c {a, b}\n@data\n");
    EXPECT_EQ(raw.num_rows(), 0u);
}

TEST(Keel, MissingMarker) {
    const std::string text = "@relation m\n@attribute a real\n@attribute b real\n@attribute n {A, B}\n@attribute c {yes, no}\n@data\n1.0,?,A,yes\n";
    const raw_dataset raw = parse(text);
    ASSERT_EQ(raw.num_rows(), 1u);
    EXPECT_FALSE(raw.rows[0][0].missing);
    EXPECT_TRUE(raw.rows[0][1].missing);
    EXPECT_FALSE(raw.rows[0][2].missing);
}

TEST(Keel, ErrorsCarryLineNumbers) {
    const std::string head = "@relation e\n@attribute x real\n@attribute c {a, b}\n@data\n";
    EXPECT_EQ(error_line(head + "1.0, a\n1.0\n"), 6u);           // arity
    EXPECT_EQ(error_line(head + "1.0, z\n"), 5u);                // unknown category
    EXPECT_EQ(error_line(head + "one, a\n"), 5u);                // non-numeric
    EXPECT_EQ(error_line("@relation e\n@attribute x\n"), 2u);    // malformed attribute
    EXPECT_EQ(error_line("@relation e\n@bogus\n"), 2u);          // unknown directive
    EXPECT_EQ(error_line("@relation e\n@attribute x real\n"), 2u);  // no @data
    EXPECT_NE(error_line("@relation e\n@attribute c {a, a}\n@attribute x real\n@data\n"), 0u);  // duplicate token
}

TEST(Csv, ParsesAgainstSchema) {
    const std::vector<attribute_spec> schema = {
        { "x", attribute_kind::numeric, {}, {} },
        { "colour", attribute_kind::nominal, { "r", "g", "b" }, {} },
        { "label", attribute_kind::class_label, { "p", "q" }, {} },
    };
    std::istringstream in{ "x,colour,label\n2,g,p\n4,b,q\n6,r,q\n" };
    const raw_dataset raw = parse_csv(in, schema);
    EXPECT_EQ(raw.attributes.size(), 3u);
    EXPECT_EQ(raw.num_rows(), 3u);
    const dataset ds = preprocess(raw);
    ASSERT_EQ(ds.num_features(), 4u);
    EXPECT_DOUBLE_EQ(ds.features(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(ds.features(1, 0), 0.5);
    EXPECT_DOUBLE_EQ(ds.features(2, 0), 1.0);
    // value g -> (0, 1, 0)
    EXPECT_DOUBLE_EQ(ds.features(0, 1), 0.0);
    EXPECT_DOUBLE_EQ(ds.features(0, 2), 1.0);
    EXPECT_DOUBLE_EQ(ds.features(0, 3), 0.0);
    for (Eigen::Index r = 0; r < 3; ++r) {
        EXPECT_DOUBLE_EQ(ds.features.row(r).segment(1, 3).sum(), 1.0);
    }
}

TEST(Csv, HeaderMismatchNamesColumn) {
    const std::vector<attribute_spec> schema = {
        { "x", attribute_kind::numeric, {}, {} },
        { "label", attribute_kind::class_label, { "p", "q" }, {} },
    };
    std::istringstream in{ "x,klass\n1,p\n" };
    try {
        (void)parse_csv(in, schema);
        FAIL();
    } catch (const parse_error &e) {
        EXPECT_NE(std::string{ e.what() }.find("klass"), std::string::npos);
        EXPECT_EQ(e.line(), 1u);
    }
    std::istringstream bad{ "x,label\n1,p\nabc,q\n" };
    EXPECT_THROW((void)parse_csv(bad, schema), parse_error);
}

TEST(Preprocess, ConstantColumnWarnsAndZeros) {
    const raw_dataset raw = parse("@relation k\n@attribute x real\n@attribute y real\n@attribute c {a, b}\n@data\n3, 1, a\n3, 2, b\n3, 5, a\n");
    const dataset ds = preprocess(raw);
    ASSERT_EQ(ds.warnings.size(), 1u);
    EXPECT_TRUE(ds.features.col(0).isZero());
    EXPECT_DOUBLE_EQ(ds.features(1, 1), 0.25);
}

TEST(Preprocess, DropsMissingRowsAndNeedsTwoClasses) {
    const raw_dataset raw = parse("@relation k\n@attribute x real\n@attribute c {a, b}\n@data\n1, a\n?, b\n2, a\n");
    EXPECT_THROW((void)preprocess(raw), data_error);
    const raw_dataset ok = parse("@relation k\n@attribute x real\n@attribute c {a, b}\n@data\n1, a\n?, b\n2, a\n3, b\n");
    const dataset ds = preprocess(ok);
    EXPECT_EQ(ds.num_samples(), 3u);
    EXPECT_EQ(ds.class_counts, (std::vector<std::size_t>{ 2, 1 }));
}

TEST(Preprocess, UnitColumnIsIdentity) {
    const raw_dataset raw = parse("@relation k\n@attribute x real\n@attribute c {a, b}\n@data\n0, a\n0.3, b\n1, a\n");
    const dataset ds = preprocess(raw);
    EXPECT_DOUBLE_EQ(ds.features(1, 0), 0.3);
}

TEST(Folds, DivisibleCounts) {
    std::vector<int> labels(15, 0);
    std::fill(labels.begin() + 10, labels.end(), 1);
    const dataset ds = make_dataset(Eigen::MatrixXd::Zero(15, 1), labels, 2);
    const auto fa = stratified_folds(ds, 5, 1);
    for (std::size_t f = 0; f < 5; ++f) {
        const auto test = fa.test_indices(f);
        ASSERT_EQ(test.size(), 3u);
        EXPECT_EQ(std::count_if(test.begin(), test.end(), [&](std::size_t i) { return labels[i] == 1; }), 1);
    }
}

TEST(Folds, StratifiedPartitionAndDeterminism) {
    std::mt19937_64 rng{ 2 };
    for (int t = 0; t < 20; ++t) {
        std::uniform_int_distribution<int> nc{ 2, 5 };
        const int M = nc(rng);
        std::vector<int> labels;
        std::vector<std::size_t> counts(M);
        for (int c = 0; c < M; ++c) {
            counts[c] = std::uniform_int_distribution<std::size_t>{ 1, 60 }(rng);
            labels.insert(labels.end(), counts[c], c);
        }
        std::shuffle(labels.begin(), labels.end(), rng);
        const dataset ds = make_dataset(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), 1), labels, M);
        const std::size_t k = 5;
        if (ds.num_samples() < k) {
            continue;
        }
        const auto fa = stratified_folds(ds, k, 77);
        EXPECT_EQ(fa.fold_of, stratified_folds(ds, k, 77).fold_of);
        std::vector<std::size_t> all;
        for (std::size_t f = 0; f < k; ++f) {
            const auto test = fa.test_indices(f);
            const auto train = fa.train_indices(f);
            EXPECT_EQ(test.size() + train.size(), ds.num_samples());
            all.insert(all.end(), test.begin(), test.end());
            for (int c = 0; c < M; ++c) {
                const auto cnt = static_cast<double>(std::count_if(test.begin(), test.end(), [&](std::size_t i) { return labels[i] == c; }));
                EXPECT_LT(std::abs(cnt - static_cast<double>(counts[c]) / k), 1.0);
            }
        }
        std::sort(all.begin(), all.end());
        std::vector<std::size_t> iota(ds.num_samples());
        std::iota(iota.begin(), iota.end(), std::size_t{ 0 });
        EXPECT_EQ(all, iota);
    }
}

TEST(Folds, BalanceMinorityPerFold) {
    const dataset ds = preprocess(parse(balance_like()));
    const auto fa = stratified_folds(ds, 5, 2024);
    for (std::size_t f = 0; f < 5; ++f) {
        const auto test = fa.test_indices(f);
        const auto n1 = std::count_if(test.begin(), test.end(), [&](std::size_t i) { return ds.labels[i] == 1; });
        EXPECT_TRUE(n1 == 9 || n1 == 10) << n1;
    }
}

TEST(Folds, Errors) {
    const dataset ds = make_dataset(Eigen::MatrixXd::Zero(3, 1), { 0, 1, 0 }, 2);
    EXPECT_THROW((void)stratified_folds(ds, 4, 0), data_error);
    EXPECT_THROW((void)stratified_folds(ds, 1, 0), config_error);
}

TEST(Subset, KeepsClassCountSize) {
    const dataset ds = make_dataset(Eigen::MatrixXd::Identity(4, 4), { 0, 1, 2, 0 }, 3);
    const dataset s = subset(ds, { 3, 1 });
    EXPECT_EQ(s.class_counts, (std::vector<std::size_t>{ 1, 1, 0 }));
    EXPECT_EQ(s.features(0, 3), 1.0);
}

TEST(Transform, ReproducesPreprocessing) {
    const raw_dataset raw = parse(balance_like());
    const dataset ds = preprocess(raw);
    const Eigen::MatrixXd X = transform_rows(raw, ds.provenance);
    EXPECT_TRUE(X == ds.features);
    raw_dataset missing = raw;
    missing.rows[3][1] = raw_value::missing_value();
    EXPECT_THROW((void)transform_rows(missing, ds.provenance), data_error);
}

TEST(PreprocessedCsv, RoundTripsExactly) {
    const raw_dataset raw = parse("@relation m\n@attribute a real\n@attribute n {A, B}\n@attribute c {yes, no, maybe}\n@data\n1.0,A,no\n0.3,B,yes\n2.7,A,no\n");
    const dataset ds = preprocess(raw);
    std::stringstream s;
    write_preprocessed_csv(s, ds);
    const dataset back = parse_preprocessed_csv(s);
    EXPECT_TRUE(back.features == ds.features);
    EXPECT_EQ(back.labels, ds.labels);
    EXPECT_EQ(back.class_names, ds.class_names);
    EXPECT_EQ(back.class_counts, (std::vector<std::size_t>{ 1, 2, 0 }));
    std::istringstream bad{ "f0,class\n1,a\nx,b\n" };
    try {
        (void)parse_preprocessed_csv(bad);
        FAIL();
    } catch (const parse_error &e) {
        EXPECT_EQ(e.line(), 3u);
    }
}
