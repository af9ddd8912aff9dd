#include "imbalsvm/data.hpp"
#include "imbalsvm/errors.hpp"
#include "imbalsvm/experiment.hpp"
#include "imbalsvm/fixtures.hpp"
#include "imbalsvm/model_io.hpp"
#include "imbalsvm/stat_tests.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace imbalsvm;

namespace {

enum exit_code : int { ok = 0,
                       usage = 2,
                       data = 3,
                       numerical = 4 };

struct loaded_input {
    dataset ds;
    std::optional<raw_dataset> raw;
    std::string name;
};

std::ifstream open_in(const std::string &path) {
    std::ifstream in{ path };
    if (!in) {
        throw data_error{ "cannot open '" + path + "'" };
    }
    return in;
}

std::ofstream open_out(const fs::path &path) {
    std::ofstream out{ path };
    if (!out) {
        throw data_error{ "cannot write '" + path.string() + "'" };
    }
    return out;
}

bool is_csv(const std::string &path) { return fs::path{ path }.extension() == ".csv"; }

// KEEL/ARFF-style files are preprocessed here; .csv files are taken as already preprocessed.
loaded_input load_input(const std::string &path) {
    std::ifstream in = open_in(path);
    loaded_input li;
    li.name = fs::path{ path }.stem().string();
    try {
        if (is_csv(path)) {
            li.ds = parse_preprocessed_csv(in);
        } else {
            li.raw = parse_keel(in);
            li.ds = preprocess(*li.raw);
        }
    } catch (const parse_error &e) {
        throw parse_error{ path + ": " + e.what() };
    } catch (const data_error &e) {
        throw data_error{ path + ": " + e.what() };
    }
    for (const std::string &w : li.ds.warnings) {
        std::cerr << "warning: " << path << ": " << w << '\n';
    }
    return li;
}

struct experiment_options {
    std::string config_file;
    std::vector<std::string> datasets;
    std::vector<std::string> settings;
    std::optional<std::string> method_name;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> np;
    std::optional<std::size_t> g_max;
    std::optional<std::size_t> threads;
    std::optional<std::string> sigmoid;
    std::optional<std::string> output;
    bool timing{ false };
    bool parallel_folds{ false };

    void attach(CLI::App *cmd, bool with_output_dir) {
        cmd->add_option("--config", config_file, "flat key = value config file")->check(CLI::ExistingFile);
        cmd->add_option("-d,--dataset", datasets, "dataset file (KEEL .dat or preprocessed .csv)");
        cmd->add_option("-m,--method", method_name, "isvm-de-ave | isvm-de-max | classical-svm-grid | cost-svm-grid");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--np", np, "DE population size");
        cmd->add_option("--g-max", g_max, "DE generations");
        cmd->add_option("--threads", threads, "fitness evaluation threads");
        cmd->add_option("--sigmoid", sigmoid, "platt | negated")->check(CLI::IsMember({ "platt", "negated" }));
        cmd->add_option("--set", settings, "extra key=value setting (repeatable)");
        if (with_output_dir) {
            cmd->add_option("-o,--output", output, "output directory");
            cmd->add_flag("--timing", timing, "record wall-clock seconds in the results");
            cmd->add_flag("--parallel-folds", parallel_folds, "run folds concurrently");
        }
    }

    // defaults < config file < IMBALSVM_SEED < command-line flags
    [[nodiscard]] experiment_config build() const {
        experiment_config cfg;
        if (!config_file.empty()) {
            std::ifstream in = open_in(config_file);
            read_config(in, cfg);
        }
        apply_environment(cfg);
        for (const std::string &s : settings) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) {
                throw config_error{ "--set expects key=value, got '" + s + "'" };
            }
            apply_setting(cfg, std::string{ detail::trim(s.substr(0, eq)) }, std::string{ detail::trim(s.substr(eq + 1)) });
        }
        if (!datasets.empty()) {
            cfg.datasets = datasets;
        }
        if (method_name) {
            cfg.algorithm = parse_method(*method_name);
        }
        if (seed) {
            cfg.de.seed = *seed;
        }
        if (np) {
            cfg.de.np = *np;
        }
        if (g_max) {
            cfg.de.g_max = *g_max;
        }
        if (threads) {
            cfg.de.threads = *threads;
        }
        if (sigmoid) {
            apply_setting(cfg, "sigmoid", *sigmoid);
        }
        if (output) {
            cfg.output_dir = *output;
        }
        cfg.timing = cfg.timing || timing;
        cfg.parallel_folds = cfg.parallel_folds || parallel_folds;
        for (const std::string &p : cfg.datasets) {
            if (!fs::exists(p)) {
                throw data_error{ "dataset '" + p + "' does not exist" };
            }
        }
        cfg.validate();
        return cfg;
    }
};

int cmd_preprocess(const std::string &input, const std::string &output) {
    const loaded_input li = load_input(input);
    std::cerr << li.name << ": " << li.ds.num_samples() << " rows, " << li.ds.num_features() << " features, classes";
    for (std::size_t c = 0; c < li.ds.num_classes(); ++c) {
        std::cerr << ' ' << li.ds.class_names[c] << '=' << li.ds.class_counts[c];
    }
    std::cerr << '\n';
    if (output.empty() || output == "-") {
        write_preprocessed_csv(std::cout, li.ds);
    } else {
        std::ofstream out = open_out(output);
        write_preprocessed_csv(out, li.ds);
    }
    return ok;
}

int cmd_cv(const experiment_options &opts) {
    const experiment_config cfg = opts.build();
    if (cfg.datasets.empty()) {
        throw config_error{ "cv needs at least one dataset" };
    }
    const fs::path dir{ cfg.output_dir };
    fs::create_directories(dir / "models");
    {
        std::ofstream echo = open_out(dir / "config.txt");
        echo_config(echo, cfg);
    }
    std::ofstream results = open_out(dir / "results.csv");
    std::ofstream confusion = open_out(dir / "confusion.csv");
    write_results_header(results);
    for (const std::string &path : cfg.datasets) {
        const loaded_input li = load_input(path);
        const cv_result r = cross_validate(li.ds, li.name, cfg);
        write_results_rows(results, r, cfg.timing);
        write_confusion_report(confusion, r, li.ds.class_names);
        for (const fold_result &f : r.folds) {
            model_bundle b{ f.model, li.ds.provenance, li.raw ? li.raw->attributes.size() : 0, li.raw ? li.raw->class_attribute : 0 };
            std::ofstream m = open_out(dir / "models" / (li.name + "." + to_string(cfg.algorithm) + ".fold" + std::to_string(f.fold) + ".json"));
            save_model(m, b);
        }
        std::cout << std::fixed << std::setprecision(4) << li.name << ' ' << to_string(cfg.algorithm) << " gmean=" << r.mean_gmean() << " avf=" << r.mean_avf() << " cba=" << r.mean_cba() << '\n';
    }
    return ok;
}

int cmd_train(const experiment_options &opts, const std::string &model_path) {
    const experiment_config cfg = opts.build();
    if (cfg.datasets.size() != 1) {
        throw config_error{ "train needs exactly one dataset" };
    }
    const loaded_input li = load_input(cfg.datasets.front());
    const fitted_model fm = fit_method(li.ds, cfg, cfg.de.seed);
    const model_bundle b{ fm.model, li.ds.provenance, li.raw ? li.raw->attributes.size() : 0, li.raw ? li.raw->class_attribute : 0 };
    if (model_path.empty() || model_path == "-") {
        save_model(std::cout, b);
    } else {
        std::ofstream out = open_out(model_path);
        save_model(out, b);
    }
    std::size_t nsv = 0;
    for (const auto &c : fm.model.classifiers) {
        nsv += c ? c->nsv() : 0;
    }
    std::cerr << li.name << ": trained " << to_string(cfg.algorithm) << ", " << nsv << " support vectors, selection score " << fm.selection_score << '\n';
    return ok;
}

int cmd_predict(const std::string &model_path, const std::string &input, const std::string &output) {
    std::ifstream min = open_in(model_path);
    const model_bundle b = load_model(min);
    std::ifstream in = open_in(input);
    Eigen::MatrixXd X;
    std::vector<std::optional<std::string>> truth;
    try {
        if (is_csv(input)) {
            const dataset ds = parse_preprocessed_csv(in);
            X = ds.features;
            for (const int l : ds.labels) {
                truth.emplace_back(ds.class_names[static_cast<std::size_t>(l)]);
            }
        } else {
            const raw_dataset raw = parse_keel(in);
            if (b.raw_attributes != 0 && raw.attributes.size() != b.raw_attributes) {
                throw dimension_error{ b.raw_attributes, raw.attributes.size() };
            }
            X = b.raw_attributes != 0 ? transform_rows(raw, b.provenance) : transform_rows(raw, preprocess(raw).provenance);
            const attribute_spec &cls = raw.attributes.at(raw.class_attribute);
            for (const auto &row : raw.rows) {
                const raw_value &v = row[raw.class_attribute];
                truth.push_back(v.missing ? std::nullopt : std::optional<std::string>{ cls.domain.at(static_cast<std::size_t>(v.value)) });
            }
        }
    } catch (const parse_error &e) {
        throw parse_error{ input + ": " + e.what() };
    }
    if (static_cast<std::size_t>(X.cols()) != b.model.num_features) {
        throw dimension_error{ b.model.num_features, static_cast<std::size_t>(X.cols()) };
    }
    std::ofstream file;
    if (!output.empty() && output != "-") {
        file = open_out(output);
    }
    std::ostream &out = file.is_open() ? static_cast<std::ostream &>(file) : std::cout;
    out << "row,predicted";
    for (const std::string &c : b.model.class_names) {
        out << ",votes_" << c;
    }
    out << '\n';
    std::size_t labelled = 0;
    std::size_t errors = 0;
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
        const std::vector<std::size_t> v = votes(b.model, X.row(r));
        const std::string &pred = b.model.class_names[static_cast<std::size_t>(winner(v, b.model.class_counts))];
        out << r << ',' << pred;
        for (const std::size_t c : v) {
            out << ',' << c;
        }
        out << '\n';
        if (truth[static_cast<std::size_t>(r)]) {
            ++labelled;
            errors += *truth[static_cast<std::size_t>(r)] != pred;
        }
    }
    if (labelled > 0) {
        std::cerr << errors << " errors on " << labelled << " labelled rows\n";
    }
    return ok;
}

std::map<std::string, results_table> load_tables(const std::string &fixture, const std::string &results) {
    if (!fixture.empty() && !results.empty()) {
        throw config_error{ "use either --fixture or --results" };
    }
    if (!fixture.empty()) {
        if (fixture != "gmean" && fixture != "avf" && fixture != "cba") {
            throw config_error{ "unknown fixture '" + fixture + "' (valid: gmean, avf, cba)" };
        }
        return { { fixture, fixtures::load(fixture) } };
    }
    if (results.empty()) {
        throw config_error{ "stats needs --fixture or --results" };
    }
    std::ifstream in = open_in(results);
    try {
        return parse_results_csv(in);
    } catch (const parse_error &e) {
        throw parse_error{ results + ": " + e.what() };
    }
}

struct stats_options {
    std::string fixture;
    std::string results;
    std::string test;
    std::string metric;
    std::string control;
    std::string pair;
    std::string zeros{ "discard" };
    double alpha{ 0.05 };
};

int cmd_stats(const stats_options &o) {
    auto tables = load_tables(o.fixture, o.results);
    if (!o.metric.empty()) {
        const auto it = tables.find(o.metric);
        if (it == tables.end()) {
            std::string valid;
            for (const auto &[k, v] : tables) {
                valid += (valid.empty() ? "" : ", ") + k;
            }
            throw data_error{ "unknown metric '" + o.metric + "'; valid metrics: " + valid };
        }
        tables = { *it };
    }
    std::cout << std::setprecision(5) << std::fixed;
    for (const auto &[metric, rt] : tables) {
        rt.validate();
        std::cout << "# metric " << metric << " (" << rt.datasets.size() << " datasets, " << rt.algorithms.size() << " algorithms)\n";
        if (o.test == "friedman") {
            const friedman_result fr = friedman_aligned(rt, o.alpha);
            std::cout << "F_AR = " << fr.statistic << "  df = " << fr.df << "  critical = " << fr.critical_value << "  p = " << std::scientific << fr.p_value << std::fixed << "  " << (fr.reject ? "reject" : "retain") << (fr.no_variation ? " (no variation)" : "") << '\n';
            for (std::size_t j = 0; j < rt.algorithms.size(); ++j) {
                std::cout << "  mean aligned rank " << rt.algorithms[j] << " = " << fr.ranks.mean_rank(j) << '\n';
            }
        } else if (o.test == "holm") {
            const aligned_ranks ar = compute_aligned_ranks(rt);
            std::size_t control = 0;
            if (o.control.empty()) {
                for (std::size_t j = 1; j < rt.algorithms.size(); ++j) {
                    if (ar.mean_rank(j) < ar.mean_rank(control)) {
                        control = j;
                    }
                }
            } else {
                control = rt.algorithm_index(o.control);
            }
            std::cout << "control " << rt.algorithms[control] << '\n';
            const auto entries = holm(holm_pvalues_from_ranks(ar, rt.algorithms, control), o.alpha);
            for (std::size_t i = 0; i < entries.size(); ++i) {
                std::cout << i + 1 << ' ' << entries[i].algorithm << " p = " << std::scientific << entries[i].p_value << std::fixed << " threshold = " << entries[i].threshold << ' ' << (entries[i].rejected ? "rejected" : "not rejected") << '\n';
            }
        } else {
            const auto comma = o.pair.find(',');
            if (comma == std::string::npos) {
                throw config_error{ "wilcoxon needs --pair A,B" };
            }
            const std::string a = o.pair.substr(0, comma);
            const std::string b = o.pair.substr(comma + 1);
            const zero_handling zh = o.zeros == "split" ? zero_handling::split : zero_handling::discard;
            const wilcoxon_result w = wilcoxon(rt.column(a), rt.column(b), zh, o.alpha);
            std::cout << a << " vs " << b << ": R+ = " << std::setprecision(1) << w.r_plus << "  R- = " << w.r_minus << std::setprecision(5) << "  n = " << w.n << "  p = " << w.p_value << (w.all_zero ? " (all differences zero)" : w.exact ? " (exact)" : " (normal)") << "  " << (w.reject ? "reject" : "retain") << '\n';
        }
    }
    return ok;
}

int cmd_report(const std::string &dir_name) {
    const fs::path dir{ dir_name };
    std::ifstream in = open_in((dir / "results.csv").string());
    std::string line;
    std::getline(in, line);
    std::cout << std::left << std::setw(20) << "dataset" << std::setw(22) << "method" << std::right << std::setw(10) << "gmean" << std::setw(10) << "avf" << std::setw(10) << "cba" << '\n';
    while (std::getline(in, line)) {
        const auto f = detail::split(line, ',');
        if (f.size() == 7 && f[2] == "mean") {
            std::cout << std::left << std::setw(20) << f[0] << std::setw(22) << f[1] << std::right << std::fixed << std::setprecision(2);
            for (std::size_t k = 3; k < 6; ++k) {
                std::cout << std::setw(10) << std::stod(f[k]);
            }
            std::cout << '\n';
        }
    }
    if (fs::exists(dir / "confusion.csv")) {
        std::ifstream cm = open_in((dir / "confusion.csv").string());
        std::cout << "\nper-class recall by fold\n";
        std::string header;
        while (std::getline(cm, line)) {
            if (line.starts_with("# ")) {
                header = line.substr(2);
                std::cout << header << ':';
                continue;
            }
            if (line.starts_with("truth\\pred")) {
                continue;
            }
            const auto f = detail::split(line, ',');
            std::cout << ' ' << f.front() << '=' << std::fixed << std::setprecision(3) << std::stod(f.back());
            if (cm.peek() == '#' || cm.peek() == EOF) {
                std::cout << '\n';
            }
        }
    }
    return ok;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{ "Imbalanced multi-class SVM with differential evolution" };
    app.require_subcommand(1);

    std::string pre_in;
    std::string pre_out;
    auto *pre = app.add_subcommand("preprocess", "scale and one-hot encode a KEEL dataset into numeric CSV");
    pre->add_option("input", pre_in, "KEEL .dat file")->required();
    pre->add_option("-o,--output", pre_out, "output CSV (default stdout)");

    experiment_options cv_opts;
    auto *cv = app.add_subcommand("cv", "stratified k-fold cross-validation");
    cv_opts.attach(cv, true);

    experiment_options train_opts;
    std::string model_out;
    auto *train = app.add_subcommand("train", "train on a whole dataset and save the model");
    train_opts.attach(train, false);
    train->add_option("--model", model_out, "model JSON path (default stdout)");

    std::string model_in;
    std::string pred_in;
    std::string pred_out;
    auto *predict_cmd = app.add_subcommand("predict", "label rows with a saved model");
    predict_cmd->add_option("--model", model_in, "model JSON")->required();
    predict_cmd->add_option("input", pred_in, "KEEL .dat or preprocessed .csv rows")->required();
    predict_cmd->add_option("-o,--output", pred_out, "output CSV (default stdout)");

    stats_options so;
    auto *stats = app.add_subcommand("stats", "Friedman aligned ranks, Holm and Wilcoxon tests");
    stats->add_option("--fixture", so.fixture, "embedded table: gmean | avf | cba");
    stats->add_option("--results", so.results, "results CSV");
    stats->add_option("--test", so.test, "friedman | holm | wilcoxon")->required()->check(CLI::IsMember({ "friedman", "holm", "wilcoxon" }));
    stats->add_option("--metric", so.metric, "restrict to one metric");
    stats->add_option("--control", so.control, "Holm control algorithm (default: best mean rank)");
    stats->add_option("--pair", so.pair, "Wilcoxon pair A,B");
    stats->add_option("--zeros", so.zeros, "zero differences: discard | split")->check(CLI::IsMember({ "discard", "split" }));
    stats->add_option("--alpha", so.alpha, "significance level")->check(CLI::Range(0.0, 1.0));

    std::string report_dir;
    auto *report = app.add_subcommand("report", "summarize a cv output directory");
    report->add_option("dir", report_dir, "cv output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*pre) {
            return cmd_preprocess(pre_in, pre_out);
        }
        if (*cv) {
            return cmd_cv(cv_opts);
        }
        if (*train) {
            return cmd_train(train_opts, model_out);
        }
        if (*predict_cmd) {
            return cmd_predict(model_in, pred_in, pred_out);
        }
        if (*stats) {
            return cmd_stats(so);
        }
        if (*report) {
            return cmd_report(report_dir);
        }
    } catch (const config_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const numerical_error &e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return numerical;
    } catch (const imbalsvm::error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return data;
    } catch (const fs::filesystem_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return data;
    }
    return usage;
}
