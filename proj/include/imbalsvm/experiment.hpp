#ifndef IMBALSVM_EXPERIMENT_HPP_
#define IMBALSVM_EXPERIMENT_HPP_
#pragma once

#include "imbalsvm/data.hpp"
#include "imbalsvm/de_optimizer.hpp"
#include "imbalsvm/errors.hpp"
#include "imbalsvm/fitness.hpp"
#include "imbalsvm/isvm_solver.hpp"
#include "imbalsvm/metrics.hpp"
#include "imbalsvm/ovo.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace imbalsvm {

enum class method { isvm_de_ave,
                    isvm_de_max,
                    classical_svm_grid,
                    cost_svm_grid };

[[nodiscard]] inline std::string to_string(method m) {
    switch (m) {
        case method::isvm_de_ave:
            return "isvm-de-ave";
        case method::isvm_de_max:
            return "isvm-de-max";
        case method::classical_svm_grid:
            return "classical-svm-grid";
        case method::cost_svm_grid:
            return "cost-svm-grid";
    }
    return "unknown";
}

[[nodiscard]] inline method parse_method(const std::string &s) {
    for (const method m : { method::isvm_de_ave, method::isvm_de_max, method::classical_svm_grid, method::cost_svm_grid }) {
        if (s == to_string(m)) {
            return m;
        }
    }
    throw config_error{ "unknown method '" + s + "' (valid: isvm-de-ave, isvm-de-max, classical-svm-grid, cost-svm-grid)" };
}

[[nodiscard]] inline bool is_de_method(method m) noexcept { return m == method::isvm_de_ave || m == method::isvm_de_max; }

struct grid_config {
    std::vector<double> c{ 10.0, 100.0, 1000.0 };
    /// RBF widths; the linear kernel is always tried as well.
    std::vector<double> sigma{ 0.1, 0.5, 1.0, 5.0, 10.0, 50.0, 100.0 };
    std::size_t inner_folds{ 3 };
};

struct experiment_config {
    std::vector<std::string> datasets{};
    method algorithm{ method::isvm_de_ave };
    de_config de{};
    fitness_config fitness{};
    solver_config solver{ 1e-3, 5000, true, false };
    grid_config grid{};
    std::size_t folds{ 5 };
    std::string output_dir{ "." };
    bool parallel_folds{ false };
    /// Write wall-clock seconds to the results CSV; off keeps reruns byte-identical.
    bool timing{ false };

    void validate() const {
        if (folds < 2) {
            throw config_error{ "folds must be at least 2" };
        }
        if (grid.c.empty() || grid.inner_folds < 2) {
            throw config_error{ "grid needs at least one C value and two inner folds" };
        }
        for (const double s : grid.sigma) {
            if (!(s > 0.0)) {
                throw config_error{ "grid sigma values must be positive" };
            }
        }
        for (const double c : grid.c) {
            if (!(c > 0.0)) {
                throw config_error{ "grid C values must be positive" };
            }
        }
        if (!(solver.kkt_tol > 0.0)) {
            throw config_error{ "kkt_tol must be positive" };
        }
        de.validate();
        fitness.validate();
    }
};

namespace detail {

inline std::vector<double> parse_list(const std::string &key, const std::string &value) {
    std::vector<double> out;
    for (const std::string &tok : split(value, ',')) {
        const auto v = parse_double(trim(tok));
        if (!v) {
            throw config_error{ "config key '" + key + "': '" + tok + "' is not a number" };
        }
        out.push_back(*v);
    }
    return out;
}

inline std::uint64_t parse_uint(const std::string &key, const std::string &value) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        if (!value.empty() && value.front() == '-') {
            throw std::invalid_argument{ value };
        }
        v = std::stoull(value, &pos);
    } catch (const std::exception &) {
        throw config_error{ "config key '" + key + "': '" + value + "' is not a non-negative integer" };
    }
    if (pos != value.size()) {
        throw config_error{ "config key '" + key + "': '" + value + "' is not a non-negative integer" };
    }
    return v;
}

inline double parse_real(const std::string &key, const std::string &value) {
    const auto v = parse_double(value);
    if (!v) {
        throw config_error{ "config key '" + key + "': '" + value + "' is not a number" };
    }
    return *v;
}

inline bool parse_bool(const std::string &key, const std::string &value) {
    const std::string v = to_lower(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw config_error{ "config key '" + key + "': '" + value + "' is not a boolean" };
}

inline std::string join(const std::vector<double> &v) {
    std::ostringstream s;
    s.precision(17);
    for (std::size_t k = 0; k < v.size(); ++k) {
        s << (k ? "," : "") << v[k];
    }
    return s.str();
}

}  // namespace detail

/// Applies one key=value setting.
inline void apply_setting(experiment_config &cfg, const std::string &key, const std::string &value) {
    using namespace detail;
    if (key == "dataset") {
        for (const std::string &p : split(value, ',')) {
            if (!trim(p).empty()) {
                cfg.datasets.emplace_back(trim(p));
            }
        }
    } else if (key == "method") {
        cfg.algorithm = parse_method(value);
    } else if (key == "np") {
        cfg.de.np = parse_uint(key, value);
    } else if (key == "g_max") {
        cfg.de.g_max = parse_uint(key, value);
    } else if (key == "g_t") {
        cfg.de.g_t = parse_uint(key, value);
    } else if (key == "seed") {
        cfg.de.seed = parse_uint(key, value);
    } else if (key == "threads") {
        cfg.de.threads = parse_uint(key, value);
    } else if (key == "base_cost") {
        cfg.de.base_cost = parse_real(key, value);
    } else if (key == "sigma_floor") {
        cfg.de.sigma_floor = parse_real(key, value);
    } else if (key == "delta") {
        cfg.fitness.delta = parse_real(key, value);
    } else if (key == "sigmoid") {
        if (value == "platt") {
            cfg.fitness.sigmoid = sigmoid_sign::platt;
        } else if (value == "negated") {
            cfg.fitness.sigmoid = sigmoid_sign::negated;
        } else {
            throw config_error{ "config key 'sigmoid': expected platt or negated" };
        }
    } else if (key == "log_base") {
        if (value == "e") {
            cfg.fitness.base = log_base::e;
        } else if (value == "10") {
            cfg.fitness.base = log_base::ten;
        } else {
            throw config_error{ "config key 'log_base': expected e or 10" };
        }
    } else if (key == "grid_c") {
        cfg.grid.c = parse_list(key, value);
    } else if (key == "grid_sigma") {
        cfg.grid.sigma = parse_list(key, value);
    } else if (key == "inner_folds") {
        cfg.grid.inner_folds = parse_uint(key, value);
    } else if (key == "folds") {
        cfg.folds = parse_uint(key, value);
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else if (key == "kkt_tol") {
        cfg.solver.kkt_tol = parse_real(key, value);
    } else if (key == "max_iterations") {
        cfg.solver.max_iterations = parse_uint(key, value);
    } else if (key == "shrinking") {
        cfg.solver.shrinking = parse_bool(key, value);
    } else if (key == "parallel_folds") {
        cfg.parallel_folds = parse_bool(key, value);
    } else if (key == "timing") {
        cfg.timing = parse_bool(key, value);
    } else {
        throw config_error{ "unknown config key '" + key + "'" };
    }
}

/// Flat `key = value` lines; `#` starts a comment.
inline void read_config(std::istream &in, experiment_config &cfg) {
    using detail::trim;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string_view body = trim(std::string_view{ line }.substr(0, hash));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw config_error{ "config line " + std::to_string(line_no) + ": expected key = value" };
        }
        try {
            apply_setting(cfg, std::string{ trim(body.substr(0, eq)) }, std::string{ trim(body.substr(eq + 1)) });
        } catch (const config_error &e) {
            throw config_error{ "config line " + std::to_string(line_no) + ": " + e.what() };
        }
    }
}

/// IMBALSVM_SEED overrides the configured seed.
inline void apply_environment(experiment_config &cfg) {
    if (const char *s = std::getenv("IMBALSVM_SEED"); s != nullptr && *s != '\0') {
        cfg.de.seed = detail::parse_uint("IMBALSVM_SEED", s);
    }
}

/// Writes every setting in `key = value` form; read_config of the output restores `cfg`.
inline void echo_config(std::ostream &out, const experiment_config &cfg) {
    const auto old = out.precision(17);
    std::string ds;
    for (std::size_t k = 0; k < cfg.datasets.size(); ++k) {
        ds += (k ? "," : "") + cfg.datasets[k];
    }
    const char *base = cfg.fitness.base == log_base::e ? "e" : "10";
    out << "dataset = " << ds << '\n'
        << "method = " << to_string(cfg.algorithm) << '\n'
        << "np = " << cfg.de.np << '\n'
        << "g_max = " << cfg.de.g_max << '\n'
        << "g_t = " << cfg.de.g_t << '\n'
        << "seed = " << cfg.de.seed << '\n'
        << "threads = " << cfg.de.threads << '\n'
        << "base_cost = " << cfg.de.base_cost << '\n'
        << "sigma_floor = " << cfg.de.sigma_floor << '\n'
        << "delta = " << cfg.fitness.delta << '\n'
        << "sigmoid = " << (cfg.fitness.sigmoid == sigmoid_sign::platt ? "platt" : "negated") << '\n'
        << "log_base = " << base << '\n'
        << "grid_c = " << detail::join(cfg.grid.c) << '\n'
        << "grid_sigma = " << detail::join(cfg.grid.sigma) << '\n'
        << "inner_folds = " << cfg.grid.inner_folds << '\n'
        << "folds = " << cfg.folds << '\n'
        << "output_dir = " << cfg.output_dir << '\n'
        << "kkt_tol = " << cfg.solver.kkt_tol << '\n'
        << "max_iterations = " << cfg.solver.max_iterations << '\n'
        << "shrinking = " << (cfg.solver.shrinking ? "true" : "false") << '\n'
        << "parallel_folds = " << (cfg.parallel_folds ? "true" : "false") << '\n'
        << "timing = " << (cfg.timing ? "true" : "false") << '\n';
    out.precision(old);
}

/// Seed for a sub-task, e.g. the DE run of one fold.
[[nodiscard]] inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::seed_seq seq{ static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), 0x5eedU };
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

/// One point of a baseline grid. `cost_index` selects the minority multiplier of the cost grid.
struct grid_candidate {
    double c{ 1.0 };
    kernel_spec kernel{};
    std::size_t cost_index{ 0 };
};

/// Minority cost multipliers (n + p) / (4p), /(3p), /(2p), /p, 2x, 3x, 4x.
[[nodiscard]] inline std::vector<double> cost_multipliers(std::size_t n_pos, std::size_t n_neg) {
    const double t = static_cast<double>(n_pos + n_neg);
    const double p = static_cast<double>(std::max<std::size_t>(n_pos, 1));
    return { t / (4.0 * p), t / (3.0 * p), t / (2.0 * p), t / p, 2.0 * t / p, 3.0 * t / p, 4.0 * t / p };
}

[[nodiscard]] inline std::vector<grid_candidate> grid_candidates(method m, const grid_config &grid) {
    std::vector<kernel_spec> kernels{ kernel_spec::linear() };
    for (const double s : grid.sigma) {
        kernels.push_back(kernel_spec::rbf(s));
    }
    const std::size_t n_cost = m == method::cost_svm_grid ? 7 : 1;
    std::vector<grid_candidate> out;
    for (const double c : grid.c) {
        for (const kernel_spec &k : kernels) {
            for (std::size_t q = 0; q < n_cost; ++q) {
                out.push_back({ c, k, q });
            }
        }
    }
    return out;
}

/// Per-pair parameters of a grid point: classical uses C+ = C- = C; the cost grid uses
/// C * K[q] for the minority and C * (n- + n+) / n- for the majority. Margin targets are 1.
[[nodiscard]] inline std::vector<pair_params> candidate_params(const grid_candidate &g, method m, const dataset &ds, const std::vector<pair_problem> &pairs) {
    std::vector<pair_params> out(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        pair_params &pp = out[p];
        pp.kernel = g.kernel;
        pp.c_plus = g.c;
        pp.c_minus = g.c;
        if (m == method::cost_svm_grid) {
            const std::size_t np = ds.class_counts[static_cast<std::size_t>(pairs[p].positive_class)];
            const std::size_t nn = ds.class_counts[static_cast<std::size_t>(pairs[p].negative_class)];
            pp.c_plus = g.c * cost_multipliers(np, nn)[g.cost_index];
            pp.c_minus = g.c * static_cast<double>(np + nn) / static_cast<double>(std::max<std::size_t>(nn, 1));
        }
    }
    return out;
}

struct grid_search_result {
    grid_candidate best{};
    /// G-mean of the pooled inner-fold confusion matrix.
    double inner_gmean{ -1.0 };
    std::size_t candidates{ 0 };
};

/// Picks the grid point with the highest pooled inner-CV G-mean; ties keep the earlier point
/// (smaller C, linear before RBF, smaller sigma).
[[nodiscard]] inline grid_search_result grid_search(const dataset &train, method m, const experiment_config &cfg, std::uint64_t seed) {
    const std::vector<grid_candidate> cands = grid_candidates(m, cfg.grid);
    const fold_assignment inner = stratified_folds(train, cfg.grid.inner_folds, seed);
    struct split {
        dataset tr;
        std::vector<pair_problem> pairs;
        std::vector<std::size_t> test;
    };
    std::vector<split> splits;
    for (std::size_t f = 0; f < cfg.grid.inner_folds; ++f) {
        split s;
        s.tr = subset(train, inner.train_indices(f));
        s.pairs = decompose(s.tr);
        s.test = inner.test_indices(f);
        splits.push_back(std::move(s));
    }
    grid_search_result res;
    res.candidates = cands.size();
    for (const grid_candidate &g : cands) {
        confusion_matrix pooled{ train.num_classes() };
        for (const split &s : splits) {
            const multi_class_model model = train_ovo(s.tr, s.pairs, candidate_params(g, m, s.tr, s.pairs), cfg.solver, cfg.fitness.sigmoid);
            for (const std::size_t i : s.test) {
                const int pred = predict(model, train.features.row(static_cast<Eigen::Index>(i)));
                ++pooled(static_cast<std::size_t>(train.labels[i]), static_cast<std::size_t>(pred));
            }
        }
        const double gm = g_mean(pooled);
        if (gm > res.inner_gmean) {
            res.inner_gmean = gm;
            res.best = g;
        }
    }
    return res;
}

struct fitted_model {
    multi_class_model model{};
    std::vector<pair_params> params{};
    /// Best fitness for DE methods, inner-CV G-mean for grid methods.
    double selection_score{ 0.0 };
};

/// Trains `cfg.algorithm` on one training partition.
[[nodiscard]] inline fitted_model fit_method(const dataset &train, const experiment_config &cfg, std::uint64_t seed, const evaluation_hook &hook = {}) {
    fitted_model out;
    if (is_de_method(cfg.algorithm)) {
        de_config de = cfg.de;
        de.seed = seed;
        fitness_config fit = cfg.fitness;
        fit.variant = cfg.algorithm == method::isvm_de_max ? fitness_variant::max : fitness_variant::ave;
        isvm_de_result r = train_isvm_de(train, de, fit, cfg.solver, {}, hook);
        out.model = std::move(r.model);
        out.params = std::move(r.params);
        out.selection_score = r.search.best.fitness;
        return out;
    }
    const grid_search_result gs = grid_search(train, cfg.algorithm, cfg, seed);
    const std::vector<pair_problem> pairs = decompose(train);
    out.params = candidate_params(gs.best, cfg.algorithm, train, pairs);
    out.model = train_ovo(train, pairs, out.params, cfg.solver, cfg.fitness.sigmoid);
    out.selection_score = gs.inner_gmean;
    return out;
}

struct fold_result {
    std::size_t fold{ 0 };
    confusion_matrix cm{ 0 };
    double gmean{ 0.0 };
    double avf{ 0.0 };
    double cba{ 0.0 };
    double seconds{ 0.0 };
    std::vector<pair_params> params{};
    double selection_score{ 0.0 };
    multi_class_model model{};
};

struct cv_result {
    std::string dataset{};
    method algorithm{ method::isvm_de_ave };
    std::vector<fold_result> folds{};

    [[nodiscard]] double mean_gmean() const { return mean_of(&fold_result::gmean); }
    [[nodiscard]] double mean_avf() const { return mean_of(&fold_result::avf); }
    [[nodiscard]] double mean_cba() const { return mean_of(&fold_result::cba); }
    [[nodiscard]] double total_seconds() const {
        double s = 0.0;
        for (const fold_result &f : folds) {
            s += f.seconds;
        }
        return s;
    }

  private:
    [[nodiscard]] double mean_of(double fold_result::*field) const {
        if (folds.empty()) {
            return 0.0;
        }
        double s = 0.0;
        for (const fold_result &f : folds) {
            s += f.*field;
        }
        return s / static_cast<double>(folds.size());
    }
};

/// Stratified k-fold CV of `cfg.algorithm`. Folds come from `cfg.de.seed`; fold f trains with the
/// derived seed derive_seed(seed, f).
[[nodiscard]] inline cv_result cross_validate(const dataset &ds, const std::string &name, const experiment_config &cfg, const evaluation_hook &hook = {}) {
    cfg.validate();
    const fold_assignment fa = stratified_folds(ds, cfg.folds, cfg.de.seed);
    cv_result res;
    res.dataset = name;
    res.algorithm = cfg.algorithm;
    res.folds.resize(cfg.folds);
    const auto run_fold = [&](std::size_t f) {
        const auto t0 = std::chrono::steady_clock::now();
        const dataset train = subset(ds, fa.train_indices(f));
        const std::vector<std::size_t> test = fa.test_indices(f);
        const fitted_model fm = fit_method(train, cfg, derive_seed(cfg.de.seed, f), hook);
        fold_result &fr = res.folds[f];
        fr.fold = f;
        fr.cm = confusion_matrix{ ds.num_classes() };
        for (const std::size_t i : test) {
            const int pred = predict(fm.model, ds.features.row(static_cast<Eigen::Index>(i)));
            ++fr.cm(static_cast<std::size_t>(ds.labels[i]), static_cast<std::size_t>(pred));
        }
        fr.gmean = g_mean(fr.cm);
        fr.avf = av_f_beta(fr.cm);
        fr.cba = cba(fr.cm);
        fr.params = fm.params;
        fr.selection_score = fm.selection_score;
        fr.model = fm.model;
        fr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    if (cfg.parallel_folds) {
        std::vector<std::exception_ptr> errors(cfg.folds);
        {
            std::vector<std::jthread> workers;
            for (std::size_t f = 0; f < cfg.folds; ++f) {
                workers.emplace_back([&, f] {
                    try {
                        run_fold(f);
                    } catch (...) {
                        errors[f] = std::current_exception();
                    }
                });
            }
        }
        for (const auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    } else {
        for (std::size_t f = 0; f < cfg.folds; ++f) {
            run_fold(f);
        }
    }
    return res;
}

inline void write_results_header(std::ostream &out) { out << "dataset,method,fold,gmean,avf,cba,seconds\n"; }

/// Per-fold rows followed by a `mean` row. Seconds are written as 0 unless `timing` is set.
inline void write_results_rows(std::ostream &out, const cv_result &r, bool timing) {
    const auto old = out.precision(10);
    const std::string m = to_string(r.algorithm);
    for (const fold_result &f : r.folds) {
        out << r.dataset << ',' << m << ',' << f.fold << ',' << f.gmean << ',' << f.avf << ',' << f.cba << ',' << (timing ? f.seconds : 0.0) << '\n';
    }
    out << r.dataset << ',' << m << ",mean," << r.mean_gmean() << ',' << r.mean_avf() << ',' << r.mean_cba() << ',' << (timing ? r.total_seconds() : 0.0) << '\n';
    out.precision(old);
}

/// Confusion matrices and per-class recalls, one block per fold.
inline void write_confusion_report(std::ostream &out, const cv_result &r, const std::vector<std::string> &class_names) {
    const auto old = out.precision(10);
    for (const fold_result &f : r.folds) {
        out << "# " << r.dataset << ' ' << to_string(r.algorithm) << " fold " << f.fold << '\n';
        out << "truth\\pred";
        for (const std::string &c : class_names) {
            out << ',' << c;
        }
        out << ",recall\n";
        const std::vector<double> rec = per_class_recall(f.cm);
        for (std::size_t i = 0; i < f.cm.num_classes(); ++i) {
            out << (i < class_names.size() ? class_names[i] : std::to_string(i));
            for (std::size_t j = 0; j < f.cm.num_classes(); ++j) {
                out << ',' << f.cm(i, j);
            }
            out << ',' << rec[i] << '\n';
        }
    }
    out.precision(old);
}

}  // namespace imbalsvm

#endif  // IMBALSVM_EXPERIMENT_HPP_
