#ifndef IMBALSVM_DE_OPTIMIZER_HPP_
#define IMBALSVM_DE_OPTIMIZER_HPP_
#pragma once

#include "imbalsvm/data.hpp"
#include "imbalsvm/errors.hpp"
#include "imbalsvm/fitness.hpp"
#include "imbalsvm/isvm_solver.hpp"
#include "imbalsvm/kernel.hpp"
#include "imbalsvm/ovo.hpp"

#include <algorithm>   // std::stable_sort, std::clamp
#include <atomic>      // std::atomic
#include <cmath>       // std::pow, std::ceil, std::round, std::isnan
#include <cstddef>     // std::size_t
#include <cstdint>     // std::uint64_t
#include <exception>   // std::exception_ptr
#include <functional>  // std::function
#include <limits>      // std::numeric_limits
#include <numeric>     // std::iota
#include <ostream>     // std::ostream
#include <random>      // std::mt19937_64, std::seed_seq
#include <span>        // std::span
#include <string>      // std::to_string
#include <thread>      // std::jthread
#include <vector>      // std::vector

namespace imbalsvm {

enum class gene_kind { continuous,
                       integer };

struct gene_bounds {
    double lower{ 0.0 };
    double upper{ 1.0 };
    gene_kind kind{ gene_kind::continuous };

    [[nodiscard]] bool contains(double v) const noexcept { return v >= lower && v <= upper; }
};

/// Gene order inside one pair block.
enum gene_slot : std::size_t { gene_c_plus = 0,
                               gene_c_minus = 1,
                               gene_lambda1 = 2,
                               gene_lambda2 = 3,
                               gene_kernel = 4,
                               gene_sigma = 5,
                               gene_degree = 6,
                               genes_per_pair = 7 };

[[nodiscard]] inline std::vector<gene_bounds> pair_gene_template() {
    return {
        { 0.0, 1.0, gene_kind::continuous },    // C+
        { 0.0, 1.0, gene_kind::continuous },    // C-
        { 0.0, 1.0, gene_kind::continuous },    // lambda1
        { 0.0, 1.0, gene_kind::continuous },    // lambda2
        { 0.0, 2.0, gene_kind::integer },       // kernel family
        { 0.0, 100.0, gene_kind::continuous },  // sigma
        { 1.0, 5.0, gene_kind::integer },       // degree
    };
}

[[nodiscard]] inline std::vector<gene_bounds> genome_bounds(std::size_t num_pairs) {
    const auto one = pair_gene_template();
    std::vector<gene_bounds> out;
    out.reserve(num_pairs * genes_per_pair);
    for (std::size_t p = 0; p < num_pairs; ++p) {
        out.insert(out.end(), one.begin(), one.end());
    }
    return out;
}

struct de_config {
    std::size_t np{ 40 };
    std::size_t g_max{ 200 };
    /// Stage threshold; 0 selects ceil(0.5 * g_max).
    std::size_t g_t{ 0 };
    std::uint64_t seed{ 1 };
    /// Multiplier of the relative cost genes.
    double base_cost{ 1000.0 };
    /// Lower clamp of the decoded RBF width.
    double sigma_floor{ 1e-3 };
    /// Worker threads for fitness evaluation (1 = evaluate inline).
    std::size_t threads{ 1 };

    [[nodiscard]] std::size_t stage_threshold() const {
        return g_t != 0 ? g_t : static_cast<std::size_t>(std::ceil(0.5 * static_cast<double>(g_max)));
    }

    void validate() const {
        if (np < 4) {
            throw config_error{ "population size must be at least 4" };
        }
        if (g_max < 1) {
            throw config_error{ "g_max must be at least 1" };
        }
        const std::size_t gt = stage_threshold();
        if (g_max > 1 && !(gt > 0 && gt < g_max)) {
            throw config_error{ "g_t must lie strictly between 0 and g_max" };
        }
        if (!(base_cost > 0.0) || !(sigma_floor > 0.0)) {
            throw config_error{ "base cost and sigma floor must be positive" };
        }
        if (threads < 1) {
            throw config_error{ "at least one evaluation thread is required" };
        }
    }
};

struct individual {
    std::vector<double> genes{};
    double fitness{ std::numeric_limits<double>::quiet_NaN() };
    bool evaluated{ false };
};

/// ps = 0.1 + 0.9 * 10^(5 (g / g_max - 1)).
[[nodiscard]] inline double superior_fraction(std::size_t g, std::size_t g_max) {
    const double r = static_cast<double>(g) / static_cast<double>(g_max);
    return 0.1 + 0.9 * std::pow(10.0, 5.0 * (r - 1.0));
}

/// |S| = ceil(ps * np), at least 1 and at most np.
[[nodiscard]] inline std::size_t superior_count(std::size_t g, std::size_t g_max, std::size_t np) {
    const auto s = static_cast<std::size_t>(std::ceil(superior_fraction(g, g_max) * static_cast<double>(np)));
    return std::clamp<std::size_t>(s, 1, np);
}

/// Pd = 0.1 * ps.
[[nodiscard]] inline double perturbation_probability(std::size_t g, std::size_t g_max) { return 0.1 * superior_fraction(g, g_max); }

/// Independent generator for (seed, generation, individual).
[[nodiscard]] inline std::mt19937_64 individual_stream(std::uint64_t seed, std::size_t generation, std::size_t index) {
    std::seed_seq seq{ static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(generation), static_cast<std::uint32_t>(index), 0x1f2e3d4cU };
    return std::mt19937_64{ seq };
}

[[nodiscard]] inline double uniform_in(const gene_bounds &b, std::mt19937_64 &rng) {
    return b.lower + std::uniform_real_distribution<double>{ 0.0, 1.0 }(rng) * (b.upper - b.lower);
}

[[nodiscard]] inline std::vector<individual> initialize(std::span<const gene_bounds> bounds, const de_config &cfg) {
    cfg.validate();
    std::vector<individual> pop(cfg.np);
    for (std::size_t i = 0; i < cfg.np; ++i) {
        auto rng = individual_stream(cfg.seed, 0, i);
        pop[i].genes.reserve(bounds.size());
        for (const gene_bounds &b : bounds) {
            pop[i].genes.push_back(uniform_in(b, rng));
        }
    }
    return pop;
}

/// Mutation factor for 1-based rank o: Normal(o / np, 0.1), redrawn until it lies in (0, 1].
[[nodiscard]] inline double draw_mutation_factor(std::size_t o_rank, std::size_t np, std::mt19937_64 &rng) {
    std::normal_distribution<double> nd{ static_cast<double>(o_rank) / static_cast<double>(np), 0.1 };
    for (;;) {
        const double f = nd(rng);
        if (f > 0.0 && f <= 1.0) {
            return f;
        }
    }
}

/// Crossover rate for 1-based rank i: Normal(i / np, 0.1) clamped to [0, 1].
[[nodiscard]] inline double draw_crossover_rate(std::size_t i_rank, std::size_t np, std::mt19937_64 &rng) {
    std::normal_distribution<double> nd{ static_cast<double>(i_rank) / static_cast<double>(np), 0.1 };
    return std::clamp(nd(rng), 0.0, 1.0);
}

/// Copy of `h` with every gene independently redrawn uniformly in bounds with probability pd.
[[nodiscard]] inline std::vector<double> perturb(const std::vector<double> &h, std::span<const gene_bounds> bounds, double pd, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u{ 0.0, 1.0 };
    std::vector<double> d = h;
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (u(rng) < pd) {
            d[j] = uniform_in(bounds[j], rng);
        }
    }
    return d;
}

/// Indices picked by a mutation step, 0-based sorted positions.
struct mutation_draw {
    std::size_t o{ 0 };
    std::size_t r1{ 0 };
    std::size_t r2{ 0 };
    std::size_t r3{ 0 };
    std::size_t better{ 0 };
    bool superior{ true };
    double f{ 0.0 };
};

/// Mutant vector for sorted position i at generation g. `pop` must be sorted ascending by fitness.
[[nodiscard]] inline std::vector<double> mutate(const std::vector<individual> &pop, std::size_t i, std::size_t g, const de_config &cfg, std::span<const gene_bounds> bounds, std::mt19937_64 &rng, mutation_draw *draw = nullptr) {
    const std::size_t np = pop.size();
    if (np < 4) {
        throw config_error{ "population size must be at least 4" };
    }
    std::uniform_int_distribution<std::size_t> any{ 0, np - 1 };
    mutation_draw md;
    md.o = g < cfg.stage_threshold() ? i : any(rng);
    const auto pick = [&](std::initializer_list<std::size_t> taken) {
        for (;;) {
            const std::size_t r = any(rng);
            if (std::find(taken.begin(), taken.end(), r) == taken.end()) {
                return r;
            }
        }
    };
    md.r1 = pick({ md.o });
    md.r2 = pick({ md.o, md.r1 });
    md.r3 = pick({ md.o, md.r1, md.r2 });
    const std::size_t s_size = superior_count(g, cfg.g_max, np);
    md.superior = md.o < s_size;
    md.better = std::uniform_int_distribution<std::size_t>{ 0, s_size - 1 }(rng);
    md.f = draw_mutation_factor(md.o + 1, np, rng);
    const std::vector<double> d = perturb(pop[md.r3].genes, bounds, perturbation_probability(g, cfg.g_max), rng);

    const std::vector<double> &ho = pop[md.o].genes;
    const std::vector<double> &first = md.superior ? pop[md.r1].genes : pop[md.better].genes;
    const std::vector<double> &h2 = pop[md.r2].genes;
    std::vector<double> v(ho.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = ho[j] + md.f * (first[j] - ho[j]) + md.f * (h2[j] - d[j]);
    }
    if (draw) {
        *draw = md;
    }
    return v;
}

/// Binomial crossover: gene j comes from the mutant iff rand <= cr or j == j_rand. Out-of-bound genes
/// are redrawn uniformly within their bounds.
[[nodiscard]] inline std::vector<double> crossover(const std::vector<double> &target, const std::vector<double> &mutant, double cr, std::span<const gene_bounds> bounds, std::mt19937_64 &rng) {
    if (target.size() != mutant.size() || target.size() != bounds.size()) {
        throw config_error{ "crossover: genome lengths differ" };
    }
    std::uniform_real_distribution<double> u{ 0.0, 1.0 };
    const std::size_t j_rand = std::uniform_int_distribution<std::size_t>{ 0, target.size() - 1 }(rng);
    std::vector<double> trial(target.size());
    for (std::size_t j = 0; j < trial.size(); ++j) {
        trial[j] = (u(rng) <= cr || j == j_rand) ? mutant[j] : target[j];
    }
    for (std::size_t j = 0; j < trial.size(); ++j) {
        if (!bounds[j].contains(trial[j])) {
            trial[j] = uniform_in(bounds[j], rng);
        }
    }
    return trial;
}

/// Greedy selection: the trial survives iff fit(trial) <= fit(target). A NaN trial never survives.
[[nodiscard]] inline bool trial_survives(double trial_fitness, double target_fitness) noexcept {
    if (std::isnan(trial_fitness)) {
        return false;
    }
    if (std::isnan(target_fitness)) {
        return true;
    }
    return trial_fitness <= target_fitness;
}

/// Ascending fitness, NaN last, ties keep their previous order.
inline void sort_population(std::vector<individual> &pop) {
    std::stable_sort(pop.begin(), pop.end(), [](const individual &a, const individual &b) {
        if (std::isnan(a.fitness)) {
            return false;
        }
        if (std::isnan(b.fitness)) {
            return true;
        }
        return a.fitness < b.fitness;
    });
}

struct trace_row {
    std::size_t generation{ 0 };
    double best_fitness{ 0.0 };
    double mean_fitness{ 0.0 };
    std::size_t evaluations{ 0 };
};

inline void write_trace_csv(std::ostream &out, std::span<const trace_row> trace) {
    out << "generation,best_fitness,mean_fitness,evaluations\n";
    const auto old = out.precision(17);
    for (const trace_row &t : trace) {
        out << t.generation << ',' << t.best_fitness << ',' << t.mean_fitness << ',' << t.evaluations << '\n';
    }
    out.precision(old);
}

struct de_result {
    individual best{};
    /// Final population, sorted ascending by fitness.
    std::vector<individual> population{};
    /// Row 0 is the initial population, row g the state after generation g.
    std::vector<trace_row> trace{};
    std::size_t evaluations{ 0 };
    /// Trials discarded because their fitness was NaN.
    std::size_t nan_trials{ 0 };
};

/// Genome -> fitness; must be safe to call concurrently when `threads > 1`.
using genome_objective = std::function<double(const std::vector<double> &)>;

/// Observer called after every generation with the generation index and the sorted population.
using generation_observer = std::function<void(std::size_t, const std::vector<individual> &)>;

namespace detail {

inline void evaluate_all(std::vector<std::vector<double>> const &genomes, std::vector<double> &out, const genome_objective &objective, std::size_t threads) {
    out.assign(genomes.size(), std::numeric_limits<double>::quiet_NaN());
    if (threads <= 1 || genomes.size() <= 1) {
        for (std::size_t k = 0; k < genomes.size(); ++k) {
            out[k] = objective(genomes[k]);
        }
        return;
    }
    std::atomic<std::size_t> next{ 0 };
    std::exception_ptr failure;
    std::atomic<bool> failed{ false };
    {
        std::vector<std::jthread> workers;
        const std::size_t n = std::min(threads, genomes.size());
        for (std::size_t w = 0; w < n; ++w) {
            workers.emplace_back([&] {
                for (;;) {
                    const std::size_t k = next.fetch_add(1);
                    if (k >= genomes.size() || failed.load()) {
                        return;
                    }
                    try {
                        out[k] = objective(genomes[k]);
                    } catch (...) {
                        if (!failed.exchange(true)) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

inline trace_row summarize(std::size_t g, const std::vector<individual> &pop, std::size_t evaluations) {
    trace_row row{ g, std::numeric_limits<double>::quiet_NaN(), 0.0, evaluations };
    std::size_t finite = 0;
    for (const individual &ind : pop) {
        if (std::isnan(ind.fitness)) {
            continue;
        }
        row.best_fitness = std::isnan(row.best_fitness) ? ind.fitness : std::min(row.best_fitness, ind.fitness);
        row.mean_fitness += ind.fitness;
        ++finite;
    }
    row.mean_fitness = finite > 0 ? row.mean_fitness / static_cast<double>(finite) : std::numeric_limits<double>::quiet_NaN();
    return row;
}

}  // namespace detail

/// Minimizes `objective` over the box `bounds`. Generation g (1..g_max) uses ps(g); mutation and
/// crossover draw from per-individual streams so results do not depend on the thread count.
[[nodiscard]] inline de_result run_de(std::span<const gene_bounds> bounds, const de_config &cfg, const genome_objective &objective, const generation_observer &observer = {}) {
    cfg.validate();
    if (bounds.empty()) {
        throw config_error{ "genome must have at least one gene" };
    }
    de_result res;
    std::vector<individual> pop = initialize(bounds, cfg);
    {
        std::vector<std::vector<double>> genomes;
        for (const individual &ind : pop) {
            genomes.push_back(ind.genes);
        }
        std::vector<double> fit;
        detail::evaluate_all(genomes, fit, objective, cfg.threads);
        for (std::size_t i = 0; i < pop.size(); ++i) {
            pop[i].fitness = fit[i];
            pop[i].evaluated = true;
        }
        res.evaluations += pop.size();
    }
    sort_population(pop);
    res.trace.push_back(detail::summarize(0, pop, res.evaluations));
    if (observer) {
        observer(0, pop);
    }

    for (std::size_t g = 1; g <= cfg.g_max; ++g) {
        std::vector<std::vector<double>> trials(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) {
            auto rng = individual_stream(cfg.seed, g, i);
            const std::vector<double> v = mutate(pop, i, g, cfg, bounds, rng);
            const double cr = draw_crossover_rate(i + 1, pop.size(), rng);
            trials[i] = crossover(pop[i].genes, v, cr, bounds, rng);
        }
        std::vector<double> fit;
        detail::evaluate_all(trials, fit, objective, cfg.threads);
        res.evaluations += trials.size();
        for (std::size_t i = 0; i < pop.size(); ++i) {
            if (std::isnan(fit[i])) {
                ++res.nan_trials;
            }
            if (trial_survives(fit[i], pop[i].fitness)) {
                pop[i].genes = std::move(trials[i]);
                pop[i].fitness = fit[i];
            }
        }
        sort_population(pop);
        res.trace.push_back(detail::summarize(g, pop, res.evaluations));
        if (observer) {
            observer(g, pop);
        }
    }
    res.best = pop.front();
    res.population = std::move(pop);
    return res;
}

/// Per-pair parameters from a genome: costs are base_cost times the relative genes, the kernel gene
/// rounds to {0, 1, 2}, the degree gene to {1..5}, and sigma is clamped below by sigma_floor.
[[nodiscard]] inline std::vector<pair_params> decode_genome(std::span<const double> genes, std::size_t num_pairs, double base_cost = 1000.0, double sigma_floor = 1e-3) {
    if (genes.size() != num_pairs * genes_per_pair) {
        throw config_error{ "genome length " + std::to_string(genes.size()) + " does not match " + std::to_string(num_pairs) + " pairs" };
    }
    std::vector<pair_params> out(num_pairs);
    for (std::size_t p = 0; p < num_pairs; ++p) {
        const double *g = genes.data() + p * genes_per_pair;
        pair_params &pp = out[p];
        pp.c_plus = base_cost * g[gene_c_plus];
        pp.c_minus = base_cost * g[gene_c_minus];
        pp.lambda1 = std::clamp(g[gene_lambda1], 0.0, 1.0);
        pp.lambda2 = std::clamp(g[gene_lambda2], 0.0, 1.0);
        const int fam = static_cast<int>(std::clamp(std::round(g[gene_kernel]), 0.0, 2.0));
        pp.kernel.family = static_cast<kernel_family>(fam);
        pp.kernel.sigma = std::max(g[gene_sigma], sigma_floor);
        pp.kernel.degree = static_cast<int>(std::clamp(std::round(g[gene_degree]), 1.0, 5.0));
        if (pp.kernel.family != kernel_family::rbf) {
            pp.kernel.sigma = 1.0;
        }
        if (pp.kernel.family != kernel_family::polynomial) {
            pp.kernel.degree = 1;
        }
    }
    return out;
}

/// Sees the per-pair losses behind every fitness evaluation. Called from worker threads when
/// evaluation is parallel.
using evaluation_hook = std::function<void(std::span<const pair_evaluation>)>;

/// Trains every pair classifier of `ds` from `genes` and scores the model with the class-balanced
/// fitness on the same training samples.
[[nodiscard]] inline fitness_result genome_fitness(const dataset &ds, const std::vector<pair_problem> &pairs, std::span<const double> genes, const de_config &de, const fitness_config &fit, const solver_config &solver, multi_class_model *model_out = nullptr, const evaluation_hook &hook = {}) {
    const std::vector<pair_params> params = decode_genome(genes, pairs.size(), de.base_cost, de.sigma_floor);
    multi_class_model model = train_ovo(ds, pairs, params, solver, fit.sigmoid);
    const std::vector<pair_evaluation> evals = evaluate_pairs(model, pairs, ds);
    if (hook) {
        hook(evals);
    }
    fitness_result r = evaluate_fitness(evals, ds.labels, ds.num_classes(), fit);
    if (model_out) {
        *model_out = std::move(model);
    }
    return r;
}

struct isvm_de_result {
    de_result search{};
    multi_class_model model{};
    std::vector<pair_params> params{};
};

/// Full i-SVM-DE training on one training partition.
[[nodiscard]] inline isvm_de_result train_isvm_de(const dataset &ds, const de_config &de, const fitness_config &fit, const solver_config &solver = {}, const generation_observer &observer = {}, const evaluation_hook &hook = {}) {
    fit.validate();
    const std::vector<pair_problem> pairs = decompose(ds);
    const std::vector<gene_bounds> bounds = genome_bounds(pairs.size());
    const genome_objective objective = [&](const std::vector<double> &genes) {
        try {
            return genome_fitness(ds, pairs, genes, de, fit, solver, nullptr, hook).value;
        } catch (const numerical_error &) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    isvm_de_result out;
    out.search = run_de(bounds, de, objective, observer);
    out.params = decode_genome(out.search.best.genes, pairs.size(), de.base_cost, de.sigma_floor);
    out.model = train_ovo(ds, pairs, out.params, solver, fit.sigmoid);
    return out;
}

}  // namespace imbalsvm

#endif  // IMBALSVM_DE_OPTIMIZER_HPP_
