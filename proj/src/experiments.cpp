#include "divcent/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "divcent/betweenness.hpp"
#include "divcent/error.hpp"
#include "divcent/random.hpp"

namespace divcent {

std::uint64_t run_seed(std::uint64_t master, std::size_t run) {
    return Rng(master).split(run).seed();
}

void parallel_runs(std::size_t count, std::size_t threads,
                   const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t r = 0; r < count; ++r) body(r);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::size_t first_error_run = count;
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t r = next++; r < count; r = next++) {
                    try {
                        body(r);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (r < first_error_run) {
                            first_error_run = r;
                            first_error = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

double mean_of(std::span<const double> xs) {
    return xs.empty() ? 0.0 : stable_sum(xs) / static_cast<double>(xs.size());
}

template <typename T>
double mean_of_counts(const std::vector<T>& xs) {
    if (xs.empty()) return 0.0;
    double total = 0.0;
    for (auto x : xs) total += static_cast<double>(x);
    return total / static_cast<double>(xs.size());
}

GroupStats stats_of(const std::vector<double>& xs) { return {xs.size(), mean_of(xs)}; }

BucketComparison compare(const std::vector<double>& balanced, const std::vector<double>& polarized) {
    BucketComparison c;
    c.balanced = stats_of(balanced);
    c.polarized = stats_of(polarized);
    if (balanced.size() >= 2 && polarized.size() >= 2) {
        c.test = welch_t_test(balanced, polarized);
    }
    return c;
}

template <typename T>
void append(std::vector<T>& into, const std::vector<T>& from) {
    into.insert(into.end(), from.begin(), from.end());
}

Generated draw_model(Model model, std::size_t n, std::uint64_t seed) {
    GenSpec spec;
    spec.model = model;
    spec.n = n;
    spec.seed = seed;
    return generate(spec);
}

}  // namespace

// ---------------------------------------------------------------------------

double ConvergenceResult::mean_pagerank() const { return mean_of_counts(pagerank_iterations); }
double ConvergenceResult::mean_dc() const { return mean_of_counts(dc_iterations); }
double ConvergenceResult::ratio() const {
    const double pr = mean_pagerank();
    return pr > 0.0 ? mean_dc() / pr : 0.0;
}

ConvergenceResult run_convergence(Model model, std::size_t n, const ExperimentOptions& opts) {
    ConvergenceResult out;
    out.model = model;
    out.pagerank_iterations.resize(opts.runs);
    out.dc_iterations.resize(opts.runs);
    std::vector<char> pr_failed(opts.runs, 0);
    std::vector<char> dc_failed(opts.runs, 0);

    SolverConfig cfg = opts.solver;
    cfg.init = InitKind::Uniform;
    parallel_runs(opts.runs, opts.threads, [&](std::size_t r) {
        auto inst = draw_model(model, n, run_seed(opts.seed, r));
        const Graph g = patch_sinks(inst.graph);
        auto solve = [&](auto&& fn, std::size_t& iterations, char& failed) {
            try {
                iterations = fn().report.iterations;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NonConvergence) throw;
                iterations = cfg.max_iters;
                failed = 1;
            }
        };
        solve([&] { return pagerank(g, cfg); }, out.pagerank_iterations[r], pr_failed[r]);
        solve([&] { return diverse_centrality(g, inst.affiliation, cfg); }, out.dc_iterations[r],
              dc_failed[r]);
    });
    out.pagerank_failures = static_cast<std::size_t>(std::count(pr_failed.begin(), pr_failed.end(), 1));
    out.dc_failures = static_cast<std::size_t>(std::count(dc_failed.begin(), dc_failed.end(), 1));
    return out;
}

// ---------------------------------------------------------------------------

double UniquenessResult::worst() const {
    return max_abs_diff.empty() ? 0.0 : *std::max_element(max_abs_diff.begin(), max_abs_diff.end());
}

double UniquenessResult::average() const { return mean_of(mean_abs_diff); }

UniquenessResult run_uniqueness(Model model, std::size_t n, const ExperimentOptions& opts) {
    UniquenessResult out;
    out.model = model;
    out.max_abs_diff.resize(opts.runs);
    out.mean_abs_diff.resize(opts.runs);
    parallel_runs(opts.runs, opts.threads, [&](std::size_t r) {
        const auto seed = run_seed(opts.seed, r);
        auto inst = draw_model(model, n, seed);
        const std::uint64_t init_seed[] = {mix64(seed)};
        const auto cmp = compare_inits(patch_sinks(inst.graph), inst.affiliation, opts.solver,
                                       init_seed);
        out.max_abs_diff[r] = cmp.max_abs_diff;
        out.mean_abs_diff[r] = cmp.mean_abs_diff;
    });
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Per-bucket score samples gathered from one run.
struct LocalSamples {
    std::array<std::vector<double>, kBucketCount> dc_red, dc_balanced, dc_blue;
    std::array<std::vector<double>, kBucketCount> nb_balanced, nb_polarized;
};

}  // namespace

LocalPolarityResult run_local_polarity(const ExperimentOptions& opts) {
    std::vector<LocalSamples> per_run(opts.runs);
    parallel_runs(opts.runs, opts.threads, [&](std::size_t r) {
        const auto inst = gen_change_local_polarity(run_seed(opts.seed, r));
        const Graph g = patch_sinks(inst.graph);
        SolverConfig cfg = opts.solver;
        const auto pr = pagerank(g, cfg).scores;
        const auto dc = diverse_centrality(g, inst.affiliation, cfg).scores;
        const auto nb = reweight_neighbor_bias(pr, g, inst.affiliation);

        enum Group { kRed, kBalanced, kBlue };
        std::vector<NodeId> analyzed;
        std::vector<Group> group;
        for (auto [set, tag] : {std::pair{&inst.red_polarized, kRed},
                                std::pair{&inst.balanced, kBalanced},
                                std::pair{&inst.blue_polarized, kBlue}}) {
            analyzed.insert(analyzed.end(), set->begin(), set->end());
            group.insert(group.end(), set->size(), tag);
        }
        const auto buckets = bucketize(pr.values(), analyzed);
        auto& s = per_run[r];
        for (std::size_t k = 0; k < analyzed.size(); ++k) {
            const NodeId i = analyzed[k];
            const auto b = buckets.member_buckets[k];
            switch (group[k]) {
                case kRed: s.dc_red[b].push_back(dc[i]); break;
                case kBalanced: s.dc_balanced[b].push_back(dc[i]); break;
                case kBlue: s.dc_blue[b].push_back(dc[i]); break;
            }
            (group[k] == kBalanced ? s.nb_balanced : s.nb_polarized)[b].push_back(nb[i]);
        }
    });

    LocalPolarityResult out;
    for (std::size_t b = 0; b < kBucketCount; ++b) {
        std::vector<double> red, balanced, blue, nb_balanced, nb_polarized;
        for (const auto& s : per_run) {
            append(red, s.dc_red[b]);
            append(balanced, s.dc_balanced[b]);
            append(blue, s.dc_blue[b]);
            append(nb_balanced, s.nb_balanced[b]);
            append(nb_polarized, s.nb_polarized[b]);
        }
        auto& bucket = out.buckets[b];
        bucket.dc_red = stats_of(red);
        bucket.dc_balanced = stats_of(balanced);
        bucket.dc_blue = stats_of(blue);
        std::vector<double> polarized = red;
        append(polarized, blue);
        bucket.dc = compare(balanced, polarized);
        bucket.neighbor_bias = compare(nb_balanced, nb_polarized);
    }
    return out;
}

// ---------------------------------------------------------------------------

double NeighborhoodPolarityBucket::balanced_fraction() const {
    const auto total = dc_red.count + dc_balanced.count + dc_blue.count;
    return total == 0 ? 0.0 : static_cast<double>(dc_balanced.count) / static_cast<double>(total);
}

namespace {

struct NeighborhoodSamples {
    std::array<std::vector<double>, kBucketCount> dc_red, dc_balanced, dc_blue;
    std::array<std::vector<double>, kBucketCount> nb_balanced, nb_polarized;
};

}  // namespace

NeighborhoodPolarityResult run_neighborhood_polarity(const ExperimentOptions& opts) {
    std::vector<NeighborhoodSamples> per_run(opts.runs);
    parallel_runs(opts.runs, opts.threads, [&](std::size_t r) {
        const auto inst = gen_change_neighborhood_polarity(run_seed(opts.seed, r));
        const Graph g = patch_sinks(inst.graph);
        const auto pr = pagerank(g, opts.solver).scores;
        const auto dc = diverse_centrality(g, inst.affiliation, opts.solver).scores;
        const auto node_bias = reweight_node_bias(pr, inst.affiliation);
        // Neighbourhoods are read from the generated graph, not the patched one.
        const auto np = neighbor_polarity(inst.graph, inst.affiliation);

        std::vector<NodeId> analyzed;
        for (NodeId i : inst.rebalanced) {
            if (!std::isnan(np.red_fraction(i))) analyzed.push_back(i);
        }
        const auto buckets = bucketize(pr.values(), analyzed);
        auto& s = per_run[r];
        for (std::size_t k = 0; k < analyzed.size(); ++k) {
            const NodeId i = analyzed[k];
            const auto b = buckets.member_buckets[k];
            const double frac = np.red_fraction(i);
            if (is_balanced_neighborhood(frac)) {
                s.dc_balanced[b].push_back(dc[i]);
                s.nb_balanced[b].push_back(node_bias[i]);
            } else {
                (frac > 0.55 ? s.dc_red : s.dc_blue)[b].push_back(dc[i]);
                s.nb_polarized[b].push_back(node_bias[i]);
            }
        }
    });

    NeighborhoodPolarityResult out;
    std::size_t balanced_total = 0;
    std::size_t all_total = 0;
    for (std::size_t b = 0; b < kBucketCount; ++b) {
        std::vector<double> red, balanced, blue, nb_balanced, nb_polarized;
        for (const auto& s : per_run) {
            append(red, s.dc_red[b]);
            append(balanced, s.dc_balanced[b]);
            append(blue, s.dc_blue[b]);
            append(nb_balanced, s.nb_balanced[b]);
            append(nb_polarized, s.nb_polarized[b]);
        }
        auto& bucket = out.buckets[b];
        bucket.dc_red = stats_of(red);
        bucket.dc_balanced = stats_of(balanced);
        bucket.dc_blue = stats_of(blue);
        std::vector<double> polarized = red;
        append(polarized, blue);
        bucket.dc = compare(balanced, polarized);
        bucket.node_bias = compare(nb_balanced, nb_polarized);
        balanced_total += balanced.size();
        all_total += balanced.size() + polarized.size();
    }
    out.balanced_fraction =
        all_total == 0 ? 0.0 : static_cast<double>(balanced_total) / static_cast<double>(all_total);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

double monotone_fraction(const std::vector<std::array<double, 3>>& means) {
    if (means.empty()) return 0.0;
    const auto ok = std::count_if(means.begin(), means.end(), [](const auto& m) {
        return m[0] < m[1] && m[1] < m[2];
    });
    return static_cast<double>(ok) / static_cast<double>(means.size());
}

}  // namespace

double NineClustersResult::pagerank_monotone_fraction() const {
    return monotone_fraction(pagerank_means);
}

double NineClustersResult::dc_monotone_fraction() const { return monotone_fraction(dc_means); }

std::array<double, 3> NineClustersResult::average(bool dc) const {
    const auto& src = dc ? dc_means : pagerank_means;
    std::array<double, 3> out{};
    for (const auto& m : src) {
        for (std::size_t c = 0; c < 3; ++c) out[c] += m[c];
    }
    for (double& x : out) x /= std::max<std::size_t>(1, src.size());
    return out;
}

NineClustersResult run_nine_clusters(const ExperimentOptions& opts) {
    NineClustersResult out;
    out.pagerank_means.resize(opts.runs);
    out.dc_means.resize(opts.runs);
    std::vector<std::vector<double>> ratios(opts.runs);
    parallel_runs(opts.runs, opts.threads, [&](std::size_t r) {
        const auto inst = gen_nine_clusters(run_seed(opts.seed, r));
        const Graph g = patch_sinks(inst.graph);
        const auto pr = pagerank(g, opts.solver).scores;
        const auto dc = diverse_centrality(g, inst.affiliation, opts.solver).scores;
        const auto np = neighbor_polarity(inst.graph, inst.affiliation);
        for (std::size_t row = 0; row < 3; ++row) {
            const auto members = inst.members(3 * row + 1);
            double pr_sum = 0.0, dc_sum = 0.0;
            for (NodeId i : members) {
                pr_sum += pr[i];
                dc_sum += dc[i];
                const double frac = np.red_fraction(i);
                if (!std::isnan(frac)) ratios[r].push_back(frac);
            }
            const auto count = static_cast<double>(members.size());
            out.pagerank_means[r][row] = pr_sum / count;
            out.dc_means[r][row] = dc_sum / count;
        }
    });
    std::vector<double> pooled;
    for (const auto& v : ratios) append(pooled, v);
    out.ratio_mean = mean_of(pooled);
    if (pooled.size() > 1) {
        std::vector<double> sq(pooled.size());
        for (std::size_t i = 0; i < pooled.size(); ++i) {
            sq[i] = (pooled[i] - out.ratio_mean) * (pooled[i] - out.ratio_mean);
        }
        out.ratio_sd = std::sqrt(stable_sum(sq) / static_cast<double>(pooled.size() - 1));
    }
    return out;
}

// ---------------------------------------------------------------------------

CutAnalysisResult cut_analysis(const Graph& g, const AffiliationMatrix& a,
                               std::span<const std::size_t> ks, const SolverConfig& cfg,
                               bool patch) {
    if (a.size() != g.size()) {
        throw Error(ErrorKind::BadParams, "affiliation and graph sizes differ");
    }
    const auto component = largest_component(g);
    const std::size_t n = component.graph.size();
    if (n < 2) {
        throw Error(ErrorKind::Disconnected, "largest component has fewer than two nodes");
    }
    const auto aff = a.subset(component.original_ids);
    const Graph solver_graph = patch ? patch_sinks(component.graph) : component.graph;
    const Graph undirected = symmetrize(component.graph);
    const auto part = spectral_bipartition(undirected);

    const auto pr = pagerank(solver_graph, cfg).scores;
    const auto dc = diverse_centrality(solver_graph, aff, cfg).scores;
    const auto dbc = diverse_betweenness(component.graph, aff).bc;

    CutAnalysisResult out;
    out.component_nodes = n;
    out.dropped_nodes = g.size() - n;
    for (auto k : ks) {
        const std::size_t kk = std::clamp<std::size_t>(k, 1, n);
        out.ks.push_back(kk);
        out.dc.push_back(cut_edges_topk(undirected, part, rank_top_k(dc.values(), kk)));
        out.pagerank.push_back(cut_edges_topk(undirected, part, rank_top_k(pr.values(), kk)));
        out.dbc.push_back(cut_edges_topk(undirected, part, rank_top_k(dbc, kk)));
    }
    return out;
}

double BridgingResult::dominance_fraction() const {
    if (runs.empty()) return 0.0;
    const auto ok = std::count_if(runs.begin(), runs.end(), [](const CutAnalysisResult& c) {
        for (std::size_t i = 0; i < c.ks.size(); ++i) {
            if (c.dc[i] < c.pagerank[i] || c.dc[i] < c.dbc[i]) return false;
        }
        return true;
    });
    return static_cast<double>(ok) / static_cast<double>(runs.size());
}

BridgingResult run_bridging(std::size_t n, std::size_t bridges, std::span<const std::size_t> ks,
                            const ExperimentOptions& opts) {
    BridgingResult out;
    out.runs.resize(opts.runs);
    parallel_runs(opts.runs, opts.threads, [&](std::size_t r) {
        const auto inst = gen_two_block(n, bridges, run_seed(opts.seed, r));
        out.runs[r] = cut_analysis(inst.graph, inst.affiliation, ks, opts.solver);
    });
    return out;
}

}  // namespace divcent
