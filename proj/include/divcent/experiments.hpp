#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "divcent/analysis.hpp"
#include "divcent/centrality.hpp"
#include "divcent/generators.hpp"

namespace divcent {

/// Shared knobs for the repeated-run experiments. Run r uses the seed
/// run_seed(seed, r), so every aggregate can be regenerated from (seed, runs).
struct ExperimentOptions {
    std::size_t runs = 50;
    std::uint64_t seed = 1;
    /// 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;
    SolverConfig solver;
    double alpha = 0.05;
};

std::uint64_t run_seed(std::uint64_t master, std::size_t run);

/// Calls body(r) for r in [0, count) on a pool of worker threads. The first
/// exception (lowest run index) is rethrown after all workers join.
void parallel_runs(std::size_t count, std::size_t threads,
                   const std::function<void(std::size_t)>& body);

// ---------------------------------------------------------------------------
// Convergence: iteration counts of PageRank and diverse centrality.

struct ConvergenceResult {
    Model model = Model::FullyRandom;
    std::vector<std::size_t> pagerank_iterations;
    std::vector<std::size_t> dc_iterations;
    /// Runs in which the diverse solver hit max_iters.
    std::size_t dc_failures = 0;
    std::size_t pagerank_failures = 0;

    double mean_pagerank() const;
    double mean_dc() const;
    /// mean_dc() / mean_pagerank().
    double ratio() const;
};

/// Each run draws a fresh graph of `model` with n nodes (e = 0.2, m = 20) and
/// solves both models from the uniform start.
ConvergenceResult run_convergence(Model model, std::size_t n, const ExperimentOptions& opts);

// ---------------------------------------------------------------------------
// Uniqueness: uniform versus random initialization.

struct UniquenessResult {
    Model model = Model::FullyRandom;
    std::vector<double> max_abs_diff;   // per run
    std::vector<double> mean_abs_diff;  // per run

    double worst() const;
    double average() const;
};

UniquenessResult run_uniqueness(Model model, std::size_t n, const ExperimentOptions& opts);

// ---------------------------------------------------------------------------
// Per-bucket comparisons for the polarity experiments.

struct GroupStats {
    std::size_t count = 0;
    double mean = 0.0;
};

/// Welch comparison of a "balanced" group against a "polarized" group.
struct BucketComparison {
    GroupStats balanced;
    GroupStats polarized;
    /// Absent when either group has fewer than two samples.
    std::optional<TTestResult> test;

    double difference() const { return balanced.mean - polarized.mean; }
};

struct LocalPolarityBucket {
    /// Diverse centrality means for red-polarized, balanced, blue-polarized nodes.
    GroupStats dc_red, dc_balanced, dc_blue;
    BucketComparison dc;
    BucketComparison neighbor_bias;
};

struct LocalPolarityResult {
    std::array<LocalPolarityBucket, kBucketCount> buckets;
};

/// Change-local-polarity graphs; PageRank buckets over the 600 reassigned
/// nodes, balanced (r = 0.5) versus polarized (r = 0.99 or 0.01) nodes compared
/// under diverse centrality and neighbour-bias reweighting.
LocalPolarityResult run_local_polarity(const ExperimentOptions& opts);

struct NeighborhoodPolarityBucket {
    /// Diverse centrality means by neighbourhood class (R/(R+B) above 0.55,
    /// within [0.45, 0.55], below 0.45).
    GroupStats dc_red, dc_balanced, dc_blue;
    BucketComparison dc;
    BucketComparison node_bias;

    double balanced_fraction() const;
};

struct NeighborhoodPolarityResult {
    std::array<NeighborhoodPolarityBucket, kBucketCount> buckets;
    /// Share of all analyzed nodes classified as balanced-neighbourhood.
    double balanced_fraction = 0.0;
};

NeighborhoodPolarityResult run_neighborhood_polarity(const ExperimentOptions& opts);

// ---------------------------------------------------------------------------
// Nine clusters: centrality of the balanced B column.

struct NineClustersResult {
    /// Per run, mean score of B1, B2, B3.
    std::vector<std::array<double, 3>> pagerank_means;
    std::vector<std::array<double, 3>> dc_means;
    /// R/(R+B) over every B-column node of every run.
    double ratio_mean = 0.0;
    double ratio_sd = 0.0;

    /// Share of runs with B1 < B2 < B3.
    double pagerank_monotone_fraction() const;
    double dc_monotone_fraction() const;
    std::array<double, 3> average(bool dc) const;
};

NineClustersResult run_nine_clusters(const ExperimentOptions& opts);

// ---------------------------------------------------------------------------
// Cut edges among top-ranked nodes.

struct CutAnalysisResult {
    std::size_t component_nodes = 0;
    std::size_t dropped_nodes = 0;
    std::vector<std::size_t> ks;
    std::vector<std::size_t> dc;
    std::vector<std::size_t> pagerank;
    std::vector<std::size_t> dbc;
};

/// Restricts to the largest weakly connected component, splits it by the
/// spectral bipartition of its undirected view, and counts cut edges among the
/// top-k nodes under each ranking. Values of k above the component size are
/// clamped to it. PageRank and diverse centrality run on the sink-patched
/// component unless patch_sinks is false. Throws Disconnected if the
/// component has fewer than two nodes.
CutAnalysisResult cut_analysis(const Graph& g, const AffiliationMatrix& a,
                               std::span<const std::size_t> ks, const SolverConfig& cfg,
                               bool patch_sinks = true);

struct BridgingResult {
    std::vector<CutAnalysisResult> runs;

    /// Share of runs where diverse centrality's count is at least PageRank's
    /// and at least diverse betweenness' for every k.
    double dominance_fraction() const;
};

/// Cut analysis on two-block graphs (gen_two_block(n, bridges, seed)).
BridgingResult run_bridging(std::size_t n, std::size_t bridges, std::span<const std::size_t> ks,
                            const ExperimentOptions& opts);

}  // namespace divcent
