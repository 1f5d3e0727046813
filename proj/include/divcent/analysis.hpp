#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "divcent/centrality.hpp"
#include "divcent/graph.hpp"

namespace divcent {

// ---------------------------------------------------------------------------
// Bucketing of PageRank values

inline constexpr std::size_t kBucketCount = 7;

/// The analyzed range is split into 15 equal intervals; intervals 1-5 merge
/// into bucket 0, intervals 6-10 become buckets 1-5, and 11-15 merge into
/// bucket 6. Intervals are half-open on the right except the last.
struct BucketAssignment {
    std::array<double, kBucketCount + 1> edges{};
    /// Bucket of analyzed[k], parallel to the `analyzed` argument.
    std::vector<std::uint8_t> member_buckets;

    std::array<std::size_t, kBucketCount> sizes() const;
};

/// Throws DegenerateRange when every analyzed score is equal, BadParams when
/// `analyzed` is empty.
BucketAssignment bucketize(std::span<const double> scores, std::span<const NodeId> analyzed);

// ---------------------------------------------------------------------------
// Welch's t-test

struct TTestResult {
    double t = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    double mean_diff = 0.0;

    bool significant(double alpha = 0.05) const { return p_value < alpha; }
};

/// Smallest p-value ever reported; smaller values are clamped up to it.
inline constexpr double kMinPValue = 1e-300;

/// Two-sided Welch test of mean(a) - mean(b). Throws TooFewSamples unless both
/// samples have at least two elements. When both variances are zero the result
/// is t = 0, p = 1 for equal means and t = +-inf, p = 0 otherwise.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

/// Two-sided tail probability of Student's t with `df` degrees of freedom.
double student_t_two_sided(double t, double df);

// ---------------------------------------------------------------------------
// Neighbourhood classification

/// 0.45 <= R / (R + B) <= 0.55.
bool is_balanced_neighborhood(double red_fraction);

// ---------------------------------------------------------------------------
// Spectral bipartition

struct Bipartition {
    std::vector<std::uint8_t> label;

    std::size_t count(std::uint8_t side) const;
};

struct SpectralOptions {
    double tolerance = 1e-8;
    std::size_t max_iters = 20'000;
    std::size_t block_size = 8;
};

/// Sign pattern of the Fiedler vector of L = I - D^{-1/2} A D^{-1/2}, found by
/// block orthogonal iteration on the shifted operator 2I - L with the trivial
/// D^{1/2} 1 direction projected out. Negative and zero entries go to
/// cluster 0, positive entries to cluster 1.
/// Throws NotSymmetric, Disconnected, NonConvergence.
Bipartition spectral_bipartition(const Graph& g, const SpectralOptions& opts = {});

/// Fiedler vector itself (unit norm, sign fixed so its first nonzero entry is
/// negative) and its Laplacian eigenvalue.
struct FiedlerPair {
    std::vector<double> vector;
    double eigenvalue = 0.0;
};
FiedlerPair fiedler_vector(const Graph& g, const SpectralOptions& opts = {});

// ---------------------------------------------------------------------------
// Ranking and cut counting

/// k nodes in descending score order, ties broken by ascending id. Throws BadK
/// unless 1 <= k <= n.
std::vector<NodeId> rank_top_k(std::span<const double> scores, std::size_t k);

/// Unordered pairs {i, j} inside `top` joined by an edge in either direction
/// whose endpoints sit on different sides of `part`.
std::size_t cut_edges_topk(const Graph& g, const Bipartition& part, std::span<const NodeId> top);

// ---------------------------------------------------------------------------
// Initialization sensitivity

struct InitComparison {
    /// Largest |s_uniform(i) - s_random(i)| over all nodes and seeds.
    double max_abs_diff = 0.0;
    /// Mean of the same differences over all nodes and seeds.
    double mean_abs_diff = 0.0;
};

/// Solves once from the uniform start and once per seed from a random start,
/// comparing each random-start solution to the uniform one. Solver errors
/// propagate.
InitComparison compare_inits(const Graph& g, const AffiliationMatrix& a, SolverConfig cfg,
                             std::span<const std::uint64_t> seeds);

}  // namespace divcent
