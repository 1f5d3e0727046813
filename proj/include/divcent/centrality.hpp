#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "divcent/graph.hpp"

namespace divcent {

/// Concave aggregator applied to the per-community score vector.
enum class Aggregator {
    Minimum,
    GeometricMean,
    /// L1 norm. Not concave in the interesting sense; with it the diverse
    /// update collapses to ordinary PageRank, which the tests rely on.
    Sum,
};

std::string_view to_string(Aggregator f);
std::optional<Aggregator> parse_aggregator(std::string_view name);

double apply_f(Aggregator f, std::span<const double> x);

enum class InitKind { Uniform, Random };

struct SolverConfig {
    double damping = 0.85;
    double epsilon = 1e-10;
    Aggregator aggregator = Aggregator::Minimum;
    std::size_t max_iters = 10'000;
    InitKind init = InitKind::Uniform;
    /// Only read when init == InitKind::Random.
    std::uint64_t init_seed = 0;
    bool record_trace = false;

    /// Throws BadParams unless 0 < damping < 1, epsilon > 0, max_iters >= 1.
    void validate() const;
};

struct SolverReport {
    std::size_t iterations = 0;
    bool converged = false;
    double final_l1_delta = 0.0;
    /// Filled only when SolverConfig::record_trace is set.
    std::vector<double> per_iteration_delta;
};

struct SolverResult {
    ScoreVector scores;
    SolverReport report;
};

/// Starting vector for a solver run: uniform 1/n, or i.i.d. U(0,1) draws from
/// Rng(init_seed) normalized to sum one.
ScoreVector initial_scores(std::size_t n, const SolverConfig& cfg);

/// Power iteration for s_i = (1-p)/n + p * sum_{j->i} s_j / d_j.
/// Throws SinkPresent, NonConvergence.
SolverResult pagerank(const Graph& g, const SolverConfig& cfg = {});

/// Iterated best response for the diverse centrality fixed point:
///   t_i = f((1-p) q(i)/n + p * sum_{j->i} (s_j / d_j) q(j)),   s'_i = t_i / sum_j t_j
/// until ||s' - s||_1 <= epsilon. A self-loop contributes to its own node's sum.
/// Throws SinkPresent, NonConvergence, DegenerateMass, BadParams (size mismatch).
SolverResult diverse_centrality(const Graph& g, const AffiliationMatrix& a,
                                const SolverConfig& cfg = {});

/// Red and blue affiliation mass of each node's neighbours, in-neighbours and
/// out-neighbours summed separately (a mutual neighbour counts twice), self
/// excluded.
struct NeighborPolarity {
    std::vector<double> red;
    std::vector<double> blue;

    /// R / (R + B), or NaN for a node with no neighbours.
    double red_fraction(NodeId i) const;
};

NeighborPolarity neighbor_polarity(const Graph& g, const AffiliationMatrix& a);

/// s_i * min(r_i, b_i), renormalized. Throws WrongK, DegenerateMass.
ScoreVector reweight_node_bias(const ScoreVector& s, const AffiliationMatrix& a);

/// s_i * min(R_i, B_i) / (R_i + B_i), renormalized; isolated nodes get weight 0.
/// Throws WrongK, DegenerateMass.
ScoreVector reweight_neighbor_bias(const ScoreVector& s, const Graph& g,
                                   const AffiliationMatrix& a);

}  // namespace divcent
