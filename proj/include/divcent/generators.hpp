#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "divcent/graph.hpp"

namespace divcent {

/// A generated instance. Every generator emits bidirected, loop-free graphs
/// and two-community affiliations with b = 1 - r exactly.
struct Generated {
    Graph graph;
    AffiliationMatrix affiliation;
};

enum class Model {
    FullyRandom,
    PreferentialAttachment,
    PolarityAttachment,
    ChangeLocal,
    ChangeNeighborhood,
    NineClusters,
    TwoBlock,
};

std::string_view to_string(Model m);
std::optional<Model> parse_model(std::string_view name);

struct GenSpec {
    Model model = Model::FullyRandom;
    std::size_t n = 1000;
    /// Edge probability for the fully random model.
    double e = 0.2;
    /// Attachment count for preferential attachment.
    std::size_t m = 20;
    /// Balanced bridge nodes for the two-block model.
    std::size_t bridges = 30;
    std::uint64_t seed = 0;

    /// Throws BadParams on n == 0, e outside [0, 1], m outside [1, n], or
    /// more bridges than nodes.
    void validate() const;
};

/// Dispatches on spec.model. The fixed-size models ignore n, e and m.
Generated generate(const GenSpec& spec);

/// Erdos-Renyi: each unordered pair joined with probability e; r ~ U(0, 1).
Generated gen_fully_random(std::size_t n, double e, std::uint64_t seed);

/// Starts from an m-clique; every later node links to m distinct earlier nodes
/// drawn with probability proportional to degree (degrees frozen for the step,
/// duplicate draws discarded).
Generated gen_preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed);

/// Pair (i, j) joined with probability 0.5 (r_i r_j + b_i b_j).
Generated gen_polarity_attachment(std::size_t n, std::uint64_t seed);

/// Probability that the polarity-attachment model links nodes with the given
/// red affiliations.
double polarity_link_probability(double red_i, double red_j);

struct LocalPolarityGraph : Generated {
    std::vector<NodeId> red_polarized;   // 150 nodes, r = 0.99
    std::vector<NodeId> balanced;        // 300 nodes, r = 0.5
    std::vector<NodeId> blue_polarized;  // 150 nodes, r = 0.01
};

/// 2000-node fully random graph (e = 0.2) in which 600 random nodes are
/// reassigned to the three polarity groups.
LocalPolarityGraph gen_change_local_polarity(std::uint64_t seed);

struct NeighborhoodPolarityGraph : Generated {
    std::vector<NodeId> rebalanced;  // 600 nodes set to r = b = 0.5
};

/// 2000-node polarity-attachment graph; 600 random nodes are set balanced
/// after the edges are drawn, so their neighbourhoods keep the polarization
/// of their original affiliation.
NeighborhoodPolarityGraph gen_change_neighborhood_polarity(std::uint64_t seed);

struct NineClustersGraph : Generated {
    static constexpr std::array<std::size_t, 3> kRowSizes{50, 150, 450};
    static constexpr std::array<std::string_view, 9> kNames{"A1", "B1", "C1", "A2", "B2",
                                                            "C2", "A3", "B3", "C3"};
    /// Cluster index per node, row-major: 3 * row + column, column 0/1/2 = A/B/C.
    std::vector<std::uint8_t> cluster;

    std::vector<NodeId> members(std::size_t cluster_index) const;
};

/// Nine clusters in three rows of 50/150/450 nodes. Pairs inside a cluster
/// link with probability 0.5; pairs in adjacent clusters (A_k-B_k, B_k-C_k,
/// B1-B2, B2-B3) with probability 0.1; other pairs never. B nodes are
/// balanced, the rest draw r ~ U(0, 1).
NineClustersGraph gen_nine_clusters(std::uint64_t seed);

/// Whether two clusters of the nine-cluster layout are joined.
bool nine_clusters_adjacent(std::size_t a, std::size_t b);

struct TwoBlockGraph : Generated {
    /// 0 = blue block (r = 0.05), 1 = red block (r = 0.95), 2 = bridge (r = 0.5).
    std::vector<std::uint8_t> role;
};

/// Planted two-community polarity-attachment graph: n - bridges nodes split
/// evenly between r = 0.05 and r = 0.95 blocks plus `bridges` balanced nodes,
/// all pairs linked by the polarity-attachment rule.
TwoBlockGraph gen_two_block(std::size_t n, std::size_t bridges, std::uint64_t seed);

}  // namespace divcent
