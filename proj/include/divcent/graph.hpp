#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace divcent {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable directed graph in compressed sparse row form. Out-lists are
/// sorted ascending and free of duplicates; self-loops are allowed.
class Graph {
public:
    Graph() = default;

    std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size(); }

    std::span<const NodeId> out(NodeId i) const {
        return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
    }
    std::size_t out_degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }

    bool has_edge(NodeId from, NodeId to) const;
    bool has_sink() const;

    /// All edges in (source, target) lexicographic order.
    std::vector<Edge> edges() const;

    /// In-adjacency in the same CSR layout: position k of in_offsets()/in_sources()
    /// lists every j with (j, i) in E, ascending.
    struct Reverse {
        std::vector<std::size_t> offsets;
        std::vector<NodeId> sources;
        std::span<const NodeId> in(NodeId i) const {
            return {sources.data() + offsets[i], sources.data() + offsets[i + 1]};
        }
    };
    Reverse reverse() const;

    bool operator==(const Graph&) const = default;

private:
    friend Graph build_graph(std::size_t, std::span<const Edge>, std::size_t*);

    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
};

/// Builds a graph on nodes 0..n-1. Duplicate edges are collapsed; when
/// `duplicates` is non-null it receives the number of dropped copies.
/// Throws OutOfRangeNode for bad endpoints and BadParams for n == 0.
Graph build_graph(std::size_t n, std::span<const Edge> edges, std::size_t* duplicates = nullptr);

/// Adds an edge from every sink to every other node.
Graph patch_sinks(const Graph& g);

/// Undirected view stored as a bidirected graph; self-loops dropped.
Graph symmetrize(const Graph& g);

bool is_symmetric(const Graph& g);

/// A subgraph together with the original id of each of its nodes.
struct Subgraph {
    Graph graph;
    std::vector<NodeId> original_ids;
};

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Largest weakly connected component. Ties go to the component holding the
/// smallest node id.
Subgraph largest_component(const Graph& g);

/// Number of weakly connected components.
std::size_t component_count(const Graph& g);

/// Per-node community weights q(i), each row on the probability simplex.
class AffiliationMatrix {
public:
    static constexpr double kSimplexTolerance = 1e-6;

    AffiliationMatrix() = default;

    /// `rows` is row-major with `k` entries per node. Throws BadSimplex when a
    /// row has a negative entry or does not sum to one within kSimplexTolerance.
    AffiliationMatrix(std::size_t k, std::vector<double> rows);

    /// Two communities with q(i) = (1 - red[i], red[i]).
    static AffiliationMatrix from_red(std::span<const double> red);

    std::size_t size() const noexcept { return k_ == 0 ? 0 : values_.size() / k_; }
    std::size_t communities() const noexcept { return k_; }

    std::span<const double> row(NodeId i) const { return {values_.data() + i * k_, k_}; }

    // Two-community accessors; throw WrongK unless communities() == 2.
    double blue(NodeId i) const;
    double red(NodeId i) const;

    AffiliationMatrix subset(std::span<const NodeId> nodes) const;

    bool operator==(const AffiliationMatrix&) const = default;

private:
    std::size_t k_ = 0;
    std::vector<double> values_;
};

/// Nonnegative per-node scores summing to one.
class ScoreVector {
public:
    static constexpr double kNormTolerance = 1e-9;

    ScoreVector() = default;

    /// Throws BadParams if any entry is negative or the sum is off by more
    /// than kNormTolerance.
    explicit ScoreVector(std::vector<double> values);

    /// Divides by the sum. Throws DegenerateMass if the sum is not positive.
    static ScoreVector normalized(std::vector<double> values);

    static ScoreVector uniform(std::size_t n);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

/// Neumaier-compensated sum.
double stable_sum(std::span<const double> xs);

}  // namespace divcent
