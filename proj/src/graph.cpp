#include "divcent/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "divcent/error.hpp"

namespace divcent {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::OutOfRangeNode: return "OutOfRangeNode";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::MissingNode: return "MissingNode";
        case ErrorKind::DuplicateNode: return "DuplicateNode";
        case ErrorKind::BadSimplex: return "BadSimplex";
        case ErrorKind::SinkPresent: return "SinkPresent";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::DegenerateMass: return "DegenerateMass";
        case ErrorKind::WrongK: return "WrongK";
        case ErrorKind::BadParams: return "BadParams";
        case ErrorKind::DegenerateRange: return "DegenerateRange";
        case ErrorKind::TooFewSamples: return "TooFewSamples";
        case ErrorKind::Disconnected: return "Disconnected";
        case ErrorKind::NotSymmetric: return "NotSymmetric";
        case ErrorKind::BadK: return "BadK";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

double stable_sum(std::span<const double> xs) {
    double sum = 0.0;
    double comp = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

// ---------------------------------------------------------------------------
// Graph

Graph build_graph(std::size_t n, std::span<const Edge> edges, std::size_t* duplicates) {
    if (n == 0) {
        throw Error(ErrorKind::BadParams, "graph must have at least one node");
    }
    std::vector<Edge> sorted(edges.begin(), edges.end());
    for (const auto& [u, v] : sorted) {
        if (u >= n || v >= n) {
            throw Error(ErrorKind::OutOfRangeNode,
                        "edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") has an endpoint outside [0, " + std::to_string(n) + ")");
        }
    }
    std::sort(sorted.begin(), sorted.end());
    const auto last = std::unique(sorted.begin(), sorted.end());
    if (duplicates != nullptr) {
        *duplicates = static_cast<std::size_t>(sorted.end() - last);
    }
    sorted.erase(last, sorted.end());

    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (const auto& e : sorted) {
        ++g.offsets_[e.first + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.targets_.reserve(sorted.size());
    for (const auto& e : sorted) {
        g.targets_.push_back(e.second);
    }
    return g;
}

bool Graph::has_edge(NodeId from, NodeId to) const {
    const auto adj = out(from);
    return std::binary_search(adj.begin(), adj.end(), to);
}

bool Graph::has_sink() const {
    for (NodeId i = 0; i < size(); ++i) {
        if (out_degree(i) == 0) return true;
    }
    return false;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count());
    for (NodeId i = 0; i < size(); ++i) {
        for (NodeId j : out(i)) result.emplace_back(i, j);
    }
    return result;
}

Graph::Reverse Graph::reverse() const {
    Reverse r;
    const std::size_t n = size();
    r.offsets.assign(n + 1, 0);
    for (NodeId t : targets_) ++r.offsets[t + 1];
    std::partial_sum(r.offsets.begin(), r.offsets.end(), r.offsets.begin());
    r.sources.resize(targets_.size());
    std::vector<std::size_t> cursor(r.offsets.begin(), r.offsets.end() - 1);
    // Sources are visited in ascending order, so each in-list comes out sorted.
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j : out(i)) r.sources[cursor[j]++] = i;
    }
    return r;
}

Graph patch_sinks(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<Edge> edges = g.edges();
    bool changed = false;
    for (NodeId i = 0; i < n; ++i) {
        if (g.out_degree(i) != 0) continue;
        for (NodeId j = 0; j < n; ++j) {
            if (j != i) {
                edges.emplace_back(i, j);
                changed = true;
            }
        }
    }
    return changed ? build_graph(n, edges) : g;
}

Graph symmetrize(const Graph& g) {
    std::vector<Edge> edges;
    edges.reserve(2 * g.edge_count());
    for (const auto& [u, v] : g.edges()) {
        if (u == v) continue;
        edges.emplace_back(u, v);
        edges.emplace_back(v, u);
    }
    return build_graph(g.size(), edges);
}

bool is_symmetric(const Graph& g) {
    for (NodeId i = 0; i < g.size(); ++i) {
        for (NodeId j : g.out(i)) {
            if (!g.has_edge(j, i)) return false;
        }
    }
    return true;
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
    constexpr NodeId kAbsent = static_cast<NodeId>(-1);
    std::vector<NodeId> local(g.size(), kAbsent);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k] >= g.size()) {
            throw Error(ErrorKind::OutOfRangeNode, "subgraph node out of range");
        }
        local[nodes[k]] = static_cast<NodeId>(k);
    }
    std::vector<Edge> edges;
    for (NodeId u : nodes) {
        for (NodeId v : g.out(u)) {
            if (local[v] != kAbsent) edges.emplace_back(local[u], local[v]);
        }
    }
    return {build_graph(nodes.size(), edges), std::vector<NodeId>(nodes.begin(), nodes.end())};
}

namespace {

// Component label per node over the undirected view, labels in order of
// their smallest member.
std::vector<std::size_t> weak_components(const Graph& g, std::size_t& count) {
    const Graph u = symmetrize(g);
    constexpr auto kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(u.size(), kUnset);
    std::vector<NodeId> stack;
    count = 0;
    for (NodeId s = 0; s < u.size(); ++s) {
        if (label[s] != kUnset) continue;
        label[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            for (NodeId w : u.out(v)) {
                if (label[w] == kUnset) {
                    label[w] = count;
                    stack.push_back(w);
                }
            }
        }
        ++count;
    }
    return label;
}

}  // namespace

std::size_t component_count(const Graph& g) {
    std::size_t count = 0;
    weak_components(g, count);
    return count;
}

Subgraph largest_component(const Graph& g) {
    std::size_t count = 0;
    const auto label = weak_components(g, count);
    std::vector<std::size_t> sizes(count, 0);
    for (auto l : label) ++sizes[l];
    const auto best = static_cast<std::size_t>(
        std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<NodeId> nodes;
    for (NodeId i = 0; i < g.size(); ++i) {
        if (label[i] == best) nodes.push_back(i);
    }
    return induced_subgraph(g, nodes);
}

// ---------------------------------------------------------------------------
// AffiliationMatrix

AffiliationMatrix::AffiliationMatrix(std::size_t k, std::vector<double> rows)
    : k_(k), values_(std::move(rows)) {
    if (k_ == 0) {
        throw Error(ErrorKind::BadParams, "affiliation needs at least one community");
    }
    if (values_.size() % k_ != 0) {
        throw Error(ErrorKind::BadParams, "affiliation data is not a whole number of rows");
    }
    for (std::size_t i = 0; i < size(); ++i) {
        const auto r = row(static_cast<NodeId>(i));
        if (std::any_of(r.begin(), r.end(), [](double x) { return !(x >= 0.0); })) {
            throw Error(ErrorKind::BadSimplex,
                        "node " + std::to_string(i) + " has a negative affiliation weight");
        }
        if (std::abs(stable_sum(r) - 1.0) > kSimplexTolerance) {
            throw Error(ErrorKind::BadSimplex,
                        "node " + std::to_string(i) + " affiliation does not sum to 1");
        }
    }
}

AffiliationMatrix AffiliationMatrix::from_red(std::span<const double> red) {
    std::vector<double> rows;
    rows.reserve(2 * red.size());
    for (double r : red) {
        rows.push_back(1.0 - r);
        rows.push_back(r);
    }
    return AffiliationMatrix(2, std::move(rows));
}

double AffiliationMatrix::blue(NodeId i) const {
    if (k_ != 2) throw Error(ErrorKind::WrongK, "blue/red affiliations need K = 2");
    return values_[2 * i];
}

double AffiliationMatrix::red(NodeId i) const {
    if (k_ != 2) throw Error(ErrorKind::WrongK, "blue/red affiliations need K = 2");
    return values_[2 * i + 1];
}

AffiliationMatrix AffiliationMatrix::subset(std::span<const NodeId> nodes) const {
    std::vector<double> rows;
    rows.reserve(nodes.size() * k_);
    for (NodeId i : nodes) {
        const auto r = row(i);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    return AffiliationMatrix(k_, std::move(rows));
}

// ---------------------------------------------------------------------------
// ScoreVector

ScoreVector::ScoreVector(std::vector<double> values) : values_(std::move(values)) {
    if (std::any_of(values_.begin(), values_.end(), [](double x) { return !(x >= 0.0); })) {
        throw Error(ErrorKind::BadParams, "scores must be nonnegative");
    }
    if (std::abs(stable_sum(values_) - 1.0) > kNormTolerance) {
        throw Error(ErrorKind::BadParams, "scores must sum to 1");
    }
}

ScoreVector ScoreVector::normalized(std::vector<double> values) {
    if (std::any_of(values.begin(), values.end(), [](double x) { return !(x >= 0.0); })) {
        throw Error(ErrorKind::BadParams, "scores must be nonnegative");
    }
    const double total = stable_sum(values);
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw Error(ErrorKind::DegenerateMass, "cannot normalize a vector with no mass");
    }
    for (double& x : values) x /= total;
    ScoreVector s;
    s.values_ = std::move(values);
    return s;
}

ScoreVector ScoreVector::uniform(std::size_t n) {
    return normalized(std::vector<double>(n, 1.0));
}

}  // namespace divcent
