#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "divcent/error.hpp"
#include "divcent/graph.hpp"
#include "divcent/random.hpp"
#include "oracles.hpp"

namespace testing_support {

using namespace divcent;

// Kind of the divcent::Error thrown by f, if any.
template <class F>
std::optional<ErrorKind> error_kind(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

inline Graph graph_of(std::size_t n, const std::vector<Edge>& edges) { return build_graph(n, edges); }

inline std::vector<Edge> bidirect(const std::vector<Edge>& edges) {
    std::vector<Edge> out;
    for (auto [a, b] : edges) {
        out.emplace_back(a, b);
        out.emplace_back(b, a);
    }
    return out;
}

// Each ordered (or unordered, when bidirected) pair joined with probability
// `prob`; no self-loops.
inline Graph random_graph(Rng& rng, std::size_t n, double prob, bool bidirected) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 0; j < n; ++j) {
            if (i == j || (bidirected && j < i)) continue;
            if (!rng.bernoulli(prob)) continue;
            edges.emplace_back(i, j);
            if (bidirected) edges.emplace_back(j, i);
        }
    }
    return build_graph(n, edges);
}

inline Graph random_sinkfree_graph(Rng& rng, std::size_t n, double prob, bool bidirected) {
    return patch_sinks(random_graph(rng, n, prob, bidirected));
}

inline AffiliationMatrix random_affiliation(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<double> rows(n * k);
    for (std::size_t i = 0; i < n; ++i) {
        double total = 0.0;
        for (std::size_t c = 0; c < k; ++c) total += rows[i * k + c] = rng.uniform01();
        for (std::size_t c = 0; c < k; ++c) rows[i * k + c] /= total;
    }
    return AffiliationMatrix(k, std::move(rows));
}

inline AffiliationMatrix balanced_affiliation(std::size_t n) {
    return AffiliationMatrix::from_red(std::vector<double>(n, 0.5));
}

inline oracle::EdgeList to_oracle(const Graph& g) {
    oracle::EdgeList out;
    for (auto [a, b] : g.edges()) out.emplace_back(static_cast<int>(a), static_cast<int>(b));
    return out;
}

inline oracle::Matrix rows_of(const AffiliationMatrix& a) {
    oracle::Matrix out;
    for (NodeId i = 0; i < a.size(); ++i) {
        auto r = a.row(i);
        out.emplace_back(r.begin(), r.end());
    }
    return out;
}

inline std::vector<NodeId> random_permutation(Rng& rng, std::size_t n) {
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    return perm;
}

// Node i of g becomes node perm[i].
inline Graph permute(const Graph& g, const std::vector<NodeId>& perm) {
    std::vector<Edge> edges;
    for (auto [a, b] : g.edges()) edges.emplace_back(perm[a], perm[b]);
    return build_graph(g.size(), edges);
}

inline AffiliationMatrix permute(const AffiliationMatrix& a, const std::vector<NodeId>& perm) {
    const std::size_t k = a.communities();
    std::vector<double> rows(a.size() * k);
    for (NodeId i = 0; i < a.size(); ++i) {
        auto r = a.row(i);
        std::copy(r.begin(), r.end(), rows.begin() + static_cast<std::ptrdiff_t>(perm[i] * k));
    }
    return AffiliationMatrix(k, std::move(rows));
}

inline double linf(std::span<const double> x, std::span<const double> y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

}  // namespace testing_support
