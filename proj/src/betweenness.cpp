#include "divcent/betweenness.hpp"

#include <cmath>

#include "divcent/error.hpp"

namespace divcent {
namespace {

// Generalized Brandes: seeding each target t with pair_weight(s, t) before
// back-propagation yields sum_t delta_st(v) * pair_weight(s, t) at every v.
template <typename PairWeight>
BetweennessScores accumulate(const Graph& g, PairWeight&& pair_weight) {
    const std::size_t n = g.size();
    const auto rev = g.reverse();
    BetweennessScores out{std::vector<double>(n, 0.0)};

    std::vector<long> dist(n);
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    std::vector<NodeId> order;
    order.reserve(n);

    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();

        dist[s] = 0;
        sigma[s] = 1.0;
        order.push_back(s);
        // `order` doubles as the BFS queue; afterwards it holds nodes by
        // nondecreasing distance.
        for (std::size_t head = 0; head < order.size(); ++head) {
            const NodeId v = order[head];
            for (NodeId w : g.out(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    order.push_back(w);
                }
                if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
            }
        }

        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const NodeId w = *it;
            if (w == s) continue;
            const double carried = pair_weight(s, w) + delta[w];
            for (NodeId v : rev.in(w)) {
                if (dist[v] >= 0 && dist[v] == dist[w] - 1) {
                    delta[v] += sigma[v] / sigma[w] * carried;
                }
            }
            out.bc[w] += delta[w];
        }
    }
    return out;
}

}  // namespace

BetweennessScores betweenness(const Graph& g) {
    return accumulate(g, [](NodeId, NodeId) { return 1.0; });
}

BetweennessScores diverse_betweenness(const Graph& g, const AffiliationMatrix& a) {
    if (a.communities() != 2) {
        throw Error(ErrorKind::WrongK, "diverse betweenness needs K = 2");
    }
    if (a.size() != g.size()) {
        throw Error(ErrorKind::BadParams, "affiliation and graph sizes differ");
    }
    return accumulate(g, [&a](NodeId s, NodeId t) { return std::abs(a.red(s) - a.red(t)); });
}

}  // namespace divcent
