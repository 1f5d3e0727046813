#pragma once

#include <vector>

#include "divcent/graph.hpp"

namespace divcent {

/// Unnormalized betweenness over ordered pairs (s, t), s != t, with the
/// endpoints of each pair excluded. Unreachable pairs contribute nothing.
struct BetweennessScores {
    std::vector<double> bc;
};

/// Brandes' dependency accumulation over directed BFS, O(nm).
BetweennessScores betweenness(const Graph& g);

/// Same traversal with every pair dependency delta_st(v) weighted by
/// |r_s - r_t|, r being the second affiliation component. Throws WrongK.
BetweennessScores diverse_betweenness(const Graph& g, const AffiliationMatrix& a);

}  // namespace divcent
