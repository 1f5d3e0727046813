#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "divcent/graph.hpp"

namespace divcent {

struct EdgeList {
    std::size_t n = 0;
    std::vector<Edge> edges;
};

/// Reads "src,dst" lines. Blank lines and lines starting with '#' are skipped,
/// except for an optional "# nodes: N" directive which raises n to at least N
/// so that trailing isolated nodes survive a round trip. Otherwise n is one
/// past the largest id seen.
EdgeList load_edge_list(std::istream& in);

enum class AffiliationFormat {
    /// "node,v" with v in [-1, 1], mapped to (blue, red) = ((1 - v) / 2, (1 + v) / 2).
    Scalar,
    /// "node,q1,...,qK"; rows within 1e-3 of the simplex are renormalized.
    Vector,
};

inline constexpr double kRenormalizeTolerance = 1e-3;

/// Every node in [0, n) must appear exactly once. Throws MissingNode,
/// DuplicateNode, BadSimplex, OutOfRangeNode or ParseError.
AffiliationMatrix load_affiliations(std::istream& in, std::size_t n, AffiliationFormat format,
                                    std::size_t k = 2);

void write_edge_list(std::ostream& out, const Graph& g);
void write_affiliations(std::ostream& out, const AffiliationMatrix& a);

}  // namespace divcent
