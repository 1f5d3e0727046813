#include "divcent/generators.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

#include "divcent/error.hpp"
#include "divcent/random.hpp"

namespace divcent {
namespace {

// Child streams of the seed; each generator draws polarities, edges and node
// selections from separate streams so changing one phase never shifts another.
enum Stream : std::uint64_t { kPolarity = 0, kEdges = 1, kSelection = 2 };

std::vector<double> uniform_reds(std::size_t n, Rng rng) {
    std::vector<double> red(n);
    for (double& r : red) r = rng.uniform01();
    return red;
}

void add_undirected(std::vector<Edge>& edges, NodeId i, NodeId j) {
    edges.emplace_back(i, j);
    edges.emplace_back(j, i);
}

// k distinct nodes drawn uniformly from [0, n) by a partial Fisher-Yates shuffle.
std::vector<NodeId> sample_nodes(std::size_t n, std::size_t k, Rng rng) {
    std::vector<NodeId> pool(n);
    std::iota(pool.begin(), pool.end(), NodeId{0});
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

Generated polarity_attachment_with(std::vector<double> red, Rng edge_rng) {
    const std::size_t n = red.size();
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (edge_rng.bernoulli(polarity_link_probability(red[i], red[j]))) {
                add_undirected(edges, i, j);
            }
        }
    }
    return {build_graph(n, edges), AffiliationMatrix::from_red(red)};
}

}  // namespace

std::string_view to_string(Model m) {
    switch (m) {
        case Model::FullyRandom: return "fully-random";
        case Model::PreferentialAttachment: return "preferential-attachment";
        case Model::PolarityAttachment: return "polarity-attachment";
        case Model::ChangeLocal: return "change-local";
        case Model::ChangeNeighborhood: return "change-neighborhood";
        case Model::NineClusters: return "nine-clusters";
        case Model::TwoBlock: return "two-block";
    }
    return "unknown";
}

std::optional<Model> parse_model(std::string_view name) {
    for (auto m : {Model::FullyRandom, Model::PreferentialAttachment, Model::PolarityAttachment,
                   Model::ChangeLocal, Model::ChangeNeighborhood, Model::NineClusters,
                   Model::TwoBlock}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

void GenSpec::validate() const {
    if (n == 0) throw Error(ErrorKind::BadParams, "n must be at least 1");
    if (!(e >= 0.0 && e <= 1.0)) {
        throw Error(ErrorKind::BadParams, fmt::format("edge probability {} not in [0, 1]", e));
    }
    if (model == Model::PreferentialAttachment && (m < 1 || m > n)) {
        throw Error(ErrorKind::BadParams, fmt::format("attachment count m = {} not in [1, n = {}]", m, n));
    }
    if (model == Model::TwoBlock && bridges > n) {
        throw Error(ErrorKind::BadParams, "more bridge nodes than nodes");
    }
}

Generated generate(const GenSpec& spec) {
    spec.validate();
    switch (spec.model) {
        case Model::FullyRandom: return gen_fully_random(spec.n, spec.e, spec.seed);
        case Model::PreferentialAttachment:
            return gen_preferential_attachment(spec.n, spec.m, spec.seed);
        case Model::PolarityAttachment: return gen_polarity_attachment(spec.n, spec.seed);
        case Model::ChangeLocal: return gen_change_local_polarity(spec.seed);
        case Model::ChangeNeighborhood: return gen_change_neighborhood_polarity(spec.seed);
        case Model::NineClusters: return gen_nine_clusters(spec.seed);
        case Model::TwoBlock: return gen_two_block(spec.n, spec.bridges, spec.seed);
    }
    throw Error(ErrorKind::BadParams, "unknown model");
}

Generated gen_fully_random(std::size_t n, double e, std::uint64_t seed) {
    GenSpec{.model = Model::FullyRandom, .n = n, .e = e}.validate();
    const Rng root(seed);
    auto red = uniform_reds(n, root.split(kPolarity));
    Rng edge_rng = root.split(kEdges);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(e * static_cast<double>(n) * static_cast<double>(n)) + 16);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (edge_rng.bernoulli(e)) add_undirected(edges, i, j);
        }
    }
    return {build_graph(n, edges), AffiliationMatrix::from_red(red)};
}

Generated gen_preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed) {
    GenSpec{.model = Model::PreferentialAttachment, .n = n, .m = m}.validate();
    const Rng root(seed);
    auto red = uniform_reds(n, root.split(kPolarity));
    Rng edge_rng = root.split(kEdges);

    std::vector<Edge> edges;
    std::vector<std::size_t> degree(n, 0);
    for (NodeId i = 0; i < m; ++i) {
        for (NodeId j = i + 1; j < m; ++j) {
            add_undirected(edges, i, j);
            ++degree[i];
            ++degree[j];
        }
    }

    std::vector<double> cumulative;
    std::vector<bool> taken(n, false);
    std::vector<NodeId> targets;
    for (NodeId i = static_cast<NodeId>(m); i < n; ++i) {
        cumulative.resize(i);
        double running = 0.0;
        for (NodeId j = 0; j < i; ++j) {
            running += static_cast<double>(degree[j]);
            cumulative[j] = running;
        }
        targets.clear();
        while (targets.size() < m) {
            NodeId pick = 0;
            if (running > 0.0) {
                const double x = edge_rng.uniform01() * running;
                pick = static_cast<NodeId>(
                    std::upper_bound(cumulative.begin(), cumulative.end(), x) - cumulative.begin());
                pick = std::min<NodeId>(pick, i - 1);
            } else {
                // m = 1 leaves a single degree-0 seed node; fall back to uniform.
                pick = static_cast<NodeId>(edge_rng.below(i));
            }
            if (taken[pick]) continue;
            taken[pick] = true;
            targets.push_back(pick);
        }
        for (NodeId t : targets) {
            taken[t] = false;
            add_undirected(edges, i, t);
            ++degree[t];
        }
        degree[i] += m;
    }
    return {build_graph(n, edges), AffiliationMatrix::from_red(red)};
}

double polarity_link_probability(double red_i, double red_j) {
    return 0.5 * (red_i * red_j + (1.0 - red_i) * (1.0 - red_j));
}

Generated gen_polarity_attachment(std::size_t n, std::uint64_t seed) {
    GenSpec{.model = Model::PolarityAttachment, .n = n}.validate();
    const Rng root(seed);
    return polarity_attachment_with(uniform_reds(n, root.split(kPolarity)), root.split(kEdges));
}

LocalPolarityGraph gen_change_local_polarity(std::uint64_t seed) {
    constexpr std::size_t kNodes = 2000;
    constexpr std::size_t kOuter = 150;
    constexpr std::size_t kMiddle = 300;

    auto base = gen_fully_random(kNodes, 0.2, seed);
    const auto chosen = sample_nodes(kNodes, 2 * kOuter + kMiddle, Rng(seed).split(kSelection));

    std::vector<double> red(kNodes);
    for (NodeId i = 0; i < kNodes; ++i) red[i] = base.affiliation.red(i);

    LocalPolarityGraph out;
    const auto first = chosen.begin();
    out.red_polarized.assign(first, first + kOuter);
    out.balanced.assign(first + kOuter, first + kOuter + kMiddle);
    out.blue_polarized.assign(first + kOuter + kMiddle, chosen.end());
    for (NodeId i : out.red_polarized) red[i] = 0.99;
    for (NodeId i : out.balanced) red[i] = 0.5;
    for (NodeId i : out.blue_polarized) red[i] = 0.01;
    std::sort(out.red_polarized.begin(), out.red_polarized.end());
    std::sort(out.balanced.begin(), out.balanced.end());
    std::sort(out.blue_polarized.begin(), out.blue_polarized.end());

    out.graph = std::move(base.graph);
    out.affiliation = AffiliationMatrix::from_red(red);
    return out;
}

NeighborhoodPolarityGraph gen_change_neighborhood_polarity(std::uint64_t seed) {
    constexpr std::size_t kNodes = 2000;
    constexpr std::size_t kRebalanced = 600;

    auto base = gen_polarity_attachment(kNodes, seed);
    NeighborhoodPolarityGraph out;
    out.rebalanced = sample_nodes(kNodes, kRebalanced, Rng(seed).split(kSelection));
    std::sort(out.rebalanced.begin(), out.rebalanced.end());

    std::vector<double> red(kNodes);
    for (NodeId i = 0; i < kNodes; ++i) red[i] = base.affiliation.red(i);
    for (NodeId i : out.rebalanced) red[i] = 0.5;

    out.graph = std::move(base.graph);
    out.affiliation = AffiliationMatrix::from_red(red);
    return out;
}

bool nine_clusters_adjacent(std::size_t a, std::size_t b) {
    const std::size_t row_a = a / 3, col_a = a % 3;
    const std::size_t row_b = b / 3, col_b = b % 3;
    if (row_a == row_b) return col_a + col_b == 1 || col_a + col_b == 3;  // A-B or B-C
    const std::size_t row_gap = row_a > row_b ? row_a - row_b : row_b - row_a;
    return col_a == 1 && col_b == 1 && row_gap == 1;
}

std::vector<NodeId> NineClustersGraph::members(std::size_t cluster_index) const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < cluster.size(); ++i) {
        if (cluster[i] == cluster_index) out.push_back(i);
    }
    return out;
}

NineClustersGraph gen_nine_clusters(std::uint64_t seed) {
    constexpr double kIntra = 0.5;
    constexpr double kAdjacent = 0.1;

    NineClustersGraph out;
    for (std::size_t row = 0; row < 3; ++row) {
        for (std::size_t col = 0; col < 3; ++col) {
            out.cluster.insert(out.cluster.end(), NineClustersGraph::kRowSizes[row],
                               static_cast<std::uint8_t>(3 * row + col));
        }
    }
    const std::size_t n = out.cluster.size();

    const Rng root(seed);
    auto red = uniform_reds(n, root.split(kPolarity));
    for (NodeId i = 0; i < n; ++i) {
        if (out.cluster[i] % 3 == 1) red[i] = 0.5;
    }

    Rng edge_rng = root.split(kEdges);
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            const auto ci = out.cluster[i];
            const auto cj = out.cluster[j];
            double prob = 0.0;
            if (ci == cj) {
                prob = kIntra;
            } else if (nine_clusters_adjacent(ci, cj)) {
                prob = kAdjacent;
            } else {
                continue;
            }
            if (edge_rng.bernoulli(prob)) add_undirected(edges, i, j);
        }
    }
    out.graph = build_graph(n, edges);
    out.affiliation = AffiliationMatrix::from_red(red);
    return out;
}

TwoBlockGraph gen_two_block(std::size_t n, std::size_t bridges, std::uint64_t seed) {
    GenSpec{.model = Model::TwoBlock, .n = n, .bridges = bridges}.validate();
    const std::size_t blue_size = (n - bridges) / 2;
    const std::size_t red_size = n - bridges - blue_size;

    TwoBlockGraph out;
    out.role.insert(out.role.end(), blue_size, 0);
    out.role.insert(out.role.end(), red_size, 1);
    out.role.insert(out.role.end(), bridges, 2);
    std::vector<double> red(n);
    for (NodeId i = 0; i < n; ++i) {
        constexpr std::array<double, 3> kRed{0.05, 0.95, 0.5};
        red[i] = kRed[out.role[i]];
    }
    static_cast<Generated&>(out) = polarity_attachment_with(std::move(red), Rng(seed).split(kEdges));
    return out;
}

}  // namespace divcent
