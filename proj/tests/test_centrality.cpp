#include <gtest/gtest.h>

#include <cmath>

#include "divcent/centrality.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace divcent;
using namespace testing_support;

namespace {

std::vector<double> vec(const ScoreVector& s) { return {s.values().begin(), s.values().end()}; }

// 0 <-> 1 <-> 2 <-> 3
Graph path4() { return graph_of(4, bidirect({{0, 1}, {1, 2}, {2, 3}})); }

}  // namespace

TEST(PageRank, DirectedCycleIsUniform) {
    const auto r = pagerank(graph_of(3, {{0, 1}, {1, 2}, {2, 0}}));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(r.scores[i], 1.0 / 3.0, 1e-12);
    EXPECT_TRUE(r.report.converged);
}

TEST(PageRank, PairIsUniform) {
    const auto r = pagerank(graph_of(2, {{0, 1}, {1, 0}}));
    EXPECT_NEAR(r.scores[0], 0.5, 1e-12);
    EXPECT_NEAR(r.scores[1], 0.5, 1e-12);
}

TEST(PageRank, StarMatchesDenseOracle) {
    std::vector<Edge> edges;
    for (NodeId i = 1; i <= 4; ++i) {
        edges.emplace_back(i, 0);
        edges.emplace_back(0, i);
    }
    const auto g = graph_of(5, edges);
    const auto expected = oracle::pagerank(5, to_oracle(g), 0.85);
    const auto got = pagerank(g).scores;
    EXPECT_LE(linf(got.values(), expected), 1e-8);
    EXPECT_GT(got[0], got[1]);
}

TEST(PageRank, RejectsSinks) {
    EXPECT_EQ(error_kind([] { pagerank(graph_of(2, {{0, 1}})); }), ErrorKind::SinkPresent);
}

TEST(PageRank, IterationCapRaisesNonConvergence) {
    SolverConfig cfg;
    cfg.max_iters = 1;
    const auto g = graph_of(5, bidirect({{0, 1}, {0, 2}, {0, 3}, {3, 4}}));
    EXPECT_EQ(error_kind([&] { pagerank(g, cfg); }), ErrorKind::NonConvergence);
}

TEST(SolverConfig, Validation) {
    SolverConfig cfg;
    cfg.damping = 1.0;
    EXPECT_EQ(error_kind([&] { cfg.validate(); }), ErrorKind::BadParams);
    cfg = {};
    cfg.epsilon = 0.0;
    EXPECT_EQ(error_kind([&] { cfg.validate(); }), ErrorKind::BadParams);
    cfg = {};
    cfg.max_iters = 0;
    EXPECT_EQ(error_kind([&] { cfg.validate(); }), ErrorKind::BadParams);
}

TEST(SolverConfig, RandomStartIsSeededAndNormalized) {
    SolverConfig cfg;
    cfg.init = InitKind::Random;
    cfg.init_seed = 99;
    const auto a = initial_scores(50, cfg);
    const auto b = initial_scores(50, cfg);
    EXPECT_EQ(vec(a), vec(b));
    EXPECT_NEAR(stable_sum(a.values()), 1.0, 1e-12);
    cfg.init_seed = 100;
    EXPECT_NE(vec(a), vec(initial_scores(50, cfg)));
}

TEST(ApplyF, Examples) {
    EXPECT_DOUBLE_EQ(apply_f(Aggregator::Minimum, std::vector<double>{0.5, 0.5}), 0.5);
    EXPECT_DOUBLE_EQ(apply_f(Aggregator::Minimum, std::vector<double>{0.1, 0.9}), 0.1);
    EXPECT_NEAR(apply_f(Aggregator::GeometricMean, std::vector<double>{0.25, 1.0}), 0.5, 1e-15);
    EXPECT_EQ(apply_f(Aggregator::GeometricMean, std::vector<double>{0.0, 1.0}), 0.0);
    EXPECT_DOUBLE_EQ(apply_f(Aggregator::Sum, std::vector<double>{0.25, 1.0}), 1.25);
    EXPECT_GT(apply_f(Aggregator::Minimum, std::vector<double>{0.5, 0.5}),
              apply_f(Aggregator::Minimum, std::vector<double>{0.1, 0.9}));
}

TEST(ApplyF, NamesRoundTrip) {
    for (auto f : {Aggregator::Minimum, Aggregator::GeometricMean, Aggregator::Sum}) {
        EXPECT_EQ(parse_aggregator(to_string(f)), f);
    }
    EXPECT_FALSE(parse_aggregator("max").has_value());
}

TEST(DiverseCentrality, BalancedReducesToPageRank) {
    Rng rng(4);
    for (int rep = 0; rep < 5; ++rep) {
        const auto g = random_sinkfree_graph(rng, 40, 0.1, rep % 2 == 0);
        const auto pr = pagerank(g).scores;
        const auto dc = diverse_centrality(g, balanced_affiliation(40)).scores;
        EXPECT_LE(linf(pr.values(), dc.values()), 1e-8);
    }
}

TEST(DiverseCentrality, OppositePairIsSymmetric) {
    const auto g = graph_of(2, {{0, 1}, {1, 0}});
    const AffiliationMatrix a(2, {1.0, 0.0, 0.0, 1.0});
    const auto s = diverse_centrality(g, a).scores;
    EXPECT_NEAR(s[0], 0.5, 1e-12);
    EXPECT_NEAR(s[1], 0.5, 1e-12);
}

TEST(DiverseCentrality, FourNodePathMatchesMultiStartOracle) {
    const auto g = path4();
    const AffiliationMatrix a(2, {0.9, 0.1, 0.5, 0.5, 0.5, 0.5, 0.1, 0.9});
    const auto ref = oracle::diverse_centrality(4, to_oracle(g), rows_of(a), 0.85, "min", 10);
    EXPECT_LE(ref.spread, 1e-12);
    const auto s = diverse_centrality(g, a).scores;
    EXPECT_LE(linf(s.values(), ref.fixed_point), 1e-8);
    // Balanced interior nodes outrank the polarized ends.
    EXPECT_GT(s[1], s[0]);
    EXPECT_NEAR(s[0], s[3], 1e-12);
}

TEST(DiverseCentrality, GeometricMeanMatchesOracle) {
    Rng rng(11);
    const auto g = random_sinkfree_graph(rng, 10, 0.3, false);
    const auto a = random_affiliation(rng, 10, 3);
    SolverConfig cfg;
    cfg.aggregator = Aggregator::GeometricMean;
    const auto ref = oracle::diverse_centrality(10, to_oracle(g), rows_of(a), 0.85, "geomean", 3);
    EXPECT_LE(linf(diverse_centrality(g, a, cfg).scores.values(), ref.fixed_point), 1e-8);
}

TEST(DiverseCentrality, SumAggregatorAndSingleCommunityGivePageRank) {
    Rng rng(5);
    const auto g = random_sinkfree_graph(rng, 30, 0.15, false);
    const auto pr = pagerank(g).scores;
    SolverConfig sum;
    sum.aggregator = Aggregator::Sum;
    EXPECT_LE(linf(pr.values(), diverse_centrality(g, random_affiliation(rng, 30, 2), sum).scores.values()),
              1e-8);
    const AffiliationMatrix one(1, std::vector<double>(30, 1.0));
    EXPECT_LE(linf(pr.values(), diverse_centrality(g, one).scores.values()), 1e-8);
}

TEST(DiverseCentrality, SelfLoopFeedsItsOwnNode) {
    // Node 0 has a self-loop; the oracle sums over every in-neighbour j,
    // including j = i.
    const auto g = graph_of(3, {{0, 0}, {0, 1}, {1, 2}, {2, 0}});
    const AffiliationMatrix a(2, {0.3, 0.7, 0.5, 0.5, 0.8, 0.2});
    const auto ref = oracle::diverse_centrality(3, to_oracle(g), rows_of(a), 0.85, "min", 5);
    EXPECT_LE(linf(diverse_centrality(g, a).scores.values(), ref.fixed_point), 1e-8);
}

TEST(DiverseCentrality, SmallDampingApproachesRestartTerm) {
    Rng rng(8);
    const std::size_t n = 20;
    const auto g = random_sinkfree_graph(rng, n, 0.2, false);
    const auto a = random_affiliation(rng, n, 2);
    SolverConfig cfg;
    cfg.damping = 1e-9;
    const auto s = diverse_centrality(g, a, cfg).scores;
    std::vector<double> expected(n);
    double total = 0.0;
    for (NodeId i = 0; i < n; ++i) total += expected[i] = std::min(a.row(i)[0], a.row(i)[1]);
    for (double& v : expected) v /= total;
    EXPECT_LE(linf(s.values(), expected), 1e-7);
}

TEST(DiverseCentrality, RandomStartsReachSameFixedPoint) {
    Rng rng(21);
    const auto g = random_sinkfree_graph(rng, 30, 0.2, true);
    const auto a = random_affiliation(rng, 30, 2);
    const auto base = diverse_centrality(g, a).scores;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SolverConfig cfg;
        cfg.init = InitKind::Random;
        cfg.init_seed = seed;
        EXPECT_LE(linf(base.values(), diverse_centrality(g, a, cfg).scores.values()), 1e-9);
    }
}

TEST(DiverseCentrality, TraceRecordsEveryIteration) {
    SolverConfig cfg;
    cfg.record_trace = true;
    const auto r = diverse_centrality(path4(), balanced_affiliation(4), cfg);
    ASSERT_EQ(r.report.per_iteration_delta.size(), r.report.iterations);
    EXPECT_LE(r.report.per_iteration_delta.back(), cfg.epsilon);
    EXPECT_EQ(r.report.per_iteration_delta.back(), r.report.final_l1_delta);
}

TEST(DiverseCentrality, Errors) {
    EXPECT_EQ(error_kind([] { diverse_centrality(graph_of(2, {{0, 1}}), balanced_affiliation(2)); }),
              ErrorKind::SinkPresent);
    EXPECT_EQ(error_kind([] { diverse_centrality(path4(), balanced_affiliation(3)); }), ErrorKind::BadParams);
    // Every node entirely in community 0: min over communities is always 0.
    const AffiliationMatrix all_blue(2, {1, 0, 1, 0, 1, 0, 1, 0});
    EXPECT_EQ(error_kind([&] { diverse_centrality(path4(), all_blue); }), ErrorKind::DegenerateMass);
    SolverConfig cfg;
    cfg.max_iters = 2;
    const AffiliationMatrix a(2, {0.9, 0.1, 0.5, 0.5, 0.5, 0.5, 0.1, 0.9});
    EXPECT_EQ(error_kind([&] { diverse_centrality(path4(), a, cfg); }), ErrorKind::NonConvergence);
}

TEST(NeighborPolarity, SingleInNeighbour) {
    const auto g = graph_of(2, {{1, 0}});
    const auto np = neighbor_polarity(g, AffiliationMatrix::from_red(std::vector<double>{0.2, 0.7}));
    EXPECT_DOUBLE_EQ(np.red[0], 0.7);
    EXPECT_DOUBLE_EQ(np.blue[0], 0.3);
}

TEST(NeighborPolarity, MutualNeighbourCountsTwice) {
    const auto g = graph_of(2, {{0, 1}, {1, 0}});
    const auto np = neighbor_polarity(g, AffiliationMatrix::from_red(std::vector<double>{0.1, 0.6}));
    EXPECT_DOUBLE_EQ(np.red[0], 1.2);
    EXPECT_DOUBLE_EQ(np.blue[0], 0.8);
}

TEST(NeighborPolarity, IsolatedAndSelfLoops) {
    const auto g = graph_of(3, {{0, 0}, {1, 2}});
    const auto np = neighbor_polarity(g, AffiliationMatrix::from_red(std::vector<double>{0.5, 0.5, 0.5}));
    EXPECT_EQ(np.red[0], 0.0);
    EXPECT_EQ(np.blue[0], 0.0);
    EXPECT_TRUE(std::isnan(np.red_fraction(0)));
    EXPECT_DOUBLE_EQ(np.red_fraction(1), 0.5);
}

TEST(NeighborPolarity, NeedsTwoCommunities) {
    const AffiliationMatrix a(3, {0.2, 0.3, 0.5, 0.2, 0.3, 0.5});
    EXPECT_EQ(error_kind([&] { neighbor_polarity(graph_of(2, {{0, 1}}), a); }), ErrorKind::WrongK);
}

TEST(ReweightNodeBias, Example) {
    const ScoreVector s({0.5, 0.5});
    const AffiliationMatrix a(2, {0.5, 0.5, 0.99, 0.01});
    const auto out = reweight_node_bias(s, a);
    EXPECT_NEAR(out[0], 0.25 / 0.255, 1e-15);
    EXPECT_NEAR(out[0], 0.980392156862745, 1e-14);
    EXPECT_NEAR(out[1], 0.019607843137254, 1e-14);
}

TEST(ReweightNodeBias, BalancedIsIdentityAndZeroWeightIsZero) {
    const ScoreVector s({0.2, 0.3, 0.5});
    const auto same = reweight_node_bias(s, balanced_affiliation(3));
    EXPECT_LE(linf(same.values(), s.values()), 1e-15);
    const auto z = reweight_node_bias(s, AffiliationMatrix::from_red(std::vector<double>{0.0, 0.5, 0.4}));
    EXPECT_EQ(z[0], 0.0);
    EXPECT_EQ(error_kind([&] {
                  reweight_node_bias(s, AffiliationMatrix::from_red(std::vector<double>{0, 1, 0}));
              }),
              ErrorKind::DegenerateMass);
    EXPECT_EQ(error_kind([&] { reweight_node_bias(ScoreVector({1.0}), AffiliationMatrix(1, {1.0})); }),
              ErrorKind::WrongK);
}

TEST(ReweightNeighborBias, HandEvaluatedPath) {
    // 0 - 1 - 2 bidirected, r = (0.9, 0.5, 0.1).
    // R0 = 2(0.5) = 1, B0 = 1      -> w0 = 0.5
    // R1 = 2(0.9 + 0.1) = 2, B1 = 2 -> w1 = 0.5
    // R2 = 1, B2 = 1                -> w2 = 0.5
    const auto g = graph_of(3, bidirect({{0, 1}, {1, 2}}));
    const auto a = AffiliationMatrix::from_red(std::vector<double>{0.9, 0.5, 0.1});
    const auto out = reweight_neighbor_bias(ScoreVector::uniform(3), g, a);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(out[i], 1.0 / 3.0, 1e-15);

    // r = (1, 0.5, 0.5): R1 = 3, B1 = 1 -> w1 = 0.25; ends keep 0.5.
    const auto b = AffiliationMatrix::from_red(std::vector<double>{1.0, 0.5, 0.5});
    const auto out2 = reweight_neighbor_bias(ScoreVector::uniform(3), g, b);
    EXPECT_NEAR(out2[0], 0.4, 1e-15);
    EXPECT_NEAR(out2[1], 0.2, 1e-15);
    EXPECT_NEAR(out2[2], 0.4, 1e-15);
}

TEST(ReweightNeighborBias, PolarizedAndIsolatedGetZero) {
    // Node 0's only neighbour is fully red: R = 2, B = 0. Node 2 is isolated.
    const auto g = graph_of(3, {{0, 1}, {1, 0}});
    const auto a = AffiliationMatrix::from_red(std::vector<double>{0.5, 1.0, 0.5});
    const auto out = reweight_neighbor_bias(ScoreVector::uniform(3), g, a);
    EXPECT_EQ(out[0], 0.0);
    EXPECT_DOUBLE_EQ(out[1], 1.0);
    EXPECT_EQ(out[2], 0.0);
}
