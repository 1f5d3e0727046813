#include <gtest/gtest.h>

#include <atomic>
#include <set>
#include <stdexcept>

#include "divcent/experiments.hpp"
#include "support.hpp"

using namespace divcent;
using namespace testing_support;

namespace {

ExperimentOptions small(std::size_t runs, std::size_t threads = 1) {
    ExperimentOptions o;
    o.runs = runs;
    o.seed = 3;
    o.threads = threads;
    return o;
}

}  // namespace

TEST(RunSeed, DeterministicAndDistinct) {
    EXPECT_EQ(run_seed(1, 0), run_seed(1, 0));
    std::set<std::uint64_t> seen;
    for (std::size_t r = 0; r < 100; ++r) seen.insert(run_seed(1, r));
    for (std::size_t r = 0; r < 100; ++r) seen.insert(run_seed(2, r));
    EXPECT_EQ(seen.size(), 200u);
}

TEST(ParallelRuns, VisitsEveryIndexOnce) {
    std::vector<std::atomic<int>> hits(57);
    parallel_runs(57, 4, [&](std::size_t r) { ++hits[r]; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelRuns, RethrowsLowestFailingRun) {
    try {
        parallel_runs(20, 3, [](std::size_t r) {
            if (r == 7 || r == 13) throw std::runtime_error(std::to_string(r));
        });
        FAIL() << "expected an exception";
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "7");
    }
}

TEST(Convergence, SmallFullyRandomRuns) {
    const auto r = run_convergence(Model::FullyRandom, 200, small(3));
    ASSERT_EQ(r.dc_iterations.size(), 3u);
    ASSERT_EQ(r.pagerank_iterations.size(), 3u);
    EXPECT_EQ(r.dc_failures, 0u);
    EXPECT_GT(r.mean_dc(), r.mean_pagerank());
    EXPECT_DOUBLE_EQ(r.ratio(), r.mean_dc() / r.mean_pagerank());
}

TEST(Convergence, ResultsIndependentOfThreadCount) {
    const auto a = run_convergence(Model::PolarityAttachment, 150, small(5, 1));
    const auto b = run_convergence(Model::PolarityAttachment, 150, small(5, 3));
    EXPECT_EQ(a.dc_iterations, b.dc_iterations);
    EXPECT_EQ(a.pagerank_iterations, b.pagerank_iterations);
}

TEST(Convergence, CapCountsAsFailure) {
    auto o = small(2);
    o.solver.max_iters = 3;
    const auto r = run_convergence(Model::FullyRandom, 100, o);
    EXPECT_EQ(r.dc_failures, 2u);
}

TEST(Uniqueness, SmallRuns) {
    const auto r = run_uniqueness(Model::PreferentialAttachment, 200, small(2));
    ASSERT_EQ(r.max_abs_diff.size(), 2u);
    EXPECT_LE(r.worst(), 1e-9);
    EXPECT_LE(r.average(), r.worst());
}

TEST(NineClustersExperiment, TwoRuns) {
    const auto r = run_nine_clusters(small(2, 2));
    ASSERT_EQ(r.dc_means.size(), 2u);
    const auto dc = r.average(true);
    EXPECT_LT(dc[0], dc[1]);
    EXPECT_LT(dc[1], dc[2]);
    EXPECT_NEAR(r.ratio_mean, 0.5, 0.01);
}

TEST(LocalPolarityExperiment, OneRunFillsBuckets) {
    const auto r = run_local_polarity(small(1));
    std::size_t total = 0;
    for (const auto& b : r.buckets) total += b.dc_red.count + b.dc_balanced.count + b.dc_blue.count;
    EXPECT_EQ(total, 600u);
}

TEST(CutAnalysis, BoundaryValuesOfK) {
    const auto gen = gen_two_block(80, 6, 2);
    const std::vector<std::size_t> ks{1, 10, 80, 500};
    const auto r = cut_analysis(gen.graph, gen.affiliation, ks, {});
    const std::size_t n = r.component_nodes;
    EXPECT_EQ(r.dropped_nodes, 80u - n);
    EXPECT_EQ(r.ks.front(), 1u);
    EXPECT_EQ(r.ks.back(), n);
    EXPECT_EQ(r.dc[0], 0u);
    EXPECT_EQ(r.pagerank[0], 0u);
    EXPECT_EQ(r.dbc[0], 0u);
    EXPECT_EQ(r.dc.back(), r.pagerank.back());
    EXPECT_EQ(r.dc.back(), r.dbc.back());
}

TEST(CutAnalysis, DropsDisconnectedNodes) {
    // Two triangles joined by an edge, plus an isolated node and a stray pair.
    const auto g = graph_of(9, bidirect({{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}, {7, 8}}));
    const auto r = cut_analysis(g, balanced_affiliation(9), std::vector<std::size_t>{6}, {});
    EXPECT_EQ(r.component_nodes, 6u);
    EXPECT_EQ(r.dropped_nodes, 3u);
    EXPECT_EQ(r.dc[0], 1u);
}

TEST(CutAnalysis, TinyComponentIsAnError) {
    const auto g = graph_of(3, {});
    EXPECT_EQ(error_kind([&] { cut_analysis(g, balanced_affiliation(3), std::vector<std::size_t>{1}, {}); }),
              ErrorKind::Disconnected);
}

TEST(Bridging, DominanceFractionCountsRuns) {
    BridgingResult r;
    CutAnalysisResult good;
    good.ks = {10, 20};
    good.dc = {5, 9};
    good.pagerank = {5, 2};
    good.dbc = {1, 9};
    CutAnalysisResult bad = good;
    bad.dbc = {6, 0};
    r.runs = {good, bad, good, good};
    EXPECT_DOUBLE_EQ(r.dominance_fraction(), 0.75);
}
