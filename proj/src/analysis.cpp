#include "divcent/analysis.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/beta.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "divcent/error.hpp"
#include "divcent/random.hpp"

namespace divcent {

// ---------------------------------------------------------------------------
// Bucketing

std::array<std::size_t, kBucketCount> BucketAssignment::sizes() const {
    std::array<std::size_t, kBucketCount> out{};
    for (auto b : member_buckets) ++out[b];
    return out;
}

BucketAssignment bucketize(std::span<const double> scores, std::span<const NodeId> analyzed) {
    if (analyzed.empty()) {
        throw Error(ErrorKind::BadParams, "no nodes to bucket");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (NodeId i : analyzed) {
        lo = std::min(lo, scores[i]);
        hi = std::max(hi, scores[i]);
    }
    if (!(hi > lo)) {
        throw Error(ErrorKind::DegenerateRange, "all analyzed scores are equal");
    }
    constexpr int kIntervals = 15;
    const double width = (hi - lo) / kIntervals;

    BucketAssignment out;
    out.edges[0] = lo;
    for (int b = 1; b < static_cast<int>(kBucketCount); ++b) {
        out.edges[b] = lo + width * (b + 4);
    }
    out.edges[kBucketCount] = hi;

    out.member_buckets.reserve(analyzed.size());
    for (NodeId i : analyzed) {
        int interval = static_cast<int>(std::floor((scores[i] - lo) / (hi - lo) * kIntervals));
        interval = std::clamp(interval, 0, kIntervals - 1);
        const int bucket = interval < 5 ? 0 : interval < 10 ? interval - 4 : 6;
        out.member_buckets.push_back(static_cast<std::uint8_t>(bucket));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Welch's t-test

double student_t_two_sided(double t, double df) {
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return 0.0;
    // P(|T| > |t|) = I_{df / (df + t^2)}(df / 2, 1 / 2)
    const double x = df / (df + t * t);
    return boost::math::ibeta(df / 2.0, 0.5, x);
}

namespace {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
};

Moments moments(std::span<const double> xs) {
    Moments m;
    m.mean = stable_sum(xs) / static_cast<double>(xs.size());
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = xs[i] - m.mean;
        sq[i] = d * d;
    }
    m.variance = stable_sum(sq) / static_cast<double>(xs.size() - 1);
    return m;
}

}  // namespace

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) {
        throw Error(ErrorKind::TooFewSamples,
                    fmt::format("Welch test needs two samples of size >= 2 (got {} and {})",
                                a.size(), b.size()));
    }
    const auto ma = moments(a);
    const auto mb = moments(b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());

    TTestResult r;
    r.mean_diff = ma.mean - mb.mean;
    const double ea = ma.variance / na;
    const double eb = mb.variance / nb;
    const double se2 = ea + eb;
    if (se2 == 0.0) {
        r.df = na + nb - 2.0;
        if (r.mean_diff == 0.0) {
            r.t = 0.0;
            r.p_value = 1.0;
        } else {
            r.t = std::copysign(std::numeric_limits<double>::infinity(), r.mean_diff);
            r.p_value = 0.0;
        }
        return r;
    }
    r.t = r.mean_diff / std::sqrt(se2);
    r.df = se2 * se2 / (ea * ea / (na - 1.0) + eb * eb / (nb - 1.0));
    r.p_value = std::clamp(student_t_two_sided(r.t, r.df), kMinPValue, 1.0);
    return r;
}

bool is_balanced_neighborhood(double red_fraction) {
    return red_fraction >= 0.45 && red_fraction <= 0.55;
}

// ---------------------------------------------------------------------------
// Spectral bipartition

std::size_t Bipartition::count(std::uint8_t side) const {
    return static_cast<std::size_t>(std::count(label.begin(), label.end(), side));
}

FiedlerPair fiedler_vector(const Graph& g, const SpectralOptions& opts) {
    const std::size_t n = g.size();
    if (!is_symmetric(g)) {
        throw Error(ErrorKind::NotSymmetric, "spectral bipartition needs an undirected graph");
    }
    if (n < 2 || component_count(g) != 1) {
        throw Error(ErrorKind::Disconnected,
                    "spectral bipartition needs a connected graph with at least two nodes");
    }

    // Self-loops are ignored: the operator works on the simple undirected graph.
    std::vector<double> inv_sqrt_deg(n);
    Eigen::VectorXd trivial(n);
    for (NodeId i = 0; i < n; ++i) {
        double d = 0.0;
        for (NodeId j : g.out(i)) d += (j != i);
        inv_sqrt_deg[i] = 1.0 / std::sqrt(d);
        trivial[i] = std::sqrt(d);
    }
    trivial.normalize();

    // y = (2I - L) x = x + D^{-1/2} A D^{-1/2} x; spectrum in [0, 2].
    auto apply = [&](const Eigen::MatrixXd& x) {
        Eigen::MatrixXd y = x;
        for (NodeId i = 0; i < n; ++i) {
            for (NodeId j : g.out(i)) {
                if (j == i) continue;
                y.row(i) += inv_sqrt_deg[i] * inv_sqrt_deg[j] * x.row(j);
            }
        }
        return y;
    };
    auto deflate = [&](Eigen::MatrixXd& x) { x -= trivial * (trivial.transpose() * x); };
    auto orthonormalize = [&](const Eigen::MatrixXd& x) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
        return Eigen::MatrixXd(qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), x.cols()));
    };

    const auto block = static_cast<Eigen::Index>(std::min(opts.block_size, n - 1));
    Rng rng(0x5eed);
    Eigen::MatrixXd x(n, block);
    for (Eigen::Index c = 0; c < block; ++c) {
        for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(n); ++r) {
            x(r, c) = rng.uniform01() - 0.5;
        }
    }
    deflate(x);
    x = orthonormalize(x);

    constexpr double kOperatorNorm = 2.0;
    for (std::size_t iter = 0; iter < opts.max_iters; ++iter) {
        Eigen::MatrixXd y = apply(x);
        // Rayleigh-Ritz on span(x).
        const Eigen::MatrixXd h = x.transpose() * y;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (h + h.transpose()));
        const double theta = eig.eigenvalues()(block - 1);
        Eigen::VectorXd ritz = x * eig.eigenvectors().col(block - 1);
        Eigen::VectorXd residual = y * eig.eigenvectors().col(block - 1) - theta * ritz;
        residual -= trivial * trivial.dot(residual);
        if (residual.norm() <= opts.tolerance * kOperatorNorm) {
            ritz -= trivial * trivial.dot(ritz);
            ritz.normalize();
            FiedlerPair out;
            out.vector.assign(ritz.data(), ritz.data() + n);
            const auto first = std::find_if(out.vector.begin(), out.vector.end(),
                                             [](double v) { return v != 0.0; });
            if (first != out.vector.end() && *first > 0.0) {
                for (double& v : out.vector) v = -v;
            }
            out.eigenvalue = kOperatorNorm - theta;
            return out;
        }
        deflate(y);
        x = orthonormalize(y);
    }
    throw Error(ErrorKind::NonConvergence,
                fmt::format("Fiedler vector did not converge in {} iterations", opts.max_iters));
}

Bipartition spectral_bipartition(const Graph& g, const SpectralOptions& opts) {
    const auto fiedler = fiedler_vector(g, opts);
    Bipartition part;
    part.label.reserve(fiedler.vector.size());
    for (double v : fiedler.vector) part.label.push_back(v > 0.0 ? 1 : 0);
    return part;
}

// ---------------------------------------------------------------------------
// Ranking and cut counting

std::vector<NodeId> rank_top_k(std::span<const double> scores, std::size_t k) {
    if (k < 1 || k > scores.size()) {
        throw Error(ErrorKind::BadK, fmt::format("k = {} not in [1, {}]", k, scores.size()));
    }
    std::vector<NodeId> ids(scores.size());
    std::iota(ids.begin(), ids.end(), NodeId{0});
    const auto before = [&](NodeId a, NodeId b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    };
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end(), before);
    ids.resize(k);
    return ids;
}

std::size_t cut_edges_topk(const Graph& g, const Bipartition& part, std::span<const NodeId> top) {
    std::vector<bool> in_top(g.size(), false);
    for (NodeId i : top) {
        if (i >= g.size()) throw Error(ErrorKind::OutOfRangeNode, "top-k node out of range");
        in_top[i] = true;
    }
    std::size_t count = 0;
    for (NodeId i = 0; i < g.size(); ++i) {
        if (!in_top[i]) continue;
        for (NodeId j : g.out(i)) {
            if (j == i || !in_top[j] || part.label[i] == part.label[j]) continue;
            // Count each unordered pair once: from its smaller endpoint, or from
            // the larger one when the reverse edge is missing.
            if (i < j || !g.has_edge(j, i)) ++count;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// Initialization sensitivity

InitComparison compare_inits(const Graph& g, const AffiliationMatrix& a, SolverConfig cfg,
                             std::span<const std::uint64_t> seeds) {
    cfg.init = InitKind::Uniform;
    const auto reference = diverse_centrality(g, a, cfg).scores;
    InitComparison out;
    std::vector<double> diffs;
    diffs.reserve(seeds.size() * g.size());
    for (auto seed : seeds) {
        cfg.init = InitKind::Random;
        cfg.init_seed = seed;
        const auto other = diverse_centrality(g, a, cfg).scores;
        for (NodeId i = 0; i < g.size(); ++i) {
            const double d = std::abs(reference[i] - other[i]);
            out.max_abs_diff = std::max(out.max_abs_diff, d);
            diffs.push_back(d);
        }
    }
    if (!diffs.empty()) {
        out.mean_abs_diff = stable_sum(diffs) / static_cast<double>(diffs.size());
    }
    return out;
}

}  // namespace divcent
