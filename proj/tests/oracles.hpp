#pragma once

// Slow, direct reference implementations used only by the tests. They work on
// plain edge lists and dense matrices and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using EdgeList = std::vector<std::pair<int, int>>;
using Matrix = std::vector<std::vector<double>>;

inline Matrix adjacency(int n, const EdgeList& edges) {
    Matrix a(n, std::vector<double>(n, 0.0));
    for (auto [i, j] : edges) a[i][j] = 1.0;
    return a;
}

inline std::vector<double> out_degrees(const Matrix& a) {
    std::vector<double> d(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (double x : a[i]) d[i] += x;
    return d;
}

inline double l1(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - y[i]);
    return s;
}

// Dense power iteration on the column-stochastic matrix, run far past the
// library's stopping threshold.
inline std::vector<double> pagerank(int n, const EdgeList& edges, double p) {
    const auto a = adjacency(n, edges);
    const auto d = out_degrees(a);
    std::vector<double> s(n, 1.0 / n), next(n);
    for (int it = 0; it < 100000; ++it) {
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                if (a[j][i] != 0.0) acc += s[j] / d[j];
            next[i] = (1.0 - p) / n + p * acc;
        }
        double total = 0.0;
        for (double v : next) total += v;
        for (double& v : next) v /= total;
        const double delta = l1(s, next);
        s = next;
        if (delta < 1e-15) break;
    }
    return s;
}

inline double aggregate(const std::string& f, const std::vector<double>& x) {
    if (f == "min") return *std::min_element(x.begin(), x.end());
    if (f == "sum") {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    double prod = 1.0;
    for (double v : x) prod *= v;
    return std::pow(prod, 1.0 / static_cast<double>(x.size()));
}

// One application of the fixed-point map, written straight from the definition.
inline std::vector<double> dc_map(const Matrix& a, const std::vector<double>& d, const Matrix& q,
                                  double p, const std::string& f, const std::vector<double>& s) {
    const int n = static_cast<int>(a.size());
    const std::size_t k = q[0].size();
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) {
        std::vector<double> x(k);
        for (std::size_t c = 0; c < k; ++c) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                if (a[j][i] != 0.0) acc += s[j] / d[j] * q[j][c];
            x[c] = (1.0 - p) * q[i][c] / n + p * acc;
        }
        t[i] = aggregate(f, x);
    }
    double total = 0.0;
    for (double v : t) total += v;
    for (double& v : t) v /= total;
    return t;
}

struct MultiStart {
    std::vector<double> fixed_point;  // from the first start
    double spread = 0.0;              // max L-inf gap between any start and the first
};

// Iterates the map from `starts` random positive vectors until successive
// iterates differ by less than 1e-15 in L1.
inline MultiStart diverse_centrality(int n, const EdgeList& edges, const Matrix& q, double p,
                                     const std::string& f, int starts = 10,
                                     std::uint32_t seed = 12345) {
    const auto a = adjacency(n, edges);
    const auto d = out_degrees(a);
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    MultiStart out;
    for (int st = 0; st < starts; ++st) {
        std::vector<double> s(n);
        double total = 0.0;
        for (double& v : s) total += v = u(gen);
        for (double& v : s) v /= total;
        for (int it = 0; it < 200000; ++it) {
            auto next = dc_map(a, d, q, p, f, s);
            const double delta = l1(s, next);
            s = std::move(next);
            if (delta < 1e-15) break;
        }
        if (st == 0) {
            out.fixed_point = s;
        } else {
            for (int i = 0; i < n; ++i)
                out.spread = std::max(out.spread, std::abs(s[i] - out.fixed_point[i]));
        }
    }
    return out;
}

// Betweenness by listing every simple path of every ordered pair and keeping
// the shortest ones. weight(s, t) scales the pair's dependency.
template <class Weight>
std::vector<double> betweenness(int n, const EdgeList& edges, Weight weight) {
    const auto a = adjacency(n, edges);
    std::vector<double> bc(n, 0.0);
    std::vector<std::vector<int>> paths;
    std::vector<int> stack;
    std::vector<bool> used(n, false);
    auto dfs = [&](auto&& self, int v, int t) -> void {
        if (v == t) {
            paths.push_back(stack);
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (a[v][w] == 0.0 || used[w] || w == v) continue;
            used[w] = true;
            stack.push_back(w);
            self(self, w, t);
            stack.pop_back();
            used[w] = false;
        }
    };
    for (int s = 0; s < n; ++s) {
        for (int t = 0; t < n; ++t) {
            if (s == t) continue;
            paths.clear();
            stack.assign(1, s);
            std::fill(used.begin(), used.end(), false);
            used[s] = true;
            dfs(dfs, s, t);
            if (paths.empty()) continue;
            std::size_t shortest = paths[0].size();
            for (const auto& pth : paths) shortest = std::min(shortest, pth.size());
            double sigma = 0.0;
            std::vector<double> through(n, 0.0);
            for (const auto& pth : paths) {
                if (pth.size() != shortest) continue;
                sigma += 1.0;
                for (std::size_t k = 1; k + 1 < pth.size(); ++k) through[pth[k]] += 1.0;
            }
            const double w = weight(s, t);
            for (int v = 0; v < n; ++v) bc[v] += w * through[v] / sigma;
        }
    }
    return bc;
}

// Regularized incomplete beta I_x(a, b) via the continued fraction evaluated
// with the modified Lentz method.
inline double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const auto cf = [](double a, double b, double x) {
        const double tiny = 1e-300;
        double c = 1.0;
        double d = 1.0 - (a + b) * x / (a + 1.0);
        if (std::abs(d) < tiny) d = tiny;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= 10000; ++m) {
            const double m2 = 2.0 * m;
            double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
            d = 1.0 + num * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            h *= d * c;
            num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
            d = 1.0 + num * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            const double delta = d * c;
            h *= delta;
            if (std::abs(delta - 1.0) < 1e-16) break;
        }
        return h;
    };
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * cf(a, b, x) / a;
    return 1.0 - std::exp(log_front) * cf(b, a, 1.0 - x) / b;
}

struct Welch {
    double t, df, p;
};

inline Welch welch(const std::vector<double>& a, const std::vector<double>& b) {
    auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    auto var = [](const std::vector<double>& v, double m) {
        double s = 0.0;
        for (double x : v) s += (x - m) * (x - m);
        return s / static_cast<double>(v.size() - 1);
    };
    const double ma = mean(a), mb = mean(b);
    const double va = var(a, ma) / a.size(), vb = var(b, mb) / b.size();
    Welch w;
    w.t = (ma - mb) / std::sqrt(va + vb);
    w.df = (va + vb) * (va + vb) /
           (va * va / (a.size() - 1.0) + vb * vb / (b.size() - 1.0));
    w.p = incomplete_beta(w.df / 2.0, 0.5, w.df / (w.df + w.t * w.t));
    return w;
}

// Labels (0/1) of the bipartition of a small undirected graph minimizing the
// normalized cut, node 0 always on side 0.
inline std::vector<int> min_normalized_cut(int n, const EdgeList& undirected) {
    const auto a = adjacency(n, undirected);
    const auto deg = out_degrees(a);
    double best = INFINITY;
    std::vector<int> labels(n, 0);
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        if (mask & 1u) continue;
        double cut = 0.0, vol1 = 0.0, vol0 = 0.0;
        for (int i = 0; i < n; ++i) {
            const bool si = (mask >> i) & 1u;
            (si ? vol1 : vol0) += deg[i];
            for (int j = 0; j < n; ++j)
                if (a[i][j] != 0.0 && si && !((mask >> j) & 1u)) cut += 1.0;
        }
        const double ncut = cut / vol1 + cut / vol0;
        if (ncut < best) {
            best = ncut;
            for (int i = 0; i < n; ++i) labels[i] = (mask >> i) & 1u;
        }
    }
    return labels;
}

// Unordered pairs of `top` joined in either direction and split by `labels`.
inline std::size_t cut_pairs(int n, const EdgeList& edges, const std::vector<int>& labels,
                             const std::vector<int>& top) {
    const auto a = adjacency(n, edges);
    std::size_t count = 0;
    for (std::size_t x = 0; x < top.size(); ++x) {
        for (std::size_t y = x + 1; y < top.size(); ++y) {
            const int i = top[x], j = top[y];
            if ((a[i][j] != 0.0 || a[j][i] != 0.0) && labels[i] != labels[j]) ++count;
        }
    }
    return count;
}

}  // namespace oracle
