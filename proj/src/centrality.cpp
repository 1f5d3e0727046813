#include "divcent/centrality.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "divcent/error.hpp"
#include "divcent/random.hpp"

namespace divcent {

std::string_view to_string(Aggregator f) {
    switch (f) {
        case Aggregator::Minimum: return "min";
        case Aggregator::GeometricMean: return "geomean";
        case Aggregator::Sum: return "sum";
    }
    return "unknown";
}

std::optional<Aggregator> parse_aggregator(std::string_view name) {
    if (name == "min" || name == "minimum") return Aggregator::Minimum;
    if (name == "geomean" || name == "geometric-mean") return Aggregator::GeometricMean;
    if (name == "sum" || name == "l1") return Aggregator::Sum;
    return std::nullopt;
}

double apply_f(Aggregator f, std::span<const double> x) {
    switch (f) {
        case Aggregator::Minimum:
            return *std::min_element(x.begin(), x.end());
        case Aggregator::GeometricMean: {
            double log_sum = 0.0;
            for (double v : x) {
                if (v <= 0.0) return 0.0;
                log_sum += std::log(v);
            }
            return std::exp(log_sum / static_cast<double>(x.size()));
        }
        case Aggregator::Sum: {
            double total = 0.0;
            for (double v : x) total += v;
            return total;
        }
    }
    return 0.0;
}

void SolverConfig::validate() const {
    if (!(damping > 0.0 && damping < 1.0)) {
        throw Error(ErrorKind::BadParams, fmt::format("damping {} not in (0, 1)", damping));
    }
    if (!(epsilon > 0.0)) {
        throw Error(ErrorKind::BadParams, "epsilon must be positive");
    }
    if (max_iters < 1) {
        throw Error(ErrorKind::BadParams, "max_iters must be at least 1");
    }
}

ScoreVector initial_scores(std::size_t n, const SolverConfig& cfg) {
    if (cfg.init == InitKind::Uniform) return ScoreVector::uniform(n);
    Rng rng(cfg.init_seed);
    std::vector<double> s(n);
    for (double& x : s) x = rng.uniform01();
    return ScoreVector::normalized(std::move(s));
}

namespace {

void require_sink_free(const Graph& g) {
    for (NodeId i = 0; i < g.size(); ++i) {
        if (g.out_degree(i) == 0) {
            throw Error(ErrorKind::SinkPresent,
                        fmt::format("node {} has no out-edges; patch sinks first", i));
        }
    }
}

// Shared driver for both solvers. `step` maps the current scores to the
// unnormalized next vector t.
template <typename Step>
SolverResult iterate(std::size_t n, const SolverConfig& cfg, Step&& step) {
    const auto start = initial_scores(n, cfg);
    std::vector<double> s(start.values().begin(), start.values().end());
    std::vector<double> t(n);
    std::vector<double> diff(n);
    SolverReport report;
    while (report.iterations < cfg.max_iters) {
        step(s, t);
        const double total = stable_sum(t);
        if (!(total > 0.0) || !std::isfinite(total)) {
            throw Error(ErrorKind::DegenerateMass,
                        fmt::format("iteration {} produced no mass", report.iterations + 1));
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double next = t[i] / total;
            diff[i] = std::abs(next - s[i]);
            s[i] = next;
        }
        const double delta = stable_sum(diff);
        ++report.iterations;
        report.final_l1_delta = delta;
        if (cfg.record_trace) report.per_iteration_delta.push_back(delta);
        if (delta <= cfg.epsilon) {
            report.converged = true;
            break;
        }
    }
    if (!report.converged) {
        throw Error(ErrorKind::NonConvergence,
                    fmt::format("no convergence after {} iterations (last L1 change {})",
                                report.iterations, report.final_l1_delta));
    }
    return {ScoreVector::normalized(std::move(s)), std::move(report)};
}

}  // namespace

SolverResult pagerank(const Graph& g, const SolverConfig& cfg) {
    cfg.validate();
    require_sink_free(g);
    const std::size_t n = g.size();
    const auto rev = g.reverse();
    const double p = cfg.damping;
    const double restart = (1.0 - p) / static_cast<double>(n);
    std::vector<double> share(n);

    return iterate(n, cfg, [&](const std::vector<double>& s, std::vector<double>& t) {
        for (NodeId j = 0; j < n; ++j) {
            share[j] = p * s[j] / static_cast<double>(g.out_degree(j));
        }
        for (NodeId i = 0; i < n; ++i) {
            double acc = restart;
            for (NodeId j : rev.in(i)) acc += share[j];
            t[i] = acc;
        }
    });
}

SolverResult diverse_centrality(const Graph& g, const AffiliationMatrix& a,
                                const SolverConfig& cfg) {
    cfg.validate();
    if (a.size() != g.size()) {
        throw Error(ErrorKind::BadParams,
                    fmt::format("affiliation has {} rows but graph has {} nodes", a.size(),
                                g.size()));
    }
    require_sink_free(g);
    const std::size_t n = g.size();
    const std::size_t k = a.communities();
    const auto rev = g.reverse();
    const double p = cfg.damping;
    const double restart = (1.0 - p) / static_cast<double>(n);
    std::vector<double> share(n);
    std::vector<double> mass(k);

    return iterate(n, cfg, [&](const std::vector<double>& s, std::vector<double>& t) {
        for (NodeId j = 0; j < n; ++j) {
            share[j] = p * s[j] / static_cast<double>(g.out_degree(j));
        }
        for (NodeId i = 0; i < n; ++i) {
            const auto own = a.row(i);
            for (std::size_t c = 0; c < k; ++c) mass[c] = restart * own[c];
            for (NodeId j : rev.in(i)) {
                const auto q = a.row(j);
                for (std::size_t c = 0; c < k; ++c) mass[c] += share[j] * q[c];
            }
            t[i] = apply_f(cfg.aggregator, mass);
        }
    });
}

double NeighborPolarity::red_fraction(NodeId i) const {
    const double total = red[i] + blue[i];
    return total > 0.0 ? red[i] / total : std::numeric_limits<double>::quiet_NaN();
}

NeighborPolarity neighbor_polarity(const Graph& g, const AffiliationMatrix& a) {
    if (a.communities() != 2) {
        throw Error(ErrorKind::WrongK, "neighbourhood polarity needs K = 2");
    }
    if (a.size() != g.size()) {
        throw Error(ErrorKind::BadParams, "affiliation and graph sizes differ");
    }
    const std::size_t n = g.size();
    const auto rev = g.reverse();
    NeighborPolarity np{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    for (NodeId i = 0; i < n; ++i) {
        auto add = [&](std::span<const NodeId> neighbours) {
            for (NodeId j : neighbours) {
                if (j == i) continue;
                np.red[i] += a.red(j);
                np.blue[i] += a.blue(j);
            }
        };
        add(rev.in(i));
        add(g.out(i));
    }
    return np;
}

ScoreVector reweight_node_bias(const ScoreVector& s, const AffiliationMatrix& a) {
    if (a.communities() != 2) {
        throw Error(ErrorKind::WrongK, "node-bias reweighting needs K = 2");
    }
    if (a.size() != s.size()) {
        throw Error(ErrorKind::BadParams, "affiliation and score sizes differ");
    }
    std::vector<double> w(s.size());
    for (NodeId i = 0; i < s.size(); ++i) {
        w[i] = s[i] * std::min(a.red(i), a.blue(i));
    }
    return ScoreVector::normalized(std::move(w));
}

ScoreVector reweight_neighbor_bias(const ScoreVector& s, const Graph& g,
                                   const AffiliationMatrix& a) {
    if (a.communities() != 2) {
        throw Error(ErrorKind::WrongK, "neighbour-bias reweighting needs K = 2");
    }
    if (s.size() != g.size()) {
        throw Error(ErrorKind::BadParams, "score and graph sizes differ");
    }
    const auto np = neighbor_polarity(g, a);
    std::vector<double> w(s.size());
    for (NodeId i = 0; i < s.size(); ++i) {
        const double total = np.red[i] + np.blue[i];
        const double weight = total > 0.0 ? std::min(np.red[i], np.blue[i]) / total : 0.0;
        w[i] = s[i] * weight;
    }
    return ScoreVector::normalized(std::move(w));
}

}  // namespace divcent
