#include "divcent/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "divcent/analysis.hpp"
#include "divcent/betweenness.hpp"
#include "divcent/centrality.hpp"
#include "divcent/experiments.hpp"
#include "divcent/generators.hpp"
#include "divcent/io.hpp"
#include "divcent/svg.hpp"

namespace divcent::cli {

using nlohmann::json;
namespace fs = std::filesystem;

ExitCode exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::OutOfRangeNode:
        case ErrorKind::MissingNode:
        case ErrorKind::DuplicateNode:
        case ErrorKind::BadSimplex:
            return kParse;
        case ErrorKind::NonConvergence:
            return kConvergence;
        case ErrorKind::IoError:
            return kIo;
        case ErrorKind::SinkPresent:
        case ErrorKind::DegenerateMass:
        case ErrorKind::WrongK:
        case ErrorKind::BadParams:
        case ErrorKind::DegenerateRange:
        case ErrorKind::TooFewSamples:
        case ErrorKind::Disconnected:
        case ErrorKind::NotSymmetric:
        case ErrorKind::BadK:
            return kPrecondition;
    }
    return kInternal;
}

namespace {

std::shared_ptr<spdlog::logger> logger() {
    static auto log = [] {
        auto l = std::make_shared<spdlog::logger>(
            "divcent", std::make_shared<spdlog::sinks::stderr_sink_mt>());
        l->set_pattern("[%l] %v");
        auto level = spdlog::level::info;
        if (const char* env = std::getenv("DIVCENT_LOG_LEVEL")) {
            level = spdlog::level::from_str(env);
        }
        l->set_level(level);
        return l;
    }();
    return log;
}

struct Globals {
    double damping = 0.85;
    double epsilon = 1e-10;
    std::string f = "min";
    std::size_t max_iters = 10'000;
    std::uint64_t seed = 1;
    std::optional<std::size_t> runs;
    double alpha = 0.05;
    std::string out;
    std::size_t threads = 0;
    bool no_patch_sinks = false;

    SolverConfig solver() const {
        SolverConfig cfg;
        cfg.damping = damping;
        cfg.epsilon = epsilon;
        cfg.aggregator = *parse_aggregator(f);
        cfg.max_iters = max_iters;
        cfg.validate();
        return cfg;
    }

    ExperimentOptions experiment(std::size_t default_runs) const {
        ExperimentOptions o;
        o.runs = runs.value_or(default_runs);
        if (o.runs == 0) throw Error(ErrorKind::BadParams, "--runs must be at least 1");
        if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::BadParams, "--alpha must be in (0, 1)");
        o.seed = seed;
        o.threads = threads;
        o.solver = solver();
        o.alpha = alpha;
        return o;
    }

    json echo() const {
        return {{"seed", seed},   {"damping", damping},     {"epsilon", epsilon},
                {"f", f},         {"max_iters", max_iters}, {"alpha", alpha},
                {"patch_sinks", !no_patch_sinks}};
    }
};

// ---------------------------------------------------------------------------
// File helpers

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, fmt::format("cannot open {} for reading", path));
    return in;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, fmt::format("cannot open {} for writing", path.string()));
    out << text;
    if (!out.flush()) throw Error(ErrorKind::IoError, fmt::format("write to {} failed", path.string()));
}

fs::path out_dir(const std::string& out) {
    fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::IoError, fmt::format("cannot create {}: {}", dir.string(), ec.message()));
    return dir;
}

// A JSON number, or null for NaN / infinity.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Graph load_graph(const std::string& path, std::size_t* duplicates) {
    auto in = open_in(path);
    const auto list = load_edge_list(in);
    return build_graph(list.n, list.edges, duplicates);
}

AffiliationMatrix load_aff(const std::string& path, std::size_t n, const std::string& format,
                           std::size_t k) {
    auto in = open_in(path);
    return load_affiliations(in, n, format == "scalar" ? AffiliationFormat::Scalar : AffiliationFormat::Vector,
                             k);
}

json report_header(const std::string& experiment, const Globals& g, std::size_t runs) {
    json cfg = g.echo();
    cfg["runs"] = runs;
    json seeds = json::array();
    for (std::size_t r = 0; r < runs; ++r) seeds.push_back(run_seed(g.seed, r));
    cfg["run_seeds"] = seeds;
    return {{"schema", "divcent.experiment-report"},
            {"schema_version", kReportSchemaVersion},
            {"experiment", experiment},
            {"config", cfg}};
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
    std::string model = "fully-random";
    std::size_t n = 1000;
    double e = 0.2;
    std::size_t m = 20;
    std::size_t bridges = 30;
};

int cmd_generate(const Globals& g, const GenerateArgs& a) {
    const auto model = parse_model(a.model);
    if (!model) throw Error(ErrorKind::BadParams, fmt::format("unknown model '{}'", a.model));
    GenSpec spec;
    spec.model = *model;
    spec.n = a.n;
    spec.e = a.e;
    spec.m = a.m;
    spec.bridges = a.bridges;
    spec.seed = g.seed;
    spec.validate();
    const auto gen = generate(spec);

    const std::string prefix = g.out.empty() ? "graph" : g.out;
    const std::string edges_path = prefix + ".edges.csv";
    const std::string aff_path = prefix + ".aff.csv";
    if (auto parent = fs::path(prefix).parent_path(); !parent.empty()) out_dir(parent.string());

    std::ostringstream edges, aff;
    write_edge_list(edges, gen.graph);
    write_affiliations(aff, gen.affiliation);
    write_file(edges_path, edges.str());
    write_file(aff_path, aff.str());
    fmt::print("model={} n={} edges={} seed={}\n{}\n{}\n", to_string(spec.model), gen.graph.size(),
               gen.graph.edge_count(), spec.seed, edges_path, aff_path);
    return kOk;
}

// ---------------------------------------------------------------------------
// rank

struct RankArgs {
    std::string graph;
    std::string affiliations;
    std::string aff_format = "vector";
    std::size_t k = 2;
    std::string algorithm = "dc";
};

int cmd_rank(const Globals& g, const RankArgs& a) {
    const auto cfg = g.solver();
    std::size_t duplicates = 0;
    const Graph graph = load_graph(a.graph, &duplicates);
    if (duplicates > 0) logger()->info("dropped {} duplicate edges", duplicates);

    const bool needs_aff = a.algorithm != "pagerank" && a.algorithm != "bc";
    AffiliationMatrix aff;
    if (!a.affiliations.empty()) {
        aff = load_aff(a.affiliations, graph.size(), a.aff_format, a.k);
    } else if (needs_aff) {
        throw Error(ErrorKind::BadParams,
                    fmt::format("--algorithm {} needs --affiliations", a.algorithm));
    }

    const bool walk = a.algorithm != "bc" && a.algorithm != "dbc";
    Graph solved = graph;
    std::size_t patched = 0;
    if (walk && graph.has_sink() && !g.no_patch_sinks) {
        for (NodeId i = 0; i < graph.size(); ++i) patched += graph.out_degree(i) == 0;
        solved = patch_sinks(graph);
        logger()->info("patched {} sink nodes with edges to every other node", patched);
    }

    std::vector<double> scores;
    std::optional<SolverReport> report;
    if (a.algorithm == "dc") {
        auto r = diverse_centrality(solved, aff, cfg);
        scores.assign(r.scores.values().begin(), r.scores.values().end());
        report = r.report;
    } else if (a.algorithm == "pagerank" || a.algorithm == "rnb" || a.algorithm == "rnhb") {
        auto r = pagerank(solved, cfg);
        report = r.report;
        ScoreVector s = std::move(r.scores);
        if (a.algorithm == "rnb") s = reweight_node_bias(s, aff);
        if (a.algorithm == "rnhb") s = reweight_neighbor_bias(s, graph, aff);
        scores.assign(s.values().begin(), s.values().end());
    } else if (a.algorithm == "bc") {
        scores = betweenness(graph).bc;
    } else {
        scores = diverse_betweenness(graph, aff).bc;
    }

    const auto order = rank_top_k(scores, scores.size());
    std::string csv = "node,score,rank\n";
    for (std::size_t r = 0; r < order.size(); ++r) {
        csv += fmt::format("{},{},{}\n", order[r], scores[order[r]], r + 1);
    }

    json side = {{"schema", "divcent.rank-report"},
                 {"schema_version", kReportSchemaVersion},
                 {"algorithm", a.algorithm},
                 {"graph", a.graph},
                 {"nodes", graph.size()},
                 {"edges", graph.edge_count()},
                 {"duplicate_edges", duplicates},
                 {"sinks_patched", patched},
                 {"config", g.echo()}};
    if (report) {
        side["solver"] = {{"iterations", report->iterations},
                          {"converged", report->converged},
                          {"final_l1_delta", report->final_l1_delta}};
    }

    if (g.out.empty()) {
        std::cout << csv;
        logger()->info("solver report: {}", side.dump());
    } else {
        write_file(g.out, csv);
        write_file(g.out + ".json", side.dump(2) + "\n");
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentArgs {
    std::string name;
    std::vector<std::string> models;
    std::size_t n = 0;  // 0 = experiment default
    std::size_t bridges = 30;
    std::vector<std::size_t> ks;
};

const std::vector<std::string> kBaseModels{"fully-random", "preferential-attachment",
                                           "polarity-attachment"};

std::vector<Model> models_for(const ExperimentArgs& a) {
    std::vector<Model> out;
    for (const auto& name : a.models.empty() ? kBaseModels : a.models) {
        const auto m = parse_model(name);
        if (!m || (*m != Model::FullyRandom && *m != Model::PreferentialAttachment &&
                   *m != Model::PolarityAttachment)) {
            throw Error(ErrorKind::BadParams,
                        fmt::format("model '{}' is not usable for this experiment", name));
        }
        out.push_back(*m);
    }
    return out;
}

std::vector<std::size_t> default_ks() {
    std::vector<std::size_t> ks;
    for (std::size_t k = 10; k <= 100; k += 10) ks.push_back(k);
    return ks;
}

json stats_json(const GroupStats& s) { return {{"count", s.count}, {"mean", num(s.mean)}}; }

json comparison_json(const BucketComparison& c, double alpha) {
    json j = {{"balanced", stats_json(c.balanced)},
              {"polarized", stats_json(c.polarized)},
              {"difference", num(c.difference())}};
    if (c.test) {
        j["t"] = num(c.test->t);
        j["df"] = num(c.test->df);
        j["p_value"] = num(c.test->p_value);
        j["significant"] = c.test->significant(alpha);
    } else {
        j["t"] = nullptr;
        j["df"] = nullptr;
        j["p_value"] = nullptr;
        j["significant"] = nullptr;
    }
    return j;
}

std::vector<std::string> bucket_names() {
    std::vector<std::string> out;
    for (std::size_t b = 0; b < kBucketCount; ++b) out.push_back(fmt::format("{}", b + 1));
    return out;
}

struct Artifacts {
    json report;
    std::string csv;
    std::string svg;
};

Artifacts exp_convergence(const Globals& g, const ExperimentArgs& a, const ExperimentOptions& o) {
    const std::size_t n = a.n ? a.n : 1000;
    Artifacts art;
    art.csv = "model,run,pagerank_iterations,dc_iterations\n";
    json models = json::array();
    std::vector<ConvergenceResult> results;
    std::size_t lo = SIZE_MAX, hi = 0;
    for (Model m : models_for(a)) {
        auto r = run_convergence(m, n, o);
        std::map<std::size_t, std::size_t> pr_hist, dc_hist;
        for (std::size_t i = 0; i < r.dc_iterations.size(); ++i) {
            ++pr_hist[r.pagerank_iterations[i]];
            ++dc_hist[r.dc_iterations[i]];
            lo = std::min({lo, r.pagerank_iterations[i], r.dc_iterations[i]});
            hi = std::max({hi, r.pagerank_iterations[i], r.dc_iterations[i]});
            art.csv += fmt::format("{},{},{},{}\n", to_string(m), i, r.pagerank_iterations[i],
                                   r.dc_iterations[i]);
        }
        auto hist_json = [](const std::map<std::size_t, std::size_t>& h) {
            json out = json::array();
            for (auto [iters, count] : h) out.push_back({{"iterations", iters}, {"count", count}});
            return out;
        };
        models.push_back({{"model", to_string(m)},
                          {"mean_pagerank", num(r.mean_pagerank())},
                          {"mean_dc", num(r.mean_dc())},
                          {"ratio", num(r.ratio())},
                          {"pagerank_failures", r.pagerank_failures},
                          {"dc_failures", r.dc_failures},
                          {"pagerank_histogram", hist_json(pr_hist)},
                          {"dc_histogram", hist_json(dc_hist)},
                          {"pagerank_iterations", r.pagerank_iterations},
                          {"dc_iterations", r.dc_iterations}});
        results.push_back(std::move(r));
    }
    art.report["n"] = n;
    art.report["models"] = models;

    svg::BarChart chart{"Iterations to convergence", "iterations", "runs", {}, {}};
    if (lo > hi) lo = hi = 0;
    for (std::size_t v = lo; v <= hi; ++v) chart.categories.push_back(fmt::format("{}", v));
    for (const auto& r : results) {
        for (int dc = 0; dc < 2; ++dc) {
            const auto& its = dc ? r.dc_iterations : r.pagerank_iterations;
            svg::Series s{fmt::format("{} {}", to_string(r.model), dc ? "DC" : "PR"),
                          std::vector<double>(hi - lo + 1, 0.0)};
            for (auto v : its) s.values[v - lo] += 1.0;
            chart.series.push_back(std::move(s));
        }
    }
    art.svg = svg::render(chart);
    (void)g;
    return art;
}

Artifacts exp_uniqueness(const Globals&, const ExperimentArgs& a, const ExperimentOptions& o) {
    const std::size_t n = a.n ? a.n : 1000;
    Artifacts art;
    art.csv = "model,run,max_abs_diff,mean_abs_diff\n";
    json models = json::array();
    svg::BarChart chart{"Uniform versus random initialization", "model", "max |difference|", {}, {}};
    svg::Series worst{"worst run", {}}, avg{"average run", {}};
    double overall = 0.0;
    for (Model m : models_for(a)) {
        const auto r = run_uniqueness(m, n, o);
        for (std::size_t i = 0; i < r.max_abs_diff.size(); ++i) {
            art.csv += fmt::format("{},{},{},{}\n", to_string(m), i, r.max_abs_diff[i], r.mean_abs_diff[i]);
        }
        models.push_back({{"model", to_string(m)},
                          {"worst_max_abs_diff", num(r.worst())},
                          {"average_max_abs_diff", num(r.average())},
                          {"max_abs_diff", r.max_abs_diff},
                          {"mean_abs_diff", r.mean_abs_diff}});
        chart.categories.emplace_back(to_string(m));
        worst.values.push_back(r.worst());
        avg.values.push_back(r.average());
        overall = std::max(overall, r.worst());
    }
    chart.series = {worst, avg};
    art.report["n"] = n;
    art.report["worst_max_abs_diff"] = num(overall);
    art.report["models"] = models;
    art.svg = svg::render(chart);
    return art;
}

Artifacts exp_local(const Globals&, const ExperimentArgs&, const ExperimentOptions& o) {
    const auto r = run_local_polarity(o);
    Artifacts art;
    art.csv =
        "bucket,red_count,red_mean,balanced_count,balanced_mean,blue_count,blue_mean,"
        "dc_difference,dc_p_value,rnhb_difference,rnhb_p_value\n";
    json buckets = json::array();
    svg::BarChart chart{"Diverse centrality by PageRank bucket", "PageRank bucket", "mean score",
                        bucket_names(), {}};
    svg::Series red{"V1 red-polarized", {}}, bal{"V2 balanced", {}}, blue{"V3 blue-polarized", {}};
    for (std::size_t b = 0; b < kBucketCount; ++b) {
        const auto& k = r.buckets[b];
        buckets.push_back({{"bucket", b + 1},
                           {"dc_red", stats_json(k.dc_red)},
                           {"dc_balanced", stats_json(k.dc_balanced)},
                           {"dc_blue", stats_json(k.dc_blue)},
                           {"dc", comparison_json(k.dc, o.alpha)},
                           {"neighbor_bias", comparison_json(k.neighbor_bias, o.alpha)}});
        auto p = [](const BucketComparison& c) { return c.test ? c.test->p_value : std::nan(""); };
        art.csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", b + 1, k.dc_red.count, k.dc_red.mean,
                               k.dc_balanced.count, k.dc_balanced.mean, k.dc_blue.count, k.dc_blue.mean,
                               k.dc.difference(), p(k.dc), k.neighbor_bias.difference(),
                               p(k.neighbor_bias));
        red.values.push_back(k.dc_red.count ? k.dc_red.mean : std::nan(""));
        bal.values.push_back(k.dc_balanced.count ? k.dc_balanced.mean : std::nan(""));
        blue.values.push_back(k.dc_blue.count ? k.dc_blue.mean : std::nan(""));
    }
    chart.series = {red, bal, blue};
    art.report["buckets"] = buckets;
    art.svg = svg::render(chart);
    return art;
}

Artifacts exp_neighborhood(const Globals&, const ExperimentArgs&, const ExperimentOptions& o) {
    const auto r = run_neighborhood_polarity(o);
    Artifacts art;
    art.csv =
        "bucket,red_count,red_mean,balanced_count,balanced_mean,blue_count,blue_mean,"
        "dc_difference,dc_p_value,rnb_difference,rnb_p_value,balanced_fraction\n";
    json buckets = json::array();
    svg::BarChart chart{"Diverse centrality by neighbourhood polarity", "PageRank bucket",
                        "mean score", bucket_names(), {}};
    svg::Series red{"red neighbourhood", {}}, bal{"balanced neighbourhood", {}},
        blue{"blue neighbourhood", {}};
    for (std::size_t b = 0; b < kBucketCount; ++b) {
        const auto& k = r.buckets[b];
        buckets.push_back({{"bucket", b + 1},
                           {"dc_red", stats_json(k.dc_red)},
                           {"dc_balanced", stats_json(k.dc_balanced)},
                           {"dc_blue", stats_json(k.dc_blue)},
                           {"balanced_fraction", num(k.balanced_fraction())},
                           {"dc", comparison_json(k.dc, o.alpha)},
                           {"node_bias", comparison_json(k.node_bias, o.alpha)}});
        auto p = [](const BucketComparison& c) { return c.test ? c.test->p_value : std::nan(""); };
        art.csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", b + 1, k.dc_red.count,
                               k.dc_red.mean, k.dc_balanced.count, k.dc_balanced.mean, k.dc_blue.count,
                               k.dc_blue.mean, k.dc.difference(), p(k.dc), k.node_bias.difference(),
                               p(k.node_bias), k.balanced_fraction());
        red.values.push_back(k.dc_red.count ? k.dc_red.mean : std::nan(""));
        bal.values.push_back(k.dc_balanced.count ? k.dc_balanced.mean : std::nan(""));
        blue.values.push_back(k.dc_blue.count ? k.dc_blue.mean : std::nan(""));
    }
    chart.series = {red, bal, blue};
    art.report["balanced_fraction"] = num(r.balanced_fraction);
    art.report["buckets"] = buckets;
    art.svg = svg::render(chart);
    return art;
}

Artifacts exp_nine(const Globals&, const ExperimentArgs&, const ExperimentOptions& o) {
    const auto r = run_nine_clusters(o);
    Artifacts art;
    art.csv = "run,pagerank_b1,pagerank_b2,pagerank_b3,dc_b1,dc_b2,dc_b3\n";
    for (std::size_t i = 0; i < r.dc_means.size(); ++i) {
        const auto& p = r.pagerank_means[i];
        const auto& d = r.dc_means[i];
        art.csv += fmt::format("{},{},{},{},{},{},{}\n", i, p[0], p[1], p[2], d[0], d[1], d[2]);
    }
    const auto pr = r.average(false);
    const auto dc = r.average(true);
    art.report["pagerank_mean"] = {pr[0], pr[1], pr[2]};
    art.report["dc_mean"] = {dc[0], dc[1], dc[2]};
    art.report["pagerank_monotone_fraction"] = num(r.pagerank_monotone_fraction());
    art.report["dc_monotone_fraction"] = num(r.dc_monotone_fraction());
    art.report["b_column_ratio_mean"] = num(r.ratio_mean);
    art.report["b_column_ratio_sd"] = num(r.ratio_sd);
    svg::BarChart chart{"Balanced column centrality", "cluster", "mean score", {"B1", "B2", "B3"},
                        {{"PageRank", {pr[0], pr[1], pr[2]}}, {"Diverse centrality", {dc[0], dc[1], dc[2]}}}};
    art.svg = svg::render(chart);
    return art;
}

json cut_json(const CutAnalysisResult& c) {
    return {{"component_nodes", c.component_nodes}, {"dropped_nodes", c.dropped_nodes},
            {"k", c.ks},       {"dc", c.dc},
            {"pagerank", c.pagerank},      {"dbc", c.dbc}};
}

svg::LineChart cut_chart(const std::string& title, const std::vector<std::size_t>& ks,
                         const std::vector<std::vector<double>>& curves) {
    svg::LineChart chart{title, "k", "cut edges among top k", {}, {}};
    for (auto k : ks) chart.x.push_back(static_cast<double>(k));
    const char* names[] = {"Diverse centrality", "PageRank", "Diverse betweenness"};
    for (std::size_t i = 0; i < curves.size(); ++i) chart.series.push_back({names[i], curves[i]});
    return chart;
}

Artifacts exp_bridging(const Globals&, const ExperimentArgs& a, const ExperimentOptions& o) {
    const std::size_t n = a.n ? a.n : 600;
    const auto ks = a.ks.empty() ? default_ks() : a.ks;
    const auto r = run_bridging(n, a.bridges, ks, o);
    Artifacts art;
    art.csv = "run,k,dc,pagerank,dbc\n";
    json runs = json::array();
    std::vector<std::vector<double>> mean(3, std::vector<double>(ks.size(), 0.0));
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
        const auto& c = r.runs[i];
        for (std::size_t j = 0; j < c.ks.size(); ++j) {
            art.csv += fmt::format("{},{},{},{},{}\n", i, c.ks[j], c.dc[j], c.pagerank[j], c.dbc[j]);
            mean[0][j] += static_cast<double>(c.dc[j]) / static_cast<double>(r.runs.size());
            mean[1][j] += static_cast<double>(c.pagerank[j]) / static_cast<double>(r.runs.size());
            mean[2][j] += static_cast<double>(c.dbc[j]) / static_cast<double>(r.runs.size());
        }
        runs.push_back(cut_json(c));
    }
    art.report["n"] = n;
    art.report["bridges"] = a.bridges;
    art.report["dominance_fraction"] = num(r.dominance_fraction());
    art.report["mean_cut_edges"] = {{"k", ks}, {"dc", mean[0]}, {"pagerank", mean[1]}, {"dbc", mean[2]}};
    art.report["runs"] = runs;
    art.svg = svg::render(cut_chart("Cut edges among top-ranked nodes (mean over runs)", ks, mean));
    return art;
}

int cmd_experiment(const Globals& g, const ExperimentArgs& a) {
    struct Entry {
        const char* name;
        std::size_t default_runs;
        Artifacts (*fn)(const Globals&, const ExperimentArgs&, const ExperimentOptions&);
    };
    static const Entry kEntries[] = {
        {"convergence", 100, exp_convergence},      {"uniqueness", 20, exp_uniqueness},
        {"local-polarity", 50, exp_local},          {"neighborhood-polarity", 50, exp_neighborhood},
        {"nine-clusters", 50, exp_nine},            {"bridging", 20, exp_bridging},
    };
    const auto* entry = std::find_if(std::begin(kEntries), std::end(kEntries),
                                     [&](const Entry& e) { return a.name == e.name; });
    if (entry == std::end(kEntries)) {
        throw Error(ErrorKind::BadParams, fmt::format("unknown experiment '{}'", a.name));
    }
    const auto opts = g.experiment(entry->default_runs);
    const auto dir = out_dir(g.out);

    logger()->info("running {} ({} runs, seed {})", a.name, opts.runs, opts.seed);
    const auto t0 = Clock::now();
    Artifacts art = entry->fn(g, a, opts);
    const double run_secs = seconds_since(t0);

    const auto t1 = Clock::now();
    json report = report_header(a.name, g, opts.runs);
    for (auto& [key, value] : art.report.items()) report["results"][key] = value;
    write_file(dir / (a.name + ".json"), report.dump(2) + "\n");
    write_file(dir / (a.name + ".csv"), art.csv);
    write_file(dir / (a.name + ".svg"), art.svg);
    const double write_secs = seconds_since(t1);

    json timing = {{"experiment", a.name},
                   {"threads", opts.threads},
                   {"phases", {{"runs_seconds", run_secs}, {"report_seconds", write_secs}}}};
    write_file(dir / (a.name + ".timing.json"), timing.dump(2) + "\n");
    logger()->info("{} finished in {:.2f} s; wrote {}", a.name, run_secs + write_secs, dir.string());
    return kOk;
}

// ---------------------------------------------------------------------------
// cut-analysis

struct CutArgs {
    std::string graph;
    std::string affiliations;
    std::string aff_format = "vector";
    std::vector<std::size_t> ks;
};

int cmd_cut_analysis(const Globals& g, const CutArgs& a) {
    const auto cfg = g.solver();
    const Graph graph = load_graph(a.graph, nullptr);
    const auto aff = load_aff(a.affiliations, graph.size(), a.aff_format, 2);
    const auto ks = a.ks.empty() ? default_ks() : a.ks;
    const auto dir = out_dir(g.out);

    const auto t0 = Clock::now();
    const auto r = cut_analysis(graph, aff, ks, cfg, !g.no_patch_sinks);
    const double secs = seconds_since(t0);
    if (r.dropped_nodes > 0) {
        logger()->info("kept largest component: {} nodes, dropped {}", r.component_nodes, r.dropped_nodes);
    }

    std::string csv = "k,dc,pagerank,dbc\n";
    for (std::size_t j = 0; j < r.ks.size(); ++j) {
        csv += fmt::format("{},{},{},{}\n", r.ks[j], r.dc[j], r.pagerank[j], r.dbc[j]);
    }
    json cfg_echo = g.echo();
    cfg_echo["graph"] = a.graph;
    cfg_echo["affiliations"] = a.affiliations;
    cfg_echo["aff_format"] = a.aff_format;
    json report = {{"schema", "divcent.cut-analysis"},
                   {"schema_version", kReportSchemaVersion},
                   {"config", cfg_echo},
                   {"results", cut_json(r)}};
    auto to_d = [](const std::vector<std::size_t>& v) { return std::vector<double>(v.begin(), v.end()); };
    const auto chart = cut_chart("Cut edges among top-ranked nodes", r.ks,
                                 {to_d(r.dc), to_d(r.pagerank), to_d(r.dbc)});
    write_file(dir / "cut-analysis.csv", csv);
    write_file(dir / "cut-analysis.json", report.dump(2) + "\n");
    write_file(dir / "cut-analysis.svg", svg::render(chart));
    write_file(dir / "cut-analysis.timing.json",
               json({{"experiment", "cut-analysis"}, {"phases", {{"analysis_seconds", secs}}}}).dump(2) + "\n");
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Diverse centrality, PageRank and betweenness rankings for community-affiliated graphs",
                 "divcent"};
    app.fallthrough();
    app.require_subcommand(1);

    Globals g;
    app.add_option("--damping", g.damping, "Damping factor p")->capture_default_str();
    app.add_option("--epsilon", g.epsilon, "L1 convergence threshold")->capture_default_str();
    app.add_option("--f", g.f, "Aggregator")->check(CLI::IsMember({"min", "geomean"}))->capture_default_str();
    app.add_option("--max-iters", g.max_iters, "Iteration cap")->capture_default_str();
    app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
    app.add_option("--runs", g.runs, "Number of runs (experiments)");
    app.add_option("--alpha", g.alpha, "Significance level")->capture_default_str();
    app.add_option("--out", g.out, "Output file, prefix or directory depending on the command");
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_flag("--no-patch-sinks", g.no_patch_sinks, "Fail on sinks instead of patching them");

    GenerateArgs gen;
    auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic graph and its affiliations");
    generate_cmd->add_option("--model", gen.model)
        ->check(CLI::IsMember({"fully-random", "preferential-attachment", "polarity-attachment",
                               "change-local", "change-neighborhood", "nine-clusters", "two-block"}))
        ->capture_default_str();
    generate_cmd->add_option("--n", gen.n)->capture_default_str();
    generate_cmd->add_option("--e", gen.e)->capture_default_str();
    generate_cmd->add_option("--m", gen.m)->capture_default_str();
    generate_cmd->add_option("--bridges", gen.bridges)->capture_default_str();

    RankArgs rank;
    auto* rank_cmd = app.add_subcommand("rank", "Score and rank the nodes of a graph");
    rank_cmd->add_option("--graph", rank.graph, "Edge list CSV")->required();
    rank_cmd->add_option("--affiliations", rank.affiliations, "Affiliation CSV");
    rank_cmd->add_option("--aff-format", rank.aff_format)
        ->check(CLI::IsMember({"scalar", "vector"}))
        ->capture_default_str();
    rank_cmd->add_option("--k", rank.k, "Communities in a vector affiliation file")->capture_default_str();
    rank_cmd->add_option("--algorithm", rank.algorithm)
        ->check(CLI::IsMember({"dc", "pagerank", "rnb", "rnhb", "bc", "dbc"}))
        ->capture_default_str();

    ExperimentArgs exp;
    auto* exp_cmd = app.add_subcommand("experiment", "Run a repeated-run experiment");
    exp_cmd->add_option("name", exp.name)
        ->required()
        ->check(CLI::IsMember({"convergence", "uniqueness", "local-polarity", "neighborhood-polarity",
                               "nine-clusters", "bridging"}));
    exp_cmd->add_option("--model", exp.models, "Generators (convergence, uniqueness)")->delimiter(',');
    exp_cmd->add_option("--n", exp.n, "Nodes per graph (convergence, uniqueness, bridging)");
    exp_cmd->add_option("--bridges", exp.bridges, "Bridge nodes (bridging)")->capture_default_str();
    exp_cmd->add_option("--ks", exp.ks, "Comma-separated k grid (bridging)")->delimiter(',');

    CutArgs cut;
    auto* cut_cmd = app.add_subcommand("cut-analysis", "Cut edges among top-k nodes of a graph");
    cut_cmd->add_option("--graph", cut.graph, "Edge list CSV")->required();
    cut_cmd->add_option("--affiliations", cut.affiliations, "Affiliation CSV")->required();
    cut_cmd->add_option("--aff-format", cut.aff_format)
        ->check(CLI::IsMember({"scalar", "vector"}))
        ->capture_default_str();
    cut_cmd->add_option("--ks", cut.ks, "Comma-separated k grid")->delimiter(',');

    auto* version_cmd = app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*generate_cmd) return cmd_generate(g, gen);
        if (*rank_cmd) return cmd_rank(g, rank);
        if (*exp_cmd) return cmd_experiment(g, exp);
        if (*cut_cmd) return cmd_cut_analysis(g, cut);
        if (*version_cmd) {
            fmt::print("divcent {}\n", kVersion);
            return kOk;
        }
    } catch (const ParseError& e) {
        logger()->error("{}", e.what());
        return kParse;
    } catch (const Error& e) {
        logger()->error("{} ({})", e.what(), to_string(e.kind()));
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        logger()->error("internal error: {}", e.what());
        return kInternal;
    }
    return kInternal;
}

}  // namespace divcent::cli
