#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "netshift/config.hpp"
#include "netshift/rng.hpp"
#include "netshift/synthgen.hpp"

namespace netshift {

/// Designed generator families and grid settings for the synthetic
/// benchmark. Each statistic is evaluated against the family that varies the
/// property it measures: edge-distribution skew for GED/MS, transitivity for
/// CB/TP, degree shape for DD/DS.
struct BenchmarkConfig {
    std::uint64_t seed = 42;
    double alpha = 0.05;
    int n_null_samples = 50;
    int n_test_samples = 50;
    std::vector<EdgeCountRange> edge_ranges = {{1000, 2000}, {3000, 5000}, {7000, 10000}};
    std::vector<StatisticId> statistics = {
        StatisticId::Ged, StatisticId::DegreeDistDiff, StatisticId::BarratClustering,
        StatisticId::MassShift, StatisticId::DegreeShift, StatisticId::TriangleProbability};

    // class-skew family: 2-community SBM, block-0 internal mass scaled up
    NodeId skew_n_nodes = 20;
    double skew_within = 2.0;
    double skew_cross = 1.0;
    std::vector<double> skew_deltas = {0.0, 0.2, 0.4, 0.8};

    // transitivity family: small dense communities, within/cross ratio varied
    NodeId trans_n_nodes = 60;
    NodeId trans_block_size = 6;
    double trans_cross = 1.0;
    std::vector<double> trans_ratios = {1.0, 4.0, 16.0, 64.0};

    // degree family: Chung-Lu with power-law weights, exponent varied
    NodeId degree_n_nodes = 100;
    double degree_min_weight = 1.0;
    std::vector<double> degree_exponents = {2.0, 2.3, 2.6, 3.0};

    // bias suite settings (run on the unskewed class-skew base model)
    std::vector<std::uint64_t> bias_edge_counts = {100, 1000};
    int bias_trials = 2000;
};

inline BlockModelSpec two_community_skew_spec(NodeId n, double within, double cross,
                                              double delta) {
    std::vector<NodeId> block_of(n);
    for (NodeId i = 0; i < n; ++i) block_of[i] = i % 2;
    return BlockModelSpec{
        n, std::move(block_of), {{within * (1.0 + delta), cross}, {cross, within}}};
}

inline BlockModelSpec community_blocks_spec(NodeId n, NodeId block_size, double within,
                                            double cross) {
    if (block_size == 0 || n % block_size != 0)
        throw ConfigError("transitivity family needs block_size dividing n_nodes");
    const NodeId n_blocks = n / block_size;
    std::vector<NodeId> block_of(n);
    for (NodeId i = 0; i < n; ++i) block_of[i] = i / block_size;
    std::vector<std::vector<double>> probs(n_blocks, std::vector<double>(n_blocks, cross));
    for (NodeId b = 0; b < n_blocks; ++b) probs[b][b] = within;
    return BlockModelSpec{n, std::move(block_of), std::move(probs)};
}

inline std::vector<GeneratorSpec> skew_family(const BenchmarkConfig& cfg) {
    std::vector<GeneratorSpec> fam;
    for (double d : cfg.skew_deltas)
        fam.push_back(two_community_skew_spec(cfg.skew_n_nodes, cfg.skew_within, cfg.skew_cross, d));
    return fam;
}

inline std::vector<GeneratorSpec> transitivity_family(const BenchmarkConfig& cfg) {
    std::vector<GeneratorSpec> fam;
    for (double r : cfg.trans_ratios)
        fam.push_back(
            community_blocks_spec(cfg.trans_n_nodes, cfg.trans_block_size, r, cfg.trans_cross));
    return fam;
}

inline std::vector<GeneratorSpec> degree_family(const BenchmarkConfig& cfg) {
    std::vector<GeneratorSpec> fam;
    for (double g : cfg.degree_exponents)
        fam.push_back(PowerLawSpec{cfg.degree_n_nodes, g, cfg.degree_min_weight});
    return fam;
}

inline std::vector<GeneratorSpec> family_for(StatisticId id, const BenchmarkConfig& cfg) {
    switch (id) {
        case StatisticId::Ged:
        case StatisticId::MassShift:
        case StatisticId::MassShiftCorrected:
            return skew_family(cfg);
        case StatisticId::BarratClustering:
        case StatisticId::TriangleProbability:
            return transitivity_family(cfg);
        case StatisticId::DegreeDistDiff:
        case StatisticId::DegreeShift:
        case StatisticId::DegreeShiftCorrected:
            return degree_family(cfg);
    }
    throw std::logic_error("unreachable");
}

struct RecallRow {
    StatisticId statistic;
    std::uint64_t edge_lo;
    std::uint64_t edge_hi;
    double recall;
    double stderr_;
    int n;
};

struct BenchmarkResult {
    std::vector<RecallRow> recall;
    std::vector<BiasRow> bias;
};

inline RecallRow run_recall_cell(StatisticId id, const EdgeCountRange& range,
                                 const BenchmarkConfig& cfg) {
    RecallExperimentSpec spec;
    spec.statistic = id;
    spec.null_family = family_for(id, cfg);
    spec.alt_family = spec.null_family;
    spec.edge_range = range;
    spec.n_null_samples = cfg.n_null_samples;
    spec.n_test_samples = cfg.n_test_samples;
    spec.alpha = cfg.alpha;
    spec.seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(id), range.lo, range.hi});
    RecallResult r = run_recall_experiment(spec);
    return {id, range.lo, range.hi, r.recall, r.stderr_, r.n_tests};
}

inline BenchmarkResult run_benchmark(const BenchmarkConfig& cfg) {
    BenchmarkResult out;
    for (StatisticId id : cfg.statistics)
        for (const auto& range : cfg.edge_ranges) out.recall.push_back(run_recall_cell(id, range, cfg));
    EdgeDistribution base = distribution_of(
        two_community_skew_spec(cfg.skew_n_nodes, cfg.skew_within, cfg.skew_cross, 0.0));
    out.bias = run_bias_suite(base, cfg.bias_edge_counts, cfg.bias_trials,
                              derive_seed(cfg.seed, {0xB1A5u}));
    return out;
}

inline std::string recall_csv(const std::vector<RecallRow>& rows) {
    std::ostringstream out;
    out << "statistic,edge_lo,edge_hi,recall,stderr,n\n";
    for (const auto& r : rows)
        out << to_string(r.statistic) << ',' << r.edge_lo << ',' << r.edge_hi << ','
            << format_double(r.recall) << ',' << format_double(r.stderr_) << ',' << r.n << '\n';
    return out.str();
}

inline std::string bias_csv(const std::vector<BiasRow>& rows) {
    std::ostringstream out;
    out << "statistic,edges,mean,sd,true_value\n";
    for (const auto& r : rows)
        out << to_string(r.statistic) << ',' << r.edges << ',' << format_double(r.mean) << ','
            << format_double(r.sd) << ',' << format_double(r.true_value) << '\n';
    return out.str();
}

inline BenchmarkConfig benchmark_config_from(KeyValueConfig& kv) {
    BenchmarkConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(kv.get_int("seed", static_cast<std::int64_t>(cfg.seed)));
    cfg.alpha = kv.get_double("alpha", cfg.alpha);
    cfg.n_null_samples = static_cast<int>(kv.get_int("n_null", cfg.n_null_samples));
    cfg.n_test_samples = static_cast<int>(kv.get_int("n_test", cfg.n_test_samples));
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha must be in (0,1)");
    if (cfg.n_null_samples < 10) throw ConfigError("n_null must be >= 10");
    if (cfg.n_test_samples < 1) throw ConfigError("n_test must be >= 1");

    if (kv.has("edge_ranges")) {
        cfg.edge_ranges.clear();
        for (const auto& tok : kv.get_string_list("edge_ranges", {})) {
            auto parts = KeyValueConfig::split(tok, '-');
            if (parts.size() != 2) throw ConfigError("edge_ranges entries must look like lo-hi");
            EdgeCountRange r{static_cast<std::uint64_t>(std::stoll(parts[0])),
                             static_cast<std::uint64_t>(std::stoll(parts[1]))};
            if (r.lo < 1 || r.hi < r.lo) throw ConfigError("bad edge range " + tok);
            cfg.edge_ranges.push_back(r);
        }
    }
    if (kv.has("statistics")) {
        cfg.statistics.clear();
        for (const auto& tok : kv.get_string_list("statistics", {}))
            cfg.statistics.push_back(statistic_from_string(tok));
    }

    cfg.skew_n_nodes = static_cast<NodeId>(kv.get_int("skew_n_nodes", cfg.skew_n_nodes));
    cfg.skew_within = kv.get_double("skew_within", cfg.skew_within);
    cfg.skew_cross = kv.get_double("skew_cross", cfg.skew_cross);
    cfg.skew_deltas = kv.get_double_list("skew_deltas", cfg.skew_deltas);

    cfg.trans_n_nodes = static_cast<NodeId>(kv.get_int("trans_n_nodes", cfg.trans_n_nodes));
    cfg.trans_block_size =
        static_cast<NodeId>(kv.get_int("trans_block_size", cfg.trans_block_size));
    cfg.trans_cross = kv.get_double("trans_cross", cfg.trans_cross);
    cfg.trans_ratios = kv.get_double_list("trans_ratios", cfg.trans_ratios);

    cfg.degree_n_nodes = static_cast<NodeId>(kv.get_int("degree_n_nodes", cfg.degree_n_nodes));
    cfg.degree_min_weight = kv.get_double("degree_min_weight", cfg.degree_min_weight);
    cfg.degree_exponents = kv.get_double_list("degree_exponents", cfg.degree_exponents);

    if (kv.has("bias_edges")) {
        cfg.bias_edge_counts.clear();
        for (double v : kv.get_double_list("bias_edges", {}))
            cfg.bias_edge_counts.push_back(static_cast<std::uint64_t>(v));
    }
    cfg.bias_trials = static_cast<int>(kv.get_int("bias_trials", cfg.bias_trials));
    if (cfg.bias_trials < 1000) throw ConfigError("bias_trials must be >= 1000");

    kv.require_consumed();
    return cfg;
}

}  // namespace netshift
