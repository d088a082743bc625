#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "netshift/core.hpp"
#include "netshift/detector.hpp"
#include "netshift/rng.hpp"
#include "netshift/statistics.hpp"

namespace netshift {

struct BlockModelSpec {
    NodeId n_nodes;
    std::vector<NodeId> block_of;                   // node -> block
    std::vector<std::vector<double>> block_probs;   // symmetric non-negative weights

    friend bool operator==(const BlockModelSpec&, const BlockModelSpec&) = default;
};

struct PowerLawSpec {
    NodeId n_nodes;
    double exponent;            // > 1
    double min_degree_weight;   // lower cutoff of the weight distribution

    friend bool operator==(const PowerLawSpec&, const PowerLawSpec&) = default;
};

using GeneratorSpec = std::variant<BlockModelSpec, PowerLawSpec>;

struct EdgeCountRange {
    std::uint64_t lo;
    std::uint64_t hi;
};

/// Stochastic blockmodel edge distribution: p_ij proportional to
/// block_probs[b(i)][b(j)], normalized over all pairs i < j.
inline EdgeDistribution distribution_of(const BlockModelSpec& spec) {
    if (spec.block_of.size() != spec.n_nodes)
        throw ConfigError("block assignment must cover every node");
    double mass = 0.0;
    EdgeDistribution::ProbMap probs;
    for (NodeId i = 0; i < spec.n_nodes; ++i) {
        for (NodeId j = i + 1; j < spec.n_nodes; ++j) {
            double w = spec.block_probs.at(spec.block_of[i]).at(spec.block_of[j]);
            if (w < 0.0) throw ConfigError("block weights must be non-negative");
            if (w > 0.0) {
                probs[{i, j}] = w;
                mass += w;
            }
        }
    }
    if (mass <= 0.0) throw ConfigError("invalid blockmodel spec: all pair weights are zero");
    for (auto& [pair, p] : probs) p /= mass;
    return EdgeDistribution(spec.n_nodes, std::move(probs));
}

/// Chung-Lu edge distribution: node weights drawn by inverse-CDF from a
/// continuous power law with lower cutoff, p_ij proportional to w_i * w_j.
inline EdgeDistribution distribution_of(const PowerLawSpec& spec, Rng& rng) {
    if (spec.exponent <= 1.0) throw ConfigError("power-law exponent must exceed 1");
    if (spec.min_degree_weight <= 0.0) throw ConfigError("min_degree_weight must be positive");
    std::vector<double> w(spec.n_nodes);
    for (auto& wi : w)
        wi = spec.min_degree_weight * std::pow(1.0 - rng.uniform01(), -1.0 / (spec.exponent - 1.0));
    double mass = 0.0;
    EdgeDistribution::ProbMap probs;
    for (NodeId i = 0; i < spec.n_nodes; ++i) {
        for (NodeId j = i + 1; j < spec.n_nodes; ++j) {
            probs[{i, j}] = w[i] * w[j];
            mass += w[i] * w[j];
        }
    }
    for (auto& [pair, p] : probs) p /= mass;
    return EdgeDistribution(spec.n_nodes, std::move(probs));
}

inline EdgeDistribution distribution_of(const GeneratorSpec& spec, Rng& rng) {
    if (const auto* sbm = std::get_if<BlockModelSpec>(&spec)) return distribution_of(*sbm);
    return distribution_of(std::get<PowerLawSpec>(spec), rng);
}

/// Categorical sampler over the supported pairs of a distribution, by
/// cumulative-weight binary search. Distributionally identical to
/// accept/reject placement but with deterministic cost per draw.
class CategoricalSampler {
public:
    explicit CategoricalSampler(const EdgeDistribution& d) : n_nodes_(d.n_nodes()) {
        support_.reserve(d.probs().size());
        cumulative_.reserve(d.probs().size());
        double acc = 0.0;
        for (const auto& [pair, p] : d.probs()) {
            support_.push_back(pair);
            acc += p;
            cumulative_.push_back(acc);
        }
        cumulative_.back() = 1.0;
    }

    NodeId n_nodes() const { return n_nodes_; }

    const NodePair& draw(Rng& rng) const {
        const double u = rng.uniform01();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        if (it == cumulative_.end()) --it;
        return support_[static_cast<std::size_t>(it - cumulative_.begin())];
    }

    /// Places exactly m independently drawn edges; multiplicities accumulate.
    Snapshot sample_snapshot(std::uint64_t m, Rng& rng, std::int64_t t = 0) const {
        if (m == 0) throw ConfigError("sample_snapshot needs m >= 1");
        Snapshot::EdgeMap edges;
        for (std::uint64_t k = 0; k < m; ++k) ++edges[draw(rng)];
        return Snapshot(t, n_nodes_, std::move(edges));
    }

private:
    NodeId n_nodes_;
    std::vector<NodePair> support_;
    std::vector<double> cumulative_;
};

inline Snapshot sample_snapshot(const EdgeDistribution& d, std::uint64_t m, Rng& rng,
                                std::int64_t t = 0) {
    return CategoricalSampler(d).sample_snapshot(m, rng, t);
}

// ---- recall experiment -----------------------------------------------------

struct RecallExperimentSpec {
    StatisticId statistic;
    std::vector<GeneratorSpec> null_family;
    std::vector<GeneratorSpec> alt_family;
    EdgeCountRange edge_range;
    int n_null_samples = 50;
    int n_test_samples = 50;
    double alpha = 0.05;
    std::uint64_t seed = 0;
};

struct RecallResult {
    double recall = 0.0;
    double stderr_ = 0.0;
    int n_tests = 0;
};

namespace detail {

inline double eval_stat(StatisticId id, const Snapshot& g, const Snapshot* g_prev) {
    switch (id) {
        case StatisticId::Ged: return ged(g, *g_prev);
        case StatisticId::DegreeDistDiff: return degree_dist_diff(g, *g_prev);
        case StatisticId::BarratClustering: return barrat_clustering(g);
        case StatisticId::MassShift:
            return mass_shift(empirical_distribution(g), empirical_distribution(*g_prev));
        case StatisticId::MassShiftCorrected: return mass_shift_corrected(g, *g_prev);
        case StatisticId::DegreeShift:
            return degree_shift(empirical_distribution(g), empirical_distribution(*g_prev));
        case StatisticId::DegreeShiftCorrected: return degree_shift_corrected(g, *g_prev);
        case StatisticId::TriangleProbability:
            return triangle_probability(g);
    }
    throw std::logic_error("unreachable");
}

}  // namespace detail

/// One recall experiment following the synthetic protocol: for each
/// (null parameter, alt parameter) pair, fit a Z-test null from
/// same-parameter graphs (pairs of graphs for delta statistics) and measure
/// the fraction of cross-parameter test examples rejected; returns the
/// rejection fraction averaged over parameter pairs.
///
/// When the two families are value-identical the diagonal pairs are skipped
/// (cross-parameter recall); a pair of identical single-spec families is the
/// calibration mode, where the diagonal pair is what gets measured.
inline RecallResult run_recall_experiment(const RecallExperimentSpec& spec) {
    if (spec.null_family.empty() || spec.alt_family.empty())
        throw ConfigError("generator families must be non-empty");
    if (spec.n_null_samples < 10) throw ConfigError("n_null_samples must be >= 10");
    if (spec.n_test_samples < 1) throw ConfigError("n_test_samples must be >= 1");

    const bool same_family = spec.null_family == spec.alt_family;
    const bool skip_diagonal = same_family && spec.null_family.size() > 1;

    // Each family member gets one fixed realized distribution.
    std::vector<CategoricalSampler> null_dists;
    std::vector<CategoricalSampler> alt_dists;
    for (std::size_t i = 0; i < spec.null_family.size(); ++i) {
        Rng r = Rng::stream(spec.seed, {0xD15Cu, 0, i});
        null_dists.emplace_back(distribution_of(spec.null_family[i], r));
    }
    for (std::size_t i = 0; i < spec.alt_family.size(); ++i) {
        // shared realization when the families coincide
        Rng r = Rng::stream(spec.seed, {0xD15Cu, same_family ? 0u : 1u, i});
        alt_dists.emplace_back(distribution_of(spec.alt_family[i], r));
    }

    const bool delta = is_delta(spec.statistic);
    const double z = normal_quantile(1.0 - spec.alpha / 2.0);
    auto draw_m = [&](Rng& rng) { return rng.uniform_range(spec.edge_range.lo, spec.edge_range.hi); };

    double recall_sum = 0.0;
    int n_pairs = 0;
    int total_tests = 0;
    std::uint64_t pair_id = 0;
    for (std::size_t a = 0; a < null_dists.size(); ++a) {
        for (std::size_t b = 0; b < alt_dists.size(); ++b, ++pair_id) {
            if (skip_diagonal && a == b) continue;
            const auto& da = null_dists[a];
            const auto& db = alt_dists[b];

            std::vector<double> nulls;
            for (int k = 0; k < spec.n_null_samples; ++k) {
                Rng rng = Rng::stream(spec.seed, {1, pair_id, static_cast<std::uint64_t>(k)});
                Snapshot g = da.sample_snapshot(draw_m(rng), rng);
                if (delta) {
                    Snapshot g_prev = da.sample_snapshot(draw_m(rng), rng);
                    nulls.push_back(detail::eval_stat(spec.statistic, g, &g_prev));
                } else {
                    nulls.push_back(detail::eval_stat(spec.statistic, g, nullptr));
                }
            }
            NullModel null = fit_null(nulls, spec.alpha, to_string(spec.statistic));

            int rejected = 0;
            for (int k = 0; k < spec.n_test_samples; ++k) {
                Rng rng = Rng::stream(spec.seed, {2, pair_id, static_cast<std::uint64_t>(k)});
                double v;
                if (delta) {
                    Snapshot g_prev = da.sample_snapshot(draw_m(rng), rng);
                    Snapshot g = db.sample_snapshot(draw_m(rng), rng);
                    v = detail::eval_stat(spec.statistic, g, &g_prev);
                } else {
                    Snapshot g = db.sample_snapshot(draw_m(rng), rng);
                    v = detail::eval_stat(spec.statistic, g, nullptr);
                }
                if (std::abs(v - null.mean) > z * null.sd) ++rejected;
            }
            recall_sum += static_cast<double>(rejected) / spec.n_test_samples;
            total_tests += spec.n_test_samples;
            ++n_pairs;
        }
    }
    if (n_pairs == 0) throw ConfigError("no parameter pairs to evaluate");
    RecallResult out;
    out.recall = recall_sum / n_pairs;
    out.n_tests = total_tests;
    out.stderr_ = std::sqrt(out.recall * (1.0 - out.recall) / total_tests);
    return out;
}

// ---- bias suite -------------------------------------------------------------

struct BiasRow {
    StatisticId statistic;
    std::uint64_t edges;
    double mean;
    double sd;
    double true_value;
};

/// Monte-Carlo means and sds of the empirical consistent statistics between
/// independent samples of one fixed distribution, against their true values
/// (MS(P,P) = DS(P,P) = 0, TP(P)).
inline std::vector<BiasRow> run_bias_suite(const EdgeDistribution& d,
                                           const std::vector<std::uint64_t>& edge_counts,
                                           int n_trials, std::uint64_t seed) {
    if (n_trials < 1000) throw ConfigError("bias suite needs n_trials >= 1000");
    const CategoricalSampler sampler(d);
    const double tp_true = triangle_probability(d);
    const StatisticId stats[] = {StatisticId::MassShift, StatisticId::MassShiftCorrected,
                                 StatisticId::DegreeShift, StatisticId::DegreeShiftCorrected,
                                 StatisticId::TriangleProbability};

    std::vector<BiasRow> rows;
    for (std::uint64_t m : edge_counts) {
        std::map<StatisticId, std::vector<double>> values;
        for (int k = 0; k < n_trials; ++k) {
            Rng rng = Rng::stream(seed, {3, m, static_cast<std::uint64_t>(k)});
            Snapshot g_prev = sampler.sample_snapshot(m, rng);
            Snapshot g = sampler.sample_snapshot(m, rng);
            for (StatisticId id : stats)
                values[id].push_back(detail::eval_stat(id, g, &g_prev));
        }
        for (StatisticId id : stats) {
            const auto& v = values[id];
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= v.size();
            double ss = 0.0;
            for (double x : v) ss += (x - mean) * (x - mean);
            rows.push_back({id, m, mean, std::sqrt(ss / (v.size() - 1)),
                            id == StatisticId::TriangleProbability ? tp_true : 0.0});
        }
    }
    return rows;
}

}  // namespace netshift
