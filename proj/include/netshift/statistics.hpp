#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "netshift/core.hpp"

namespace netshift {

enum class StatisticId {
    Ged,
    DegreeDistDiff,
    BarratClustering,
    MassShift,
    MassShiftCorrected,
    DegreeShift,
    DegreeShiftCorrected,
    TriangleProbability,
};

inline constexpr StatisticId kAllStatistics[] = {
    StatisticId::Ged,
    StatisticId::DegreeDistDiff,
    StatisticId::BarratClustering,
    StatisticId::MassShift,
    StatisticId::MassShiftCorrected,
    StatisticId::DegreeShift,
    StatisticId::DegreeShiftCorrected,
    StatisticId::TriangleProbability,
};

/// Delta statistics compare consecutive snapshots; the rest are single-snapshot.
inline bool is_delta(StatisticId id) {
    return id != StatisticId::BarratClustering && id != StatisticId::TriangleProbability;
}

/// True for the statistics estimating a function of P alone.
inline bool is_density_consistent(StatisticId id) {
    switch (id) {
        case StatisticId::Ged:
        case StatisticId::DegreeDistDiff:
            return false;
        default:
            return true;
    }
}

inline std::string_view to_string(StatisticId id) {
    switch (id) {
        case StatisticId::Ged: return "GED";
        case StatisticId::DegreeDistDiff: return "DD";
        case StatisticId::BarratClustering: return "CB";
        case StatisticId::MassShift: return "MS";
        case StatisticId::MassShiftCorrected: return "MSC";
        case StatisticId::DegreeShift: return "DS";
        case StatisticId::DegreeShiftCorrected: return "DSC";
        case StatisticId::TriangleProbability: return "TP";
    }
    return "?";
}

inline StatisticId statistic_from_string(std::string_view s) {
    for (StatisticId id : kAllStatistics)
        if (to_string(id) == s) return id;
    throw ConfigError("unknown statistic '" + std::string(s) + "'");
}

namespace detail {

inline void require_compatible(NodeId a, NodeId b) {
    if (a != b) throw IncompatibleError("snapshots/distributions disagree on node universe size");
}

/// Merge-walks two sorted pair->value maps, invoking f(pair, va, vb) on the
/// union of supports (absent side reported as 0).
template <typename MapT, typename F>
void for_union(const MapT& a, const MapT& b, F&& f) {
    auto ia = a.begin();
    auto ib = b.begin();
    using Value = typename MapT::mapped_type;
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            f(ia->first, ia->second, Value{});
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            f(ib->first, Value{}, ib->second);
            ++ib;
        } else {
            f(ia->first, ia->second, ib->second);
            ++ia;
            ++ib;
        }
    }
}

/// Sorted adjacency (neighbor, value) lists from a sparse pair map.
template <typename MapT>
std::vector<std::vector<std::pair<NodeId, typename MapT::mapped_type>>> adjacency(
    const MapT& edges, NodeId n_nodes) {
    std::vector<std::vector<std::pair<NodeId, typename MapT::mapped_type>>> adj(n_nodes);
    for (const auto& [pair, v] : edges) {
        adj[pair.i].emplace_back(pair.j, v);
        adj[pair.j].emplace_back(pair.i, v);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

}  // namespace detail

/// Graph edit distance over a fixed node universe: sum of per-pair
/// multiplicity edits, equivalently |E_t| + |E_{t-1}| - 2 |E_t cap E_{t-1}|
/// with multiset intersection.
inline double ged(const Snapshot& s_t, const Snapshot& s_prev) {
    detail::require_compatible(s_t.n_nodes(), s_prev.n_nodes());
    std::uint64_t edits = 0;
    detail::for_union(s_t.edges(), s_prev.edges(), [&](const NodePair&, std::uint64_t a, std::uint64_t b) {
        edits += a > b ? a - b : b - a;
    });
    return static_cast<double>(edits);
}

/// Degree distribution difference: squared histogram difference over degree
/// bins k >= 1 (degree-0 nodes do not enter the histogram).
inline double degree_dist_diff(const Snapshot& s_t, const Snapshot& s_prev) {
    detail::require_compatible(s_t.n_nodes(), s_prev.n_nodes());
    std::map<std::uint64_t, std::int64_t> hist_diff;
    for (std::uint64_t d : s_t.degrees())
        if (d > 0) ++hist_diff[d];
    for (std::uint64_t d : s_prev.degrees())
        if (d > 0) --hist_diff[d];
    double sum = 0.0;
    for (const auto& [deg, diff] : hist_diff) sum += static_cast<double>(diff) * diff;
    return sum;
}

/// Barrat weighted clustering coefficient, averaged over all N nodes.
/// Nodes with binary degree < 2 contribute 0.
inline double barrat_clustering(const Snapshot& s) {
    const NodeId n = s.n_nodes();
    if (n == 0) return 0.0;
    auto adj = detail::adjacency(s.edges(), n);
    double total = 0.0;
    for (NodeId i = 0; i < n; ++i) {
        const auto& nb = adj[i];
        const std::size_t k = nb.size();
        if (k < 2) continue;
        double strength = 0.0;
        for (const auto& [_, w] : nb) strength += static_cast<double>(w);
        // Ordered neighbor pairs (j,k), j != k: each unordered pair with a
        // closing edge a_jk contributes (e_ij + e_ik)/2 twice.
        double closed = 0.0;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                if (s.edges().count(canonical_pair(nb[a].first, nb[b].first)))
                    closed += static_cast<double>(nb[a].second + nb[b].second);
        total += closed / ((static_cast<double>(k) - 1.0) * strength);
    }
    return total / static_cast<double>(n);
}

/// Probability mass shift: sum over the union of supports of squared
/// per-pair probability differences. Also the true-value oracle MS(P).
inline double mass_shift(const EdgeDistribution& d_t, const EdgeDistribution& d_prev) {
    detail::require_compatible(d_t.n_nodes(), d_prev.n_nodes());
    double sum = 0.0;
    detail::for_union(d_t.probs(), d_prev.probs(), [&](const NodePair&, double a, double b) {
        sum += (a - b) * (a - b);
    });
    return sum;
}

/// Probabilistic degree shift: sum over nodes of squared change in
/// probabilistic degree. Also the true-value oracle DS(P).
inline double degree_shift(const EdgeDistribution& d_t, const EdgeDistribution& d_prev) {
    detail::require_compatible(d_t.n_nodes(), d_prev.n_nodes());
    auto pd_t = d_t.probabilistic_degrees();
    auto pd_prev = d_prev.probabilistic_degrees();
    double sum = 0.0;
    for (NodeId i = 0; i < d_t.n_nodes(); ++i)
        sum += (pd_t[i] - pd_prev[i]) * (pd_t[i] - pd_prev[i]);
    return sum;
}

/// Triangle probability: sum over unordered node triples {i,j,k} of
/// p_ij * p_ik * p_jk, via neighbor-support intersection (never dense N^3).
inline double triangle_probability(const EdgeDistribution& d) {
    auto adj = detail::adjacency(d.probs(), d.n_nodes());
    double sum = 0.0;
    for (const auto& [pair, p_ij] : d.probs()) {
        const auto& ni = adj[pair.i];
        const auto& nj = adj[pair.j];
        // common neighbors k > j close each triple exactly once
        std::size_t a = 0, b = 0;
        while (a < ni.size() && b < nj.size()) {
            if (ni[a].first < nj[b].first) {
                ++a;
            } else if (nj[b].first < ni[a].first) {
                ++b;
            } else {
                if (ni[a].first > pair.j) sum += p_ij * ni[a].second * nj[b].second;
                ++a;
                ++b;
            }
        }
    }
    return sum;
}

/// Empirical triangle probability of one snapshot: the U-statistic
/// sum e_ij*e_ik*e_jk / (|E|(|E|-1)(|E|-2)) over unordered triples. The
/// falling-factorial normalization makes it an exactly unbiased estimator of
/// the distribution-level value under multinomial edge placement; the naive
/// |E|^3 denominator is off by (|E|-1)(|E|-2)/|E|^2 because the pair counts
/// of a multinomial are negatively correlated. Fewer than three edges close
/// no triple, so the value is 0.
inline double triangle_probability(const Snapshot& s) {
    const std::uint64_t m = s.edge_count();
    if (m < 3) return 0.0;
    auto adj = detail::adjacency(s.edges(), s.n_nodes());
    double sum = 0.0;
    for (const auto& [pair, e_ij] : s.edges()) {
        const auto& ni = adj[pair.i];
        const auto& nj = adj[pair.j];
        std::size_t a = 0, b = 0;
        while (a < ni.size() && b < nj.size()) {
            if (ni[a].first < nj[b].first) {
                ++a;
            } else if (nj[b].first < ni[a].first) {
                ++b;
            } else {
                if (ni[a].first > pair.j)
                    sum += static_cast<double>(e_ij) * static_cast<double>(ni[a].second) *
                           static_cast<double>(nj[b].second);
                ++a;
                ++b;
            }
        }
    }
    return sum / (static_cast<double>(m) * static_cast<double>(m - 1) *
                  static_cast<double>(m - 2));
}

namespace detail {

/// Unbiased estimate of the per-pair sampling variance sum of an empirical
/// distribution: sum over pairs of p(1-p)/(|E|-1). The |E|-1 denominator is
/// what makes E[p_hat(1-p_hat)/(|E|-1)] = p(1-p)/|E| exactly (binomial
/// variance); terms with a zero numerator are skipped so |E|=1 is safe.
inline double pair_variance_sum(const Snapshot& s) {
    const double m = static_cast<double>(s.edge_count());
    double sum = 0.0;
    for (const auto& [pair, count] : s.edges()) {
        const double p = static_cast<double>(count) / m;
        const double num = p * (1.0 - p);
        if (num > 0.0) sum += num / (m - 1.0);
    }
    return sum;
}

/// Same idea at node level: the probabilistic degree estimate of node i is
/// d_i/|E| with d_i binomial(|E|, PD_i), so its variance is estimated
/// unbiasedly by PD_hat(1-PD_hat)/(|E|-1). Pair-level terms would overstate
/// it: counts of pairs sharing a node are negatively correlated.
inline double node_variance_sum(const Snapshot& s) {
    const double m = static_cast<double>(s.edge_count());
    double sum = 0.0;
    for (std::uint64_t d : s.degrees()) {
        const double pd = static_cast<double>(d) / m;  // degrees sum to 2|E|
        const double num = pd * (1.0 - pd);
        if (num > 0.0) sum += num / (m - 1.0);
    }
    return sum;
}

inline void require_nonempty(const Snapshot& s) {
    if (s.empty())
        throw EmptySnapshotError("bias-corrected statistic needs a non-empty snapshot (t=" +
                                 std::to_string(s.t()) + ")");
}

}  // namespace detail

/// Bias-corrected empirical mass shift: MS on empirical distributions minus
/// unbiased estimates of both snapshots' sampling variance sums. Exactly
/// unbiased for MS of the underlying distributions.
inline double mass_shift_corrected(const Snapshot& s_t, const Snapshot& s_prev) {
    detail::require_compatible(s_t.n_nodes(), s_prev.n_nodes());
    detail::require_nonempty(s_t);
    detail::require_nonempty(s_prev);
    return mass_shift(empirical_distribution(s_t), empirical_distribution(s_prev)) -
           detail::pair_variance_sum(s_t) - detail::pair_variance_sum(s_prev);
}

/// Bias-corrected empirical degree shift: DS minus unbiased estimates of the
/// per-node probabilistic-degree variances of both snapshots.
inline double degree_shift_corrected(const Snapshot& s_t, const Snapshot& s_prev) {
    detail::require_compatible(s_t.n_nodes(), s_prev.n_nodes());
    detail::require_nonempty(s_t);
    detail::require_nonempty(s_prev);
    return degree_shift(empirical_distribution(s_t), empirical_distribution(s_prev)) -
           detail::node_variance_sum(s_t) - detail::node_variance_sum(s_prev);
}

/// Uniform dispatch over a dynamic network. Delta statistics pair snapshot
/// idx with idx-1; consistent statistics use empirical distributions.
inline double compute(StatisticId id, const DynamicNetwork& net, std::size_t idx) {
    const Snapshot& s = net.at(idx);
    if (is_delta(id) && idx == 0)
        throw std::out_of_range("delta statistic needs a preceding snapshot");
    switch (id) {
        case StatisticId::Ged:
            return ged(s, net.at(idx - 1));
        case StatisticId::DegreeDistDiff:
            return degree_dist_diff(s, net.at(idx - 1));
        case StatisticId::BarratClustering:
            return barrat_clustering(s);
        case StatisticId::MassShift:
            return mass_shift(empirical_distribution(s), empirical_distribution(net.at(idx - 1)));
        case StatisticId::MassShiftCorrected:
            return mass_shift_corrected(s, net.at(idx - 1));
        case StatisticId::DegreeShift:
            return degree_shift(empirical_distribution(s), empirical_distribution(net.at(idx - 1)));
        case StatisticId::DegreeShiftCorrected:
            return degree_shift_corrected(s, net.at(idx - 1));
        case StatisticId::TriangleProbability:
            return triangle_probability(s);
    }
    throw std::logic_error("unreachable");
}

}  // namespace netshift
