#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "netshift/core.hpp"
#include "netshift/statistics.hpp"

namespace netshift {

enum class ContributionKind { PerPair, PerNode };

/// One decomposed element: a node pair (MS, TP) or a node (DS).
struct ContributionElement {
    ContributionKind kind;
    NodePair pair{};  // PerPair
    NodeId node{};    // PerNode
    double score = 0.0;

    /// Total order used for deterministic tie-breaks.
    std::pair<NodeId, NodeId> key() const {
        return kind == ContributionKind::PerPair ? std::pair{pair.i, pair.j}
                                                 : std::pair{node, node};
    }
};

struct ContributionMap {
    StatisticId statistic;
    ContributionKind kind;
    std::vector<ContributionElement> elements;  // sorted by key
    double total = 0.0;
};

/// Splits the uncorrected statistic at snapshot idx into per-element
/// contributions. MS: per-pair squared probability change; DS: per-node
/// squared probabilistic-degree change; TP: each triple's product split in
/// thirds onto its three pairs. Contributions sum to the statistic exactly.
inline ContributionMap decompose(StatisticId id, const DynamicNetwork& net, std::size_t idx) {
    ContributionMap cm;
    cm.statistic = id;
    switch (id) {
        case StatisticId::MassShift: {
            if (idx == 0) throw std::out_of_range("MS needs a preceding snapshot");
            cm.kind = ContributionKind::PerPair;
            auto d_t = empirical_distribution(net.at(idx));
            auto d_prev = empirical_distribution(net.at(idx - 1));
            detail::for_union(d_t.probs(), d_prev.probs(),
                              [&](const NodePair& p, double a, double b) {
                                  cm.elements.push_back({cm.kind, p, 0, (a - b) * (a - b)});
                              });
            break;
        }
        case StatisticId::DegreeShift: {
            if (idx == 0) throw std::out_of_range("DS needs a preceding snapshot");
            cm.kind = ContributionKind::PerNode;
            auto pd_t = empirical_distribution(net.at(idx)).probabilistic_degrees();
            auto pd_prev = empirical_distribution(net.at(idx - 1)).probabilistic_degrees();
            for (NodeId i = 0; i < net.n_nodes(); ++i) {
                const double d = pd_t[i] - pd_prev[i];
                cm.elements.push_back({cm.kind, {}, i, d * d});
            }
            break;
        }
        case StatisticId::TriangleProbability: {
            cm.kind = ContributionKind::PerPair;
            const std::uint64_t m = net.at(idx).edge_count();
            // rescale the plug-in triple products to the unbiased estimator's
            // normalization so contributions sum to the reported statistic
            const double scale =
                m < 3 ? 0.0
                      : static_cast<double>(m) * static_cast<double>(m) /
                            (static_cast<double>(m - 1) * static_cast<double>(m - 2));
            auto d = empirical_distribution(net.at(idx));
            auto adj = detail::adjacency(d.probs(), d.n_nodes());
            std::map<NodePair, double> scores;
            for (const auto& [pair, p] : d.probs()) scores[pair] = 0.0;
            for (const auto& [pair, p_ij] : d.probs()) {
                const auto& ni = adj[pair.i];
                const auto& nj = adj[pair.j];
                std::size_t a = 0, b = 0;
                while (a < ni.size() && b < nj.size()) {
                    if (ni[a].first < nj[b].first) {
                        ++a;
                    } else if (nj[b].first < ni[a].first) {
                        ++b;
                    } else {
                        NodeId k = ni[a].first;
                        if (k > pair.j) {
                            const double third = scale * p_ij * ni[a].second * nj[b].second / 3.0;
                            scores[pair] += third;
                            scores[canonical_pair(pair.i, k)] += third;
                            scores[canonical_pair(pair.j, k)] += third;
                        }
                        ++a;
                        ++b;
                    }
                }
            }
            for (const auto& [pair, s] : scores) cm.elements.push_back({cm.kind, pair, 0, s});
            break;
        }
        default:
            throw ConfigError("statistic " + std::string(to_string(id)) +
                              " is not decomposed; only the density-consistent MS, DS and TP "
                              "decompose into per-element contributions");
    }
    for (const auto& e : cm.elements) cm.total += e.score;
    return cm;
}

struct AnomalySubgraph {
    std::vector<NodeId> nodes;  // sorted
    Snapshot::EdgeMap edges_before;
    Snapshot::EdgeMap edges_after;
    double covered_fraction = 0.0;
    std::vector<ContributionElement> contributing_elements;  // score-descending
};

/// Greedily takes elements by descending score (ties by smallest key) until
/// the cumulative score reaches target_fraction of the total or max_elements
/// is hit, then restricts snapshots idx-1 and idx to the induced node set.
inline AnomalySubgraph extract_subgraph(const ContributionMap& cm, const DynamicNetwork& net,
                                        std::size_t idx, double target_fraction = 0.5,
                                        std::size_t max_elements = 50) {
    if (!(target_fraction > 0.0 && target_fraction <= 1.0))
        throw ConfigError("target_fraction must be in (0,1]");
    if (max_elements == 0) throw ConfigError("max_elements must be positive");
    if (!(cm.total > 0.0))
        throw AttributionError("nothing to attribute: total contribution is zero");

    std::vector<ContributionElement> ordered = cm.elements;
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.key() < b.key();
    });

    AnomalySubgraph out;
    double covered = 0.0;
    std::set<NodeId> nodes;
    for (const auto& e : ordered) {
        if (covered >= target_fraction * cm.total || out.contributing_elements.size() >= max_elements)
            break;
        out.contributing_elements.push_back(e);
        covered += e.score;
        if (e.kind == ContributionKind::PerPair) {
            nodes.insert(e.pair.i);
            nodes.insert(e.pair.j);
        } else {
            nodes.insert(e.node);
        }
    }
    out.covered_fraction = covered / cm.total;
    out.nodes.assign(nodes.begin(), nodes.end());

    auto restrict = [&](const Snapshot& s, Snapshot::EdgeMap& dst) {
        for (const auto& [pair, count] : s.edges())
            if (nodes.count(pair.i) && nodes.count(pair.j)) dst.emplace(pair, count);
    };
    restrict(net.at(idx), out.edges_after);
    if (idx > 0) restrict(net.at(idx - 1), out.edges_before);
    return out;
}

}  // namespace netshift
