#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netshift {

using NodeId = std::uint32_t;

// Canonical unordered node pair, always stored with i < j.
struct NodePair {
    NodeId i{0};
    NodeId j{0};

    friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

inline NodePair canonical_pair(NodeId a, NodeId b) {
    if (a == b) throw std::invalid_argument("self-loop pair (" + std::to_string(a) + ")");
    return a < b ? NodePair{a, b} : NodePair{b, a};
}

// ---- error taxonomy ----------------------------------------------------

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptySnapshotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IncompatibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateNullError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AttributionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- Snapshot -----------------------------------------------------------

/// One time step of an undirected multigraph over a fixed node universe.
/// Edge multiplicities are stored sparsely on canonical pairs; absent
/// pairs have multiplicity 0.
class Snapshot {
public:
    using EdgeMap = std::map<NodePair, std::uint64_t>;

    Snapshot(std::int64_t t, NodeId n_nodes, EdgeMap edges)
        : t_(t), n_nodes_(n_nodes), edges_(std::move(edges)) {
        for (const auto& [pair, count] : edges_) {
            if (pair.i >= pair.j)
                throw std::invalid_argument("snapshot edge pair not canonical");
            if (pair.j >= n_nodes_)
                throw std::out_of_range("snapshot edge endpoint out of node universe");
            if (count == 0)
                throw std::invalid_argument("snapshot edge with zero multiplicity");
            total_ += count;
        }
    }

    std::int64_t t() const { return t_; }
    NodeId n_nodes() const { return n_nodes_; }
    const EdgeMap& edges() const { return edges_; }
    std::uint64_t edge_count() const { return total_; }
    bool empty() const { return total_ == 0; }

    std::uint64_t multiplicity(NodeId a, NodeId b) const {
        auto it = edges_.find(canonical_pair(a, b));
        return it == edges_.end() ? 0 : it->second;
    }

    /// Sum of multiplicities of all pairs containing i.
    std::uint64_t degree(NodeId i) const {
        if (i >= n_nodes_) throw std::out_of_range("node id out of range");
        std::uint64_t d = 0;
        for (const auto& [pair, count] : edges_)
            if (pair.i == i || pair.j == i) d += count;
        return d;
    }

    /// All node degrees in one pass.
    std::vector<std::uint64_t> degrees() const {
        std::vector<std::uint64_t> d(n_nodes_, 0);
        for (const auto& [pair, count] : edges_) {
            d[pair.i] += count;
            d[pair.j] += count;
        }
        return d;
    }

private:
    std::int64_t t_;
    NodeId n_nodes_;
    EdgeMap edges_;
    std::uint64_t total_ = 0;
};

// ---- EdgeDistribution ----------------------------------------------------

/// Probability matrix over node pairs; total mass 1, no self-loop entries.
class EdgeDistribution {
public:
    using ProbMap = std::map<NodePair, double>;

    EdgeDistribution(NodeId n_nodes, ProbMap probs)
        : n_nodes_(n_nodes), probs_(std::move(probs)) {
        if (probs_.empty())
            throw std::invalid_argument("edge distribution must have support");
        double mass = 0.0;
        for (const auto& [pair, p] : probs_) {
            if (pair.i >= pair.j)
                throw std::invalid_argument("distribution pair not canonical");
            if (pair.j >= n_nodes_)
                throw std::out_of_range("distribution endpoint out of node universe");
            if (!(p > 0.0) || p > 1.0 + 1e-12)
                throw std::invalid_argument("edge probability outside (0,1]");
            mass += p;
        }
        if (std::abs(mass - 1.0) > 1e-9)
            throw std::invalid_argument("edge distribution mass must sum to 1");
    }

    NodeId n_nodes() const { return n_nodes_; }
    const ProbMap& probs() const { return probs_; }

    double prob(NodeId a, NodeId b) const {
        auto it = probs_.find(canonical_pair(a, b));
        return it == probs_.end() ? 0.0 : it->second;
    }

    /// PD(v_i) = sum of probabilities of pairs containing i.
    double probabilistic_degree(NodeId i) const {
        if (i >= n_nodes_) throw std::out_of_range("node id out of range");
        double d = 0.0;
        for (const auto& [pair, p] : probs_)
            if (pair.i == i || pair.j == i) d += p;
        return d;
    }

    /// All probabilistic degrees in one pass; sums to 2 over nodes.
    std::vector<double> probabilistic_degrees() const {
        std::vector<double> d(n_nodes_, 0.0);
        for (const auto& [pair, p] : probs_) {
            d[pair.i] += p;
            d[pair.j] += p;
        }
        return d;
    }

private:
    NodeId n_nodes_;
    ProbMap probs_;
};

/// Empirical edge distribution p_ij = e_ij / |E_t|.
inline EdgeDistribution empirical_distribution(const Snapshot& s) {
    if (s.empty())
        throw EmptySnapshotError("cannot estimate edge distribution of an empty snapshot (t=" +
                                 std::to_string(s.t()) + ")");
    const double total = static_cast<double>(s.edge_count());
    EdgeDistribution::ProbMap probs;
    for (const auto& [pair, count] : s.edges())
        probs.emplace(pair, static_cast<double>(count) / total);
    return EdgeDistribution(s.n_nodes(), std::move(probs));
}

// ---- DynamicNetwork --------------------------------------------------------

/// Ordered snapshots with strictly increasing time index and a shared node
/// universe.
class DynamicNetwork {
public:
    explicit DynamicNetwork(std::vector<Snapshot> snapshots)
        : snapshots_(std::move(snapshots)) {
        if (snapshots_.empty())
            throw std::invalid_argument("dynamic network needs at least one snapshot");
        n_nodes_ = snapshots_.front().n_nodes();
        for (std::size_t k = 0; k < snapshots_.size(); ++k) {
            if (snapshots_[k].n_nodes() != n_nodes_)
                throw IncompatibleError("snapshots disagree on node universe size");
            if (k > 0 && snapshots_[k].t() <= snapshots_[k - 1].t())
                throw std::invalid_argument("snapshot time indices must strictly increase");
        }
    }

    NodeId n_nodes() const { return n_nodes_; }
    std::size_t size() const { return snapshots_.size(); }
    const Snapshot& at(std::size_t idx) const {
        if (idx >= snapshots_.size()) throw std::out_of_range("snapshot index out of range");
        return snapshots_[idx];
    }
    const std::vector<Snapshot>& snapshots() const { return snapshots_; }

private:
    std::vector<Snapshot> snapshots_;
    NodeId n_nodes_ = 0;
};

}  // namespace netshift
