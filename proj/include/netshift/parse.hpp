#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "netshift/core.hpp"

namespace netshift {

/// Interning table mapping arbitrary node labels to dense 0-based ids in
/// first-seen order. Kept after parsing for report output.
class LabelTable {
public:
    NodeId intern(std::string_view label) {
        auto it = index_.find(std::string(label));
        if (it != index_.end()) return it->second;
        NodeId id = static_cast<NodeId>(labels_.size());
        labels_.emplace_back(label);
        index_.emplace(labels_.back(), id);
        return id;
    }

    std::optional<NodeId> lookup(std::string_view label) const {
        auto it = index_.find(std::string(label));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& label(NodeId id) const { return labels_.at(id); }
    NodeId size() const { return static_cast<NodeId>(labels_.size()); }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
};

struct EdgeRecord {
    std::int64_t timestamp;
    NodeId src;
    NodeId dst;
    std::uint64_t count;
};

struct ParsedStream {
    std::vector<EdgeRecord> records;
    LabelTable labels;
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == ','))
            ++pos;
        std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != ',')
            ++pos;
        if (pos > start) fields.push_back(line.substr(start, pos - start));
    }
    return fields;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace detail

/// Parses a temporal edge-list: `timestamp src dst [count]` per line,
/// whitespace- or comma-separated, `#` comments ignored. Self-loops are
/// accepted here and dropped later when snapshots are built.
inline ParsedStream parse_edge_stream(std::istream& in) {
    ParsedStream out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
        auto fields = detail::split_fields(sv);
        if (fields.empty() || fields[0].front() == '#') continue;
        if (fields.size() < 3 || fields.size() > 4)
            throw ParseError("line " + std::to_string(lineno) + ": expected 3 or 4 fields, got " +
                             std::to_string(fields.size()));
        std::int64_t ts;
        if (!detail::parse_int(fields[0], ts))
            throw ParseError("line " + std::to_string(lineno) + ": bad timestamp '" +
                             std::string(fields[0]) + "'");
        std::uint64_t count = 1;
        if (fields.size() == 4) {
            std::int64_t raw;
            if (!detail::parse_int(fields[3], raw))
                throw ParseError("line " + std::to_string(lineno) + ": bad count '" +
                                 std::string(fields[3]) + "'");
            if (raw <= 0)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": rejected record, count must be positive");
            count = static_cast<std::uint64_t>(raw);
        }
        NodeId src = out.labels.intern(fields[1]);
        NodeId dst = out.labels.intern(fields[2]);
        out.records.push_back({ts, src, dst, count});
    }
    return out;
}

struct WindowResult {
    DynamicNetwork net;
    std::uint64_t dropped_self_loops = 0;
};

/// Bins records into snapshots of width `window_width` (t = floor(ts/width)),
/// collapsing direction onto canonical pairs and accumulating multiplicities.
/// Empty windows between the first and last populated one are materialized so
/// the time axis stays contiguous.
inline WindowResult window_into_snapshots(const ParsedStream& stream, std::int64_t window_width,
                                          std::optional<NodeId> n_nodes_override = std::nullopt) {
    if (window_width < 1) throw ConfigError("window_width must be >= 1");
    if (stream.records.empty()) throw ConfigError("no records to window");
    NodeId n_nodes = stream.labels.size();
    if (n_nodes_override) {
        if (*n_nodes_override < n_nodes)
            throw ConfigError("n_nodes_override smaller than interned node count");
        n_nodes = *n_nodes_override;
    }

    auto floor_div = [](std::int64_t a, std::int64_t b) {
        std::int64_t q = a / b;
        return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
    };

    std::int64_t t_min = 0, t_max = 0;
    bool first = true;
    std::map<std::int64_t, Snapshot::EdgeMap> windows;
    std::uint64_t dropped = 0;
    for (const auto& rec : stream.records) {
        std::int64_t t = floor_div(rec.timestamp, window_width);
        if (first) {
            t_min = t_max = t;
            first = false;
        } else {
            t_min = std::min(t_min, t);
            t_max = std::max(t_max, t);
        }
        if (rec.src == rec.dst) {
            ++dropped;
            windows.try_emplace(t);  // the window still exists
            continue;
        }
        windows[t][canonical_pair(rec.src, rec.dst)] += rec.count;
    }

    std::vector<Snapshot> snaps;
    snaps.reserve(static_cast<std::size_t>(t_max - t_min + 1));
    for (std::int64_t t = t_min; t <= t_max; ++t) {
        auto it = windows.find(t);
        snaps.emplace_back(t, n_nodes,
                           it == windows.end() ? Snapshot::EdgeMap{} : std::move(it->second));
    }
    return {DynamicNetwork(std::move(snaps)), dropped};
}

}  // namespace netshift
