#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "netshift/core.hpp"

namespace netshift {

/// Flat key=value config file. Blank lines and `#` comments are ignored;
/// consumers must drain every key via the typed getters, and unknown keys
/// are reported by require_consumed().
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig from_stream(std::istream& in) {
        KeyValueConfig cfg;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string_view sv(line);
            if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
            while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
            if (sv.empty() || sv.front() == '#') continue;
            auto eq = sv.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
            std::string key(sv.substr(0, eq));
            std::string value(sv.substr(eq + 1));
            while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
            while (!value.empty() && (value.front() == ' ' || value.front() == '\t'))
                value.erase(value.begin());
            cfg.values_[key] = value;
        }
        return cfg;
    }

    static KeyValueConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        return from_stream(in);
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, std::string fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        consumed_.insert(key);
        return it->second;
    }

    double get_double(const std::string& key, double fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        consumed_.insert(key);
        return parse_double(key, it->second);
    }

    std::int64_t get_int(const std::string& key, std::int64_t fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        consumed_.insert(key);
        return parse_int(key, it->second);
    }

    std::vector<double> get_double_list(const std::string& key, std::vector<double> fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        consumed_.insert(key);
        std::vector<double> out;
        for (const auto& tok : split(it->second, ',')) out.push_back(parse_double(key, tok));
        return out;
    }

    std::vector<std::string> get_string_list(const std::string& key,
                                             std::vector<std::string> fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        consumed_.insert(key);
        return split(it->second, ',');
    }

    void require_consumed() const {
        for (const auto& [key, _] : values_)
            if (!consumed_.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }

    static std::vector<std::string> split(const std::string& s, char sep) {
        std::vector<std::string> out;
        std::string tok;
        std::istringstream ss(s);
        while (std::getline(ss, tok, sep))
            if (!tok.empty()) out.push_back(tok);
        return out;
    }

private:
    static double parse_double(const std::string& key, const std::string& s) {
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': bad number '" + s + "'");
        }
    }

    static std::int64_t parse_int(const std::string& key, const std::string& s) {
        std::int64_t v{};
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw ConfigError("config key '" + key + "': bad integer '" + s + "'");
        return v;
    }

    std::map<std::string, std::string> values_;
    std::set<std::string> consumed_;
};

/// Shortest round-tripping decimal form, identical on every run.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace netshift
