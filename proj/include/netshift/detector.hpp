#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netshift/core.hpp"
#include "netshift/statistics.hpp"

namespace netshift {

/// Inverse standard normal CDF (Acklam's rational approximation, absolute
/// error below 1.2e-9). Only upper quantiles are needed here.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("normal quantile needs p in (0,1)");
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double q, r;
    if (p < p_low) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        q = p - 0.5;
        r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

enum class DetrendMode { None, Linear };
enum class EmptySnapshotPolicy { Error, Skip };

struct NullPolicy {
    enum class Kind { LearningWindow, LeaveOneOut } kind = Kind::LeaveOneOut;
    std::vector<std::size_t> learning;  // snapshot indices, LearningWindow only

    static NullPolicy leave_one_out() { return {}; }

    static NullPolicy learning_window(std::size_t first, std::size_t last) {
        if (last < first) throw ConfigError("learning window end precedes start");
        NullPolicy p;
        p.kind = Kind::LearningWindow;
        for (std::size_t i = first; i <= last; ++i) p.learning.push_back(i);
        return p;
    }
};

struct DetectorConfig {
    double alpha = 0.05;
    std::vector<StatisticId> statistics;
    NullPolicy null_policy;
    DetrendMode detrend = DetrendMode::None;
    EmptySnapshotPolicy empty_snapshot_policy = EmptySnapshotPolicy::Error;
};

struct TrendFit {
    double intercept = 0.0;
    double slope = 0.0;

    double at(double t) const { return intercept + slope * t; }
};

struct NullModel {
    double mean;
    double sd;
    double phi_lower;
    double phi_upper;
};

/// Ordinary least squares of value on time over the learning points;
/// mode None yields the zero fit.
inline TrendFit fit_trend(const std::vector<std::pair<double, double>>& points,
                          DetrendMode mode) {
    if (mode == DetrendMode::None) return {};
    double first_t = points.empty() ? 0.0 : points.front().first;
    bool distinct = false;
    for (const auto& [t, _] : points)
        if (t != first_t) distinct = true;
    if (!distinct) throw ConfigError("linear detrend needs >= 2 distinct learning time steps");
    double st = 0, sv = 0, stt = 0, stv = 0;
    const double n = static_cast<double>(points.size());
    for (const auto& [t, v] : points) {
        st += t;
        sv += v;
        stt += t * t;
        stv += t * v;
    }
    const double slope = (n * stv - st * sv) / (n * stt - st * st);
    const double intercept = (sv - slope * st) / n;
    return {intercept, slope};
}

/// Sample mean/sd (n-1 denominator) with two-tailed Z thresholds.
inline NullModel fit_null(const std::vector<double>& values, double alpha,
                          std::string_view statistic_name = "") {
    if (values.size() < 3) throw ConfigError("null estimation needs >= 3 learning values");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    if (sd <= 0.0)
        throw DegenerateNullError("degenerate null (constant learning values) for statistic " +
                                  std::string(statistic_name));
    const double z = normal_quantile(1.0 - alpha / 2.0);
    return {mean, sd, mean - z * sd, mean + z * sd};
}

struct SeriesPoint {
    std::size_t index;      // snapshot position in the network
    std::int64_t t;         // snapshot time label
    double raw = 0.0;
    double detrended = 0.0;
    double z = 0.0;
    bool flagged = false;
    bool skipped = false;
};

struct StatisticReport {
    StatisticId id;
    TrendFit trend;                 // leave-one-out: fit on all defined points
    std::optional<NullModel> null;  // leave-one-out: informational full-sample null
    std::vector<SeriesPoint> points;
};

struct DetectionReport {
    DetectorConfig config;
    std::vector<StatisticReport> statistics;
};

namespace detail {

inline bool series_point_defined(StatisticId id, const DynamicNetwork& net, std::size_t idx,
                                 EmptySnapshotPolicy policy) {
    bool needs_edges = is_density_consistent(id) && id != StatisticId::BarratClustering;
    if (!needs_edges) return true;
    bool ok = !net.at(idx).empty() && (!is_delta(id) || !net.at(idx - 1).empty());
    if (!ok && policy == EmptySnapshotPolicy::Error)
        throw EmptySnapshotError("empty snapshot at index " + std::to_string(idx) +
                                 " (set empty_snapshot_policy=skip to tolerate)");
    return ok;
}

}  // namespace detail

/// Statistic-based hypothesis test over the whole stream: per statistic,
/// compute the series, detrend on the learning points, fit the null, and
/// flag points whose detrended value leaves [phi_lower, phi_upper].
/// Leave-one-out refits trend and null per test point, excluding it.
inline DetectionReport detect(const DynamicNetwork& net, const DetectorConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha must be in (0,1)");
    if (cfg.statistics.empty()) throw ConfigError("no statistics requested");

    DetectionReport report;
    report.config = cfg;
    for (StatisticId id : cfg.statistics) {
        StatisticReport sr;
        sr.id = id;
        const std::size_t start = is_delta(id) ? 1 : 0;
        if (net.size() <= start)
            throw ConfigError("stream too short for statistic " + std::string(to_string(id)));

        std::vector<SeriesPoint> pts;
        for (std::size_t idx = start; idx < net.size(); ++idx) {
            SeriesPoint p;
            p.index = idx;
            p.t = net.at(idx).t();
            if (!detail::series_point_defined(id, net, idx, cfg.empty_snapshot_policy)) {
                p.skipped = true;
                p.raw = p.detrended = p.z = std::nan("");
            } else {
                p.raw = compute(id, net, idx);
            }
            pts.push_back(p);
        }

        auto defined = [&](std::size_t k) { return !pts[k].skipped; };
        auto learning_points = [&](std::optional<std::size_t> exclude) {
            std::vector<std::pair<double, double>> tv;
            if (cfg.null_policy.kind == NullPolicy::Kind::LearningWindow) {
                for (std::size_t idx : cfg.null_policy.learning) {
                    if (idx < start || idx >= net.size())
                        throw ConfigError("learning index " + std::to_string(idx) +
                                          " invalid for statistic " + std::string(to_string(id)));
                    const auto& p = pts[idx - start];
                    if (!p.skipped) tv.emplace_back(static_cast<double>(p.index), p.raw);
                }
            } else {
                for (std::size_t k = 0; k < pts.size(); ++k)
                    if (defined(k) && (!exclude || *exclude != k))
                        tv.emplace_back(static_cast<double>(pts[k].index), pts[k].raw);
            }
            return tv;
        };

        auto score = [&](SeriesPoint& p, const TrendFit& trend, const NullModel& null) {
            p.detrended = p.raw - trend.at(static_cast<double>(p.index));
            p.z = (p.detrended - null.mean) / null.sd;
            p.flagged = p.detrended < null.phi_lower || p.detrended > null.phi_upper;
        };

        if (cfg.null_policy.kind == NullPolicy::Kind::LearningWindow) {
            if (cfg.null_policy.learning.empty())
                throw ConfigError("learning window must be non-empty");
            auto tv = learning_points(std::nullopt);
            sr.trend = fit_trend(tv, cfg.detrend);
            std::vector<double> detrended;
            for (const auto& [t, v] : tv) detrended.push_back(v - sr.trend.at(t));
            sr.null = fit_null(detrended, cfg.alpha, to_string(id));
            for (auto& p : pts)
                if (!p.skipped) score(p, sr.trend, *sr.null);
        } else {
            for (std::size_t k = 0; k < pts.size(); ++k) {
                if (!defined(k)) continue;
                auto tv = learning_points(k);
                TrendFit trend = fit_trend(tv, cfg.detrend);
                std::vector<double> detrended;
                for (const auto& [t, v] : tv) detrended.push_back(v - trend.at(t));
                NullModel null = fit_null(detrended, cfg.alpha, to_string(id));
                score(pts[k], trend, null);
            }
            // informational summary over all defined points
            auto tv = learning_points(std::nullopt);
            sr.trend = fit_trend(tv, cfg.detrend);
            std::vector<double> detrended;
            for (const auto& [t, v] : tv) detrended.push_back(v - sr.trend.at(t));
            sr.null = fit_null(detrended, cfg.alpha, to_string(id));
        }
        sr.points = std::move(pts);
        report.statistics.push_back(std::move(sr));
    }
    return report;
}

}  // namespace netshift
