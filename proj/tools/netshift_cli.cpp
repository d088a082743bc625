// Command-line front end: ingestion, detection, attribution and the
// synthetic benchmark. Exit codes: 0 ok, 2 config error, 3 data error,
// 4 numeric degeneracy.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "netshift/attribution.hpp"
#include "netshift/benchmark.hpp"
#include "netshift/config.hpp"
#include "netshift/detector.hpp"
#include "netshift/parse.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace netshift;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitDegenerate = 4;

std::vector<StatisticId> parse_stats(const std::string& csv) {
    std::vector<StatisticId> out;
    for (const auto& tok : KeyValueConfig::split(csv, ',')) out.push_back(statistic_from_string(tok));
    if (out.empty()) throw ConfigError("empty statistic list");
    return out;
}

NullPolicy parse_null_policy(const std::string& s) {
    NullPolicy p;
    if (s == "loo") {
        p.kind = NullPolicy::Kind::LeaveOneOut;
        return p;
    }
    if (s.rfind("learning:", 0) == 0) {
        auto range = s.substr(9);
        auto sep = range.find("..");
        if (sep == std::string::npos)
            throw ConfigError("learning window must look like learning:<t1..t2>");
        long lo = std::stol(range.substr(0, sep));
        long hi = std::stol(range.substr(sep + 2));
        if (lo < 0 || hi < lo) throw ConfigError("bad learning window '" + range + "'");
        p.kind = NullPolicy::Kind::LearningWindow;
        for (long t = lo; t <= hi; ++t) p.learning.push_back(static_cast<std::size_t>(t));
        return p;
    }
    throw ConfigError("null policy must be 'loo' or 'learning:<t1..t2>'");
}

DetrendMode parse_detrend(const std::string& s) {
    if (s == "none") return DetrendMode::None;
    if (s == "linear") return DetrendMode::Linear;
    throw ConfigError("detrend must be 'none' or 'linear'");
}

ParsedStream load_stream(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    ParsedStream stream = parse_edge_stream(in);
    if (stream.records.empty()) throw ParseError("input file '" + path + "' has no records");
    return stream;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write output file '" + path + "'");
    out << content;
}

json null_to_json(const NullModel& n) {
    return json{{"mean", n.mean}, {"sd", n.sd}, {"phi_lower", n.phi_lower}, {"phi_upper", n.phi_upper}};
}

json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

// ---- detect ---------------------------------------------------------------

struct DetectOptions {
    std::string input;
    std::string config_file;
    std::int64_t window = 1;
    double alpha = 0.05;
    std::string stats = "GED,DD,CB,MS,MSC,DS,DSC,TP";
    std::string detrend = "none";
    std::string null_policy = "loo";
    std::string empty_policy = "error";
    std::string out = "detect";
    std::string format = "json";
};

int cmd_detect(DetectOptions opt, const std::set<std::string>& flag_overrides) {
    if (!opt.config_file.empty()) {
        KeyValueConfig kv = KeyValueConfig::from_file(opt.config_file);
        // flags override the config file
        auto keep = [&](const char* k) { return flag_overrides.count(k) == 0; };
        if (keep("input")) opt.input = kv.get_string("input", opt.input);
        if (keep("window")) opt.window = kv.get_int("window", opt.window);
        if (keep("alpha")) opt.alpha = kv.get_double("alpha", opt.alpha);
        if (keep("stats")) opt.stats = kv.get_string("stats", opt.stats);
        if (keep("detrend")) opt.detrend = kv.get_string("detrend", opt.detrend);
        if (keep("null")) opt.null_policy = kv.get_string("null", opt.null_policy);
        if (keep("empty")) opt.empty_policy = kv.get_string("empty_snapshots", opt.empty_policy);
        if (keep("out")) opt.out = kv.get_string("out", opt.out);
        if (keep("format")) opt.format = kv.get_string("format", opt.format);
        // consume shadowed keys so they are not reported as unknown
        kv.get_string("input", ""), kv.get_string("stats", ""), kv.get_string("detrend", "");
        kv.get_string("null", ""), kv.get_string("empty_snapshots", ""), kv.get_string("out", "");
        kv.get_string("format", ""), kv.get_int("window", 0), kv.get_double("alpha", 0);
        kv.require_consumed();
    }
    if (opt.input.empty()) throw ConfigError("no input file given (flag --input or config key 'input')");
    if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) throw ConfigError("alpha must be in (0,1)");
    if (opt.format != "json" && opt.format != "csv") throw ConfigError("format must be json or csv");

    DetectorConfig cfg;
    cfg.alpha = opt.alpha;
    cfg.statistics = parse_stats(opt.stats);
    cfg.detrend = parse_detrend(opt.detrend);
    cfg.null_policy = parse_null_policy(opt.null_policy);
    if (opt.empty_policy == "error")
        cfg.empty_snapshot_policy = EmptySnapshotPolicy::Error;
    else if (opt.empty_policy == "skip")
        cfg.empty_snapshot_policy = EmptySnapshotPolicy::Skip;
    else
        throw ConfigError("empty snapshot policy must be 'error' or 'skip'");

    ParsedStream stream = load_stream(opt.input);
    WindowResult wr = window_into_snapshots(stream, opt.window);
    if (wr.dropped_self_loops)
        std::cerr << "warning: dropped " << wr.dropped_self_loops << " self-loop record(s)\n";

    DetectionReport report = detect(wr.net, cfg);

    json j;
    j["config"] = {{"input", opt.input},       {"window", opt.window},
                   {"alpha", opt.alpha},       {"stats", opt.stats},
                   {"detrend", opt.detrend},   {"null", opt.null_policy},
                   {"empty_snapshots", opt.empty_policy}};
    j["statistics"] = json::array();
    std::ostringstream timeline;
    timeline << "t,statistic,value,z,flag\n";
    for (const auto& sr : report.statistics) {
        json js;
        js["id"] = std::string(to_string(sr.id));
        js["trend"] = {{"intercept", sr.trend.intercept}, {"slope", sr.trend.slope}};
        js["null"] = sr.null ? null_to_json(*sr.null) : json(nullptr);
        js["points"] = json::array();
        for (const auto& p : sr.points) {
            js["points"].push_back({{"index", p.index},
                                    {"t", p.t},
                                    {"raw", number_or_null(p.raw)},
                                    {"detrended", number_or_null(p.detrended)},
                                    {"z", number_or_null(p.z)},
                                    {"flagged", p.flagged},
                                    {"skipped", p.skipped}});
            timeline << p.t << ',' << to_string(sr.id) << ','
                     << (p.skipped ? "" : format_double(p.raw)) << ','
                     << (p.skipped ? "" : format_double(p.z)) << ','
                     << (p.skipped ? "skip" : (p.flagged ? "1" : "0")) << '\n';
        }
        j["statistics"].push_back(std::move(js));
    }
    if (opt.format == "json") write_file(opt.out + ".report.json", j.dump(2) + "\n");
    write_file(opt.out + ".timeline.csv", timeline.str());
    return kExitOk;
}

// ---- attribute --------------------------------------------------------------

int cmd_attribute(const std::string& input, std::int64_t window, std::size_t t,
                  const std::string& stat, double target, std::size_t max_elements,
                  const std::string& out) {
    StatisticId id = statistic_from_string(stat);
    ParsedStream stream = load_stream(input);
    WindowResult wr = window_into_snapshots(stream, window);

    ContributionMap cm;
    try {
        cm = decompose(id, wr.net, t);
    } catch (const std::out_of_range& e) {
        throw ConfigError(e.what());
    }
    AnomalySubgraph sg = extract_subgraph(cm, wr.net, t, target, max_elements);

    json j;
    j["statistic"] = std::string(to_string(id));
    j["index"] = t;
    j["t"] = wr.net.at(t).t();
    j["target_fraction"] = target;
    j["total"] = cm.total;
    j["covered_fraction"] = sg.covered_fraction;
    j["elements"] = json::array();
    for (const auto& e : sg.contributing_elements) {
        json je;
        if (e.kind == ContributionKind::PerPair) {
            je["pair"] = {e.pair.i, e.pair.j};
            je["labels"] = {stream.labels.label(e.pair.i), stream.labels.label(e.pair.j)};
        } else {
            je["node"] = e.node;
            je["label"] = stream.labels.label(e.node);
        }
        je["score"] = e.score;
        j["elements"].push_back(std::move(je));
    }
    j["nodes"] = sg.nodes;
    auto edges_json = [](const Snapshot::EdgeMap& edges) {
        json arr = json::array();
        for (const auto& [pair, count] : edges) arr.push_back({pair.i, pair.j, count});
        return arr;
    };
    j["edges_before"] = edges_json(sg.edges_before);
    j["edges_after"] = edges_json(sg.edges_after);
    write_file(out + ".attribution.json", j.dump(2) + "\n");
    return kExitOk;
}

// ---- benchmark ---------------------------------------------------------------

int cmd_benchmark(const std::string& config_file, std::optional<std::uint64_t> seed,
                  const std::string& out) {
    BenchmarkConfig cfg;
    if (!config_file.empty()) {
        KeyValueConfig kv = KeyValueConfig::from_file(config_file);
        cfg = benchmark_config_from(kv);
    }
    if (seed) cfg.seed = *seed;
    BenchmarkResult result = run_benchmark(cfg);
    write_file(out + "_recall.csv", recall_csv(result.recall));
    write_file(out + "_bias.csv", bias_csv(result.bias));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Density-consistent anomaly detection on dynamic multigraph streams"};
    app.require_subcommand(1);

    DetectOptions det;
    auto* detect_cmd = app.add_subcommand("detect", "Run statistic-based anomaly detection");
    detect_cmd->add_option("--input", det.input, "temporal edge-list file");
    detect_cmd->add_option("--config", det.config_file, "key=value config file");
    detect_cmd->add_option("--window", det.window, "window width in timestamp units");
    detect_cmd->add_option("--alpha", det.alpha, "two-tailed test p-value");
    detect_cmd->add_option("--stats", det.stats, "comma list of GED,DD,CB,MS,MSC,DS,DSC,TP");
    detect_cmd->add_option("--detrend", det.detrend, "none|linear");
    detect_cmd->add_option("--null", det.null_policy, "loo | learning:<t1..t2>");
    detect_cmd->add_option("--empty", det.empty_policy, "empty snapshot policy: error|skip");
    detect_cmd->add_option("--out", det.out, "output path prefix");
    detect_cmd->add_option("--format", det.format, "json|csv");

    std::string att_input, att_stat = "MS", att_out = "attribute";
    std::int64_t att_window = 1;
    std::size_t att_t = 0, att_max = 50;
    double att_target = 0.5;
    auto* att_cmd = app.add_subcommand("attribute", "Decompose a flagged time step into a subgraph");
    att_cmd->add_option("--input", att_input, "temporal edge-list file")->required();
    att_cmd->add_option("--window", att_window, "window width in timestamp units");
    att_cmd->add_option("--t", att_t, "snapshot index to attribute")->required();
    att_cmd->add_option("--stat", att_stat, "MS|DS|TP");
    att_cmd->add_option("--target", att_target, "target coverage fraction");
    att_cmd->add_option("--max-elements", att_max, "element cap for the subgraph");
    att_cmd->add_option("--out", att_out, "output path prefix");

    std::string bench_config, bench_out = "benchmark";
    std::optional<std::uint64_t> bench_seed;
    auto* bench_cmd = app.add_subcommand("benchmark", "Run the synthetic recall/bias benchmark");
    bench_cmd->add_option("--config", bench_config, "experiment key=value config file");
    bench_cmd->add_option("--seed", bench_seed, "root seed override");
    bench_cmd->add_option("--out", bench_out, "output path prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*detect_cmd) {
            std::set<std::string> overridden;
            for (const char* name : {"input", "window", "alpha", "stats", "detrend", "null",
                                     "empty", "out", "format"})
                if (detect_cmd->count(std::string("--") + name)) overridden.insert(name);
            return cmd_detect(det, overridden);
        }
        if (*att_cmd)
            return cmd_attribute(att_input, att_window, att_t, att_stat, att_target, att_max,
                                 att_out);
        if (*bench_cmd) return cmd_benchmark(bench_config, bench_seed, bench_out);
    } catch (const DegenerateNullError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitConfig;
}
