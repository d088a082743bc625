#include <gtest/gtest.h>

#include <random>

#include "netshift/statistics.hpp"
#include "oracles.hpp"

using namespace netshift;

namespace {

Snapshot snap(NodeId n, Snapshot::EdgeMap edges, std::int64_t t = 0) {
    return Snapshot(t, n, std::move(edges));
}

// small seeded generator for property checks
Snapshot random_snapshot(NodeId n, std::uint64_t edges, std::mt19937& rng) {
    std::uniform_int_distribution<NodeId> node(0, n - 1);
    Snapshot::EdgeMap map;
    for (std::uint64_t k = 0; k < edges; ++k) {
        NodeId a = node(rng), b = node(rng);
        if (a == b) continue;
        ++map[canonical_pair(a, b)];
    }
    return snap(n, std::move(map));
}

TEST(Ged, Examples) {
    auto a = snap(3, {{{0, 1}, 2}});
    EXPECT_DOUBLE_EQ(ged(a, a), 0.0);
    auto b = snap(3, {{{0, 1}, 1}, {{1, 2}, 1}});
    EXPECT_DOUBLE_EQ(ged(a, b), 2.0);
    EXPECT_DOUBLE_EQ(ged(snap(3, {{{0, 1}, 5}}), snap(3, {})), 5.0);
    EXPECT_THROW(ged(a, snap(4, {})), IncompatibleError);
}

TEST(DegreeDistDiff, Examples) {
    auto a = snap(2, {{{0, 1}, 1}});
    EXPECT_DOUBLE_EQ(degree_dist_diff(a, a), 0.0);
    // {ab:1} vs {ab:2}: hist {1:2} vs {2:2} -> 4 + 4 = 8
    EXPECT_DOUBLE_EQ(degree_dist_diff(a, snap(2, {{{0, 1}, 2}})), 8.0);
    // relabeling-blind: {ab:1} vs {cd:1} both have histogram {1:2}
    EXPECT_DOUBLE_EQ(
        degree_dist_diff(snap(4, {{{0, 1}, 1}}), snap(4, {{{2, 3}, 1}})), 0.0);
}

TEST(BarratClustering, Examples) {
    // unit-weight triangle: every node scores 1
    auto tri = snap(3, {{{0, 1}, 1}, {{0, 2}, 1}, {{1, 2}, 1}});
    EXPECT_NEAR(barrat_clustering(tri), 1.0, 1e-12);
    // path a-b-c has no closing edge
    auto path = snap(3, {{{0, 1}, 1}, {{1, 2}, 1}});
    EXPECT_DOUBLE_EQ(barrat_clustering(path), 0.0);
    EXPECT_DOUBLE_EQ(barrat_clustering(snap(3, {})), 0.0);
}

TEST(MassShift, Examples) {
    EdgeDistribution ab(4, {{{0, 1}, 1.0}});
    EdgeDistribution cd(4, {{{2, 3}, 1.0}});
    EXPECT_DOUBLE_EQ(mass_shift(ab, ab), 0.0);
    EXPECT_DOUBLE_EQ(mass_shift(ab, cd), 2.0);
    EdgeDistribution two(4, {{{0, 1}, 0.5}, {{1, 2}, 0.5}});
    EXPECT_DOUBLE_EQ(mass_shift(two, ab), 0.5);
}

TEST(MassShiftCorrected, Examples) {
    auto ab = snap(2, {{{0, 1}, 1}});
    EXPECT_DOUBLE_EQ(mass_shift_corrected(ab, ab), 0.0);
    // {ab:1,cd:1} vs {ab:2}: MS=0.5, variance terms 2*(0.25/1) cancel it
    auto s_t = snap(4, {{{0, 1}, 1}, {{2, 3}, 1}});
    auto s_prev = snap(4, {{{0, 1}, 2}});
    EXPECT_NEAR(mass_shift_corrected(s_t, s_prev), 0.0, 1e-12);
    // {ab:1,bc:1,cd:2} vs {ab:1,cd:1}: MS=1/8, corrections 5/24 and 1/2
    auto s_t2 = snap(4, {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 2}});
    auto s_prev2 = snap(4, {{{0, 1}, 1}, {{2, 3}, 1}});
    EXPECT_NEAR(mass_shift_corrected(s_t2, s_prev2), -7.0 / 12.0, 1e-12);
    EXPECT_THROW(mass_shift_corrected(s_t, snap(4, {})), EmptySnapshotError);
}

TEST(DegreeShift, Examples) {
    EdgeDistribution ab(4, {{{0, 1}, 1.0}});
    EdgeDistribution ac(4, {{{0, 2}, 1.0}});
    EdgeDistribution cd(4, {{{2, 3}, 1.0}});
    EXPECT_DOUBLE_EQ(degree_shift(ab, ab), 0.0);
    EXPECT_DOUBLE_EQ(degree_shift(ab, ac), 2.0);
    EXPECT_DOUBLE_EQ(degree_shift(ab, cd), 4.0);
}

TEST(DegreeShiftCorrected, Examples) {
    auto ab = snap(3, {{{0, 1}, 1}});
    EXPECT_DOUBLE_EQ(degree_shift_corrected(ab, ab), 0.0);
    // {ab:1,ac:1} vs {ab:2}: empirical DS = 0.5, correction = 0.5
    auto s_t = snap(3, {{{0, 1}, 1}, {{0, 2}, 1}});
    auto s_prev = snap(3, {{{0, 1}, 2}});
    EXPECT_NEAR(degree_shift_corrected(s_t, s_prev), 0.0, 1e-12);
}

TEST(TriangleProbability, Examples) {
    EdgeDistribution lone(3, {{{0, 1}, 1.0}});
    EXPECT_DOUBLE_EQ(triangle_probability(lone), 0.0);
    EdgeDistribution tri(3, {{{0, 1}, 1.0 / 3}, {{0, 2}, 1.0 / 3}, {{1, 2}, 1.0 / 3}});
    EXPECT_NEAR(triangle_probability(tri), 1.0 / 27.0, 1e-12);
}

TEST(TriangleProbability, SnapshotEstimator) {
    // unit triangle: one closed triple over 3*2*1 ordered edge selections
    auto tri = snap(3, {{{0, 1}, 1}, {{0, 2}, 1}, {{1, 2}, 1}});
    EXPECT_NEAR(triangle_probability(tri), 1.0 / 6.0, 1e-15);
    EXPECT_DOUBLE_EQ(triangle_probability(snap(3, {{{0, 1}, 2}})), 0.0);
    EXPECT_DOUBLE_EQ(triangle_probability(snap(3, {})), 0.0);
    // heavier triangle: 2*1*1 triples of distinct edges out of 4*3*2
    auto heavy = snap(3, {{{0, 1}, 2}, {{0, 2}, 1}, {{1, 2}, 1}});
    EXPECT_NEAR(triangle_probability(heavy), 2.0 / 24.0, 1e-15);
}

TEST(Compute, DispatchAndErrors) {
    std::vector<Snapshot> snaps;
    snaps.push_back(snap(3, {{{0, 1}, 1}, {{0, 2}, 1}, {{1, 2}, 1}}, 0));
    snaps.push_back(snap(3, {{{0, 1}, 1}, {{0, 2}, 1}, {{1, 2}, 1}}, 1));
    DynamicNetwork net(std::move(snaps));
    EXPECT_NEAR(compute(StatisticId::TriangleProbability, net, 0), 1.0 / 6.0, 1e-12);
    EXPECT_THROW(compute(StatisticId::Ged, net, 0), std::out_of_range);
    EXPECT_DOUBLE_EQ(compute(StatisticId::MassShift, net, 1), 0.0);
}

TEST(Properties, DeltaStatisticSymmetry) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_snapshot(6, 12, rng);
        auto b = random_snapshot(6, 9, rng);
        EXPECT_DOUBLE_EQ(ged(a, b), ged(b, a));
        EXPECT_DOUBLE_EQ(degree_dist_diff(a, b), degree_dist_diff(b, a));
        if (!a.empty() && !b.empty()) {
            auto da = empirical_distribution(a), db = empirical_distribution(b);
            EXPECT_DOUBLE_EQ(mass_shift(da, db), mass_shift(db, da));
            EXPECT_DOUBLE_EQ(degree_shift(da, db), degree_shift(db, da));
        }
    }
}

TEST(Properties, ConsistentStatisticsAreScaleFree) {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_snapshot(6, 10, rng);
        if (a.empty()) continue;
        for (std::uint64_t c : {2ull, 5ull}) {
            Snapshot::EdgeMap scaled;
            for (const auto& [pair, count] : a.edges()) scaled[pair] = count * c;
            auto b = snap(6, std::move(scaled));
            auto da = empirical_distribution(a), db = empirical_distribution(b);
            EXPECT_NEAR(mass_shift(da, db), 0.0, 1e-15);
            EXPECT_NEAR(degree_shift(da, db), 0.0, 1e-15);
            EXPECT_NEAR(triangle_probability(da), triangle_probability(db), 1e-15);
            // the dependent statistics see the scaling
            EXPECT_GT(ged(a, b), 0.0);
        }
    }
}

TEST(Properties, MatchesBruteForceOnRandomGraphs) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_snapshot(7, 14, rng);
        auto b = random_snapshot(7, 10, rng);
        EXPECT_DOUBLE_EQ(ged(a, b), oracles::ged(a, b));
        EXPECT_DOUBLE_EQ(degree_dist_diff(a, b), oracles::degree_dist_diff(a, b));
        EXPECT_NEAR(barrat_clustering(a), oracles::barrat_clustering(a), 1e-12);
        EXPECT_NEAR(triangle_probability(a), oracles::triangle_probability_counts(a), 1e-12);
        if (!a.empty() && !b.empty()) {
            auto da = empirical_distribution(a), db = empirical_distribution(b);
            EXPECT_NEAR(mass_shift(da, db), oracles::mass_shift(da, db), 1e-12);
            EXPECT_NEAR(degree_shift(da, db), oracles::degree_shift(da, db), 1e-12);
            EXPECT_NEAR(triangle_probability(da), oracles::triangle_probability(da), 1e-12);
        }
    }
}

TEST(StatisticId, RoundTripNames) {
    for (StatisticId id : kAllStatistics)
        EXPECT_EQ(statistic_from_string(to_string(id)), id);
    EXPECT_THROW(statistic_from_string("nope"), ConfigError);
}

}  // namespace
