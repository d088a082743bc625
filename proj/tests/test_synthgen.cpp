#include <gtest/gtest.h>

#include <cmath>

#include "netshift/synthgen.hpp"

using namespace netshift;

namespace {

TEST(BlockModel, SinglePairNormalization) {
    // two blocks, only the cross weight positive, one node each
    BlockModelSpec spec{2, {0, 1}, {{0.0, 1.0}, {1.0, 0.0}}};
    auto d = distribution_of(spec);
    ASSERT_EQ(d.probs().size(), 1u);
    EXPECT_DOUBLE_EQ(d.prob(0, 1), 1.0);
}

TEST(BlockModel, UniformThreeNodes) {
    BlockModelSpec spec{3, {0, 0, 0}, {{1.0}}};
    auto d = distribution_of(spec);
    ASSERT_EQ(d.probs().size(), 3u);
    for (const auto& [pair, p] : d.probs()) EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
}

TEST(BlockModel, TwoBlocksOfTwo) {
    // within weight 2, cross weight 1: within pairs 2/8, cross pairs 1/8
    BlockModelSpec spec{4, {0, 0, 1, 1}, {{2.0, 1.0}, {1.0, 2.0}}};
    auto d = distribution_of(spec);
    EXPECT_NEAR(d.prob(0, 1), 0.25, 1e-15);
    EXPECT_NEAR(d.prob(2, 3), 0.25, 1e-15);
    EXPECT_NEAR(d.prob(0, 2), 0.125, 1e-15);
    EXPECT_NEAR(d.prob(1, 3), 0.125, 1e-15);
}

TEST(BlockModel, Validation) {
    EXPECT_THROW(distribution_of(BlockModelSpec{3, {0, 0}, {{1.0}}}), ConfigError);
    EXPECT_THROW(distribution_of(BlockModelSpec{2, {0, 0}, {{0.0}}}), ConfigError);
    EXPECT_THROW(distribution_of(BlockModelSpec{2, {0, 0}, {{-1.0}}}), ConfigError);
}

TEST(PowerLaw, ValidDistribution) {
    PowerLawSpec spec{30, 2.5, 1.0};
    Rng rng = Rng::stream(7, {1});
    auto d = distribution_of(spec, rng);
    double mass = 0.0;
    for (const auto& [pair, p] : d.probs()) {
        EXPECT_GT(p, 0.0);
        mass += p;
    }
    EXPECT_NEAR(mass, 1.0, 1e-9);
    EXPECT_EQ(d.probs().size(), 30u * 29u / 2u);
    Rng bad = Rng::stream(7, {1});
    EXPECT_THROW(distribution_of(PowerLawSpec{10, 1.0, 1.0}, bad), ConfigError);
    EXPECT_THROW(distribution_of(PowerLawSpec{10, 2.5, 0.0}, bad), ConfigError);
}

TEST(Sampler, ExactEdgeCount) {
    BlockModelSpec spec{5, {0, 0, 0, 0, 0}, {{1.0}}};
    auto d = distribution_of(spec);
    Rng rng = Rng::stream(3, {1});
    for (std::uint64_t m : {1ull, 17ull, 500ull})
        EXPECT_EQ(sample_snapshot(d, m, rng).edge_count(), m);
    EXPECT_THROW(sample_snapshot(d, 0, rng), ConfigError);
}

TEST(Sampler, DegenerateSupportPilesUp) {
    BlockModelSpec spec{2, {0, 1}, {{0.0, 1.0}, {1.0, 0.0}}};
    auto d = distribution_of(spec);
    Rng rng = Rng::stream(4, {1});
    auto s = sample_snapshot(d, 7, rng);
    ASSERT_EQ(s.edges().size(), 1u);
    EXPECT_EQ(s.multiplicity(0, 1), 7u);
}

TEST(Sampler, BinomialConcentration) {
    // uniform over 3 pairs, 30000 draws: each count within 5 SE of 10000
    BlockModelSpec spec{3, {0, 0, 0}, {{1.0}}};
    auto d = distribution_of(spec);
    Rng rng = Rng::stream(99, {1});
    auto s = sample_snapshot(d, 30000, rng);
    const double se = std::sqrt(30000.0 * (1.0 / 3.0) * (2.0 / 3.0));
    for (const auto& [pair, count] : s.edges())
        EXPECT_NEAR(static_cast<double>(count), 10000.0, 5.0 * se);
}

TEST(Sampler, SeedDeterminism) {
    BlockModelSpec spec{6, {0, 0, 0, 1, 1, 1}, {{3.0, 1.0}, {1.0, 3.0}}};
    auto d = distribution_of(spec);
    Rng r1 = Rng::stream(1234, {5});
    Rng r2 = Rng::stream(1234, {5});
    auto a = sample_snapshot(d, 200, r1);
    auto b = sample_snapshot(d, 200, r2);
    EXPECT_EQ(a.edges(), b.edges());
    Rng r3 = Rng::stream(1234, {6});
    EXPECT_NE(sample_snapshot(d, 200, r3).edges(), a.edges());
}

TEST(RecallExperiment, CalibrationAndSeparation) {
    BlockModelSpec base{8, {0, 0, 0, 0, 1, 1, 1, 1}, {{2.0, 1.0}, {1.0, 2.0}}};
    BlockModelSpec shifted{8, {0, 0, 0, 0, 1, 1, 1, 1}, {{6.0, 1.0}, {1.0, 2.0}}};

    RecallExperimentSpec cal;
    cal.statistic = StatisticId::MassShift;
    cal.null_family = {base};
    cal.alt_family = {base};
    cal.edge_range = {300, 600};
    cal.seed = 17;
    auto r_cal = run_recall_experiment(cal);
    EXPECT_LT(r_cal.recall, 0.25);  // same parameters: near the false-positive rate

    RecallExperimentSpec sep = cal;
    sep.alt_family = {shifted};
    auto r_sep = run_recall_experiment(sep);
    EXPECT_GT(r_sep.recall, r_cal.recall);
    EXPECT_GT(r_sep.recall, 0.5);
    EXPECT_EQ(r_sep.n_tests, 50);
}

TEST(RecallExperiment, Validation) {
    BlockModelSpec base{4, {0, 0, 0, 0}, {{1.0}}};
    RecallExperimentSpec spec;
    spec.statistic = StatisticId::MassShift;
    spec.null_family = {base};
    spec.alt_family = {base};
    spec.edge_range = {100, 200};
    spec.n_null_samples = 2;
    EXPECT_THROW(run_recall_experiment(spec), ConfigError);
    spec.n_null_samples = 50;
    spec.null_family.clear();
    EXPECT_THROW(run_recall_experiment(spec), ConfigError);
}

TEST(BiasSuite, CorrectedStatisticsCenterOnTruth) {
    BlockModelSpec spec{6, {0, 0, 0, 1, 1, 1}, {{3.0, 1.0}, {1.0, 3.0}}};
    auto d = distribution_of(spec);
    auto rows = run_bias_suite(d, {200}, 1000, 77);
    for (const auto& row : rows) {
        const double se = row.sd / std::sqrt(1000.0);
        if (row.statistic == StatisticId::MassShiftCorrected ||
            row.statistic == StatisticId::DegreeShiftCorrected ||
            row.statistic == StatisticId::TriangleProbability) {
            EXPECT_NEAR(row.mean, row.true_value, 5.0 * se)
                << to_string(row.statistic);
        } else {
            // the uncorrected statistics are biased upward at finite samples
            EXPECT_GT(row.mean, row.true_value + 5.0 * se) << to_string(row.statistic);
        }
    }
    EXPECT_THROW(run_bias_suite(d, {200}, 10, 77), ConfigError);
}

}  // namespace
