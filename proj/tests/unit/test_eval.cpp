#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oodwn/errors.hpp"
#include "oodwn/eval.hpp"
#include "oodwn/rng.hpp"
#include "oodwn/synthetic.hpp"
#include "oracles.hpp"

using namespace oodwn;

namespace {

std::vector<double> gaussian_scores(std::size_t n, double shift, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    StandardNormal normal;
    std::vector<double> v(n);
    for (auto& x : v) x = normal(rng) + shift;
    return v;
}

std::vector<double> coarse_scores(std::size_t n, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = static_cast<double>(rng.below(7));  // many ties
    return v;
}

}  // namespace

TEST(Auroc, PerfectSeparation) {
    EXPECT_EQ(auroc(std::vector<double>{10, 11}, std::vector<double>{1, 2}), 1.0);
}

TEST(Auroc, TieCountsHalf) {
    EXPECT_EQ(auroc(std::vector<double>{5}, std::vector<double>{5}), 0.5);
}

TEST(Auroc, HandEnumeratedPairs) {
    const std::vector<double> o{2, 3}, i{1, 2.5};
    EXPECT_EQ(oracle::brute_force_auroc(o, i), 0.75);
    EXPECT_EQ(auroc(o, i), 0.75);
}

TEST(Auroc, EmptyListRejected) {
    EXPECT_THROW((void)auroc(std::vector<double>{}, std::vector<double>{1}), ArgumentError);
    EXPECT_THROW((void)auroc(std::vector<double>{1}, std::vector<double>{}), ArgumentError);
}

TEST(Auroc, InfiniteScoresRankHighest) {
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_EQ(auroc(std::vector<double>{inf, inf}, std::vector<double>{1, 1e300}), 1.0);
    EXPECT_EQ(auroc(std::vector<double>{inf}, std::vector<double>{inf}), 0.5);
}

TEST(Auroc, RankSumEqualsPairCounting) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Xoshiro256 rng(seed);
        const std::size_t m = 1 + rng.below(200);
        const std::size_t n = 1 + rng.below(200);
        const auto o = seed % 2 ? coarse_scores(m, seed) : gaussian_scores(m, 0.3, seed);
        const auto i = seed % 2 ? coarse_scores(n, seed + 1000) : gaussian_scores(n, 0.0, seed + 1000);
        ASSERT_EQ(auroc(o, i), oracle::brute_force_auroc(o, i)) << "seed " << seed;
    }
}

TEST(Auroc, ComplementSymmetry) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto a = coarse_scores(40 + seed, seed);
        const auto b = coarse_scores(60, seed + 77);
        EXPECT_EQ(auroc(a, b) + auroc(b, a), 1.0);
    }
}

TEST(Auroc, InvariantUnderIncreasingTransform) {
    const auto a = gaussian_scores(150, 0.5, 1);
    const auto b = gaussian_scores(170, 0.0, 2);
    std::vector<double> ta, tb;
    for (double v : a) ta.push_back(std::exp(3 * v) + 7);
    for (double v : b) tb.push_back(std::exp(3 * v) + 7);
    EXPECT_EQ(auroc(a, b), auroc(ta, tb));
}

TEST(AurocCi, CollapsesUnderPerfectSeparation) {
    const auto o = gaussian_scores(2000, 100.0, 1);
    const auto i = gaussian_scores(2000, 0.0, 2);
    const auto ci = auroc_ci(o, i, 200, 42);
    EXPECT_EQ(ci.high, 1.0);
    EXPECT_LT(ci.high - ci.low, 0.01);
}

TEST(AurocCi, IdenticalDistributionsContainHalf) {
    const auto o = gaussian_scores(2000, 0.0, 11);
    const auto i = gaussian_scores(2000, 0.0, 12);
    const auto ci = auroc_ci(o, i, 500, 3);
    EXPECT_LE(ci.low, 0.5);
    EXPECT_GE(ci.high, 0.5);
}

TEST(AurocCi, LargeSampleHalfWidth) {
    // Shift 2.33 gives AUROC = Phi(2.33 / sqrt 2) ~ 0.95.
    const auto o = gaussian_scores(10000, 2.33, 21);
    const auto i = gaussian_scores(10000, 0.0, 22);
    const double a = auroc(o, i);
    EXPECT_NEAR(a, 0.95, 0.01);
    const auto ci = auroc_ci(o, i, 200, 5);
    EXPECT_LT(0.5 * (ci.high - ci.low), 0.02);
    EXPECT_LE(ci.low, a);
    EXPECT_GE(ci.high, a);
}

TEST(AurocCi, ReproducibleAndSeedSensitive) {
    const auto o = gaussian_scores(300, 0.5, 1);
    const auto i = gaussian_scores(300, 0.0, 2);
    const auto a = auroc_ci(o, i, 300, 9);
    const auto b = auroc_ci(o, i, 300, 9);
    const auto c = auroc_ci(o, i, 300, 10);
    EXPECT_EQ(a.low, b.low);
    EXPECT_EQ(a.high, b.high);
    EXPECT_TRUE(a.low != c.low || a.high != c.high);
}

TEST(AurocCi, Preconditions) {
    const std::vector<double> x{1, 2};
    EXPECT_THROW((void)auroc_ci(x, x, 199, 1), ArgumentError);
    EXPECT_THROW((void)auroc_ci(std::vector<double>{}, x, 500, 1), ArgumentError);
}

TEST(AverageRanks, PublishedLinearGroup) {
    const std::vector<std::string> settings{"c10-celeba", "c10-svhn", "celeba-c10",
                                            "celeba-svhn", "tin-c10", "tin-svhn"};
    const std::vector<double> lh{0.77, 0.02, 0.72, 0.03, 0.11, 0.00};
    const std::vector<double> lh2s{0.69, 0.76, 0.70, 0.80, 0.64, 0.81};
    const std::vector<double> wn{0.67, 0.95, 0.90, 0.99, 0.92, 0.99};
    AurocTable t;
    for (std::size_t s = 0; s < settings.size(); ++s) {
        t[settings[s]] = {{"lh", lh[s]}, {"lh2s", lh2s[s]}, {"wn", wn[s]}};
    }
    const auto r = average_ranks(t);
    EXPECT_NEAR(r.at("lh"), 2.50, 0.005);
    EXPECT_NEAR(r.at("lh2s"), 2.17, 0.005);
    EXPECT_NEAR(r.at("wn"), 1.33, 0.005);
}

TEST(AverageRanks, SingleSettingAndTies) {
    EXPECT_EQ(average_ranks({{"s", {{"a", 0.9}, {"b", 0.8}}}}),
              (std::map<std::string, double>{{"a", 1.0}, {"b", 2.0}}));
    const auto tied = average_ranks({{"s", {{"a", 0.7}, {"b", 0.7}, {"c", 0.1}}}});
    EXPECT_EQ(tied.at("a"), 1.5);
    EXPECT_EQ(tied.at("b"), 1.5);
    EXPECT_EQ(tied.at("c"), 3.0);
}

TEST(AverageRanks, TwoSettingToyTable) {
    // s1: a 0.9 (1), b 0.6 (2), c 0.5 (3); s2: a 0.4 (3), b 0.8 (1.5), c 0.8 (1.5)
    const auto r = average_ranks({{"s1", {{"a", 0.9}, {"b", 0.6}, {"c", 0.5}}},
                                  {"s2", {{"a", 0.4}, {"b", 0.8}, {"c", 0.8}}}});
    EXPECT_EQ(r.at("a"), 2.0);
    EXPECT_EQ(r.at("b"), 1.75);
    EXPECT_EQ(r.at("c"), 2.25);
}

TEST(AverageRanks, MissingCell) {
    EXPECT_THROW((void)average_ranks({{"s1", {{"a", 0.9}, {"b", 0.6}}}, {"s2", {{"a", 0.4}}}}),
                 ArgumentError);
}

TEST(Histogram, IdenticalListsIntersectFully) {
    const auto a = gaussian_scores(500, 0, 1);
    EXPECT_NEAR(histogram_intersection(a, a, 30), 1.0, 1e-12);
}

TEST(Histogram, DisjointSupports) {
    // Range [0, 4], 2 bins split at 2.
    const std::vector<double> a{0, 0.5, 1}, b{3, 3.5, 4};
    EXPECT_EQ(histogram_intersection(a, b, 2), 0.0);
}

TEST(Histogram, AllValuesIdentical) {
    const std::vector<double> a{2, 2}, b{2};
    EXPECT_EQ(histogram_intersection(a, b, 10), 1.0);
}

TEST(Histogram, ShiftedNormalsMatchAnalyticOverlap) {
    const auto a = gaussian_scores(10000, 0.0, 31);
    const auto b = gaussian_scores(10000, 3.0, 32);
    // 2 * Phi(-1.5)
    EXPECT_NEAR(histogram_intersection(a, b, 50), 0.1336144, 0.05);
}

TEST(Histogram, Symmetric) {
    const auto a = gaussian_scores(700, 0.0, 41);
    const auto b = gaussian_scores(300, 1.0, 42);
    EXPECT_EQ(histogram_intersection(a, b, 25), histogram_intersection(b, a, 25));
}

TEST(Histogram, Errors) {
    const std::vector<double> a{1, 2};
    EXPECT_THROW((void)histogram_intersection(a, a, 0), ArgumentError);
    EXPECT_THROW((void)histogram_intersection(a, std::vector<double>{}, 5), ArgumentError);
}

TEST(AcfProfile, AlternatingRows) {
    RowMatrix m(3, 10);
    for (Eigen::Index r = 0; r < 3; ++r)
        for (Eigen::Index c = 0; c < 10; ++c) m(r, c) = c % 2 ? -1.0 : 1.0;
    const auto p = acf_profile(m, 3);
    ASSERT_EQ(p.size(), 3u);
    EXPECT_DOUBLE_EQ(p[0].mean_rho, -1.0);
    EXPECT_DOUBLE_EQ(p[0].std_rho, 0.0);
    EXPECT_DOUBLE_EQ(p[1].mean_rho, 1.0);
    EXPECT_DOUBLE_EQ(p[2].null_std, 1.0 / std::sqrt(7.0));
}

TEST(AcfProfile, IidMeansStayWithinNullBand) {
    const auto x = sample_process({ProcessKind::IidGaussian, 3072, 0, 1, 8}, 500);
    const auto p = acf_profile(x.values(), 200);
    // The mean over 500 sequences has spread null_std / sqrt(500); three
    // single-sequence null deviations is therefore a very loose band.
    std::size_t inside = 0;
    for (const auto& row : p) inside += std::fabs(row.mean_rho) < 3 * row.null_std ? 1 : 0;
    EXPECT_GE(static_cast<double>(inside), 0.99 * 200);
    for (const auto& row : p) EXPECT_NEAR(row.std_rho, row.null_std, 0.25 * row.null_std);
}

TEST(AcfProfile, Preconditions) {
    RowMatrix one(1, 10);
    one.setRandom();
    EXPECT_THROW((void)acf_profile(one, 2), ArgumentError);
    RowMatrix two(2, 10);
    two.setRandom();
    EXPECT_THROW((void)acf_profile(two, 10), ArgumentError);
}

TEST(ReportWriters, CsvSchemas) {
    EvalReport r;
    r.cells.push_back({"svhn", "wn", 0.95, 0.94, 0.96, 10000, 26032});
    r.average_rank["wn"] = 1.0;
    r.intersections.push_back({"svhn", "wn", 0.25});
    std::ostringstream a, b, c, d;
    write_report_csv(a, r);
    write_ranks_csv(b, r);
    write_intersections_csv(c, r);
    EXPECT_EQ(a.str(),
              "setting,test,auroc,ci_low,ci_high,n_inlier,n_outlier\n"
              "svhn,wn,0.950000,0.940000,0.960000,10000,26032\n");
    EXPECT_EQ(b.str(), "test,average_rank\nwn,1.0000\n");
    EXPECT_EQ(c.str(), "setting,test,intersection\nsvhn,wn,0.250000\n");
    const std::vector<AcfProfileRow> rows{{96, 0.1, 0.02, 0.0181}};
    write_profile_csv(d, rows);
    EXPECT_EQ(d.str(), "lag,mean_rho,std_rho,null_std\n96,0.10000000,0.02000000,0.01810000\n");
}
