// End-to-end runs of the command-line verbs against small on-disk fixtures.
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "oodwn/oodwn.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace oodwn;

namespace {

/// Sequence with correlation `phi` between entries `stride` apart, unit variance.
std::vector<double> strided_ar(std::size_t d, std::size_t stride, double phi, Xoshiro256& rng) {
    StandardNormal normal;
    std::vector<double> x(d);
    const double scale = std::sqrt(1.0 - phi * phi);
    for (std::size_t t = 0; t < d; ++t) {
        x[t] = t < stride ? normal(rng) : phi * x[t - stride] + scale * normal(rng);
    }
    return x;
}

RowMatrix strided_rows(std::size_t n, std::size_t d, std::size_t stride, double phi,
                       std::uint64_t seed) {
    RowMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i) {
        Xoshiro256 rng(derive_seed(seed, i));
        const auto x = strided_ar(d, stride, phi, rng);
        for (std::size_t t = 0; t < d; ++t) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) = x[t];
    }
    return m;
}

/// Byte images whose pixels follow a strided AR process around mid-grey.
SampleMatrix byte_images(const ImageGeometry& g, std::size_t n, std::size_t stride, double phi,
                         std::uint64_t seed) {
    RowMatrix m = strided_rows(n, g.dim(), stride, phi, seed);
    m = (128.0 + 30.0 * m.array()).round().max(0.0).min(255.0).matrix();
    return SampleMatrix(g, ValueRange::RawBytes, m);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> lines(const fs::path& p) {
    std::istringstream in(slurp(p));
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

/// Column `col` of report.csv rows matching setting and test.
double report_value(const fs::path& report, const std::string& setting, const std::string& test,
                    std::size_t col = 2) {
    for (const auto& l : lines(report)) {
        std::vector<std::string> cells;
        std::stringstream ss(l);
        for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
        if (cells.size() > col && cells[0] == setting && cells[1] == test) return std::stod(cells[col]);
    }
    ADD_FAILURE() << "no row " << setting << "/" << test << " in " << report;
    return std::nan("");
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("oodwn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(std::vector<std::string> args) {
        args.insert(args.begin(), "oodwn");
        std::ostringstream out, err;
        const int code = cli::run_cli(args, out, err);
        stdout_ = out.str();
        stderr_ = err.str();
        return code;
    }

    fs::path path(const std::string& name) const { return dir_ / name; }
    std::string str(const std::string& name) const { return path(name).string(); }

    /// Small 8x8x3 byte fixtures: smooth inliers, vertically textured outliers.
    void write_small_fixtures() {
        write_container(path("train.oodt"), byte_images(kSmall, 400, 3, 0.6, 1));
        write_container(path("test.oodt"), byte_images(kSmall, 120, 3, 0.6, 2));
        write_container(path("vert.oodt"), byte_images(kSmall, 100, 24, 0.9, 3));
        RowMatrix flat = RowMatrix::Constant(20, static_cast<Eigen::Index>(kSmall.dim()), 77.0);
        write_container(path("flat.oodt"), SampleMatrix(kSmall, ValueRange::RawBytes, flat));
    }

    std::vector<std::string> small_score_args() const {
        return {"--model", str("model"), "--out", str("out"), "--test", str("test.oodt"),
                "--train", str("train.oodt"), "--outlier", "vert=" + str("vert.oodt"), "--L", "96"};
    }

    static constexpr ImageGeometry kSmall{8, 8, 3};
    fs::path dir_;
    std::string stdout_, stderr_;
};

TEST_F(CliTest, FitScoreEvalPipeline) {
    write_small_fixtures();
    ASSERT_EQ(run({"fit", "--train", str("train.oodt"), "--model", str("model")}), 0) << stderr_;
    for (const char* f : {"mu.oodt", "chol.oodt", "meta.txt"}) EXPECT_TRUE(fs::exists(path("model") / f));

    auto args = small_score_args();
    args.insert(args.begin(), "score");
    args.push_back("--score-train");
    ASSERT_EQ(run(args), 0) << stderr_;

    const auto test_rows = lines(path("out/scores/inlier-test.csv"));
    ASSERT_EQ(test_rows.front(), "sample_index,label,test,score");
    EXPECT_EQ(test_rows.size(), 1 + 4 * 120u);
    EXPECT_EQ(lines(path("out/scores/vert.csv")).size(), 1 + 4 * 100u);
    EXPECT_EQ(lines(path("out/scores/inlier-train.csv")).size(), 1 + 4 * 400u);
    EXPECT_EQ(test_rows[1].rfind("0,inlier-test,wn,", 0), 0u);

    ASSERT_EQ(run({"eval", "--out", str("out"), "--ci-trials", "300"}), 0) << stderr_;
    const auto report = path("out/report.csv");
    EXPECT_EQ(lines(report).front(), "setting,test,auroc,ci_low,ci_high,n_inlier,n_outlier");
    EXPECT_EQ(lines(report).size(), 1 + 2 * 4u);  // vert and train-vs-test, four tests each
    EXPECT_GT(report_value(report, "vert", "wn"), 0.95);
    EXPECT_EQ(report_value(report, "vert", "wn", 5), 120.0);
    EXPECT_EQ(report_value(report, "vert", "wn", 6), 100.0);
    const double sanity = report_value(report, "inlier-train-vs-test", "wn");
    EXPECT_GT(sanity, 0.3);
    EXPECT_LT(sanity, 0.7);

    // Ranks cover only real outlier settings, so a single setting gives integer ranks.
    const auto ranks = lines(path("out/ranks.csv"));
    ASSERT_EQ(ranks.size(), 5u);
    EXPECT_EQ(ranks[0], "test,average_rank");

    const auto text = slurp(path("out/report.txt"));
    EXPECT_NE(text.find("# seed: 0"), std::string::npos);
    EXPECT_NE(text.find("# score.eps: 0.00100000"), std::string::npos);
    EXPECT_NE(text.find("# score.lag_set: 24,48,72,96"), std::string::npos);
    EXPECT_NE(text.find("# score.compressor: png("), std::string::npos);
    EXPECT_EQ(stdout_, text);
}

TEST_F(CliTest, ScoresMatchLibraryPipeline) {
    write_small_fixtures();
    ASSERT_EQ(run({"fit", "--train", str("train.oodt"), "--model", str("model")}), 0);
    auto args = small_score_args();
    args.insert(args.begin(), "score");
    ASSERT_EQ(run(args), 0) << stderr_;

    const auto model = load_model(path("model"));
    const auto x = read_container(path("vert.oodt")).to_unit();
    const auto lags = vertical_lags(kSmall, 96);
    const double expected_wn = bp_statistic(whiten(model, x.row(5)).values, lags).q_bp;
    const double expected_lh =
        -(gaussian_loglik(model, x.row(5)) - static_cast<double>(kSmall.dim()) * std::log(255.0));
    double wn = 0, lh = 0;
    for (const auto& l : lines(path("out/scores/vert.csv"))) {
        if (l.rfind("5,outlier,wn,", 0) == 0) wn = std::stod(l.substr(13));
        if (l.rfind("5,outlier,lh,", 0) == 0) lh = std::stod(l.substr(13));
    }
    EXPECT_NEAR(wn, expected_wn, 1e-9 * expected_wn);
    EXPECT_NEAR(lh, expected_lh, 1e-9 * std::fabs(expected_lh));
}

TEST_F(CliTest, CifarBinariesEndToEnd) {
    Xoshiro256 rng(5);
    auto images = [&](std::size_t n, double phi) {
        std::vector<std::vector<std::uint8_t>> out;
        for (std::size_t k = 0; k < n; ++k) {
            const auto z = strided_ar(3072, 3, phi, rng);
            std::vector<std::uint8_t> img(3072);
            for (std::size_t t = 0; t < 3072; ++t)
                img[t] = static_cast<std::uint8_t>(std::clamp(std::round(128 + 30 * z[t]), 0.0, 255.0));
            out.push_back(std::move(img));
        }
        return out;
    };
    oracle::write_cifar_records(path("data_batch_1.bin"), images(40, 0.5));
    oracle::write_cifar_records(path("data_batch_2.bin"), images(40, 0.5));
    oracle::write_cifar_records(path("test_batch.bin"), images(30, 0.5));
    ASSERT_EQ(run({"fit", "--train", str("data_batch_1.bin"), str("data_batch_2.bin"), "--model",
                   str("model")}),
              0)
        << stderr_;
    EXPECT_EQ(load_model(path("model")).geometry(), ImageGeometry::cifar10());
    ASSERT_EQ(run({"score", "--model", str("model"), "--out", str("out"), "--test",
                   str("test_batch.bin"), "--train", str("data_batch_1.bin"), str("data_batch_2.bin"),
                   "--tests", "wn,lh2s"}),
              0)
        << stderr_;
    EXPECT_EQ(lines(path("out/scores/inlier-test.csv")).size(), 1 + 2 * 30u);
    const auto meta = slurp(path("out/scores/manifest.txt"));
    EXPECT_NE(meta.find("lag_set=96,192,288,384,480,576,672,768,864,960,1056,1152\n"),
              std::string::npos);
}

TEST_F(CliTest, FitOnOneSampleFails) {
    write_container(path("one.oodt"), byte_images(kSmall, 1, 3, 0.5, 1));
    EXPECT_EQ(run({"fit", "--train", str("one.oodt"), "--model", str("model")}), cli::kExitData);
    EXPECT_NE(stderr_.find("error"), std::string::npos);
}

TEST_F(CliTest, ConstantTrainingSetIsNumericalError) {
    RowMatrix flat = RowMatrix::Constant(10, 192, 3.0);
    write_container(path("flat.oodt"), SampleMatrix(kSmall, ValueRange::RawBytes, flat));
    EXPECT_EQ(run({"fit", "--train", str("flat.oodt"), "--model", str("m")}), cli::kExitNumerical);
}

TEST_F(CliTest, RefitIsBitIdentical) {
    write_small_fixtures();
    ASSERT_EQ(run({"fit", "--train", str("train.oodt"), "--model", str("a"), "--seed", "3"}), 0);
    ASSERT_EQ(run({"fit", "--train", str("train.oodt"), "--model", str("b"), "--seed", "3"}), 0);
    for (const char* f : {"mu.oodt", "chol.oodt", "meta.txt"}) {
        EXPECT_EQ(slurp(path("a") / f), slurp(path("b") / f)) << f;
    }
}

TEST_F(CliTest, ConstantImagesGetInfiniteWnScore) {
    write_small_fixtures();
    ASSERT_EQ(run({"fit", "--train", str("train.oodt"), "--model", str("model")}), 0);
    // The model whitens a constant image into a non-constant sequence, so the
    // degenerate case is exercised through imported constant residuals.
    RowMatrix zeros = RowMatrix::Zero(5, 192);
    write_container(path("flat_res.oodt"), SampleMatrix(kSmall, ValueRange::Residual, zeros));
    ASSERT_EQ(run({"score", "--model", str("model"), "--out", str("out"), "--test", str("test.oodt"),
                   "--residuals", "flat=" + str("flat_res.oodt"), "--tests", "wn", "--L", "96"}),
              0)
        << stderr_;
    const auto rows = lines(path("out/scores/flat.csv"));
    ASSERT_EQ(rows.size(), 6u);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i], std::to_string(i - 1) + ",outlier,wn,inf");

    // eval tolerates infinite scores and drops them from histogram intersections
    ASSERT_EQ(run({"eval", "--out", str("out"), "--bins", "10", "--ci-trials", "200"}), 0) << stderr_;
    EXPECT_EQ(report_value(path("out/report.csv"), "flat", "wn"), 1.0);
    EXPECT_EQ(lines(path("out/intersections.csv")).size(), 1u);
}

TEST_F(CliTest, EvalIsByteIdenticalForFixedSeed) {
    write_small_fixtures();
    ASSERT_EQ(run({"fit", "--train", str("train.oodt"), "--model", str("model")}), 0);
    auto args = small_score_args();
    args.insert(args.begin(), "score");
    args.insert(args.end(), {"--outlier", "flat=" + str("flat.oodt")});
    ASSERT_EQ(run(args), 0) << stderr_;

    ASSERT_EQ(run({"eval", "--out", str("out"), "--seed", "11", "--bins", "20"}), 0);
    const auto first = slurp(path("out/report.csv")) + slurp(path("out/ranks.csv")) +
                       slurp(path("out/report.txt")) + slurp(path("out/intersections.csv"));
    ASSERT_EQ(run({"eval", "--out", str("out"), "--seed", "11", "--bins", "20"}), 0);
    const auto second = slurp(path("out/report.csv")) + slurp(path("out/ranks.csv")) +
                        slurp(path("out/report.txt")) + slurp(path("out/intersections.csv"));
    EXPECT_EQ(first, second);
    ASSERT_EQ(run({"eval", "--out", str("out"), "--seed", "12", "--bins", "20"}), 0);
    EXPECT_NE(first, slurp(path("out/report.csv")) + slurp(path("out/ranks.csv")) +
                         slurp(path("out/report.txt")) + slurp(path("out/intersections.csv")));
}

TEST_F(CliTest, ConfigErrors) {
    write_small_fixtures();
    ASSERT_EQ(run({"fit", "--train", str("train.oodt"), "--model", str("model")}), 0);
    auto score = [&](std::vector<std::string> extra) {
        auto args = small_score_args();
        args.insert(args.begin(), "score");
        args.insert(args.end(), extra.begin(), extra.end());
        return run(args);
    };
    EXPECT_EQ(score({"--tests", ""}), cli::kExitConfig);
    EXPECT_EQ(score({"--tests", "wn,chi"}), cli::kExitConfig);
    EXPECT_EQ(score({"--lags", "diagonal"}), cli::kExitConfig);
    EXPECT_EQ(score({"--L", "10"}), cli::kExitConfig);      // below the first vertical lag 24
    EXPECT_EQ(score({"--L", "192"}), cli::kExitConfig);     // not below d
    EXPECT_EQ(score({"--L", "96,120"}), cli::kExitConfig);  // lists are for sweep-l
    EXPECT_EQ(score({"--outlier", "missing=" + str("nope.oodt")}), cli::kExitConfig);
    EXPECT_EQ(score({"--outlier", "inlier-test=" + str("vert.oodt")}), cli::kExitConfig);
    EXPECT_EQ(score({"--outlier", "novalue"}), cli::kExitConfig);
    EXPECT_EQ(run({"score", "--model", str("nomodel"), "--out", str("o"), "--test", str("test.oodt"),
                   "--tests", "lh", "--L", "96"}),
              cli::kExitConfig);
    EXPECT_EQ(run({"score", "--model", str("model"), "--out", str("o"), "--test", str("test.oodt"),
                   "--tests", "lh2s", "--L", "96"}),
              cli::kExitConfig);  // no training data for the median
    EXPECT_EQ(run({"eval", "--out", str("empty")}), cli::kExitConfig);
    EXPECT_EQ(run({}), cli::kExitConfig);
    EXPECT_EQ(run({"--help"}), cli::kExitOk);
}

TEST_F(CliTest, GeometryMismatchIsConfigError) {
    write_small_fixtures();
    ASSERT_EQ(run({"fit", "--train", str("train.oodt"), "--model", str("model")}), 0);
    write_container(path("small.oodt"), byte_images(ImageGeometry{4, 4, 3}, 10, 3, 0.5, 9));
    EXPECT_EQ(run({"score", "--model", str("model"), "--out", str("o"), "--test", str("small.oodt"),
                   "--tests", "wn", "--L", "96"}),
              cli::kExitConfig);
    EXPECT_NE(stderr_.find("geometry mismatch"), std::string::npos);
}

TEST_F(CliTest, CorruptContainerIsDataError) {
    write_small_fixtures();
    ASSERT_EQ(run({"fit", "--train", str("train.oodt"), "--model", str("model")}), 0);
    std::ofstream(path("bad.oodt"), std::ios::binary) << "not a container";
    EXPECT_EQ(run({"score", "--model", str("model"), "--out", str("o"), "--test", str("bad.oodt"),
                   "--tests", "wn", "--L", "96"}),
              cli::kExitData);
}

TEST_F(CliTest, ImportedResidualsAndLogliksNeedNoModel) {
    const ImageGeometry g{8, 8, 3};
    write_container(path("res_in.oodt"), SampleMatrix(g, ValueRange::Residual, strided_rows(50, 192, 1, 0.0, 1)));
    write_container(path("res_out.oodt"), SampleMatrix(g, ValueRange::Residual, strided_rows(40, 192, 24, 0.8, 2)));
    std::vector<double> ll_train(60), ll_in(50), ll_out(40);
    Xoshiro256 rng(3);
    for (auto& v : ll_train) v = -100 + rng.uniform();
    for (auto& v : ll_in) v = -100 + rng.uniform();
    for (auto& v : ll_out) v = -90 + rng.uniform();
    write_vector_container(path("ll_train.oodt"), ll_train);
    write_vector_container(path("ll_in.oodt"), ll_in);
    write_vector_container(path("ll_out.oodt"), ll_out);

    ASSERT_EQ(run({"score", "--model", str("absent"), "--out", str("out"), "--tests", "wn,lh,lh2s",
                   "--L", "96", "--residuals", "inlier-test=" + str("res_in.oodt"), "--residuals",
                   "vae=" + str("res_out.oodt"), "--logliks", "inlier-test=" + str("ll_in.oodt"),
                   "--logliks", "vae=" + str("ll_out.oodt"), "--logliks",
                   "inlier-train=" + str("ll_train.oodt")}),
              0)
        << stderr_;
    ASSERT_EQ(run({"eval", "--out", str("out")}), 0) << stderr_;
    const auto report = path("out/report.csv");
    EXPECT_GT(report_value(report, "vae", "wn"), 0.99);
    EXPECT_EQ(report_value(report, "vae", "lh"), 0.0);    // outliers are more likely
    EXPECT_EQ(report_value(report, "vae", "lh2s"), 1.0);  // but far from the median

    write_vector_container(path("ll_short.oodt"), std::vector<double>(7, -1.0));
    EXPECT_EQ(run({"score", "--out", str("out2"), "--tests", "wn,lh", "--L", "96", "--residuals",
                   "inlier-test=" + str("res_in.oodt"), "--logliks",
                   "inlier-test=" + str("ll_short.oodt")}),
              cli::kExitData);
}

TEST_F(CliTest, ProfilesAreWrittenOnRequest) {
    write_small_fixtures();
    ASSERT_EQ(run({"fit", "--train", str("train.oodt"), "--model", str("model")}), 0);
    auto args = small_score_args();
    args.insert(args.begin(), "score");
    args.insert(args.end(), {"--tests", "wn", "--profile-L", "48"});
    ASSERT_EQ(run(args), 0) << stderr_;
    const auto prof = lines(path("out/profiles/vert.csv"));
    ASSERT_EQ(prof.size(), 49u);
    EXPECT_EQ(prof[0], "lag,mean_rho,std_rho,null_std");
    // Vertically correlated outliers keep a visible lag-24 peak after whitening.
    const double peak = std::stod(prof[24].substr(prof[24].find(',') + 1));
    EXPECT_GT(peak, 3.0 / std::sqrt(192.0 - 24.0));
}

TEST_F(CliTest, ConfigFileWithFlagOverrides) {
    write_small_fixtures();
    ASSERT_EQ(run({"fit", "--train", str("train.oodt"), "--model", str("model")}), 0);
    std::ofstream(path("run.ini")) << "# small fixture run\n"
                                   << "model=" << str("model") << "\n"
                                   << "out=" << str("cfgout") << "\n"
                                   << "test=" << str("test.oodt") << "\n"
                                   << "outlier=vert=" << str("vert.oodt") << "\n"
                                   << "outlier=flat=" << str("flat.oodt") << "\n"
                                   << "tests=lh,wn\n"
                                   << "L=96\n"
                                   << "seed=5\n";
    ASSERT_EQ(run({"--config", str("run.ini"), "score", "--L", "48"}), 0) << stderr_;
    EXPECT_TRUE(fs::exists(path("cfgout/scores/vert.csv")));
    EXPECT_TRUE(fs::exists(path("cfgout/scores/flat.csv")));
    const auto manifest = slurp(path("cfgout/scores/manifest.txt"));
    EXPECT_NE(manifest.find("tests=lh,wn\n"), std::string::npos);
    EXPECT_NE(manifest.find("L=48\n"), std::string::npos);
    EXPECT_NE(manifest.find("lag_set=24,48\n"), std::string::npos);
    EXPECT_NE(manifest.find("seed=5\n"), std::string::npos);
    EXPECT_NE(manifest.find("config=" + str("run.ini")), std::string::npos);
}

class SweepTest : public CliTest {
protected:
    void write_residuals() {
        const auto g = ImageGeometry::cifar10();
        write_container(path("iid.oodt"), SampleMatrix(g, ValueRange::Residual, strided_rows(300, 3072, 1, 0.0, 1)));
        write_container(path("vert_ar.oodt"), SampleMatrix(g, ValueRange::Residual, strided_rows(300, 3072, 96, 0.2, 2)));
        write_container(path("iid2.oodt"), SampleMatrix(g, ValueRange::Residual, strided_rows(300, 3072, 1, 0.0, 3)));
    }
    int sweep(const std::string& values) {
        return run({"sweep-l", "--out", str("out"), "--L", values, "--residuals",
                    "inlier-test=" + str("iid.oodt"), "--residuals", "ar=" + str("vert_ar.oodt"),
                    "--residuals", "null=" + str("iid2.oodt")});
    }
};

TEST_F(SweepTest, AurocIsFlatAcrossL) {
    write_residuals();
    ASSERT_EQ(sweep("300,600,1200,2400"), 0) << stderr_;
    const auto rows = lines(path("out/sweep.csv"));
    ASSERT_EQ(rows.size(), 1 + 4 * 2u);
    EXPECT_EQ(rows[0], "L,setting,auroc");
    double lo = 1, hi = 0;
    for (const auto& r : rows) {
        if (r.find(",ar,") == std::string::npos) continue;
        const double a = std::stod(r.substr(r.rfind(',') + 1));
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    EXPECT_GT(lo, 0.9);
    EXPECT_LT(hi - lo, 0.1);
}

TEST_F(SweepTest, SingleLagGivesOneRowPerSetting) {
    write_residuals();
    ASSERT_EQ(sweep("96"), 0) << stderr_;
    const auto rows = lines(path("out/sweep.csv"));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1].rfind("96,ar,", 0), 0u);
    EXPECT_EQ(rows[2].rfind("96,null,", 0), 0u);

    // The sweep at one L agrees with scoring at that L.
    ASSERT_EQ(run({"score", "--out", str("out"), "--tests", "wn", "--L", "1200", "--residuals",
                   "inlier-test=" + str("iid.oodt"), "--residuals", "ar=" + str("vert_ar.oodt")}),
              0);
    ASSERT_EQ(run({"eval", "--out", str("out")}), 0);
    ASSERT_EQ(sweep("1200"), 0);
    const auto s = lines(path("out/sweep.csv"));
    EXPECT_NEAR(std::stod(s[1].substr(s[1].rfind(',') + 1)),
                report_value(path("out/report.csv"), "ar", "wn"), 1e-6);
}

TEST_F(SweepTest, InvalidLists) {
    write_residuals();
    EXPECT_EQ(sweep(""), cli::kExitConfig);
    EXPECT_EQ(sweep("50"), cli::kExitConfig);
    EXPECT_EQ(sweep("300,4000"), cli::kExitConfig);
    EXPECT_EQ(run({"sweep-l", "--lags", "all", "--out", str("out"), "--L", "96", "--residuals",
                   "inlier-test=" + str("iid.oodt")}),
              cli::kExitConfig);
}

TEST_F(CliTest, Demos) {
    ASSERT_EQ(run({"demo", "typicality", "--d", "3072", "--n", "500", "--out", str("out")}), 0);
    EXPECT_NE(stdout_.find("target_gap,1536.0000000000"), std::string::npos);
    ASSERT_EQ(run({"demo", "circle", "--d", "256", "--n", "50", "--out", str("out")}), 0);
    const auto circle = slurp(path("out/demo/circle.csv"));
    EXPECT_NE(circle.find("k,20\n"), std::string::npos);
    EXPECT_EQ(lines(path("out/demo/circle_profile.csv")).size(), 21u);
    ASSERT_EQ(run({"demo", "null-calibration", "--d", "256", "--k", "4", "--trials", "1000", "--out",
                   str("out")}),
              0);
    EXPECT_TRUE(fs::exists(path("out/demo/null-calibration.csv")));
    EXPECT_EQ(run({"demo", "spiral"}), cli::kExitConfig);
    EXPECT_EQ(run({"demo", "circle", "--d", "7", "--out", str("out")}), cli::kExitData);
}

}  // namespace
