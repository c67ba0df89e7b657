#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "oodwn/oodwn.hpp"

namespace fs = std::filesystem;

namespace oodwn::cli {

namespace {

constexpr const char* kInlierTest = "inlier-test";
constexpr const char* kInlierTrain = "inlier-train";
const std::vector<std::string> kKnownTests{"wn", "lh", "lh2s", "lr"};

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
    return out;
}

std::string join_lags(const LagSet& lags) {
    std::string out;
    for (std::size_t l : lags.lags) out += (out.empty() ? "" : ",") + std::to_string(l);
    return out;
}

void require_exists(const fs::path& p) {
    if (!fs::exists(p)) throw ConfigError("no such file: " + p.string());
}

SampleMatrix load_dataset(const std::vector<fs::path>& paths, std::optional<ImageGeometry> hint) {
    for (const auto& p : paths) require_exists(p);
    const auto is_bin = [](const fs::path& p) { return p.extension() == ".bin"; };
    const auto bins = std::count_if(paths.begin(), paths.end(), is_bin);
    if (bins == static_cast<std::ptrdiff_t>(paths.size())) {
        return read_cifar10_bin(paths);
    }
    if (bins != 0) throw ConfigError("cannot mix CIFAR .bin files and containers in one dataset");
    std::vector<SampleMatrix> parts;
    for (const auto& p : paths) parts.push_back(read_container(p, hint));
    return SampleMatrix::concat(parts);
}

/// Raw bytes are modelled on the unit scale; other ranges are used as stored.
SampleMatrix model_scale(const SampleMatrix& m) {
    return m.range() == ValueRange::RawBytes ? m.to_unit() : m;
}

std::string format_score(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_score(std::string_view s, const fs::path& file) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw FormatError("bad score '" + std::string(s) + "' in " + file.string());
    }
    return v;
}

void validate_name(const std::string& name) {
    const bool ok = !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    });
    if (!ok) throw ConfigError("dataset name '" + name + "' must match [A-Za-z0-9._-]+");
}

std::vector<std::string> score_tests(const RunConfig& cfg) {
    if (!cfg.tests_given) return kKnownTests;
    if (cfg.tests.empty()) throw ConfigError("empty test list");
    std::set<std::string> seen;
    for (const auto& t : cfg.tests) {
        if (std::find(kKnownTests.begin(), kKnownTests.end(), t) == kKnownTests.end())
            throw ConfigError("unknown test '" + t + "' (expected wn, lh, lh2s or lr)");
        if (!seen.insert(t).second) throw ConfigError("test '" + t + "' listed twice");
    }
    return cfg.tests;
}

std::size_t single_max_lag(const RunConfig& cfg) {
    if (cfg.max_lags.size() != 1) throw ConfigError("--L takes a single value outside sweep-l");
    return cfg.max_lags.front();
}

LagSet build_lags(const std::string& mode, std::size_t max_lag, const ImageGeometry& g) {
    const std::size_t d = g.dim();
    if (max_lag >= d) {
        throw ConfigError("L = " + std::to_string(max_lag) + " must be below the dimension " +
                          std::to_string(d));
    }
    if (mode == "all") {
        if (max_lag < 1) throw ConfigError("L must be >= 1");
        return all_lags(max_lag, d);
    }
    const std::size_t step = g.channels * g.width;
    if (max_lag < step) {
        throw ConfigError("L = " + std::to_string(max_lag) + " is below the first vertical lag " +
                          std::to_string(step) + " for geometry " + to_string(g));
    }
    return vertical_lags(g, max_lag);
}

/// One population to score: image paths plus any imported per-sample inputs.
struct Dataset {
    std::string name;
    SampleLabel label;
    std::vector<fs::path> images;
    std::optional<fs::path> residuals;
    std::optional<fs::path> logliks;
};

std::vector<Dataset> collect_datasets(const RunConfig& cfg, bool with_train) {
    std::vector<Dataset> sets;
    auto find = [&](const std::string& name) -> Dataset* {
        for (auto& s : sets)
            if (s.name == name) return &s;
        return nullptr;
    };
    sets.push_back({kInlierTest, SampleLabel::InlierTest, cfg.test, {}, {}});
    if (with_train) sets.push_back({kInlierTrain, SampleLabel::InlierTrain, cfg.train, {}, {}});
    for (const auto& o : cfg.outliers) {
        validate_name(o.name);
        if (o.name == kInlierTest || o.name == kInlierTrain)
            throw ConfigError("outlier name '" + o.name + "' is reserved");
        if (auto* s = find(o.name)) {
            s->images.push_back(o.path);
        } else {
            sets.push_back({o.name, SampleLabel::Outlier, {o.path}, {}, {}});
        }
    }
    auto attach = [&](const std::vector<NamedPath>& items, auto member) {
        for (const auto& item : items) {
            validate_name(item.name);
            Dataset* s = find(item.name);
            if (!s) {
                if (item.name == kInlierTrain) continue;  // consumed by the LH-2S median
                sets.push_back({item.name, SampleLabel::Outlier, {}, {}, {}});
                s = &sets.back();
            }
            require_exists(item.path);
            s->*member = item.path;
        }
    };
    attach(cfg.residuals, &Dataset::residuals);
    attach(cfg.logliks, &Dataset::logliks);
    return sets;
}

const NamedPath* find_named(const std::vector<NamedPath>& v, const std::string& name) {
    for (const auto& item : v)
        if (item.name == name) return &item;
    return nullptr;
}

/// Lazily loaded model shared by the score and sweep verbs.
class ModelSlot {
public:
    explicit ModelSlot(fs::path dir) : dir_(std::move(dir)) {}

    const GaussianModel& get() {
        if (!model_) {
            if (!fs::exists(dir_ / "meta.txt")) {
                throw ConfigError("no fitted model in " + dir_.string() + " (run fit first)");
            }
            model_ = load_model(dir_);
        }
        return *model_;
    }

    [[nodiscard]] std::optional<ImageGeometry> geometry_if_loaded() const {
        return model_ ? std::optional(model_->geometry()) : std::nullopt;
    }

private:
    fs::path dir_;
    std::optional<GaussianModel> model_;
};

/// Per-dataset data access with caching of the image matrix.
class DatasetData {
public:
    DatasetData(const Dataset& ds, ModelSlot& model) : ds_(ds), model_(model) {}

    const SampleMatrix& images() {
        if (!images_) {
            if (ds_.images.empty()) {
                throw ConfigError("dataset '" + ds_.name + "' has no image files but a requested "
                                  "test needs them");
            }
            images_ = load_dataset(ds_.images, model_.geometry_if_loaded());
        }
        return *images_;
    }

    const SampleMatrix& model_images() {
        const auto& m = model_.get();
        const auto& x = images();
        if (x.geometry() != m.geometry()) {
            throw ConfigError("geometry mismatch: model " + to_string(m.geometry()) + ", dataset '" +
                              ds_.name + "' " + to_string(x.geometry()));
        }
        return x;
    }

    /// Residual sequences: imported, or whitened under the model.
    std::pair<RowMatrix, ImageGeometry> residuals() {
        if (ds_.residuals) {
            std::optional<ImageGeometry> hint = model_.geometry_if_loaded();
            if (!hint && !ds_.images.empty()) hint = images().geometry();
            auto r = read_container(*ds_.residuals, hint);
            return {r.values(), r.geometry()};
        }
        const auto& x = model_images();
        return {whiten_rows(model_.get(), model_scale(x)), x.geometry()};
    }

    /// Log-likelihood in nats. For raw-byte images the unit-scale density is
    /// converted to the byte scale by the change of variables (-d ln 255).
    std::vector<double> logliks() {
        if (ds_.logliks) return read_vector_container(*ds_.logliks);
        const auto& x = model_images();
        auto ll = loglik_rows(model_.get(), model_scale(x));
        if (x.range() == ValueRange::RawBytes) {
            const double offset = static_cast<double>(x.dim()) * std::log(255.0);
            for (double& v : ll) v -= offset;
        }
        return ll;
    }

private:
    const Dataset& ds_;
    ModelSlot& model_;
    std::optional<SampleMatrix> images_;
};

void check_count(std::size_t got, std::size_t& expected, const std::string& name,
                 const std::string& what) {
    if (expected == 0) {
        expected = got;
    } else if (got != expected) {
        throw FormatError("dataset '" + name + "': " + what + " has " + std::to_string(got) +
                          " samples, expected " + std::to_string(expected));
    }
}

void write_lines(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path.string());
    f << text;
    if (!f) throw IoError("write failed: " + path.string());
}

struct ScoreFile {
    SampleLabel label = SampleLabel::InlierTest;
    std::map<std::string, std::vector<double>> by_test;
};

ScoreFile read_score_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "sample_index,label,test,score") {
        throw FormatError("unexpected header in " + path.string());
    }
    ScoreFile f;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<std::string_view, 4> cols;
        std::string_view rest = line;
        for (std::size_t c = 0; c < 4; ++c) {
            const auto comma = rest.find(',');
            if ((comma == std::string_view::npos) != (c == 3)) {
                throw FormatError("malformed row '" + line + "' in " + path.string());
            }
            cols[c] = rest.substr(0, comma);
            if (c < 3) rest.remove_prefix(comma + 1);
        }
        const auto label = parse_label(cols[1]);
        if (first) {
            f.label = label;
            first = false;
        } else if (label != f.label) {
            throw FormatError("mixed labels in " + path.string());
        }
        f.by_test[std::string(cols[2])].push_back(parse_score(cols[3], path));
    }
    return f;
}

std::vector<std::pair<std::string, std::string>> read_manifest(const fs::path& path) {
    std::vector<std::pair<std::string, std::string>> out;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) out.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return out;
}

std::string manifest_text(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ostringstream os;
    for (const auto& [k, v] : kv) os << k << '=' << v << '\n';
    return os.str();
}

}  // namespace

void cmd_fit(const RunConfig& cfg, std::ostream& log) {
    if (cfg.train.empty()) throw ConfigError("fit needs --train");
    const auto data = load_dataset(cfg.train, std::nullopt);
    log << "oodwn: fitting on " << data.size() << " samples, geometry " << to_string(data.geometry())
        << ", range " << to_string(data.range()) << ", eps " << cfg.eps << '\n';
    const auto model = fit_gaussian(model_scale(data), cfg.eps);
    save_model(model, cfg.model_dir());
    log << "oodwn: model written to " << cfg.model_dir().string() << '\n';
}

void cmd_score(const RunConfig& cfg, std::ostream& log) {
    const auto tests = score_tests(cfg);
    const std::size_t max_lag = single_max_lag(cfg);
    if (cfg.test.empty() && !find_named(cfg.residuals, kInlierTest) &&
        !find_named(cfg.logliks, kInlierTest)) {
        throw ConfigError("score needs the inlier test set (--test)");
    }
    for (const auto& p : cfg.test) require_exists(p);
    if (cfg.score_train && cfg.train.empty()) throw ConfigError("--score-train needs --train");

    const auto has = [&](const char* t) {
        return std::find(tests.begin(), tests.end(), t) != tests.end();
    };
    ModelSlot model(cfg.model_dir());
    auto meta = cfg.metadata();
    meta.emplace_back("value_orientation", "larger score = more outlier");

    std::optional<double> train_median;
    if (has("lh2s")) {
        std::vector<double> ll;
        if (const auto* imp = find_named(cfg.logliks, kInlierTrain)) {
            require_exists(imp->path);
            ll = read_vector_container(imp->path);
        } else {
            if (cfg.train.empty()) throw ConfigError("lh2s needs --train or inlier-train logliks");
            Dataset train{kInlierTrain, SampleLabel::InlierTrain, cfg.train, {}, {}};
            DatasetData d(train, model);
            ll = d.logliks();
        }
        train_median = median(ll);
        meta.emplace_back("lh2s_train_median", format_score(*train_median));
    }
    if (has("lr")) meta.emplace_back("compressor", CompressorSettings{}.describe());

    const auto datasets = collect_datasets(cfg, cfg.score_train);
    std::optional<std::string> lag_desc;
    for (const auto& ds : datasets) {
        DatasetData data(ds, model);
        std::size_t n = 0;
        std::map<std::string, std::vector<double>> scores;
        std::optional<std::vector<double>> ll;
        const auto get_ll = [&]() -> const std::vector<double>& {
            if (!ll) {
                ll = data.logliks();
                check_count(ll->size(), n, ds.name, "log-likelihoods");
            }
            return *ll;
        };

        for (const auto& t : tests) {
            auto& s = scores[t];
            if (t == "wn") {
                auto [rows, g] = data.residuals();
                const auto lags = build_lags(cfg.lag_mode, max_lag, g);
                check_count(static_cast<std::size_t>(rows.rows()), n, ds.name, "residuals");
                s = wn_scores(rows, lags);
                if (!lag_desc) {
                    lag_desc = join_lags(lags);
                    meta.emplace_back("lag_set", *lag_desc);
                }
                if (cfg.profile_lag > 0) {
                    if (rows.rows() < 2 || cfg.profile_lag >= static_cast<std::size_t>(rows.cols()))
                        throw ConfigError("--profile-L needs >= 2 sequences and L < d");
                    std::ostringstream os;
                    write_profile_csv(os, acf_profile(rows, cfg.profile_lag));
                    write_lines(cfg.out / "profiles" / (ds.name + ".csv"), os.str());
                }
            } else if (t == "lh") {
                for (double v : get_ll()) s.push_back(lh_score(v));
            } else if (t == "lh2s") {
                for (double v : get_ll()) s.push_back(lh2s_score(v, *train_median));
            } else if (t == "lr") {
                const auto& l = get_ll();
                const auto& x = data.images();
                if (x.range() != ValueRange::RawBytes)
                    throw ConfigError("lr needs raw-byte images for dataset '" + ds.name + "'");
                const auto bits = complexity_bits_rows(x);
                check_count(bits.size(), n, ds.name, "images");
                for (std::size_t i = 0; i < l.size(); ++i) s.push_back(lr_score(l[i], bits[i]));
            }
        }

        std::ostringstream os;
        os << "sample_index,label,test,score\n";
        for (const auto& t : tests) {
            const auto& s = scores[t];
            for (std::size_t i = 0; i < s.size(); ++i)
                os << i << ',' << to_string(ds.label) << ',' << t << ',' << format_score(s[i]) << '\n';
        }
        write_lines(cfg.scores_dir() / (ds.name + ".csv"), os.str());
        log << "oodwn: scored " << n << " samples of '" << ds.name << "'\n";
    }
    write_lines(cfg.scores_dir() / "manifest.txt", manifest_text(meta));
}

void cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    if (cfg.ci_trials < 200) throw ConfigError("--ci-trials must be >= 200");
    const fs::path dir = cfg.scores_dir();
    const fs::path inlier_path = dir / (std::string(kInlierTest) + ".csv");
    if (!fs::exists(inlier_path)) throw ConfigError("missing score file " + inlier_path.string());

    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".csv") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    const auto inlier = read_score_file(inlier_path);
    std::vector<std::string> tests;
    if (cfg.tests_given) {
        if (cfg.tests.empty()) throw ConfigError("empty test list");
        tests = cfg.tests;
    } else {
        for (const auto& t : kKnownTests)
            if (inlier.by_test.count(t)) tests.push_back(t);
        for (const auto& [t, _] : inlier.by_test)
            if (std::find(tests.begin(), tests.end(), t) == tests.end()) tests.push_back(t);
    }

    struct Setting {
        std::string name;
        ScoreFile scores;
        bool ranked;
    };
    std::vector<Setting> settings;
    std::optional<Setting> train;
    for (const auto& f : files) {
        const auto stem = f.stem().string();
        if (stem == kInlierTest) continue;
        auto sf = read_score_file(f);
        if (sf.label == SampleLabel::Outlier) {
            settings.push_back({stem, std::move(sf), true});
        } else if (sf.label == SampleLabel::InlierTrain) {
            train = Setting{"inlier-train-vs-test", std::move(sf), false};
        }
    }
    if (settings.empty() && !train) throw ConfigError("no outlier score files in " + dir.string());
    if (train) settings.push_back(std::move(*train));

    EvalReport report;
    report.metadata = {{"scores", dir.string()},
                       {"tests", join(tests)},
                       {"seed", std::to_string(cfg.seed)},
                       {"ci_trials", std::to_string(cfg.ci_trials)},
                       {"ci_level", "0.95"},
                       {"bins", std::to_string(cfg.bins)}};
    for (const auto& [k, v] : read_manifest(dir / "manifest.txt"))
        report.metadata.emplace_back("score." + k, v);

    AurocTable table;
    std::uint64_t stream = 0;
    for (const auto& s : settings) {
        for (const auto& t : tests) {
            const auto in_it = inlier.by_test.find(t);
            const auto out_it = s.scores.by_test.find(t);
            if (in_it == inlier.by_test.end() || out_it == s.scores.by_test.end()) {
                throw ConfigError("test '" + t + "' missing for setting '" + s.name + "'");
            }
            const auto& o = out_it->second;
            const auto& i = in_it->second;
            const double a = auroc(o, i);
            const auto ci = auroc_ci(o, i, cfg.ci_trials, derive_seed(cfg.seed, stream++));
            report.cells.push_back({s.name, t, a, ci.low, ci.high, i.size(), o.size()});
            if (s.ranked) table[s.name][t] = a;

            if (cfg.bins > 0) {
                std::vector<double> fo, fi;
                std::copy_if(o.begin(), o.end(), std::back_inserter(fo),
                             [](double v) { return std::isfinite(v); });
                std::copy_if(i.begin(), i.end(), std::back_inserter(fi),
                             [](double v) { return std::isfinite(v); });
                if (fo.empty() || fi.empty()) {
                    log << "oodwn: skipping intersection for " << s.name << '/' << t
                        << " (no finite scores)\n";
                } else {
                    report.intersections.push_back(
                        {s.name, t, histogram_intersection(fo, fi, cfg.bins)});
                }
            }
        }
    }
    if (!table.empty()) report.average_rank = average_ranks(table);

    std::ostringstream csv, ranks, text;
    write_report_csv(csv, report);
    write_ranks_csv(ranks, report);
    write_report_text(text, report);
    write_lines(cfg.out / "report.csv", csv.str());
    write_lines(cfg.out / "ranks.csv", ranks.str());
    write_lines(cfg.out / "report.txt", text.str());
    if (cfg.bins > 0) {
        std::ostringstream inter;
        write_intersections_csv(inter, report);
        write_lines(cfg.out / "intersections.csv", inter.str());
    }
    out << text.str();
}

void cmd_sweep_l(const RunConfig& cfg, std::ostream& log) {
    if (cfg.lag_mode != "vertical") throw ConfigError("sweep-l runs in vertical lag mode only");
    if (cfg.max_lags.empty()) throw ConfigError("empty L list");

    ModelSlot model(cfg.model_dir());
    const auto datasets = collect_datasets(cfg, false);
    struct Cumulative {
        std::string name;
        SampleLabel label;
        std::vector<std::vector<double>> sums;  ///< per sample, running sum of rho^2 over lags
        std::vector<bool> degenerate;
        std::size_t d = 0;
    };
    std::vector<Cumulative> pops;
    std::vector<std::size_t> lags;
    std::optional<ImageGeometry> geometry;

    for (const auto& ds : datasets) {
        DatasetData data(ds, model);
        auto [rows, g] = data.residuals();
        if (!geometry) {
            geometry = g;
            const std::size_t top = *std::max_element(cfg.max_lags.begin(), cfg.max_lags.end());
            for (std::size_t L : cfg.max_lags) (void)build_lags("vertical", L, g);
            lags = vertical_lags(g, top).lags;
        } else if (g != *geometry) {
            throw ConfigError("dataset '" + ds.name + "' has geometry " + to_string(g) +
                              ", expected " + to_string(*geometry));
        }
        Cumulative c{ds.name, ds.label, {}, {}, g.dim()};
        c.sums.resize(static_cast<std::size_t>(rows.rows()));
        c.degenerate.assign(c.sums.size(), false);
#pragma omp parallel for schedule(dynamic, 16)
        for (Eigen::Index r = 0; r < rows.rows(); ++r) {
            const auto idx = static_cast<std::size_t>(r);
            std::vector<double> t(rows.row(r).begin(), rows.row(r).end());
            std::vector<double> s;
            try {
                s = standardize(t);
            } catch (const DegenerateSequenceError&) {
                c.degenerate[idx] = true;
                continue;
            }
            auto& sums = c.sums[idx];
            double acc = 0.0;
            for (std::size_t l : lags) {
                const double rho = acf(s, l);
                acc += rho * rho;
                sums.push_back(acc);
            }
        }
        pops.push_back(std::move(c));
        log << "oodwn: ACF computed for '" << ds.name << "'\n";
    }

    const auto q_at = [&](const Cumulative& c, std::size_t count) {
        std::vector<double> q(c.sums.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] = c.degenerate[i] ? std::numeric_limits<double>::infinity()
                                   : static_cast<double>(c.d) * c.sums[i][count - 1];
        }
        return q;
    };

    std::ostringstream os;
    os << "L,setting,auroc\n";
    const Cumulative& inlier = pops.front();
    for (std::size_t L : cfg.max_lags) {
        const auto count = static_cast<std::size_t>(
            std::upper_bound(lags.begin(), lags.end(), L) - lags.begin());
        const auto qi = q_at(inlier, count);
        for (std::size_t p = 1; p < pops.size(); ++p) {
            os << L << ',' << pops[p].name << ',' << format_fixed(auroc(q_at(pops[p], count), qi))
               << '\n';
        }
    }
    write_lines(cfg.out / "sweep.csv", os.str());
}

void cmd_demo(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    std::vector<std::pair<std::string, std::string>> rows;
    const auto num = [](double v) { return format_fixed(v, 10); };
    if (cfg.demo == "typicality") {
        const auto r = typicality_demo(cfg.demo_d, cfg.demo_n, cfg.seed);
        rows = {{"d", std::to_string(r.d)},
                {"n", std::to_string(r.n)},
                {"mean_norm", num(r.mean_norm)},
                {"sqrt_d", num(std::sqrt(static_cast<double>(r.d)))},
                {"std_norm", num(r.std_norm)},
                {"log_density_gap", num(r.log_density_gap)},
                {"target_gap", num(r.target_gap)}};
    } else if (cfg.demo == "circle") {
        if (cfg.demo_max_lag < 2) throw ConfigError("circle demo needs --max-lag >= 2");
        const auto r = circle_demo(cfg.demo_d, cfg.demo_n, cfg.demo_max_lag, cfg.seed);
        rows = {{"d", std::to_string(r.d)},
                {"n", std::to_string(r.n)},
                {"k", std::to_string(r.k)},
                {"max_typicality_deviation", format_score(r.max_typicality_deviation)},
                {"max_p_value", format_score(r.max_p_value)},
                {"min_q_over_k", num(r.min_q_over_k)}};
        if (cfg.demo_n >= 2) {
            const auto x = sample_process({ProcessKind::Circle, cfg.demo_d, 0, 1, cfg.seed}, cfg.demo_n);
            std::ostringstream os;
            write_profile_csv(os, acf_profile(x.values(), cfg.demo_max_lag));
            write_lines(cfg.out / "demo" / "circle_profile.csv", os.str());
        }
    } else if (cfg.demo == "null-calibration") {
        const auto r = null_calibration(cfg.demo_d, cfg.demo_k, cfg.demo_trials, cfg.seed);
        rows = {{"d", std::to_string(r.d)},
                {"k", std::to_string(r.k)},
                {"trials", std::to_string(r.trials)},
                {"ks", num(r.ks)},
                {"mean_q_over_k", num(r.mean_q_over_k)}};
    } else {
        throw ConfigError("unknown demo '" + cfg.demo + "'");
    }
    rows.emplace_back("seed", std::to_string(cfg.seed));

    std::ostringstream os;
    os << "metric,value\n";
    for (const auto& [k, v] : rows) os << k << ',' << v << '\n';
    write_lines(cfg.out / "demo" / (cfg.demo + ".csv"), os.str());
    out << os.str();
    log << "oodwn: demo written to " << (cfg.out / "demo").string() << '\n';
}

}  // namespace oodwn::cli
