#include "oodwn/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <set>

#include "oodwn/errors.hpp"
#include "oodwn/rng.hpp"
#include "oodwn/whitenoise.hpp"

namespace oodwn {

namespace {

void check_scores(std::span<const double> s, const char* what) {
    if (s.empty()) {
        throw ArgumentError(std::string("auroc: empty ") + what + " list");
    }
    for (double v : s) {
        if (std::isnan(v)) {
            throw ArgumentError(std::string("auroc: NaN in ") + what + " scores");
        }
    }
}

// Type-7 quantile of a sorted list.
double sorted_quantile(const std::vector<double>& sorted, double q) {
    const double h = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double auroc(std::span<const double> outlier_scores, std::span<const double> inlier_scores) {
    check_scores(outlier_scores, "outlier");
    check_scores(inlier_scores, "inlier");
    const std::size_t m = outlier_scores.size();
    const std::size_t n = inlier_scores.size();

    // (score, is_outlier)
    std::vector<std::pair<double, bool>> all;
    all.reserve(m + n);
    for (double v : outlier_scores) all.emplace_back(v, true);
    for (double v : inlier_scores) all.emplace_back(v, false);
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    double outlier_rank_sum = 0.0;
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        std::size_t outliers_in_run = 0;
        while (j < all.size() && all[j].first == all[i].first) {
            outliers_in_run += all[j].second ? 1 : 0;
            ++j;
        }
        // 1-based ranks i+1..j share the mid-rank (i + 1 + j) / 2.
        const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
        outlier_rank_sum += mid_rank * static_cast<double>(outliers_in_run);
        i = j;
    }
    const double u = outlier_rank_sum - 0.5 * static_cast<double>(m) * static_cast<double>(m + 1);
    return u / (static_cast<double>(m) * static_cast<double>(n));
}

ConfidenceInterval auroc_ci(std::span<const double> outlier_scores,
                            std::span<const double> inlier_scores, std::size_t trials,
                            std::uint64_t seed, double level) {
    check_scores(outlier_scores, "outlier");
    check_scores(inlier_scores, "inlier");
    if (trials < 200) {
        throw ArgumentError("auroc_ci: at least 200 bootstrap trials required");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw ArgumentError("auroc_ci: level must lie in (0, 1)");
    }
    const std::size_t m = outlier_scores.size();
    const std::size_t n = inlier_scores.size();
    std::vector<double> stats(trials);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(trials); ++t) {
        Xoshiro256 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::vector<double> o(m), in(n);
        for (auto& v : o) v = outlier_scores[rng.below(m)];
        for (auto& v : in) v = inlier_scores[rng.below(n)];
        stats[static_cast<std::size_t>(t)] = auroc(o, in);
    }
    std::sort(stats.begin(), stats.end());
    const double tail = 0.5 * (1.0 - level);
    return {sorted_quantile(stats, tail), sorted_quantile(stats, 1.0 - tail)};
}

std::map<std::string, double> average_ranks(const AurocTable& table) {
    if (table.empty()) {
        throw ArgumentError("average_ranks: empty table");
    }
    std::set<std::string> tests;
    for (const auto& [setting, row] : table) {
        for (const auto& [test, value] : row) tests.insert(test);
    }
    std::map<std::string, double> total;
    for (const auto& [setting, row] : table) {
        std::vector<std::pair<double, std::string>> cells;
        for (const auto& test : tests) {
            auto it = row.find(test);
            if (it == row.end()) {
                throw ArgumentError("average_ranks: setting '" + setting + "' lacks test '" + test +
                                    "'");
            }
            if (std::isnan(it->second)) {
                throw ArgumentError("average_ranks: NaN AUROC");
            }
            cells.emplace_back(it->second, test);
        }
        std::sort(cells.begin(), cells.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t i = 0; i < cells.size();) {
            std::size_t j = i;
            while (j < cells.size() && cells[j].first == cells[i].first) ++j;
            const double rank = 0.5 * static_cast<double>(i + 1 + j);
            for (std::size_t k = i; k < j; ++k) total[cells[k].second] += rank;
            i = j;
        }
    }
    for (auto& [test, sum] : total) {
        sum /= static_cast<double>(table.size());
    }
    return total;
}

double histogram_intersection(std::span<const double> a, std::span<const double> b,
                              std::size_t bins) {
    if (bins < 1) {
        throw ArgumentError("histogram_intersection: bins must be >= 1");
    }
    if (a.empty() || b.empty()) {
        throw ArgumentError("histogram_intersection: both lists must be nonempty");
    }
    double lo = a.front();
    double hi = a.front();
    for (auto list : {a, b}) {
        for (double v : list) {
            if (!std::isfinite(v)) {
                throw ArgumentError("histogram_intersection: non-finite value");
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (lo == hi) {
        return 1.0;
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    auto histogram = [&](std::span<const double> list) {
        std::vector<double> h(bins, 0.0);
        for (double v : list) {
            auto idx = static_cast<std::size_t>((v - lo) / width);
            h[std::min(idx, bins - 1)] += 1.0;
        }
        for (auto& c : h) c /= static_cast<double>(list.size());
        return h;
    };
    const auto ha = histogram(a);
    const auto hb = histogram(b);
    double sum = 0.0;
    for (std::size_t i = 0; i < bins; ++i) sum += std::min(ha[i], hb[i]);
    return std::clamp(sum, 0.0, 1.0);
}

std::vector<AcfProfileRow> acf_profile(const RowMatrix& sequences, std::size_t max_lag) {
    const auto n = static_cast<std::size_t>(sequences.rows());
    const auto d = static_cast<std::size_t>(sequences.cols());
    if (n < 2) {
        throw ArgumentError("acf_profile: at least two sequences required");
    }
    if (max_lag < 1 || max_lag >= d) {
        throw ArgumentError("acf_profile: L must lie in [1, d)");
    }
    // rho[i * L + (l - 1)]
    std::vector<double> rho(n * max_lag);
    for (std::size_t i = 0; i < n; ++i) {
        const auto s = standardize({sequences.row(static_cast<Eigen::Index>(i)).data(), d});
        for (std::size_t l = 1; l <= max_lag; ++l) {
            rho[i * max_lag + l - 1] = acf(s, l);
        }
    }
    std::vector<AcfProfileRow> out(max_lag);
    for (std::size_t l = 1; l <= max_lag; ++l) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += rho[i * max_lag + l - 1];
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = rho[i * max_lag + l - 1] - mean;
            ss += e * e;
        }
        out[l - 1] = {l, mean, std::sqrt(ss / static_cast<double>(n - 1)),
                      1.0 / std::sqrt(static_cast<double>(d - l))};
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string format_fixed(double v, int digits) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
    out << "setting,test,auroc,ci_low,ci_high,n_inlier,n_outlier\n";
    for (const auto& c : report.cells) {
        out << c.setting << ',' << c.test << ',' << format_fixed(c.auroc) << ','
            << format_fixed(c.ci_low) << ',' << format_fixed(c.ci_high) << ',' << c.n_inlier << ','
            << c.n_outlier << '\n';
    }
}

void write_ranks_csv(std::ostream& out, const EvalReport& report) {
    out << "test,average_rank\n";
    for (const auto& [test, rank] : report.average_rank) {
        out << test << ',' << format_fixed(rank, 4) << '\n';
    }
}

void write_intersections_csv(std::ostream& out, const EvalReport& report) {
    out << "setting,test,intersection\n";
    for (const auto& c : report.intersections) {
        out << c.setting << ',' << c.test << ',' << format_fixed(c.intersection) << '\n';
    }
}

void write_report_text(std::ostream& out, const EvalReport& report) {
    for (const auto& [key, value] : report.metadata) {
        out << "# " << key << ": " << value << '\n';
    }
    std::vector<std::string> settings;
    std::vector<std::string> tests;
    for (const auto& c : report.cells) {
        if (std::find(settings.begin(), settings.end(), c.setting) == settings.end())
            settings.push_back(c.setting);
        if (std::find(tests.begin(), tests.end(), c.test) == tests.end()) tests.push_back(c.test);
    }
    auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w) s.append(w - s.size(), ' ');
        return s;
    };
    std::size_t width = 8;
    for (const auto& s : settings) width = std::max(width, s.size() + 2);

    out << pad("test", 8);
    for (const auto& s : settings) out << pad(s, width);
    if (!report.average_rank.empty()) out << "avg-rank";
    out << '\n';
    for (const auto& t : tests) {
        out << pad(t, 8);
        for (const auto& s : settings) {
            std::string cell = "-";
            for (const auto& c : report.cells) {
                if (c.setting == s && c.test == t) {
                    cell = format_fixed(c.auroc, 3) + " +-" +
                           format_fixed(0.5 * (c.ci_high - c.ci_low), 3);
                }
            }
            out << pad(cell, width);
        }
        if (auto it = report.average_rank.find(t); it != report.average_rank.end()) {
            out << format_fixed(it->second, 2);
        }
        out << '\n';
    }
}

void write_profile_csv(std::ostream& out, std::span<const AcfProfileRow> rows) {
    out << "lag,mean_rho,std_rho,null_std\n";
    for (const auto& r : rows) {
        out << r.lag << ',' << format_fixed(r.mean_rho, 8) << ',' << format_fixed(r.std_rho, 8)
            << ',' << format_fixed(r.null_std, 8) << '\n';
    }
}

}  // namespace oodwn
