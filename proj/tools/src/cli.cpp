#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "oodwn/errors.hpp"
#include "oodwn/eval.hpp"

namespace oodwn::cli {

namespace {

std::vector<NamedPath> parse_named(const std::vector<std::string>& raw, const std::string& flag) {
    std::vector<NamedPath> out;
    for (const auto& item : raw) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
            throw ConfigError("--" + flag + " expects NAME=PATH, got '" + item + "'");
        }
        out.push_back({item.substr(0, eq), item.substr(eq + 1)});
    }
    return out;
}

template <typename T>
std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::string join_named(const std::vector<NamedPath>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i].name << '=' << v[i].path.string();
    return os.str();
}

std::string join_paths(const std::vector<std::filesystem::path>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].string();
    return os.str();
}

}  // namespace

std::filesystem::path RunConfig::model_dir() const {
    return model.empty() ? out / "model" : model;
}

std::vector<std::pair<std::string, std::string>> RunConfig::metadata() const {
    return {
        {"config", config_file.string()},
        {"train", join_paths(train)},
        {"test", join_paths(test)},
        {"outliers", join_named(outliers)},
        {"residuals", join_named(residuals)},
        {"logliks", join_named(logliks)},
        {"model", model_dir().string()},
        {"eps", format_fixed(eps, 8)},
        {"lags", lag_mode},
        {"L", join(max_lags)},
        {"tests", join(tests)},
        {"seed", std::to_string(seed)},
    };
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"White-noise outlier tests for images and generic sequences", "oodwn"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Key-value config file; flags override its entries");

    RunConfig cfg;
    std::vector<std::string> outliers_raw, residuals_raw, logliks_raw;

    app.add_option("--train", cfg.train, "Inlier training data (.bin CIFAR records or .oodt)");
    app.add_option("--test", cfg.test, "Inlier test data");
    app.add_option("--outlier", outliers_raw, "Outlier set NAME=PATH (repeatable)");
    app.add_option("--residuals", residuals_raw, "Imported residual container NAME=PATH");
    app.add_option("--logliks", logliks_raw, "Imported log-likelihood container NAME=PATH");
    app.add_option("--model", cfg.model, "Model directory (default <out>/model)");
    app.add_option("--out", cfg.out, "Output directory")->capture_default_str();
    app.add_option("--eps", cfg.eps, "Covariance shrinkage")->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app.add_option("--lags", cfg.lag_mode, "Lag set")->capture_default_str()
        ->check(CLI::IsMember({"vertical", "all"}));
    app.add_option("--L", cfg.max_lags, "Maximum lag (a list for sweep-l)")->delimiter(',')
        ->capture_default_str();
    auto* tests_opt = app.add_option("--tests", cfg.tests, "Subset of wn,lh,lh2s,lr")
                          ->delimiter(',');
    app.add_option("--seed", cfg.seed, "Top-level seed")->capture_default_str();
    app.add_flag("--score-train", cfg.score_train, "Also score the inlier training set");
    app.add_option("--profile-L", cfg.profile_lag, "Write mean-ACF profiles up to this lag");
    app.add_option("--ci-trials", cfg.ci_trials, "Bootstrap trials")->capture_default_str();
    app.add_option("--bins", cfg.bins, "Histogram-intersection bins (0 disables)");

    auto* fit = app.add_subcommand("fit", "Fit the Gaussian model to the inlier training set");
    auto* score = app.add_subcommand("score", "Score inlier-test and outlier sets");
    auto* eval = app.add_subcommand("eval", "AUROC report from the score files");
    auto* sweep = app.add_subcommand("sweep-l", "AUROC of the WN test across maximum lags");
    auto* demo = app.add_subcommand("demo", "Synthetic demonstrations");
    demo->add_option("name", cfg.demo, "typicality | circle | null-calibration")->required()
        ->check(CLI::IsMember({"typicality", "circle", "null-calibration"}));
    demo->add_option("--d", cfg.demo_d, "Dimension")->capture_default_str();
    demo->add_option("--n", cfg.demo_n, "Samples")->capture_default_str();
    demo->add_option("--k", cfg.demo_k, "Lag count (null-calibration)")->capture_default_str();
    demo->add_option("--trials", cfg.demo_trials, "Trials (null-calibration)")
        ->capture_default_str();
    demo->add_option("--max-lag", cfg.demo_max_lag, "Lags 1..max (circle)")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();  // program name
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (auto* c = app.get_config_ptr(); c && c->count() > 0) {
            cfg.config_file = c->as<std::string>();
        }
        cfg.outliers = parse_named(outliers_raw, "outlier");
        cfg.residuals = parse_named(residuals_raw, "residuals");
        cfg.logliks = parse_named(logliks_raw, "logliks");
        cfg.tests_given = tests_opt->count() > 0;
        std::erase(cfg.tests, std::string{});

        if (fit->parsed()) cmd_fit(cfg, err);
        if (score->parsed()) cmd_score(cfg, err);
        if (eval->parsed()) cmd_eval(cfg, out, err);
        if (sweep->parsed()) cmd_sweep_l(cfg, err);
        if (demo->parsed()) cmd_demo(cfg, out, err);
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "oodwn: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "oodwn: numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        err << "oodwn: error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        err << "oodwn: unexpected error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace oodwn::cli
