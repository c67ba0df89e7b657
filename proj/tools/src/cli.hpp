#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oodwn::cli {

/// Bad or inconsistent configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumerical = 4;

struct NamedPath {
    std::string name;
    std::filesystem::path path;
};

/// Effective settings of one invocation, after merging the config file and flags.
struct RunConfig {
    std::vector<std::filesystem::path> train;
    std::vector<std::filesystem::path> test;
    std::vector<NamedPath> outliers;
    std::vector<NamedPath> residuals;  ///< imported residual containers, keyed by dataset name
    std::vector<NamedPath> logliks;    ///< imported per-sample log-likelihoods (nats)
    std::filesystem::path model;       ///< empty: <out>/model
    std::filesystem::path out = "out";
    std::filesystem::path config_file;

    double eps = 1e-3;
    std::string lag_mode = "vertical";
    std::vector<std::size_t> max_lags{1200};
    std::vector<std::string> tests;
    bool tests_given = false;
    std::uint64_t seed = 0;

    bool score_train = false;
    std::size_t profile_lag = 0;
    std::size_t ci_trials = 1000;
    std::size_t bins = 0;

    std::string demo;
    std::size_t demo_d = 3072;
    std::size_t demo_n = 2000;
    std::size_t demo_k = 12;
    std::size_t demo_trials = 2000;
    std::size_t demo_max_lag = 20;

    [[nodiscard]] std::filesystem::path model_dir() const;
    [[nodiscard]] std::filesystem::path scores_dir() const { return out / "scores"; }
    /// Every effective value, for echoing into reports.
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> metadata() const;
};

void cmd_fit(const RunConfig& cfg, std::ostream& log);
void cmd_score(const RunConfig& cfg, std::ostream& log);
void cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_demo(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_sweep_l(const RunConfig& cfg, std::ostream& log);

/// Parses `args` (program name first), runs the verb and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oodwn::cli
