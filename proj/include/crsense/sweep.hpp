#ifndef CRSENSE_SWEEP_HPP
#define CRSENSE_SWEEP_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crsense/montecarlo.hpp"
#include "crsense/traffic.hpp"

namespace crsense {

// Configuration-file or CLI problem; carries a user-facing message with a
// file:line prefix where one applies.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Values read from the structured-text config file. SNRs are in dB and
// times in seconds at this boundary; conversions happen once, at ingestion.
struct FileConfig {
    double theta_alpha_s = 0.0;
    double theta_beta_s = 0.0;
    int n_pu = 0;
    double t_s_s = 0.0;
    double t_f_s = 0.0;
    double gamma_p_db = 0.0;
    double gamma_s_db = 0.0;
    double target_pd = 0.0;
    double solver_tol = 0.0;
};

FileConfig parse_config_file(const std::string& path);  // throws ConfigError

struct SweepConfig {
    TrafficParams traffic;    // gamma_p already linear
    double sample_interval_s = 0.0;
    int n_frame = 0;          // S
    double gamma_s = 0.0;     // linear
    double target_pd = 0.0;
    double solver_tol = 0.0;

    std::vector<int> grid;    // strictly increasing sensing-sample counts, all < S
    bool run_case1 = true;
    bool run_case2 = true;

    bool mc = false;
    long mc_frames = 0;
    SimMode mc_mode = SimMode::statistic;
    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

SweepConfig make_sweep_config(const FileConfig& file);

// One sweep row. Quantities not computed (disabled case, MC off) are NaN.
struct TradeoffPoint {
    int n_sense = 0;
    double sensing_time_ms = 0.0;
    double threshold = 0.0;
    double pd = 0.0;
    double pf = 0.0;
    double r_case1 = 0.0;
    double r_case2 = 0.0;

    double pd_mc = 0.0, pf_mc = 0.0, r1_mc = 0.0, r2_mc = 0.0;
    double pd_mc_ci95 = 0.0, pf_mc_ci95 = 0.0, r1_mc_ci95 = 0.0, r2_mc_ci95 = 0.0;

    std::string error;  // non-empty when the point failed; other fields invalid
};

// Full analytic (plus optional Monte Carlo) evaluation of one sensing
// duration. Deterministic for fixed config and seed.
TradeoffPoint evaluate_point(int n_sense, const SweepConfig& cfg);

// Evaluates the whole grid (points run concurrently, results in grid order).
std::vector<TradeoffPoint> run_sweep(const SweepConfig& cfg);

struct TradeoffOptimum {
    int n_sense = 0;
    double sensing_time_ms = 0.0;
    double r = 0.0;
};

struct SweepOptima {
    std::optional<TradeoffOptimum> case1;
    std::optional<TradeoffOptimum> case2;
};

// Grid argmax of throughput per case; ties break toward smaller n_sense.
SweepOptima find_optimum(const std::vector<TradeoffPoint>& points);

// Frozen CSV schema (one row per successful point).
extern const char* kTradeoffCsvHeader;
std::string tradeoff_csv(const std::vector<TradeoffPoint>& points);

std::string summary_json(const SweepConfig& cfg, const std::vector<TradeoffPoint>& points,
                         const SweepOptima& optima);

// The crsense-sweep entry point; returns the process exit code
// (0 ok, 2 config problem, 1 runtime failure).
int run_cli(const std::vector<std::string>& args);

}  // namespace crsense

#endif
