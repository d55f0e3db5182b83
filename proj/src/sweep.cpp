#include "crsense/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "crsense/detection.hpp"
#include "crsense/throughput.hpp"
#include "crsense/version.hpp"

#include "json.hpp"

namespace crsense {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double_field(const std::string& where, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError(where + ": not a number: '" + value + "'");
    }
    if (used != value.size())
        throw ConfigError(where + ": trailing characters in number: '" + value + "'");
    return v;
}

long parse_int_field(const std::string& where, const std::string& value) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(value, &used);
    } catch (const std::exception&) {
        throw ConfigError(where + ": not an integer: '" + value + "'");
    }
    if (used != value.size())
        throw ConfigError(where + ": trailing characters in integer: '" + value + "'");
    return v;
}

}  // namespace

FileConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");

    FileConfig cfg;
    bool seen[9] = {};
    const char* names[9] = {"theta_alpha_s", "theta_beta_s", "n_pu",
                            "t_s_s",         "t_f_s",        "gamma_p_db",
                            "gamma_s_db",    "target_pd",    "solver_tol"};

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path + ":" + std::to_string(lineno);
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value', got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (value.empty()) throw ConfigError(where + ": empty value for key '" + key + "'");

        int idx = -1;
        for (int t = 0; t < 9; ++t)
            if (key == names[t]) idx = t;
        if (idx < 0) throw ConfigError(where + ": unknown key '" + key + "'");
        if (seen[idx]) throw ConfigError(where + ": duplicate key '" + key + "'");
        seen[idx] = true;

        switch (idx) {
            case 0: cfg.theta_alpha_s = parse_double_field(where, value); break;
            case 1: cfg.theta_beta_s = parse_double_field(where, value); break;
            case 2: cfg.n_pu = static_cast<int>(parse_int_field(where, value)); break;
            case 3: cfg.t_s_s = parse_double_field(where, value); break;
            case 4: cfg.t_f_s = parse_double_field(where, value); break;
            case 5: cfg.gamma_p_db = parse_double_field(where, value); break;
            case 6: cfg.gamma_s_db = parse_double_field(where, value); break;
            case 7: cfg.target_pd = parse_double_field(where, value); break;
            case 8: cfg.solver_tol = parse_double_field(where, value); break;
        }
    }
    for (int t = 0; t < 9; ++t)
        if (!seen[t])
            throw ConfigError("config '" + path + "': missing key '" + std::string(names[t]) +
                              "'");
    return cfg;
}

SweepConfig make_sweep_config(const FileConfig& file) {
    SweepConfig cfg;
    cfg.traffic.mean_busy_s = file.theta_alpha_s;
    cfg.traffic.mean_idle_s = file.theta_beta_s;
    cfg.traffic.n_pu = file.n_pu;
    cfg.traffic.gamma_p = std::pow(10.0, file.gamma_p_db / 10.0);
    cfg.sample_interval_s = file.t_s_s;
    cfg.gamma_s = std::pow(10.0, file.gamma_s_db / 10.0);
    cfg.target_pd = file.target_pd;
    cfg.solver_tol = file.solver_tol;

    if (!(file.t_s_s > 0.0)) throw ConfigError("config: t_s_s must be > 0");
    const double ratio = file.t_f_s / file.t_s_s;
    if (!(ratio >= 1.0 && ratio <= 1e7))
        throw ConfigError("config: t_f_s / t_s_s must lie in [1, 1e7]");
    cfg.n_frame = static_cast<int>(std::llround(ratio));
    if (std::abs(ratio - cfg.n_frame) > 1e-6)
        throw ConfigError("config: t_f_s must be a positive integer multiple of t_s_s");
    return cfg;
}

void SweepConfig::validate() const {
    try {
        traffic.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!(sample_interval_s > 0.0)) throw ConfigError("config: t_s_s must be > 0");
    if (n_frame < 2) throw ConfigError("config: frame must span at least 2 samples");
    if (!(gamma_s > 0.0)) throw ConfigError("config: gamma_s must be > 0");
    if (!(target_pd > 0.0 && target_pd < 1.0))
        throw ConfigError("config: target_pd must lie in (0, 1)");
    if (!(solver_tol > 0.0)) throw ConfigError("config: solver_tol must be > 0");
    if (grid.empty()) throw ConfigError("config: empty sensing-sample grid");
    int prev = 0;
    for (int L : grid) {
        if (L <= prev) throw ConfigError("config: grid must be strictly increasing");
        if (L >= n_frame)
            throw ConfigError("config: grid value " + std::to_string(L) +
                              " must be < frame samples " + std::to_string(n_frame));
        prev = L;
    }
    if (mc && mc_frames < 1) throw ConfigError("config: --frames must be >= 1 with --mc on");
}

TradeoffPoint evaluate_point(int n_sense, const SweepConfig& cfg) {
    const FrameGeometry geom{cfg.sample_interval_s, n_sense, cfg.n_frame};
    const ThroughputConfig thr{cfg.gamma_s};
    const double nan = std::nan("");

    TradeoffPoint pt;
    pt.n_sense = n_sense;
    pt.sensing_time_ms = n_sense * cfg.sample_interval_s * 1e3;
    pt.r_case1 = pt.r_case2 = nan;
    pt.pd_mc = pt.pf_mc = pt.r1_mc = pt.r2_mc = nan;
    pt.pd_mc_ci95 = pt.pf_mc_ci95 = pt.r1_mc_ci95 = pt.r2_mc_ci95 = nan;

    const HypothesisSet set1 = hypothesis_weights_case1(cfg.traffic, geom);
    pt.threshold = solve_threshold(set1, cfg.traffic.gamma_p, cfg.target_pd, cfg.solver_tol);

    DetectorConfig det{pt.threshold, cfg.traffic.gamma_p, cfg.target_pd};
    pt.pd = prob_detection(set1, det);
    pt.pf = prob_false_alarm(set1, det);

    if (cfg.run_case1) pt.r_case1 = throughput_case1(set1, pt.pd, pt.pf, thr).total;
    if (cfg.run_case2) {
        const HypothesisSet set2 = hypothesis_weights_case2(cfg.traffic, geom);
        pt.r_case2 = throughput_case2(set2, pt.pd, pt.pf, thr).total;
    }

    if (cfg.mc) {
        auto campaign_for = [&](TrafficWindow window, int tag) {
            SimConfig sim;
            sim.n_frames = cfg.mc_frames;
            sim.mode = cfg.mc_mode;
            sim.window = window;
            sim.seed = splitmix64(cfg.seed ^
                                  (static_cast<std::uint64_t>(n_sense) * 2654435761ULL) ^
                                  static_cast<std::uint64_t>(tag));
            return run_campaign(cfg.traffic, geom, det, thr, sim);
        };
        bool have_probs = false;
        if (cfg.run_case1) {
            const CampaignResult mc = campaign_for(TrafficWindow::sensing_only, 1);
            pt.r1_mc = mc.r_hat;
            pt.r1_mc_ci95 = mc.r_ci95;
            pt.pd_mc = mc.pd_hat;
            pt.pf_mc = mc.pf_hat;
            pt.pd_mc_ci95 = mc.pd_ci95;
            pt.pf_mc_ci95 = mc.pf_ci95;
            have_probs = true;
        }
        if (cfg.run_case2) {
            const CampaignResult mc = campaign_for(TrafficWindow::full_frame, 2);
            pt.r2_mc = mc.r_hat;
            pt.r2_mc_ci95 = mc.r_ci95;
            if (!have_probs) {
                pt.pd_mc = mc.pd_hat;
                pt.pf_mc = mc.pf_hat;
                pt.pd_mc_ci95 = mc.pd_ci95;
                pt.pf_mc_ci95 = mc.pf_ci95;
            }
        }
    }
    return pt;
}

std::vector<TradeoffPoint> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<TradeoffPoint> points(cfg.grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < cfg.grid.size(); t = next++) {
            const int L = cfg.grid[t];
            try {
                points[t] = evaluate_point(L, cfg);
            } catch (const std::exception& e) {
                points[t].n_sense = L;
                points[t].sensing_time_ms = L * cfg.sample_interval_s * 1e3;
                points[t].error = e.what();
            }
        }
    };
    const std::size_t n_workers = std::min<std::size_t>(
        cfg.grid.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
    return points;
}

SweepOptima find_optimum(const std::vector<TradeoffPoint>& points) {
    if (points.empty()) throw std::domain_error("find_optimum: empty point list");
    SweepOptima opt;
    auto consider = [](std::optional<TradeoffOptimum>& best, const TradeoffPoint& pt,
                       double r) {
        if (std::isnan(r)) return;
        if (!best || r > best->r) best = TradeoffOptimum{pt.n_sense, pt.sensing_time_ms, r};
    };
    for (const auto& pt : points) {
        if (!pt.error.empty()) continue;
        consider(opt.case1, pt, pt.r_case1);
        consider(opt.case2, pt, pt.r_case2);
    }
    return opt;
}

const char* kTradeoffCsvHeader =
    "L,t_s_ms,eta,pd,pf,r_case1,r_case2,pd_mc,pf_mc,r1_mc,r2_mc,"
    "pd_mc_ci95,pf_mc_ci95,r1_mc_ci95,r2_mc_ci95";

namespace {

std::string csv_num(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string tradeoff_csv(const std::vector<TradeoffPoint>& points) {
    std::ostringstream out;
    out << kTradeoffCsvHeader << '\n';
    for (const auto& pt : points) {
        if (!pt.error.empty()) continue;
        out << pt.n_sense << ',' << csv_num(pt.sensing_time_ms) << ',' << csv_num(pt.threshold)
            << ',' << csv_num(pt.pd) << ',' << csv_num(pt.pf) << ',' << csv_num(pt.r_case1)
            << ',' << csv_num(pt.r_case2) << ',' << csv_num(pt.pd_mc) << ','
            << csv_num(pt.pf_mc) << ',' << csv_num(pt.r1_mc) << ',' << csv_num(pt.r2_mc)
            << ',' << csv_num(pt.pd_mc_ci95) << ',' << csv_num(pt.pf_mc_ci95) << ','
            << csv_num(pt.r1_mc_ci95) << ',' << csv_num(pt.r2_mc_ci95) << '\n';
    }
    return out.str();
}

std::string summary_json(const SweepConfig& cfg, const std::vector<TradeoffPoint>& points,
                         const SweepOptima& optima) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["tool"] = "crsense-sweep";
    j["tool_version"] = kVersion;
    j["seed"] = cfg.seed;
    j["parameters"] = {
        {"theta_alpha_s", cfg.traffic.mean_busy_s},
        {"theta_beta_s", cfg.traffic.mean_idle_s},
        {"n_pu", cfg.traffic.n_pu},
        {"t_s_s", cfg.sample_interval_s},
        {"n_frame_samples", cfg.n_frame},
        {"gamma_p_linear", cfg.traffic.gamma_p},
        {"gamma_s_linear", cfg.gamma_s},
        {"target_pd", cfg.target_pd},
        {"solver_tol", cfg.solver_tol},
    };
    j["grid"] = cfg.grid;
    nlohmann::json cases = nlohmann::json::array();
    if (cfg.run_case1) cases.push_back(1);
    if (cfg.run_case2) cases.push_back(2);
    j["cases"] = cases;
    j["mc"] = {{"enabled", cfg.mc},
               {"frames", cfg.mc_frames},
               {"mode", cfg.mc_mode == SimMode::statistic ? "statistic" : "sample"}};

    auto opt_json = [](const std::optional<TradeoffOptimum>& o) -> nlohmann::json {
        if (!o) return nullptr;
        return {{"L", o->n_sense}, {"t_s_ms", o->sensing_time_ms}, {"r", o->r}};
    };
    j["optima"] = {{"case1", opt_json(optima.case1)}, {"case2", opt_json(optima.case2)}};

    nlohmann::json errors = nlohmann::json::array();
    for (const auto& pt : points)
        if (!pt.error.empty()) errors.push_back({{"L", pt.n_sense}, {"message", pt.error}});
    j["errors"] = errors;
    return j.dump(2) + "\n";
}

}  // namespace crsense
