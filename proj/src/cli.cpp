#include <filesystem>
#include <fstream>
#include <iostream>

#include "crsense/sweep.hpp"
#include "crsense/version.hpp"

#include "CLI11.hpp"

namespace crsense {

namespace {

std::vector<int> parse_grid_spec(const std::string& spec) {
    int start = 0, stop = 0, step = 0;
    char extra = 0;
    if (std::sscanf(spec.c_str(), "%d:%d:%d%c", &start, &stop, &step, &extra) != 3)
        throw ConfigError("--sweep-ls expects start:stop:step, got '" + spec + "'");
    if (start < 1 || step < 1 || stop < start || stop > 10000000)
        throw ConfigError("--sweep-ls needs 1 <= start <= stop <= 1e7 and step >= 1");
    std::vector<int> grid;
    for (int v = start; v <= stop; v += step) grid.push_back(v);
    return grid;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Sensing-throughput tradeoff sweep for an energy-detecting "
                 "secondary user under on/off multi-PU traffic",
                 "crsense-sweep"};
    app.set_version_flag("--version", kVersion);

    std::string config_path;
    std::string grid_spec = "10:290:10";
    std::string case_sel = "both";
    std::string mc_sel = "off";
    std::string mc_mode_sel = "stat";
    long frames = 100000;
    std::uint64_t seed = 1;
    std::string out_dir = ".";

    app.add_option("--config", config_path, "Path to the parameter config file")->required();
    app.add_option("--sweep-ls", grid_spec, "Sensing-sample grid start:stop:step");
    app.add_option("--case", case_sel, "Traffic model to evaluate")
        ->check(CLI::IsMember({"1", "2", "both"}));
    app.add_option("--mc", mc_sel, "Run Monte Carlo validation per point")
        ->check(CLI::IsMember({"on", "off"}));
    app.add_option("--mc-mode", mc_mode_sel, "Monte Carlo fidelity")
        ->check(CLI::IsMember({"stat", "sample"}));
    app.add_option("--frames", frames, "Monte Carlo frames per point");
    app.add_option("--seed", seed, "Master RNG seed");
    app.add_option("--out", out_dir, "Output directory for tradeoff.csv / summary.json");

    // CLI11 wants argv-style reversed arguments.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        SweepConfig cfg = make_sweep_config(parse_config_file(config_path));
        cfg.grid = parse_grid_spec(grid_spec);
        cfg.run_case1 = case_sel != "2";
        cfg.run_case2 = case_sel != "1";
        cfg.mc = mc_sel == "on";
        cfg.mc_frames = frames;
        cfg.mc_mode = mc_mode_sel == "stat" ? SimMode::statistic : SimMode::sample;
        cfg.seed = seed;
        cfg.validate();

        const std::vector<TradeoffPoint> points = run_sweep(cfg);
        const SweepOptima optima = find_optimum(points);

        std::filesystem::create_directories(out_dir);
        const auto dir = std::filesystem::path(out_dir);
        write_file(dir / "tradeoff.csv", tradeoff_csv(points));
        write_file(dir / "summary.json", summary_json(cfg, points, optima));

        auto print_opt = [](const char* name, const std::optional<TradeoffOptimum>& o) {
            if (!o) return;
            std::printf("%s optimum: L = %d (T_s = %g ms), R = %.6f bits/s/Hz\n", name,
                        o->n_sense, o->sensing_time_ms, o->r);
        };
        print_opt("case 1", optima.case1);
        print_opt("case 2", optima.case2);
        for (const auto& pt : points)
            if (!pt.error.empty())
                std::fprintf(stderr, "warning: L = %d failed: %s\n", pt.n_sense,
                             pt.error.c_str());
        return 0;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace crsense
