#ifndef CRSENSE_MONTECARLO_HPP
#define CRSENSE_MONTECARLO_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "crsense/detection.hpp"
#include "crsense/throughput.hpp"
#include "crsense/traffic.hpp"

namespace crsense {

enum class SimMode {
    statistic,  // draw the detector statistic from its Gaussian law
    sample      // synthesize every sensing sample
};

enum class TrafficWindow {
    sensing_only,  // PU state changes confined to the sensing period
    full_frame     // PU state changes anywhere in the frame
};

struct SimConfig {
    long n_frames = 0;
    std::uint64_t seed = 0;
    SimMode mode = SimMode::statistic;
    TrafficWindow window = TrafficWindow::sensing_only;
    // Simulate the true alternating renewal process instead of freezing the
    // state after the first toggle. Sensitivity analysis only.
    bool renewal_process = false;

    void validate() const;  // throws std::invalid_argument
};

// One PU over one frame: `toggles` holds the sample indices after which the
// state flips (empty or a single entry unless renewal_process is set).
struct PuTrajectory {
    bool initial_busy = false;
    std::vector<int> toggles;

    // State at the given 1-based sample index.
    bool busy_at_sample(int sample) const;
};

struct FrameTrace {
    std::vector<PuTrajectory> pus;
};

int occupied_samples(const PuTrajectory& pu, int first_sample, int last_sample);
int busy_count_at_sample(const FrameTrace& trace, int sample);

// Draws one frame of PU trajectories: stationary initial states, a single
// exponential holding time per PU, one toggle if it ends inside the window
// (the sensing period or the whole frame).
FrameTrace sample_pu_trajectory(const TrafficParams& params, const FrameGeometry& geom,
                                std::mt19937_64& rng, TrafficWindow window,
                                bool renewal_process = false);

// Energy-detector decision for one frame; true means "busy".
bool run_sensing(const FrameTrace& trace, const DetectorConfig& detector,
                 const FrameGeometry& geom, std::mt19937_64& rng, SimMode mode);

struct CampaignResult {
    long n_frames = 0;
    long n_busy_end = 0;     // frames with >= 1 PU busy at sensing end
    long n_idle_end = 0;
    long n_detected = 0;     // busy-end frames declared busy
    long n_false_alarm = 0;  // idle-end frames declared busy

    double pd_hat = 0.0;
    double pf_hat = 0.0;
    double r_hat = 0.0;  // bits/s/Hz, duty-cycle weighted

    double pd_ci95 = 0.0;  // Wilson 95% half-widths
    double pf_ci95 = 0.0;
    double r_se = 0.0;  // batch-means standard error
    double r_ci95 = 0.0;
};

// Runs n_frames independent frames with per-frame RNG substreams derived
// from the seed (bit-identical results for a given seed). The throughput
// estimate composes the empirical miss/false-alarm rates with the empirical
// per-state capacity averages, the same decomposition the analytic
// expression uses. If trace_dump is non-null, one line per frame is written:
//   frame  busy_end  occupied_sense  decision  capacity
CampaignResult run_campaign(const TrafficParams& params, const FrameGeometry& geom,
                            const DetectorConfig& detector, const ThroughputConfig& thr,
                            const SimConfig& sim, std::ostream* trace_dump = nullptr);

// Seed expander for per-frame substreams.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace crsense

#endif
