#include "crsense/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace crsense {

void SimConfig::validate() const {
    if (n_frames < 1)
        throw std::invalid_argument("sim: n_frames must be >= 1");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

bool PuTrajectory::busy_at_sample(int sample) const {
    // A toggle after sample j affects samples j+1 and later.
    int flips = 0;
    for (int j : toggles)
        if (j < sample) ++flips;
    return initial_busy != (flips % 2 == 1);
}

int occupied_samples(const PuTrajectory& pu, int first_sample, int last_sample) {
    if (last_sample < first_sample) return 0;
    int count = 0;
    bool busy = pu.initial_busy;
    int segment_start = first_sample;
    for (int j : pu.toggles) {
        const int boundary = j + 1;  // first sample with the flipped state
        if (boundary <= segment_start) {
            busy = !busy;
            continue;
        }
        if (boundary > last_sample) break;
        if (busy) count += boundary - segment_start;
        segment_start = boundary;
        busy = !busy;
    }
    if (busy) count += last_sample - segment_start + 1;
    return count;
}

int busy_count_at_sample(const FrameTrace& trace, int sample) {
    int count = 0;
    for (const auto& pu : trace.pus)
        if (pu.busy_at_sample(sample)) ++count;
    return count;
}

namespace {

// Sample index after which a state change at elapsed time tau lands:
// tau in (j*t_s, (j+1)*t_s] maps to j. Only valid for tau inside the
// window, so the caller range-checks tau before converting.
int toggle_sample(double tau, double t_s, int window_samples) {
    const int j = static_cast<int>(std::ceil(tau / t_s)) - 1;
    return std::clamp(j, 0, window_samples - 1);
}

}  // namespace

FrameTrace sample_pu_trajectory(const TrafficParams& params, const FrameGeometry& geom,
                                std::mt19937_64& rng, TrafficWindow window,
                                bool renewal_process) {
    const int window_samples =
        window == TrafficWindow::sensing_only ? geom.n_sense : geom.n_frame;
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    FrameTrace trace;
    trace.pus.resize(static_cast<std::size_t>(params.n_pu));
    for (auto& pu : trace.pus) {
        pu.initial_busy = unif(rng) < params.prob_busy();
        bool busy = pu.initial_busy;
        double elapsed = 0.0;
        do {
            const double mean = busy ? params.mean_busy_s : params.mean_idle_s;
            elapsed += std::exponential_distribution<double>(1.0 / mean)(rng);
            if (elapsed > window_samples * geom.sample_interval_s) break;
            pu.toggles.push_back(toggle_sample(elapsed, geom.sample_interval_s, window_samples));
            busy = !busy;
        } while (renewal_process);
    }
    return trace;
}

bool run_sensing(const FrameTrace& trace, const DetectorConfig& detector,
                 const FrameGeometry& geom, std::mt19937_64& rng, SimMode mode) {
    const int n_sense = geom.n_sense;
    double statistic = 0.0;
    if (mode == SimMode::statistic) {
        int occupied = 0;
        for (const auto& pu : trace.pus) occupied += occupied_samples(pu, 1, n_sense);
        const double mean = n_sense + occupied * detector.gamma_p;
        const double sd = 2.0 * std::sqrt(0.5 * n_sense + occupied * detector.gamma_p);
        statistic = std::normal_distribution<double>(mean, sd)(rng);
    } else {
        // Each busy PU adds a constant-magnitude sample of power gamma_p
        // with an independent random sign, so PU powers add incoherently
        // as the analytic model assumes.
        const double amplitude = std::sqrt(detector.gamma_p);
        std::normal_distribution<double> noise(0.0, 1.0);
        std::uniform_int_distribution<int> sign(0, 1);
        for (int s = 1; s <= n_sense; ++s) {
            double y = noise(rng);
            for (const auto& pu : trace.pus)
                if (pu.busy_at_sample(s)) y += sign(rng) ? amplitude : -amplitude;
            statistic += y * y;
        }
    }
    return statistic > detector.threshold;
}

CampaignResult run_campaign(const TrafficParams& params, const FrameGeometry& geom,
                            const DetectorConfig& detector, const ThroughputConfig& thr,
                            const SimConfig& sim, std::ostream* trace_dump) {
    params.validate();
    geom.validate();
    sim.validate();

    const double duty = static_cast<double>(geom.n_transmit()) / geom.n_frame;
    const long n_batches = std::min<long>(100, sim.n_frames);
    const long batch_len = (sim.n_frames + n_batches - 1) / n_batches;

    struct Tally {
        long busy_end = 0, idle_end = 0, detected = 0, false_alarm = 0;
        double cap_busy = 0.0, cap_idle = 0.0;
        long frames = 0;
    };
    std::vector<Tally> batches(static_cast<std::size_t>(n_batches));

    if (trace_dump)
        *trace_dump << "frame busy_end occupied_sense decision capacity\n";

    for (long f = 0; f < sim.n_frames; ++f) {
        std::mt19937_64 rng(
            splitmix64(sim.seed ^ (static_cast<std::uint64_t>(f) * 0x9E3779B97F4A7C15ULL)));
        const FrameTrace trace =
            sample_pu_trajectory(params, geom, rng, sim.window, sim.renewal_process);
        const bool declared_busy = run_sensing(trace, detector, geom, rng, sim.mode);

        const int busy_end = busy_count_at_sample(trace, geom.n_sense);
        double capacity = 0.0;
        if (geom.n_transmit() >= 1) {
            if (sim.window == TrafficWindow::sensing_only) {
                capacity = capacity_case1(busy_end, thr.gamma_s, detector.gamma_p);
            } else {
                int tx_occupied = 0;
                for (const auto& pu : trace.pus)
                    tx_occupied += occupied_samples(pu, geom.n_sense + 1, geom.n_frame);
                capacity = capacity_case2(tx_occupied, geom, thr.gamma_s, detector.gamma_p);
            }
        }

        Tally& t = batches[static_cast<std::size_t>(f / batch_len)];
        ++t.frames;
        if (busy_end >= 1) {
            ++t.busy_end;
            if (declared_busy) ++t.detected;
            t.cap_busy += capacity;
        } else {
            ++t.idle_end;
            if (declared_busy) ++t.false_alarm;
            t.cap_idle += capacity;
        }

        if (trace_dump) {
            int occupied = 0;
            for (const auto& pu : trace.pus) occupied += occupied_samples(pu, 1, geom.n_sense);
            *trace_dump << f << ' ' << busy_end << ' ' << occupied << ' '
                        << (declared_busy ? 1 : 0) << ' ' << capacity << '\n';
        }
    }

    auto throughput_of = [&](const Tally& t) {
        if (t.frames == 0) return 0.0;
        const double miss = t.busy_end > 0
                                ? 1.0 - static_cast<double>(t.detected) / t.busy_end
                                : 0.0;
        const double clear = t.idle_end > 0
                                 ? 1.0 - static_cast<double>(t.false_alarm) / t.idle_end
                                 : 0.0;
        return duty * (miss * t.cap_busy + clear * t.cap_idle) / t.frames;
    };

    Tally all;
    for (const auto& t : batches) {
        all.frames += t.frames;
        all.busy_end += t.busy_end;
        all.idle_end += t.idle_end;
        all.detected += t.detected;
        all.false_alarm += t.false_alarm;
        all.cap_busy += t.cap_busy;
        all.cap_idle += t.cap_idle;
    }

    CampaignResult res;
    res.n_frames = all.frames;
    res.n_busy_end = all.busy_end;
    res.n_idle_end = all.idle_end;
    res.n_detected = all.detected;
    res.n_false_alarm = all.false_alarm;
    res.pd_hat = all.busy_end > 0
                     ? static_cast<double>(all.detected) / all.busy_end
                     : std::nan("");
    res.pf_hat = all.idle_end > 0
                     ? static_cast<double>(all.false_alarm) / all.idle_end
                     : std::nan("");
    res.r_hat = throughput_of(all);

    auto wilson_halfwidth = [](long successes, long trials) {
        if (trials == 0) return std::nan("");
        const double z = 1.959963984540054;
        const double n = static_cast<double>(trials);
        const double p = static_cast<double>(successes) / n;
        const double denom = 1.0 + z * z / n;
        const double half =
            (z / denom) * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
        return half;
    };
    res.pd_ci95 = wilson_halfwidth(all.detected, all.busy_end);
    res.pf_ci95 = wilson_halfwidth(all.false_alarm, all.idle_end);

    // Batch-means spread of the composed throughput estimator.
    double mean_b = 0.0;
    long used = 0;
    std::vector<double> r_b;
    r_b.reserve(batches.size());
    for (const auto& t : batches)
        if (t.frames > 0) {
            r_b.push_back(throughput_of(t));
            mean_b += r_b.back();
            ++used;
        }
    if (used > 1) {
        mean_b /= used;
        double var = 0.0;
        for (double r : r_b) var += (r - mean_b) * (r - mean_b);
        var /= (used - 1);
        res.r_se = std::sqrt(var / used);
        res.r_ci95 = 1.959963984540054 * res.r_se;
    }
    return res;
}

}  // namespace crsense
