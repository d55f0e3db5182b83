#ifndef CRSENSE_HYPOTHESIS_HPP
#define CRSENSE_HYPOTHESIS_HPP

#include <utility>
#include <vector>

#include "crsense/traffic.hpp"

namespace crsense {

// Discrete distribution over a contiguous range of integer offsets
// (occupied-sample counts or interference numerators). Masses are plain
// weights; total() need not be 1.
struct OffsetDistribution {
    int min_offset = 0;
    std::vector<double> mass;  // mass[t] is the weight at offset min_offset + t

    int max_offset() const { return min_offset + static_cast<int>(mass.size()) - 1; }
    double total() const;
    double at(int offset) const;  // 0 outside the support

    // Unit point mass at the given offset.
    static OffsetDistribution point(int offset, double weight = 1.0);
};

// mass_c(s) = sum_t mass_a(t) * mass_b(s - t)
OffsetDistribution convolve(const OffsetDistribution& a, const OffsetDistribution& b);

// n-fold self-convolution; n = 0 gives the unit mass at offset 0.
OffsetDistribution self_convolve(const OffsetDistribution& d, int n);

// Same distribution translated by delta.
OffsetDistribution shifted(const OffsetDistribution& d, int delta);

// Scales masses so total() == 1. A zero-total distribution is left as is.
void normalize(OffsetDistribution& d);

// sum over the support of mass(offset) * f(offset)
template <class F>
double expect(const OffsetDistribution& d, F&& f) {
    double acc = 0.0;
    for (std::size_t t = 0; t < d.mass.size(); ++t)
        acc += d.mass[t] * f(d.min_offset + static_cast<int>(t));
    return acc;
}

// One occupancy hypothesis: start_busy PUs busy at frame start, end_busy
// busy at the end of the sensing period, stay_busy of them busy throughout
// sensing.
struct OccupancyHypothesis {
    int end_busy   = 0;  // i
    int start_busy = 0;  // m
    int stay_busy  = 0;  // k
};

struct HypothesisWeight {
    OccupancyHypothesis hyp;
    double prob = 0.0;
    // Distribution of the total PU-occupied sensing-sample count, normalized
    // per hypothesis (total 1 whenever prob > 0).
    OffsetDistribution sense_energy;
    // Full-frame grids only: distribution of the transmission-period
    // interference numerator; the fraction of one PU-period of interference
    // is offset / (n_frame - n_sense). Normalized like sense_energy.
    OffsetDistribution tx_interference;
};

// The full (i, m, k) grid for one parameter point, with the inputs it was
// built from.
struct HypothesisSet {
    TrafficParams params;
    FrameGeometry geom;
    bool has_tx_interference = false;
    std::vector<HypothesisWeight> weights;
};

// Feasible range of stay_busy counts for a (start_busy, end_busy) pair.
std::pair<int, int> k_range(int n_pu, int start_busy, int end_busy);

// Number of PU-identity assignments consistent with the hypothesis: which
// stay_busy of the start_busy stay, and which end_busy - stay_busy of the
// idle PUs arrive.
double combinatorial_factor(int n_pu, int start_busy, int end_busy, int stay_busy);

// Occupied-sample counts contributed by one PU arriving within the first
// `horizon` samples: mass(horizon - a) = pmf_idle_to_busy(a). The total is
// cdf_idle(horizon * t_s).
OffsetDistribution arrival_offset_dist(const TrafficParams& params,
                                       const FrameGeometry& geom, int horizon);

// Occupied-sample counts contributed by one PU departing within the first
// `horizon` samples: mass(d) = pmf_busy_to_idle(d).
OffsetDistribution departure_offset_dist(const TrafficParams& params,
                                         const FrameGeometry& geom, int horizon);

// Hypothesis grid when PU state changes are confined to the sensing period.
HypothesisSet hypothesis_weights_case1(const TrafficParams& params, const FrameGeometry& geom);

// Hypothesis grid when PU state changes may happen anywhere in the frame;
// every weight additionally carries tx_interference. Per-hypothesis probs
// marginalize to the sensing-only values. Requires n_frame > n_sense.
HypothesisSet hypothesis_weights_case2(const TrafficParams& params, const FrameGeometry& geom);

struct HypothesisAggregate {
    std::vector<double> p_end_busy;  // index i: probability of i PUs busy at sensing end
    double p_busy = 0.0;             // sum over i >= 1
    double p_idle = 0.0;             // i == 0
};

HypothesisAggregate hypothesis_prob_aggregate(const HypothesisSet& set);

}  // namespace crsense

#endif
