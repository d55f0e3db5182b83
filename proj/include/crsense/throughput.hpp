#ifndef CRSENSE_THROUGHPUT_HPP
#define CRSENSE_THROUGHPUT_HPP

#include "crsense/hypothesis.hpp"

namespace crsense {

struct ThroughputConfig {
    double gamma_s = 0.0;  // secondary-link linear SNR

    void validate() const;  // throws std::invalid_argument
};

// Average achievable secondary throughput, split by the true channel state
// at the end of sensing. Units: bits/s/Hz, duty-cycle weighted.
struct ThroughputParts {
    double total = 0.0;
    double busy  = 0.0;  // accrues only on miss-detection
    double idle  = 0.0;
};

// Capacity with `busy_count` PUs interfering for the whole transmission
// period: log2(1 + gamma_s / (1 + busy_count * gamma_p)).
double capacity_case1(int busy_count, double gamma_s, double gamma_p);

// Capacity when PUs occupy `interference_offset` transmission sample-slots
// in total out of n_frame - n_sense:
// log2(1 + gamma_s / (1 + offset/(S-L) * gamma_p)).
double capacity_case2(int interference_offset, const FrameGeometry& geom, double gamma_s,
                      double gamma_p);

// Throughput for the sensing-only-transitions model: capacity depends only
// on the busy count at the end of sensing.
ThroughputParts throughput_case1(const HypothesisSet& set, double p_d, double p_f,
                                 const ThroughputConfig& cfg);

// Throughput for the full-frame-transitions model: capacity is averaged
// over each weight's tx_interference distribution.
ThroughputParts throughput_case2(const HypothesisSet& set, double p_d, double p_f,
                                 const ThroughputConfig& cfg);

}  // namespace crsense

#endif
