#ifndef CRSENSE_TRAFFIC_HPP
#define CRSENSE_TRAFFIC_HPP

namespace crsense {

// On/off primary-user traffic environment. Holding times of the busy and
// idle states are exponential with the given means (seconds).
struct TrafficParams {
    double mean_busy_s  = 0.0;  // mean busy holding time
    double mean_idle_s  = 0.0;  // mean idle holding time
    int    n_pu         = 0;    // number of primary users
    double gamma_p      = 0.0;  // per-PU linear SNR at the secondary receiver

    // Stationary probabilities of one PU being busy / idle.
    double prob_busy() const { return mean_busy_s / (mean_busy_s + mean_idle_s); }
    double prob_idle() const { return mean_idle_s / (mean_busy_s + mean_idle_s); }

    void validate() const;  // throws std::invalid_argument
};

// Time discretization of one secondary-user frame: n_sense sensing samples
// followed by a transmission period, n_frame samples in total.
struct FrameGeometry {
    double sample_interval_s = 0.0;
    int    n_sense           = 0;
    int    n_frame           = 0;

    double sensing_time_s() const { return n_sense * sample_interval_s; }
    double frame_time_s()   const { return n_frame * sample_interval_s; }
    int    n_transmit()     const { return n_frame - n_sense; }

    void validate() const;  // throws std::invalid_argument
};

// Cumulative distribution of a busy (resp. idle) holding time at x seconds.
double cdf_busy(const TrafficParams& params, double x);
double cdf_idle(const TrafficParams& params, double x);

// Probability that a PU busy (resp. idle) at the window start flips state
// between sample j and sample j+1. Valid for 0 <= j < n_frame; the caller
// restricts j to its own window (sensing or frame).
double pmf_busy_to_idle(const TrafficParams& params, const FrameGeometry& geom, int j);
double pmf_idle_to_busy(const TrafficParams& params, const FrameGeometry& geom, int j);

// Stationary probability that exactly m of the n_pu PUs are busy.
double prior_busy_count(const TrafficParams& params, int m);

// Exact binomial coefficient as a double (small arguments only).
double binomial_coefficient(int n, int k);

}  // namespace crsense

#endif
