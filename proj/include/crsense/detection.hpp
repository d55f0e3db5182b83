#ifndef CRSENSE_DETECTION_HPP
#define CRSENSE_DETECTION_HPP

#include "crsense/hypothesis.hpp"

namespace crsense {

// Energy detector operating point. The noise variance is normalized to 1,
// so the threshold is in units of summed squared samples.
struct DetectorConfig {
    double threshold = 0.0;  // eta
    double gamma_p   = 0.0;  // per-PU linear SNR
    double target_pd = 0.0;  // used by the threshold solver

    void validate() const;  // throws std::invalid_argument
};

// Probability that the summed energy of n_sense samples exceeds eta when
// PUs occupy `occupied` sample slots in total (Gaussian approximation of
// the detector statistic):
//   0.5 * erfc((eta - L - n*gamma_p) / (2*sqrt(2) * sqrt(L/2 + n*gamma_p)))
double detect_prob_given_energy(double eta, int n_sense, int occupied, double gamma_p);

// Unconditional detection probability: expectation of the conditional
// detection probability over the busy-at-sensing-end hypotheses, normalized
// by their total probability.
double prob_detection(const HypothesisSet& set, const DetectorConfig& detector);

// Same expectation restricted to the idle-at-sensing-end hypotheses.
double prob_false_alarm(const HypothesisSet& set, const DetectorConfig& detector);

// Smallest-false-alarm threshold meeting the target detection probability.
// Both curves fall strictly in eta, so this is the eta with
// |prob_detection(eta) - target_pd| <= tol, found by bisection.
double solve_threshold(const HypothesisSet& set, double gamma_p, double target_pd, double tol);

}  // namespace crsense

#endif
