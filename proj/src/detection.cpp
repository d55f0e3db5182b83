#include "crsense/detection.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace crsense {

void DetectorConfig::validate() const {
    if (threshold < 0.0)
        throw std::invalid_argument("detector: threshold must be >= 0");
    if (gamma_p < 0.0)
        throw std::invalid_argument("detector: gamma_p must be >= 0");
    if (!(target_pd > 0.0 && target_pd < 1.0))
        throw std::invalid_argument("detector: target_pd must lie in (0, 1)");
}

double detect_prob_given_energy(double eta, int n_sense, int occupied, double gamma_p) {
    if (n_sense < 1)
        throw std::domain_error("detect_prob_given_energy: n_sense must be >= 1");
    if (occupied < 0)
        throw std::domain_error("detect_prob_given_energy: negative occupied-sample count");
    const double signal = occupied * gamma_p;
    const double num = eta - n_sense - signal;
    const double den = 2.0 * std::sqrt(2.0) * std::sqrt(0.5 * n_sense + signal);
    return 0.5 * std::erfc(num / den);
}

namespace {

// Expectation of the conditional exceedance probability over the weights
// selected by `busy_side`, normalized by their total probability.
double conditional_exceedance(const HypothesisSet& set, const DetectorConfig& detector,
                              bool busy_side) {
    const int n_sense = set.geom.n_sense;
    double prob_sum = 0.0;
    double acc = 0.0;
    for (const auto& w : set.weights) {
        if ((w.hyp.end_busy >= 1) != busy_side) continue;
        prob_sum += w.prob;
        if (w.prob == 0.0) continue;
        acc += w.prob * expect(w.sense_energy, [&](int n) {
                   return detect_prob_given_energy(detector.threshold, n_sense, n,
                                                   detector.gamma_p);
               });
    }
    if (prob_sum <= 0.0)
        throw std::runtime_error(busy_side
                                     ? "prob_detection: no busy-hypothesis mass"
                                     : "prob_false_alarm: no idle-hypothesis mass");
    return acc / prob_sum;
}

}  // namespace

double prob_detection(const HypothesisSet& set, const DetectorConfig& detector) {
    return conditional_exceedance(set, detector, true);
}

double prob_false_alarm(const HypothesisSet& set, const DetectorConfig& detector) {
    return conditional_exceedance(set, detector, false);
}

double solve_threshold(const HypothesisSet& set, double gamma_p, double target_pd, double tol) {
    if (!(target_pd > 0.0 && target_pd < 1.0))
        throw std::invalid_argument("solve_threshold: target_pd must lie in (0, 1)");
    if (!(tol > 0.0))
        throw std::invalid_argument("solve_threshold: tol must be > 0");

    const int n_sense = set.geom.n_sense;
    DetectorConfig det{0.0, gamma_p, target_pd};

    auto pd_at = [&](double eta) {
        det.threshold = eta;
        return prob_detection(set, det);
    };

    double lo = 0.0;
    double hi = n_sense * (1.0 + set.params.n_pu * gamma_p) + 20.0 * std::sqrt(2.0 * n_sense);
    const double pd_lo = pd_at(lo);
    const double pd_hi = pd_at(hi);
    if (pd_lo < target_pd || pd_hi > target_pd) {
        std::ostringstream msg;
        msg << "solve_threshold: target " << target_pd << " not bracketed: Pd(" << lo
            << ") = " << pd_lo << ", Pd(" << hi << ") = " << pd_hi;
        throw std::runtime_error(msg.str());
    }

    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double pd = pd_at(mid);
        if (std::abs(pd - target_pd) <= tol) return mid;
        if (pd > target_pd)
            lo = mid;  // detection still above target: raise the threshold
        else
            hi = mid;
    }
    std::ostringstream msg;
    msg << "solve_threshold: no convergence to " << target_pd << " within tol " << tol
        << " (bracket [" << lo << ", " << hi << "])";
    throw std::runtime_error(msg.str());
}

}  // namespace crsense
