#include "crsense/traffic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace crsense {

void TrafficParams::validate() const {
    if (!(mean_busy_s > 0.0) || !(mean_idle_s > 0.0))
        throw std::invalid_argument("traffic: holding-time means must be > 0");
    if (n_pu < 1)
        throw std::invalid_argument("traffic: n_pu must be >= 1");
    if (!(gamma_p > 0.0))
        throw std::invalid_argument("traffic: gamma_p must be > 0");
}

void FrameGeometry::validate() const {
    if (!(sample_interval_s > 0.0))
        throw std::invalid_argument("geometry: sample interval must be > 0");
    if (n_sense < 1)
        throw std::invalid_argument("geometry: n_sense must be >= 1");
    if (n_frame < n_sense)
        throw std::invalid_argument("geometry: n_frame must be >= n_sense");
}

namespace {

// 1 - exp(-x/theta), evaluated without cancellation for x/theta << 1.
double exponential_cdf(double x, double theta) {
    if (x < 0.0)
        throw std::domain_error("exponential cdf: negative argument");
    return -std::expm1(-x / theta);
}

// Mass of a flip between sample j and j+1 for holding-time mean theta:
// exp(-j*u) * (1 - exp(-u)) with u = t_s/theta (telescopes exactly).
double transition_pmf(double theta, const FrameGeometry& geom, int j) {
    if (j < 0 || j >= geom.n_frame)
        throw std::domain_error("transition pmf: sample index " + std::to_string(j) +
                                " outside [0, " + std::to_string(geom.n_frame - 1) + "]");
    const double u = geom.sample_interval_s / theta;
    return std::exp(-static_cast<double>(j) * u) * (-std::expm1(-u));
}

}  // namespace

double cdf_busy(const TrafficParams& params, double x) {
    return exponential_cdf(x, params.mean_busy_s);
}

double cdf_idle(const TrafficParams& params, double x) {
    return exponential_cdf(x, params.mean_idle_s);
}

double pmf_busy_to_idle(const TrafficParams& params, const FrameGeometry& geom, int j) {
    return transition_pmf(params.mean_busy_s, geom, j);
}

double pmf_idle_to_busy(const TrafficParams& params, const FrameGeometry& geom, int j) {
    return transition_pmf(params.mean_idle_s, geom, j);
}

double binomial_coefficient(int n, int k) {
    if (k < 0 || k > n)
        throw std::domain_error("binomial coefficient: k outside [0, n]");
    if (k > n - k) k = n - k;
    double c = 1.0;
    for (int t = 0; t < k; ++t)
        c = c * static_cast<double>(n - t) / static_cast<double>(t + 1);
    return std::round(c);
}

double prior_busy_count(const TrafficParams& params, int m) {
    if (m < 0 || m > params.n_pu)
        throw std::domain_error("prior_busy_count: m outside [0, N]");
    return binomial_coefficient(params.n_pu, m) *
           std::pow(params.prob_busy(), m) *
           std::pow(params.prob_idle(), params.n_pu - m);
}

}  // namespace crsense
