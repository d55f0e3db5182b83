#include "crsense/throughput.hpp"

#include <cmath>
#include <stdexcept>

namespace crsense {

void ThroughputConfig::validate() const {
    if (!(gamma_s > 0.0))
        throw std::invalid_argument("throughput: gamma_s must be > 0");
}

double capacity_case1(int busy_count, double gamma_s, double gamma_p) {
    if (busy_count < 0)
        throw std::domain_error("capacity_case1: negative busy count");
    return std::log2(1.0 + gamma_s / (1.0 + busy_count * gamma_p));
}

double capacity_case2(int interference_offset, const FrameGeometry& geom, double gamma_s,
                      double gamma_p) {
    const int window = geom.n_transmit();
    if (window < 1)
        throw std::domain_error("capacity_case2: no transmission period (n_frame == n_sense)");
    if (interference_offset < 0)
        throw std::domain_error("capacity_case2: negative interference offset");
    const double fraction = static_cast<double>(interference_offset) / window;
    return std::log2(1.0 + gamma_s / (1.0 + fraction * gamma_p));
}

namespace {

double duty_cycle(const FrameGeometry& geom) {
    return static_cast<double>(geom.n_transmit()) / geom.n_frame;
}

}  // namespace

ThroughputParts throughput_case1(const HypothesisSet& set, double p_d, double p_f,
                                 const ThroughputConfig& cfg) {
    cfg.validate();
    const double duty = duty_cycle(set.geom);
    const double gamma_p = set.params.gamma_p;

    double busy_cap = 0.0;  // sum over i >= 1 of P(i busy at sensing end) * C(i)
    double p_idle = 0.0;
    for (const auto& w : set.weights) {
        if (w.hyp.end_busy >= 1)
            busy_cap += w.prob * capacity_case1(w.hyp.end_busy, cfg.gamma_s, gamma_p);
        else
            p_idle += w.prob;
    }

    ThroughputParts r;
    r.busy = (1.0 - p_d) * duty * busy_cap;
    r.idle = (1.0 - p_f) * duty * p_idle * capacity_case1(0, cfg.gamma_s, gamma_p);
    r.total = r.busy + r.idle;
    return r;
}

ThroughputParts throughput_case2(const HypothesisSet& set, double p_d, double p_f,
                                 const ThroughputConfig& cfg) {
    cfg.validate();
    if (!set.has_tx_interference)
        throw std::invalid_argument("throughput_case2: weights lack tx_interference");
    const double duty = duty_cycle(set.geom);
    const double gamma_p = set.params.gamma_p;

    double busy_cap = 0.0;
    double idle_cap = 0.0;
    for (const auto& w : set.weights) {
        if (w.prob == 0.0) continue;
        const double cap = w.prob * expect(w.tx_interference, [&](int offset) {
                               return capacity_case2(offset, set.geom, cfg.gamma_s, gamma_p);
                           });
        if (w.hyp.end_busy >= 1)
            busy_cap += cap;
        else
            idle_cap += cap;
    }

    ThroughputParts r;
    r.busy = (1.0 - p_d) * duty * busy_cap;
    r.idle = (1.0 - p_f) * duty * idle_cap;
    r.total = r.busy + r.idle;
    return r;
}

}  // namespace crsense
