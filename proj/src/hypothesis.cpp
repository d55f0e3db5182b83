#include "crsense/hypothesis.hpp"

#include <cmath>
#include <stdexcept>

namespace crsense {

double OffsetDistribution::total() const {
    double acc = 0.0;
    for (double w : mass) acc += w;
    return acc;
}

double OffsetDistribution::at(int offset) const {
    const int t = offset - min_offset;
    if (t < 0 || t >= static_cast<int>(mass.size())) return 0.0;
    return mass[static_cast<std::size_t>(t)];
}

OffsetDistribution OffsetDistribution::point(int offset, double weight) {
    return {offset, {weight}};
}

OffsetDistribution convolve(const OffsetDistribution& a, const OffsetDistribution& b) {
    OffsetDistribution c;
    c.min_offset = a.min_offset + b.min_offset;
    c.mass.assign(a.mass.size() + b.mass.size() - 1, 0.0);
    for (std::size_t s = 0; s < a.mass.size(); ++s) {
        const double wa = a.mass[s];
        if (wa == 0.0) continue;
        for (std::size_t t = 0; t < b.mass.size(); ++t)
            c.mass[s + t] += wa * b.mass[t];
    }
    return c;
}

OffsetDistribution self_convolve(const OffsetDistribution& d, int n) {
    if (n < 0) throw std::domain_error("self_convolve: negative fold count");
    OffsetDistribution acc = OffsetDistribution::point(0);
    for (int r = 0; r < n; ++r) acc = convolve(acc, d);
    return acc;
}

OffsetDistribution shifted(const OffsetDistribution& d, int delta) {
    OffsetDistribution s = d;
    s.min_offset += delta;
    return s;
}

void normalize(OffsetDistribution& d) {
    const double t = d.total();
    if (t == 0.0) return;
    for (double& w : d.mass) w /= t;
}

std::pair<int, int> k_range(int n_pu, int start_busy, int end_busy) {
    if (start_busy < 0 || start_busy > n_pu || end_busy < 0 || end_busy > n_pu)
        throw std::domain_error("k_range: busy counts outside [0, N]");
    const int lo = std::max(0, start_busy + end_busy - n_pu);
    const int hi = std::min(start_busy, end_busy);
    return {lo, hi};
}

double combinatorial_factor(int n_pu, int start_busy, int end_busy, int stay_busy) {
    const auto [lo, hi] = k_range(n_pu, start_busy, end_busy);
    if (stay_busy < lo || stay_busy > hi)
        throw std::domain_error("combinatorial_factor: infeasible stay_busy count");
    return binomial_coefficient(start_busy, stay_busy) *
           binomial_coefficient(n_pu - start_busy, end_busy - stay_busy);
}

OffsetDistribution arrival_offset_dist(const TrafficParams& params,
                                       const FrameGeometry& geom, int horizon) {
    if (horizon < 1 || horizon > geom.n_frame)
        throw std::domain_error("arrival_offset_dist: horizon outside [1, n_frame]");
    OffsetDistribution d;
    d.min_offset = 1;
    d.mass.assign(static_cast<std::size_t>(horizon), 0.0);
    // arrival after sample a occupies horizon - a samples
    for (int a = 0; a < horizon; ++a)
        d.mass[static_cast<std::size_t>(horizon - a - 1)] = pmf_idle_to_busy(params, geom, a);
    return d;
}

OffsetDistribution departure_offset_dist(const TrafficParams& params,
                                         const FrameGeometry& geom, int horizon) {
    if (horizon < 1 || horizon > geom.n_frame)
        throw std::domain_error("departure_offset_dist: horizon outside [1, n_frame]");
    OffsetDistribution d;
    d.min_offset = 0;
    d.mass.assign(static_cast<std::size_t>(horizon), 0.0);
    for (int j = 0; j < horizon; ++j)
        d.mass[static_cast<std::size_t>(j)] = pmf_busy_to_idle(params, geom, j);
    return d;
}

namespace {

// Offsets a busy-through-sensing PU adds to the transmission-period
// interference numerator: departs after sample g (g in [L, S-1]) -> g - L
// occupied transmission samples; survives the frame -> all S - L.
OffsetDistribution tx_departure_offset_dist(const TrafficParams& params,
                                            const FrameGeometry& geom) {
    const int window = geom.n_transmit();
    OffsetDistribution d;
    d.min_offset = 0;
    d.mass.assign(static_cast<std::size_t>(window) + 1, 0.0);
    for (int g = geom.n_sense; g < geom.n_frame; ++g)
        d.mass[static_cast<std::size_t>(g - geom.n_sense)] = pmf_busy_to_idle(params, geom, g);
    d.mass[static_cast<std::size_t>(window)] += 1.0 - cdf_busy(params, geom.frame_time_s());
    return d;
}

// Same for an idle-through-sensing PU: arrives after sample c -> S - c
// occupied transmission samples; stays idle -> 0.
OffsetDistribution tx_arrival_offset_dist(const TrafficParams& params,
                                          const FrameGeometry& geom) {
    const int window = geom.n_transmit();
    OffsetDistribution d;
    d.min_offset = 0;
    d.mass.assign(static_cast<std::size_t>(window) + 1, 0.0);
    for (int c = geom.n_sense; c < geom.n_frame; ++c)
        d.mass[static_cast<std::size_t>(geom.n_frame - c)] = pmf_idle_to_busy(params, geom, c);
    d.mass[0] += 1.0 - cdf_idle(params, geom.frame_time_s());
    return d;
}

std::vector<OffsetDistribution> convolution_powers(const OffsetDistribution& d, int up_to) {
    std::vector<OffsetDistribution> pow;
    pow.reserve(static_cast<std::size_t>(up_to) + 1);
    pow.push_back(OffsetDistribution::point(0));
    for (int r = 1; r <= up_to; ++r) pow.push_back(convolve(pow.back(), d));
    return pow;
}

HypothesisSet build_weights(const TrafficParams& params, const FrameGeometry& geom,
                            bool with_tx) {
    params.validate();
    geom.validate();
    if (with_tx && geom.n_transmit() < 1)
        throw std::invalid_argument("hypothesis: full-frame grid needs n_frame > n_sense");

    const int n = params.n_pu;
    const int n_sense = geom.n_sense;
    const double stay_busy_prob = 1.0 - cdf_busy(params, geom.sensing_time_s());
    const double stay_idle_prob = 1.0 - cdf_idle(params, geom.sensing_time_s());

    const auto arrival_pow =
        convolution_powers(arrival_offset_dist(params, geom, n_sense), n);
    const auto departure_pow =
        convolution_powers(departure_offset_dist(params, geom, n_sense), n);

    std::vector<OffsetDistribution> tx_departure_pow, tx_arrival_pow;
    if (with_tx) {
        tx_departure_pow = convolution_powers(tx_departure_offset_dist(params, geom), n);
        tx_arrival_pow = convolution_powers(tx_arrival_offset_dist(params, geom), n);
    }

    HypothesisSet set{params, geom, with_tx, {}};
    for (int i = 0; i <= n; ++i) {
        for (int m = 0; m <= n; ++m) {
            const auto [k_lo, k_hi] = k_range(n, m, i);
            for (int k = k_lo; k <= k_hi; ++k) {
                const int arrivals = i - k;
                const int departures = m - k;
                const int stay_idle = n - arrivals - m;

                HypothesisWeight w;
                w.hyp = {i, m, k};

                OffsetDistribution sense =
                    convolve(arrival_pow[static_cast<std::size_t>(arrivals)],
                             departure_pow[static_cast<std::size_t>(departures)]);
                const double transition_weight = sense.total();
                w.sense_energy = shifted(sense, k * n_sense);
                normalize(w.sense_energy);

                const double factor = combinatorial_factor(n, m, i, k) *
                                      prior_busy_count(params, m);
                if (with_tx) {
                    // The survive-sensing factors arrive through the
                    // transmission-window totals; they telescope back to
                    // stay_busy_prob^k * stay_idle_prob^stay_idle.
                    OffsetDistribution tx =
                        convolve(tx_departure_pow[static_cast<std::size_t>(k)],
                                 tx_arrival_pow[static_cast<std::size_t>(stay_idle)]);
                    w.prob = factor * transition_weight * tx.total();
                    w.tx_interference = shifted(tx, arrivals * geom.n_transmit());
                    normalize(w.tx_interference);
                } else {
                    w.prob = factor * transition_weight *
                             std::pow(stay_busy_prob, k) * std::pow(stay_idle_prob, stay_idle);
                }
                set.weights.push_back(std::move(w));
            }
        }
    }
    return set;
}

}  // namespace

HypothesisSet hypothesis_weights_case1(const TrafficParams& params, const FrameGeometry& geom) {
    return build_weights(params, geom, false);
}

HypothesisSet hypothesis_weights_case2(const TrafficParams& params, const FrameGeometry& geom) {
    return build_weights(params, geom, true);
}

HypothesisAggregate hypothesis_prob_aggregate(const HypothesisSet& set) {
    HypothesisAggregate agg;
    agg.p_end_busy.assign(static_cast<std::size_t>(set.params.n_pu) + 1, 0.0);
    for (const auto& w : set.weights)
        agg.p_end_busy[static_cast<std::size_t>(w.hyp.end_busy)] += w.prob;
    agg.p_idle = agg.p_end_busy[0];
    for (std::size_t i = 1; i < agg.p_end_busy.size(); ++i) agg.p_busy += agg.p_end_busy[i];
    return agg;
}

}  // namespace crsense
