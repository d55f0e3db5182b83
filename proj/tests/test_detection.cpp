#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "crsense/detection.hpp"
#include "oracle.hpp"

using namespace crsense;

namespace {

const TrafficParams kParams{0.02, 0.02, 2, 0.316227766016837933};
const FrameGeometry kGeom{1e-4, 4, 8};

oracle::Params to_oracle(const TrafficParams& p, const FrameGeometry& g) {
    return {p.mean_busy_s, p.mean_idle_s, p.n_pu, g.sample_interval_s, g.n_sense, g.n_frame};
}

}  // namespace

TEST_CASE("std::erfc reference accuracy") {
    // high-precision reference values (25+ digits, rounded to double)
    const struct {
        double x, want;
    } table[] = {
        {-3.0, 1.9999779095030014},   {-2.0, 1.9953222650189527},
        {-1.0, 1.8427007929497149},   {-0.5, 1.5204998778130465},
        {0.0, 1.0},                   {0.25, 0.72367360983176307},
        {0.5, 0.47950012218695346},   {1.0, 0.15729920705028513},
        {1.5, 0.033894853524689273},  {2.0, 0.0046777349810472658},
        {3.0, 2.2090496998585441e-5}, {5.0, 1.5374597944280349e-12},
        {8.0, 1.1224297172982927e-29},
    };
    for (const auto& row : table)
        CHECK(std::erfc(row.x) == doctest::Approx(row.want).epsilon(1e-14));
}

TEST_CASE("conditional exceedance probability") {
    // erfc(0)/2 at the mean
    CHECK(detect_prob_given_energy(100.0, 100, 0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    // frozen reference: 0.5*erfc(1) for eta=120, L=100, n=0
    CHECK(detect_prob_given_energy(120.0, 100, 0, 0.5) ==
          doctest::Approx(0.078649603525142565).epsilon(1e-14));
    // limits and monotonicity
    CHECK(detect_prob_given_energy(1e9, 100, 0, 0.5) == doctest::Approx(0.0));
    CHECK(detect_prob_given_energy(0.0, 100, 0, 0.5) > 0.5);
    double prev = 1.0;
    for (double eta = 0.0; eta <= 200.0; eta += 5.0) {
        const double v = detect_prob_given_energy(eta, 100, 0, 0.5);
        CHECK(v < prev);
        prev = v;
    }
    // increasing in the occupied-sample count
    for (int n = 0; n < 50; ++n)
        CHECK(detect_prob_given_energy(120.0, 100, n + 1, 0.5) >
              detect_prob_given_energy(120.0, 100, n, 0.5));
    CHECK_THROWS_AS(detect_prob_given_energy(1.0, 0, 0, 0.5), std::domain_error);
    CHECK_THROWS_AS(detect_prob_given_energy(1.0, 10, -1, 0.5), std::domain_error);
}

TEST_CASE("zero PU SNR makes detection and false alarm coincide") {
    const auto set = hypothesis_weights_case1(kParams, kGeom);
    const DetectorConfig det{5.0, 0.0, 0.9};
    CHECK(prob_detection(set, det) == doctest::Approx(prob_false_alarm(set, det)).epsilon(1e-12));
}

TEST_CASE("threshold below all mass saturates detection") {
    const auto set = hypothesis_weights_case1(kParams, FrameGeometry{1e-4, 50, 300});
    const DetectorConfig det{0.0, kParams.gamma_p, 0.9};
    CHECK(prob_detection(set, det) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("no-traffic limit reduces false alarm to the noise-only curve") {
    TrafficParams p{1e9, 1e9, 1, 0.5};
    const auto set = hypothesis_weights_case1(p, FrameGeometry{1e-4, 50, 300});
    const DetectorConfig det{60.0, 0.5, 0.9};
    const double noise_only = detect_prob_given_energy(60.0, 50, 0, 0.5);
    CHECK(prob_false_alarm(set, det) == doctest::Approx(noise_only).epsilon(1e-9));
}

TEST_CASE("unconditional probabilities match the joint-sum enumeration") {
    const auto set = hypothesis_weights_case1(kParams, kGeom);
    const auto ref = oracle::enumerate_case1(to_oracle(kParams, kGeom));
    for (double eta : {2.0, 4.0, 5.5, 8.0}) {
        const DetectorConfig det{eta, kParams.gamma_p, 0.9};
        CHECK(prob_detection(set, det) ==
              doctest::Approx(oracle::detection_probability(ref, kGeom.n_sense, eta,
                                                            kParams.gamma_p))
                  .epsilon(1e-12));
        CHECK(prob_false_alarm(set, det) ==
              doctest::Approx(oracle::false_alarm_probability(ref, kGeom.n_sense, eta,
                                                              kParams.gamma_p))
                  .epsilon(1e-12));
    }
}

TEST_CASE("detection dominates false alarm and both fall in eta") {
    const auto set = hypothesis_weights_case1(kParams, FrameGeometry{1e-4, 50, 300});
    double prev_pd = 1.0, prev_pf = 1.0;
    for (double eta : {10.0, 30.0, 50.0, 60.0, 70.0, 90.0, 120.0}) {
        const DetectorConfig det{eta, kParams.gamma_p, 0.9};
        const double pd = prob_detection(set, det);
        const double pf = prob_false_alarm(set, det);
        CHECK(pd < prev_pd);
        CHECK(pf < prev_pf);
        CHECK(pd >= pf);
        prev_pd = pd;
        prev_pf = pf;
    }
}

TEST_CASE("solve_threshold hits the target") {
    const auto set = hypothesis_weights_case1(kParams, FrameGeometry{1e-4, 50, 300});
    const double eta = solve_threshold(set, kParams.gamma_p, 0.9, 1e-9);
    DetectorConfig det{eta, kParams.gamma_p, 0.9};
    CHECK(std::abs(prob_detection(set, det) - 0.9) <= 1e-6);
    CHECK(prob_false_alarm(set, det) < prob_detection(set, det));

    // unattainable targets / bad tolerances are rejected
    CHECK_THROWS_AS(solve_threshold(set, kParams.gamma_p, 0.0, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(solve_threshold(set, kParams.gamma_p, 0.9, 0.0), std::invalid_argument);
}

TEST_CASE("solve_threshold on a point mass") {
    // single PU, frozen traffic: the busy side is a point mass at n = L
    TrafficParams p{1e9, 1e9, 1, 0.5};
    const FrameGeometry geom{1e-4, 20, 40};
    const auto set = hypothesis_weights_case1(p, geom);
    const double eta = solve_threshold(set, p.gamma_p, 0.5, 1e-12);
    // erfc(0)/2 = 0.5 exactly at eta = L + n*gamma_p
    CHECK(eta == doctest::Approx(geom.n_sense + geom.n_sense * p.gamma_p).epsilon(1e-9));
}

TEST_CASE("empty conditionals are rejected") {
    auto set = hypothesis_weights_case1(kParams, kGeom);
    const DetectorConfig det{5.0, kParams.gamma_p, 0.9};
    HypothesisSet busy_only = set;
    std::erase_if(busy_only.weights,
                  [](const HypothesisWeight& w) { return w.hyp.end_busy == 0; });
    CHECK_THROWS_AS(prob_false_alarm(busy_only, det), std::runtime_error);
    HypothesisSet idle_only = set;
    std::erase_if(idle_only.weights,
                  [](const HypothesisWeight& w) { return w.hyp.end_busy >= 1; });
    CHECK_THROWS_AS(prob_detection(idle_only, det), std::runtime_error);
}

TEST_CASE("solver works across a parameter grid") {
    for (int n : {1, 2, 3})
        for (int L : {10, 50, 150, 290}) {
            TrafficParams p{0.02, 0.02, n, 0.316227766016837933};
            const auto set = hypothesis_weights_case1(p, FrameGeometry{1e-4, L, 300});
            const double eta = solve_threshold(set, p.gamma_p, 0.9, 1e-9);
            DetectorConfig det{eta, p.gamma_p, 0.9};
            CHECK(std::abs(prob_detection(set, det) - 0.9) <= 1e-6);
            CHECK(prob_false_alarm(set, det) < 0.9);
        }
}
