#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "crsense/traffic.hpp"

using namespace crsense;

namespace {
const TrafficParams kParams{0.02, 0.02, 2, 0.316227766016837933};
const FrameGeometry kGeom{1e-4, 50, 300};
}  // namespace

TEST_CASE("cdf_busy basics") {
    CHECK(cdf_busy(kParams, 0.0) == 0.0);
    CHECK(cdf_busy(kParams, 1e6) == doctest::Approx(1.0).epsilon(1e-15));
    // 1 - e^-1 at x equal to the mean
    CHECK(cdf_busy(kParams, 0.02) ==
          doctest::Approx(0.63212055882855768).epsilon(1e-14));
    CHECK_THROWS_AS(cdf_busy(kParams, -1e-9), std::domain_error);
}

TEST_CASE("cdf_idle mirrors cdf_busy") {
    CHECK(cdf_idle(kParams, 0.0) == 0.0);
    TrafficParams p = kParams;
    p.mean_idle_s = 0.04;
    CHECK(cdf_idle(p, 0.04) == doctest::Approx(0.63212055882855768).epsilon(1e-14));
    CHECK(cdf_idle(kParams, 0.02) == cdf_busy(kParams, 0.02));
}

TEST_CASE("cdf is monotone and within [0,1] on random arguments") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> x(0.0, 0.5);
    double prev_x = 0.0, prev_v = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const double xi = x(rng) + prev_x;
        const double v = cdf_busy(kParams, xi);
        CHECK(v >= prev_v);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev_x = xi;
        prev_v = v;
    }
}

TEST_CASE("transition pmf values and monotonicity") {
    // F_beta(1e-4) - 0 = 1 - e^-0.005
    CHECK(pmf_idle_to_busy(kParams, kGeom, 0) ==
          doctest::Approx(0.0049875208073176866).epsilon(1e-14));
    // e^-0.05 - e^-0.055
    CHECK(pmf_busy_to_idle(kParams, kGeom, 10) ==
          doctest::Approx(0.0047442765472301396).epsilon(1e-13));
    for (int j = 0; j + 1 < kGeom.n_sense; ++j)
        CHECK(pmf_idle_to_busy(kParams, kGeom, j) >= pmf_idle_to_busy(kParams, kGeom, j + 1));
    // equal holding means make the two pmfs identical
    for (int j = 0; j < kGeom.n_sense; ++j)
        CHECK(pmf_busy_to_idle(kParams, kGeom, j) == pmf_idle_to_busy(kParams, kGeom, j));
    CHECK_THROWS_AS(pmf_idle_to_busy(kParams, kGeom, -1), std::domain_error);
    CHECK_THROWS_AS(pmf_idle_to_busy(kParams, kGeom, kGeom.n_frame), std::domain_error);
}

TEST_CASE("one-transition masses partition unity over any horizon") {
    for (const auto& [ta, tb] : {std::pair{0.02, 0.02}, {0.007, 0.031}, {0.5, 0.001}}) {
        TrafficParams p{ta, tb, 1, 1.0};
        for (int horizon : {1, 50, 300}) {
            double acc_b = 0.0, acc_a = 0.0;
            for (int j = 0; j < horizon; ++j) {
                acc_b += pmf_idle_to_busy(p, kGeom, j);
                acc_a += pmf_busy_to_idle(p, kGeom, j);
            }
            const double t_h = horizon * kGeom.sample_interval_s;
            CHECK(acc_b + (1.0 - cdf_idle(p, t_h)) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(acc_a + (1.0 - cdf_busy(p, t_h)) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("stationary probabilities are complementary") {
    for (const auto& [ta, tb] : {std::pair{0.02, 0.02}, {1e-4, 0.9}, {3.0, 1e-5}}) {
        TrafficParams p{ta, tb, 1, 1.0};
        CHECK(std::abs(p.prob_busy() + p.prob_idle() - 1.0) <= 1e-15);
    }
}

TEST_CASE("prior_busy_count") {
    TrafficParams sym{0.02, 0.02, 1, 1.0};
    CHECK(prior_busy_count(sym, 1) == doctest::Approx(0.5).epsilon(1e-15));

    TrafficParams n3{0.02, 0.02, 3, 1.0};  // p_b = 0.5
    CHECK(prior_busy_count(n3, 2) == doctest::Approx(0.375).epsilon(1e-15));

    for (int n = 1; n <= 16; ++n) {
        TrafficParams p{0.013, 0.029, n, 1.0};
        double acc = 0.0;
        for (int m = 0; m <= n; ++m) acc += prior_busy_count(p, m);
        CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(prior_busy_count(sym, -1), std::domain_error);
    CHECK_THROWS_AS(prior_busy_count(sym, 2), std::domain_error);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((TrafficParams{0.0, 0.02, 1, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((TrafficParams{0.02, 0.02, 0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((FrameGeometry{1e-4, 0, 10}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((FrameGeometry{1e-4, 11, 10}.validate()), std::invalid_argument);
    CHECK_NOTHROW(kParams.validate());
    CHECK_NOTHROW(kGeom.validate());
}
