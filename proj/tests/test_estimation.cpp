// Copyright 2026 The spinglow Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "spinglow/errors.hpp"
#include "spinglow/estimation.hpp"
#include "spinglow/sweep.hpp"

using namespace spinglow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<IntensitySample> synthetic(double d_over_lambda, double noise, std::uint64_t seed,
                                       std::size_t count = 50) {
    SweepPoint p;
    p.omega_over_Omega = 1.0;
    p.temperature = 5e-3;
    p.lambda_over_d = 1.0 / d_over_lambda;
    std::vector<IntensitySample> out;
    double mean = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        p.theta = -kPi / 2 + kPi * static_cast<double>(k) / static_cast<double>(count - 1);
        out.push_back({p.theta, evaluate_point(Observable::intensity, p)});
        mean += out.back().intensity / static_cast<double>(count);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, noise * mean);
    if (noise > 0.0) {
        for (auto &s : out) {
            s.intensity += g(rng);
        }
    }
    return out;
}

bool has_near(const std::vector<IntensityPeak> &peaks, double target, double rel) {
    return std::any_of(peaks.begin(), peaks.end(), [&](const IntensityPeak &p) {
        return p.superradiant && std::abs(p.lambda_over_d - target) <= rel * target;
    });
}

} // namespace

TEST_CASE("peaks: superradiant maxima near 2, 2/3, 2/5", "[estimation]") {
    const auto peaks = superradiant_peaks();
    CHECK(has_near(peaks, 2.0, 0.1));
    CHECK(has_near(peaks, 2.0 / 3.0, 0.1));
    CHECK(has_near(peaks, 0.4, 0.1));
    for (const auto &p : peaks) {
        SweepPoint pt;
        pt.theta = kPi / 2;
        pt.lambda_over_d = p.lambda_over_d;
        CHECK_THAT(p.intensity, WithinAbs(evaluate_point(Observable::intensity, pt), 1e-12));
    }
}

TEST_CASE("peaks: none at theta = 0", "[estimation]") {
    CHECK(superradiant_peaks(0.0).empty());
}

TEST_CASE("peaks: stable under grid doubling", "[estimation]") {
    const auto coarse = superradiant_peaks(kPi / 2, 1.0, 5e-3, 3, 0.2, 3.0, 2000);
    const auto fine = superradiant_peaks(kPi / 2, 1.0, 5e-3, 3, 0.2, 3.0, 4000);
    REQUIRE(coarse.size() == fine.size());
    for (std::size_t k = 0; k < coarse.size(); ++k) {
        CHECK(std::abs(coarse[k].lambda_over_d - fine[k].lambda_over_d) < 1e-3);
        CHECK(coarse[k].superradiant == fine[k].superradiant);
    }
    CHECK_THROWS_AS(superradiant_peaks(kPi / 2, 1.0, 5e-3, 3, 1.0, 0.5), ValidationError);
}

TEST_CASE("spearman and ranks", "[estimation]") {
    CHECK(average_ranks({3.0, 1.0, 2.0}) == std::vector<double>{3.0, 1.0, 2.0});
    CHECK(average_ranks({1.0, 2.0, 2.0, 5.0}) == std::vector<double>{1.0, 2.5, 2.5, 4.0});
    CHECK_THAT(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), WithinAbs(1.0, 1e-15));
    CHECK_THAT(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), WithinAbs(-1.0, 1e-15));
    CHECK_THAT(spearman({1, 2, 3, 4, 5}, {1, 4, 9, 16, 25}), WithinAbs(1.0, 1e-15));
    // 1 - 6 sum d^2 / (n (n^2 - 1)) with d = (1, -1, 0, 0, 0).
    CHECK_THAT(spearman({1, 2, 3, 4, 5}, {2, 1, 3, 4, 5}), WithinAbs(0.9, 1e-15));
    CHECK(spearman({1, 1, 1}, {1, 2, 3}) == 0.0);
    CHECK_THROWS_AS(spearman({1.0}, {1.0}), ValidationError);
}

TEST_CASE("monogamy-intensity curve", "[estimation]") {
    const auto omegas = linspace(0.0, 10.0, 400);
    const auto curve = monogamy_intensity_curve(2.0, omegas);
    REQUIRE(curve.size() == 400);
    std::vector<double> tau;
    std::vector<double> intensity;
    for (const auto &p : curve) {
        tau.push_back(p.monogamy);
        intensity.push_back(p.intensity);
    }
    CHECK(std::is_sorted(tau.begin(), tau.end()));
    CHECK(spearman(tau, intensity) > 0.0);

    for (const auto &p : {curve.front(), curve.back()}) {
        SweepPoint pt;
        pt.omega_over_Omega = p.omega_over_Omega;
        pt.theta = kPi / 2;
        CHECK_THAT(p.intensity, WithinAbs(evaluate_point(Observable::intensity, pt), 1e-12));
        CHECK_THAT(p.monogamy, WithinAbs(evaluate_point(Observable::monogamy, pt), 1e-12));
    }
    CHECK(monogamy_intensity_curve(2.0, linspace(1.0, 1.0, 1)).size() == 1);
}

TEST_CASE("estimate: noiseless round trips", "[estimation]") {
    for (double truth : {0.5, 1.0, 1.5}) {
        const auto r = estimate_distance(synthetic(truth, 0.0, 0), 1.0, 3, 1.0, 5e-3);
        CHECK_THAT(r.d_over_lambda, WithinRel(truth, 0.01));
        CHECK(r.residual < 1e-10);
        CHECK(r.samples_used == 50);
    }
    const auto scaled = estimate_distance(synthetic(0.5, 0.0, 0), 780e-9, 3, 1.0, 5e-3);
    CHECK_THAT(scaled.distance, WithinRel(0.5 * 780e-9, 0.01));
}

TEST_CASE("estimate: noisy round trips", "[estimation]") {
    for (double truth : {0.5, 1.0, 1.5}) {
        for (std::uint64_t seed : {1U, 2U, 3U}) {
            const auto r = estimate_distance(synthetic(truth, 0.01, seed), 1.0, 3, 1.0, 5e-3);
            CHECK_THAT(r.d_over_lambda, WithinRel(truth, 0.05));
        }
    }
}

TEST_CASE("estimate: error paths", "[estimation]") {
    std::vector<IntensitySample> flat(20, {0.0, 1.2});
    CHECK_THROWS_AS(estimate_distance(flat, 1.0, 3, 1.0, 5e-3), Unidentifiable);
    auto few = synthetic(0.5, 0.0, 0, 7);
    CHECK_THROWS_AS(estimate_distance(few, 1.0, 3, 1.0, 5e-3), ValidationError);
    CHECK_THROWS_AS(estimate_distance(synthetic(0.5, 0.0, 0), 0.0, 3, 1.0, 5e-3),
                    ValidationError);
    auto bad = synthetic(0.5, 0.0, 0);
    bad[3].intensity = std::nan("");
    CHECK_THROWS_AS(estimate_distance(bad, 1.0, 3, 1.0, 5e-3), ValidationError);
}
