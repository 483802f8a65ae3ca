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
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "correlations.hpp"
#include "errors.hpp"
#include "radiation.hpp"
#include "spin_model.hpp"
#include "sweep.hpp"
#include "thermal.hpp"

namespace spinglow {

struct IntensityPeak {
    double lambda_over_d = 0.0;
    double intensity = 0.0;
    bool superradiant = false;
};

/**
 * Local intensity maxima over lambda/d on a uniform grid, each refined by a
 * parabola through the three samples around it.
 */
inline std::vector<IntensityPeak>
superradiant_peaks(double theta = std::numbers::pi / 2, double omega_over_Omega = 1.0,
                   double temperature = 5e-3, std::size_t n_atoms = 3,
                   double lambda_over_d_min = 0.2, double lambda_over_d_max = 3.0,
                   std::size_t points = 2000) {
    if (points < 3 || !(lambda_over_d_min > 0.0) ||
        !(lambda_over_d_max > lambda_over_d_min)) {
        throw ValidationError("superradiant_peaks: invalid lambda/d grid");
    }
    const auto ops = build_spin_operators(n_atoms);
    const auto cfg = SystemConfig::line(n_atoms, omega_over_Omega);
    const auto st = thermal_state(hermitian_eig(build_hamiltonian(cfg, ops)), temperature);
    const auto corr = emission_correlations(st.rho, ops);
    const double reference = corr.incoherent();

    const auto grid = linspace(lambda_over_d_min, lambda_over_d_max, points);
    std::vector<double> values(points);
    for (std::size_t i = 0; i < points; ++i) {
        values[i] = corr.intensity(ObservationPoint::from_spacing(theta, grid[i]));
    }

    std::vector<IntensityPeak> peaks;
    const double h = grid[1] - grid[0];
    for (std::size_t i = 1; i + 1 < points; ++i) {
        const double left = values[i - 1];
        const double mid = values[i];
        const double right = values[i + 1];
        if (!(mid > left && mid >= right)) {
            continue;
        }
        const double curvature = left - 2.0 * mid + right;
        double offset = 0.0;
        if (curvature < 0.0) {
            offset = std::clamp(0.5 * (left - right) / curvature, -0.5, 0.5);
        }
        IntensityPeak p;
        p.lambda_over_d = grid[i] + offset * h;
        p.intensity = corr.intensity(ObservationPoint::from_spacing(theta, p.lambda_over_d));
        p.superradiant = classify(p.intensity, reference) == Radiance::super;
        peaks.push_back(p);
    }
    return peaks;
}

struct MonogamyIntensityPoint {
    double omega_over_Omega = 0.0;
    double monogamy = 0.0;
    double intensity = 0.0;
};

/// (tau_{1:23}, I) traced by varying omega/Omega, sorted by tau.
inline std::vector<MonogamyIntensityPoint>
monogamy_intensity_curve(double lambda_over_d, const std::vector<double> &omegas,
                         double temperature = 5e-3, double theta = std::numbers::pi / 2) {
    const auto ops = build_spin_operators(3);
    const auto obs = ObservationPoint::from_spacing(theta, lambda_over_d);
    std::vector<MonogamyIntensityPoint> curve;
    curve.reserve(omegas.size());
    for (double w : omegas) {
        const auto st = thermal_state(hermitian_eig(build_hamiltonian(SystemConfig::line(3, w), ops)),
                                      temperature);
        curve.push_back({w, monogamy_score(st.rho, 0), intensity_numeric(st.rho, ops, obs)});
    }
    std::stable_sort(curve.begin(), curve.end(), [](const auto &a, const auto &b) {
        return a.monogamy < b.monogamy;
    });
    return curve;
}

/// Ranks starting at 1 with ties sharing their mean rank.
inline std::vector<double> average_ranks(const std::vector<double> &v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) {
            ++j;
        }
        const double mean = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = mean;
        }
        i = j + 1;
    }
    return ranks;
}

/// Spearman rank correlation; 0 when either side has no spread.
inline double spearman(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw ValidationError("spearman: need two equal-length series of size >= 2");
    }
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double cov = 0.0;
    double va = 0.0;
    double vb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        cov += (ra[i] - ma) * (rb[i] - mb);
        va += (ra[i] - ma) * (ra[i] - ma);
        vb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (va == 0.0 || vb == 0.0) {
        return 0.0;
    }
    return cov / std::sqrt(va * vb);
}

struct IntensitySample {
    double theta = 0.0;
    double intensity = 0.0;
};

struct EstimationResult {
    double d_over_lambda = 0.0;
    /// d in the unit of the supplied wavelength.
    double distance = 0.0;
    /// Root-mean-square misfit of the best model.
    double residual = 0.0;
    std::size_t samples_used = 0;
};

struct EstimationOptions {
    double d_over_lambda_min = 0.05;
    double d_over_lambda_max = 5.0;
    std::size_t candidates = 200;
    std::size_t max_golden_iterations = 200;
};

/**
 * Fit d/lambda to measured (theta, I) pairs by least squares, given the
 * atom count, omega/Omega and temperature of the source.
 *
 * The sum of squares is scanned on a uniform bracket grid and the best
 * bracket is polished by golden-section search.
 */
inline EstimationResult estimate_distance(const std::vector<IntensitySample> &samples,
                                          double wavelength, std::size_t n_atoms,
                                          double omega_over_Omega, double temperature,
                                          const EstimationOptions &opt = {}) {
    if (samples.size() < 8) {
        throw ValidationError("estimate_distance: need at least 8 samples, got " +
                              std::to_string(samples.size()));
    }
    if (!(wavelength > 0.0)) {
        throw ValidationError("estimate_distance: wavelength must be > 0");
    }
    if (opt.candidates < 3) {
        throw ValidationError("estimate_distance: need at least 3 candidates");
    }
    double lo_i = std::numeric_limits<double>::infinity();
    double hi_i = -lo_i;
    for (const auto &s : samples) {
        if (!std::isfinite(s.theta) || !std::isfinite(s.intensity)) {
            throw ValidationError("estimate_distance: non-finite sample");
        }
        lo_i = std::min(lo_i, s.intensity);
        hi_i = std::max(hi_i, s.intensity);
    }
    if (hi_i - lo_i < 1e-9) {
        throw Unidentifiable("estimate_distance: intensity samples are flat; "
                             "the spacing cannot be inferred");
    }

    const auto ops = build_spin_operators(n_atoms);
    const auto st = thermal_state(
        hermitian_eig(build_hamiltonian(SystemConfig::line(n_atoms, omega_over_Omega), ops)),
        temperature);
    const auto corr = emission_correlations(st.rho, ops);

    auto sse = [&](double d_over_lambda) {
        double s = 0.0;
        for (const auto &smp : samples) {
            const ObservationPoint obs{smp.theta, 2.0 * std::numbers::pi * d_over_lambda};
            const double r = corr.intensity(obs) - smp.intensity;
            s += r * r;
        }
        return s;
    };

    const auto cand = linspace(opt.d_over_lambda_min, opt.d_over_lambda_max, opt.candidates);
    std::size_t best = 0;
    double best_val = sse(cand[0]);
    for (std::size_t k = 1; k < cand.size(); ++k) {
        const double v = sse(cand[k]);
        if (v < best_val) {
            best_val = v;
            best = k;
        }
    }

    double a = cand[best == 0 ? 0 : best - 1];
    double b = cand[std::min(best + 1, cand.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = sse(c);
    double fd = sse(d);
    for (std::size_t it = 0; it < opt.max_golden_iterations && b - a > 1e-15 * std::max(1.0, b);
         ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = sse(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = sse(d);
        }
    }
    double x = fc < fd ? c : d;
    double fx = std::min(fc, fd);
    if (best_val < fx) {
        x = cand[best];
        fx = best_val;
    }

    EstimationResult r;
    r.d_over_lambda = x;
    r.distance = x * wavelength;
    r.residual = std::sqrt(fx / static_cast<double>(samples.size()));
    r.samples_used = samples.size();
    return r;
}

} // namespace spinglow
