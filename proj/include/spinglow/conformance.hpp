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
#include <optional>
#include <string>
#include <vector>

#include "closed_form.hpp"
#include "eigensolver.hpp"
#include "errors.hpp"
#include "radiation.hpp"
#include "spin_model.hpp"
#include "thermal.hpp"

namespace spinglow {

namespace detail {

inline closed_form::Real beta_of(double temperature) {
    if (!(temperature > 0.0)) {
        throw ValidationError("closed form: temperature must be > 0");
    }
    return std::isinf(temperature) ? 0.0L : 1.0L / static_cast<closed_form::Real>(temperature);
}

inline double to_double_or_nan(closed_form::Real v) {
    const double d = static_cast<double>(v);
    return std::isfinite(d) ? d : std::numeric_limits<double>::quiet_NaN();
}

} // namespace detail

/// Published N = 3 intensity at (omega/Omega, T, observation point).
inline double intensity_closed_form(double omega_over_Omega, double temperature,
                                    const ObservationPoint &obs) {
    return detail::to_double_or_nan(closed_form::intensity(
        omega_over_Omega, detail::beta_of(temperature), obs.kd * std::sin(obs.theta)));
}

/// Published N = 3 g2(0); NaN when the value leaves the double range.
inline double g2_closed_form(double omega_over_Omega, double temperature,
                             const ObservationPoint &obs) {
    return detail::to_double_or_nan(closed_form::g2(
        omega_over_Omega, detail::beta_of(temperature), obs.kd * std::sin(obs.theta)));
}

/// Published density matrix and partition function against the Gibbs state.
struct DensityConformance {
    double omega_over_Omega = 0.0;
    double beta = 0.0;
    double z_paper = 0.0;
    double z_numeric = 0.0;
    /// z_paper / z_numeric, computed in log space.
    double z_ratio = 0.0;
    ComplexMatrix rho_paper;
    ComplexMatrix rho_numeric;
    /// |rho_paper - rho_numeric| entrywise, both at unit trace.
    std::vector<std::vector<double>> deviation;
    double max_abs_deviation = 0.0;
    /// max |rho - V diag(p) V^dagger| for the numeric state's own spectrum.
    double reconstruction_error = 0.0;
    double trace_error = 0.0;
    double commutator_norm = 0.0;
};

inline DensityConformance density_conformance_at_beta(double omega_over_Omega,
                                                      double beta) {
    const auto cfg = SystemConfig::line(3, omega_over_Omega);
    const auto h = build_hamiltonian(cfg);
    const auto eig = hermitian_eig(h);
    const auto state = thermal_state_at_beta(eig, beta);

    DensityConformance r;
    r.omega_over_Omega = omega_over_Omega;
    r.beta = beta;
    const auto z_paper = closed_form::partition_function(omega_over_Omega, beta);
    r.z_paper = detail::to_double_or_nan(z_paper);
    r.z_numeric = state.z_numeric();
    r.z_ratio = static_cast<double>(std::exp(std::log(z_paper) -
                                             static_cast<closed_form::Real>(state.log_z)));
    r.rho_paper = closed_form::normalized_density(omega_over_Omega, beta);
    r.rho_numeric = state.rho;
    r.deviation.assign(8, std::vector<double>(8, 0.0));
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            r.deviation[i][j] = std::abs(r.rho_paper(i, j) - r.rho_numeric(i, j));
            r.max_abs_deviation = std::max(r.max_abs_deviation, r.deviation[i][j]);
        }
    }
    r.reconstruction_error = max_abs_diff(hermitian_eig(state.rho).reconstruct(), state.rho);
    r.trace_error = std::abs(trace(state.rho) - Complex{1.0});
    r.commutator_norm = max_abs(commutator(state.rho, h));
    return r;
}

inline DensityConformance paper_density_conformance(double omega_over_Omega,
                                                    double temperature) {
    return density_conformance_at_beta(
        omega_over_Omega, static_cast<double>(detail::beta_of(temperature)));
}

struct ConformanceRow {
    double theta = 0.0;
    double closed_form = 0.0;
    std::optional<double> numeric;
    std::optional<double> deviation;
};

struct ConformanceCheck {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Everything the conformance command reports for one (omega/Omega, T).
struct ConformanceReport {
    double omega_over_Omega = 0.0;
    double temperature = 0.0;
    double lambda_over_d = 2.0;
    DensityConformance density;
    DensityConformance high_temperature;
    std::vector<ConformanceRow> intensity;
    std::vector<ConformanceRow> g2;
    double max_intensity_deviation = 0.0;
    double max_g2_deviation = 0.0;
    /// beta = 0: numeric intensity range vs published intensity range.
    double high_t_numeric_min = 0.0;
    double high_t_numeric_max = 0.0;
    double high_t_closed_min = 0.0;
    double high_t_closed_max = 0.0;
    std::vector<ConformanceCheck> checks;

    [[nodiscard]] bool checks_passed() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const auto &c) { return c.passed; });
    }
};

inline ConformanceReport conformance_report(double omega_over_Omega,
                                            double temperature,
                                            double lambda_over_d = 2.0,
                                            std::size_t theta_points = 73) {
    if (theta_points < 2) {
        throw ValidationError("conformance_report: need at least 2 theta points");
    }
    ConformanceReport rep;
    rep.omega_over_Omega = omega_over_Omega;
    rep.temperature = temperature;
    rep.lambda_over_d = lambda_over_d;
    rep.density = paper_density_conformance(omega_over_Omega, temperature);
    rep.high_temperature = density_conformance_at_beta(omega_over_Omega, 0.0);

    const auto ops = build_spin_operators(3);
    const auto &rho = rep.density.rho_numeric;
    const auto &rho_inf = rep.high_temperature.rho_numeric;
    const auto corr = emission_correlations(rho, ops);

    double path_gap = 0.0;
    double high_t_flatness = 0.0;
    double high_t_closed_gap = 0.0;
    rep.high_t_numeric_min = rep.high_t_closed_min = std::numeric_limits<double>::infinity();
    rep.high_t_numeric_max = rep.high_t_closed_max = -std::numeric_limits<double>::infinity();

    for (std::size_t k = 0; k < theta_points; ++k) {
        const double theta = -std::numbers::pi +
                             2.0 * std::numbers::pi * static_cast<double>(k) /
                                 static_cast<double>(theta_points - 1);
        const auto obs = ObservationPoint::from_spacing(theta, lambda_over_d);
        const double x = obs.kd * std::sin(obs.theta);

        ConformanceRow ir;
        ir.theta = theta;
        ir.closed_form = intensity_closed_form(omega_over_Omega, temperature, obs);
        ir.numeric = intensity_numeric(rho, ops, obs);
        ir.deviation = std::abs(*ir.numeric - ir.closed_form);
        if (std::isfinite(*ir.deviation)) {
            rep.max_intensity_deviation = std::max(rep.max_intensity_deviation, *ir.deviation);
        }
        path_gap = std::max(path_gap, std::abs(*ir.numeric - corr.intensity(obs)));
        rep.intensity.push_back(ir);

        ConformanceRow gr;
        gr.theta = theta;
        gr.closed_form = g2_closed_form(omega_over_Omega, temperature, obs);
        try {
            gr.numeric = g2_numeric(rho, ops, obs);
            gr.deviation = std::abs(*gr.numeric - gr.closed_form);
            if (std::isfinite(*gr.deviation)) {
                rep.max_g2_deviation = std::max(rep.max_g2_deviation, *gr.deviation);
            }
        } catch (const UndefinedCorrelation &) {
        }
        rep.g2.push_back(gr);

        const double inf_numeric = intensity_numeric(rho_inf, ops, obs);
        const double inf_closed = static_cast<double>(closed_form::intensity(
            omega_over_Omega, 0.0L, static_cast<closed_form::Real>(x)));
        rep.high_t_numeric_min = std::min(rep.high_t_numeric_min, inf_numeric);
        rep.high_t_numeric_max = std::max(rep.high_t_numeric_max, inf_numeric);
        rep.high_t_closed_min = std::min(rep.high_t_closed_min, inf_closed);
        rep.high_t_closed_max = std::max(rep.high_t_closed_max, inf_closed);
        high_t_flatness = std::max(high_t_flatness, std::abs(inf_numeric - 1.5));
        high_t_closed_gap = std::max(
            high_t_closed_gap, std::abs(inf_closed - (33.0 + 4.0 * std::cos(2.0 * x)) / 22.0));
    }

    auto check = [&](std::string name, double value, double tol) {
        rep.checks.push_back({std::move(name), value, tol, std::abs(value) <= tol});
    };
    check("numeric_trace_error", rep.density.trace_error, 1e-12);
    check("numeric_hermiticity_defect", hermiticity_defect(rho), 1e-12);
    check("numeric_commutator_with_hamiltonian", rep.density.commutator_norm, 1e-10);
    check("numeric_eigen_reconstruction", rep.density.reconstruction_error, 1e-12);
    check("intensity_trace_vs_correlation_path", path_gap, 1e-12);
    check("high_temperature_z_ratio_minus_2.75", rep.high_temperature.z_ratio - 2.75, 1e-12);
    check("high_temperature_numeric_intensity_minus_1.5", high_t_flatness, 1e-10);
    check("high_temperature_closed_form_transcription", high_t_closed_gap, 1e-12);
    check("paper_density_unit_trace",
          std::abs(trace(rep.density.rho_paper).real() - 1.0), 1e-12);
    return rep;
}

} // namespace spinglow
