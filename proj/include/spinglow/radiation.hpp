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

/**
 * @file radiation.hpp
 * Far-field emission of a line of two-level atoms.
 *
 * The normalized positive-frequency field at direction theta is
 * E+ = sum_j exp(-i phi_j) S^-_j with phi_j = j kd sin(theta), j = 1..N, and
 * the dipole orientation is taken perpendicular to the observation direction
 * so geometric prefactors drop out. All expectation values are traces against
 * the supplied density matrix.
 */

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "spin_model.hpp"

namespace spinglow {

inline constexpr double kImaginaryTolerance = 1e-10;
inline constexpr double kNegativeIntensityTolerance = 1e-12;
inline constexpr double kG2IntensityFloor = 1e-12;
inline constexpr double kClassifyEpsilon = 1e-9;

/// Detector direction theta (radians) and phase scale kd = 2 pi d / lambda.
struct ObservationPoint {
    double theta = 0.0;
    double kd = 0.0;

    static ObservationPoint from_spacing(double theta, double lambda_over_d) {
        if (!(lambda_over_d > 0.0)) {
            throw ValidationError("ObservationPoint: lambda_over_d must be > 0");
        }
        return {theta, 2.0 * std::numbers::pi / lambda_over_d};
    }
};

enum class Radiance { sub, super, neutral };

inline const char *to_string(Radiance r) {
    switch (r) {
    case Radiance::sub:
        return "sub";
    case Radiance::super:
        return "super";
    case Radiance::neutral:
        return "neutral";
    }
    return "neutral";
}

struct RadiationSample {
    double intensity = 0.0;
    std::optional<double> g2;
    Radiance classification = Radiance::neutral;
};

/// phi_j = j kd sin(theta) for j = 1..n_atoms (returned 0-based).
inline std::vector<double> optical_phases(std::size_t n_atoms,
                                          const ObservationPoint &obs) {
    if (n_atoms < 1) {
        throw ValidationError("optical_phases: n_atoms must be >= 1");
    }
    std::vector<double> phases(n_atoms);
    const double x = obs.kd * std::sin(obs.theta);
    for (std::size_t j = 0; j < n_atoms; ++j) {
        phases[j] = static_cast<double>(j + 1) * x;
    }
    return phases;
}

/// E+ = sum_j exp(-i phi_j) S^-_j.
inline ComplexMatrix field_operator(const SpinOperatorSet &ops,
                                    const ObservationPoint &obs) {
    const auto phases = optical_phases(ops.n_atoms, obs);
    ComplexMatrix e_plus(ops.dim(), ops.dim());
    for (std::size_t j = 0; j < ops.n_atoms; ++j) {
        e_plus += ops.s_minus[j] * std::polar(1.0, -phases[j]);
    }
    return e_plus;
}

namespace detail {

inline void check_state(const ComplexMatrix &rho, const SpinOperatorSet &ops,
                        const char *where) {
    if (!rho.is_square() || rho.rows() != ops.dim()) {
        throw ShapeError(std::string(where) +
                         ": density matrix does not match operator set");
    }
}

inline double real_expectation(Complex value, const char *where) {
    if (std::abs(value.imag()) > kImaginaryTolerance) {
        throw ConsistencyError(std::string(where) +
                               ": imaginary residual " +
                               std::to_string(value.imag()) +
                               " on a Hermitian observable");
    }
    return value.real();
}

inline double clamp_intensity(double value, const char *where) {
    if (value < -kNegativeIntensityTolerance) {
        throw ConsistencyError(std::string(where) + ": negative intensity " +
                               std::to_string(value));
    }
    return value < 0.0 ? 0.0 : value;
}

} // namespace detail

/// I = <E- E+> = sum_ij <S+_i S-_j> exp(i(phi_i - phi_j)).
inline double intensity_numeric(const ComplexMatrix &rho,
                                const SpinOperatorSet &ops,
                                const ObservationPoint &obs) {
    detail::check_state(rho, ops, "intensity_numeric");
    const auto e_plus = field_operator(ops, obs);
    const auto value = trace_of_product(rho, adjoint(e_plus) * e_plus);
    return detail::clamp_intensity(
        detail::real_expectation(value, "intensity_numeric"),
        "intensity_numeric");
}

/// g2(0) = <E- E- E+ E+> / <E- E+>^2.
inline double g2_numeric(const ComplexMatrix &rho, const SpinOperatorSet &ops,
                         const ObservationPoint &obs) {
    detail::check_state(rho, ops, "g2_numeric");
    const auto e_plus = field_operator(ops, obs);
    const auto e_minus = adjoint(e_plus);
    const double intensity = detail::clamp_intensity(
        detail::real_expectation(trace_of_product(rho, e_minus * e_plus),
                                 "g2_numeric"),
        "g2_numeric");
    if (intensity <= kG2IntensityFloor) {
        throw UndefinedCorrelation("g2_numeric: intensity " +
                                       std::to_string(intensity) +
                                       " is too small for g2",
                                   intensity);
    }
    const auto two_photon = e_plus * e_plus;
    const double numerator = detail::clamp_intensity(
        detail::real_expectation(
            trace_of_product(rho, adjoint(two_photon) * two_photon),
            "g2_numeric"),
        "g2_numeric");
    return numerator / (intensity * intensity);
}

/**
 * Two-point emission correlations C_ij = <S+_i S-_j> and dipoles <S+_i>.
 *
 * Intensity at any observation point follows from these without touching the
 * density matrix again, which is what sweeps and fits rely on.
 */
struct EmissionCorrelations {
    std::size_t n_atoms = 0;
    ComplexMatrix pair;
    std::vector<Complex> dipole;

    [[nodiscard]] double intensity(const ObservationPoint &obs) const {
        const auto phases = optical_phases(n_atoms, obs);
        Complex sum{};
        for (std::size_t i = 0; i < n_atoms; ++i) {
            for (std::size_t j = 0; j < n_atoms; ++j) {
                sum += pair(i, j) * std::polar(1.0, phases[i] - phases[j]);
            }
        }
        return detail::clamp_intensity(
            detail::real_expectation(sum, "EmissionCorrelations::intensity"),
            "EmissionCorrelations::intensity");
    }

    /// Sum_i <S+_i S-_i>: the intensity without interference.
    [[nodiscard]] double incoherent() const {
        double s = 0.0;
        for (std::size_t i = 0; i < n_atoms; ++i) {
            s += pair(i, i).real();
        }
        return s;
    }
};

inline EmissionCorrelations emission_correlations(const ComplexMatrix &rho,
                                                  const SpinOperatorSet &ops) {
    detail::check_state(rho, ops, "emission_correlations");
    EmissionCorrelations c;
    c.n_atoms = ops.n_atoms;
    c.pair = ComplexMatrix(ops.n_atoms, ops.n_atoms);
    c.dipole.resize(ops.n_atoms);
    for (std::size_t i = 0; i < ops.n_atoms; ++i) {
        c.dipole[i] = trace_of_product(rho, ops.s_plus[i]);
        for (std::size_t j = 0; j < ops.n_atoms; ++j) {
            c.pair(i, j) =
                trace_of_product(rho, ops.s_plus[i] * ops.s_minus[j]);
        }
    }
    return c;
}

/// Intensity split into the incoherent, dipole and quantum-correlation parts.
struct IntensityDecomposition {
    double incoherent = 0.0;
    double dipole = 0.0;
    double correlation = 0.0;

    [[nodiscard]] double total() const { return incoherent + dipole + correlation; }
};

inline IntensityDecomposition decompose_intensity(const EmissionCorrelations &c,
                                                  const ObservationPoint &obs) {
    const auto phases = optical_phases(c.n_atoms, obs);
    IntensityDecomposition d;
    Complex dip{};
    Complex qc{};
    for (std::size_t i = 0; i < c.n_atoms; ++i) {
        d.incoherent += c.pair(i, i).real();
        for (std::size_t j = 0; j < c.n_atoms; ++j) {
            if (i == j) {
                continue;
            }
            const auto phase = std::polar(1.0, phases[i] - phases[j]);
            const Complex product = c.dipole[i] * std::conj(c.dipole[j]);
            dip += product * phase;
            qc += (c.pair(i, j) - product) * phase;
        }
    }
    d.dipole = detail::real_expectation(dip, "decompose_intensity");
    d.correlation = detail::real_expectation(qc, "decompose_intensity");
    return d;
}

/// Compare against the incoherent sum with relative margin 1e-9.
inline Radiance classify(double intensity, double incoherent_reference) {
    if (intensity > incoherent_reference * (1.0 + kClassifyEpsilon)) {
        return Radiance::super;
    }
    if (intensity < incoherent_reference * (1.0 - kClassifyEpsilon)) {
        return Radiance::sub;
    }
    return Radiance::neutral;
}

inline Radiance classify(double intensity, const ComplexMatrix &rho,
                         const SpinOperatorSet &ops) {
    detail::check_state(rho, ops, "classify");
    double reference = 0.0;
    for (std::size_t i = 0; i < ops.n_atoms; ++i) {
        reference +=
            trace_of_product(rho, ops.s_plus[i] * ops.s_minus[i]).real();
    }
    return classify(intensity, reference);
}

/// Intensity, g2 (when defined) and classification at one point.
inline RadiationSample radiation_sample(const ComplexMatrix &rho,
                                        const SpinOperatorSet &ops,
                                        const ObservationPoint &obs) {
    RadiationSample s;
    s.intensity = intensity_numeric(rho, ops, obs);
    try {
        s.g2 = g2_numeric(rho, ops, obs);
    } catch (const UndefinedCorrelation &) {
        s.g2.reset();
    }
    s.classification = classify(s.intensity, rho, ops);
    return s;
}

} // namespace spinglow
