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
 * @file closed_form.hpp
 * Published closed-form expressions for the three-atom line, transcribed
 * term by term so they can be diffed against the trace-based results.
 *
 * These are reference values only. They are evaluated in long double because
 * factors such as exp(2 sqrt2 / T) overflow double at T = 5e-3.
 *
 * Density-matrix element (i, j) here is 1-based and maps onto the library
 * basis index i - 1 (qubit 0 most significant, |e> = 0), under which the
 * (1,1) entry carries the Boltzmann factor of |eee>.
 */

#include <array>
#include <cmath>

#include "matrix.hpp"

namespace spinglow::closed_form {

using Real = long double;

inline constexpr Real kSqrt2 = 1.414213562373095048801688724209698079L;

/// Published partition function.
inline Real partition_function(Real omega, Real beta) {
    return 2.0L * std::cosh(beta * omega / 2.0L) *
           (1.0L + 8.0L * std::cosh(kSqrt2 * beta) +
            2.0L * std::cosh(beta * omega));
}

/// Published unnormalized 8x8 density matrix (entries not listed are zero).
inline std::array<std::array<Real, 8>, 8> density_elements(Real omega, Real beta) {
    const Real lo = std::exp(-beta * omega / 2.0L);
    const Real hi = std::exp(beta * omega / 2.0L);
    const Real ch = std::cosh(kSqrt2 * beta);
    const Real sh = std::sinh(kSqrt2 * beta);
    const Real r2 = 2.0L * kSqrt2;

    std::array<std::array<Real, 8>, 8> m{};
    auto set = [&](int i, int j, Real v) { m[i - 1][j - 1] = v; };

    set(1, 1, std::exp(-3.0L * beta * omega / 2.0L));
    set(2, 2, lo * (1.0L + 2.0L * ch));
    set(2, 3, -r2 * lo * sh);
    set(2, 5, lo * (-1.0L + 2.0L * ch));
    set(3, 2, -r2 * lo * sh);
    set(3, 3, 4.0L * lo * ch);
    set(3, 5, -r2 * lo * sh);
    set(4, 4, hi * (1.0L + 2.0L * ch));
    set(4, 6, -r2 * hi * sh);
    set(4, 7, hi * (-1.0L + 2.0L * ch));
    set(5, 2, lo * (-1.0L + 2.0L * ch));
    set(5, 3, -r2 * lo * sh);
    set(5, 5, lo * (1.0L + 2.0L * ch));
    set(6, 4, -r2 * hi * sh);
    set(6, 6, 4.0L * hi * ch);
    set(6, 7, -r2 * hi * sh);
    set(7, 4, hi * (-1.0L + 2.0L * ch));
    // The source omits the '=' for (7,6); value taken as the mirror of (6,7).
    set(7, 6, -r2 * hi * sh);
    set(7, 7, hi * (1.0L + 2.0L * ch));
    set(8, 8, std::exp(3.0L * beta * omega / 2.0L));
    return m;
}

/// Published element table divided by its own trace.
inline ComplexMatrix normalized_density(Real omega, Real beta) {
    const auto m = density_elements(omega, beta);
    Real tr = 0.0L;
    for (int i = 0; i < 8; ++i) {
        tr += m[i][i];
    }
    ComplexMatrix out(8, 8);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            out(i, j) = static_cast<double>(m[i][j] / tr);
        }
    }
    return out;
}

struct IntensityTerms {
    Real a = 0.0L;
    Real b = 0.0L;
    Real c = 0.0L;
    Real d = 0.0L;

    [[nodiscard]] Real value() const { return a * (b + c + d); }
};

/**
 * I = A (B + C + D) with x = kd sin(theta). The C bracket is read as
 * 4 (2 + cos 2x + e^{beta omega} (4 + cos 2x)) cosh(sqrt2 beta).
 */
inline IntensityTerms intensity_terms(Real omega, Real beta, Real x) {
    const Real ebw = std::exp(beta * omega);
    const Real cos2x = std::cos(2.0L * x);
    const Real denom = 2.0L * (1.0L + 2.0L * std::cosh(beta * omega) +
                               8.0L * std::cosh(kSqrt2 * beta));
    IntensityTerms t;
    t.a = std::exp(-beta * omega / 2.0L) / std::cosh(beta * omega / 2.0L) / denom;
    t.b = 3.0L * std::exp(2.0L * beta * omega) - 2.0L * ebw * (-2.0L + cos2x);
    t.c = 4.0L * (2.0L + cos2x + ebw * (4.0L + cos2x)) * std::cosh(kSqrt2 * beta);
    const Real sx = std::sin(x);
    t.d = 4.0L * sx * sx -
          8.0L * kSqrt2 * (1.0L + ebw) * std::cos(x) * std::sinh(kSqrt2 * beta);
    return t;
}

inline Real intensity(Real omega, Real beta, Real x) {
    return intensity_terms(omega, beta, x).value();
}

struct G2Terms {
    Real n1 = 0.0L;
    Real n2 = 0.0L;
    Real n3 = 0.0L;

    [[nodiscard]] Real numerator() const { return n1 * (n2 + n3); }
};

/// <E-E-E+E+> = N1 (N2 + N3); N1 keeps the published exp(2 x + ...) factor.
inline G2Terms g2_terms(Real omega, Real beta, Real x) {
    const Real denom = 2.0L * (1.0L + 2.0L * std::cosh(beta * omega) +
                               8.0L * std::cosh(kSqrt2 * beta));
    const Real e2r = std::exp(2.0L * kSqrt2 * beta);
    const Real cos2x = std::cos(2.0L * x);
    const Real sx = std::sin(x);
    G2Terms t;
    t.n1 = std::exp(2.0L * x + (beta * omega - kSqrt2 * beta) / 2.0L) /
           std::cosh(beta * omega / 2.0L) / denom;
    t.n2 = -4.0L * kSqrt2 * (-1.0L + e2r) * std::cos(x) + 2.0L * (2.0L + cos2x);
    t.n3 = e2r * (4.0L + 3.0L * std::exp(2.0L * beta * omega) + 2.0L * cos2x) +
           4.0L * std::exp(kSqrt2 * beta) * sx * sx;
    return t;
}

inline Real g2(Real omega, Real beta, Real x) {
    const Real i = intensity(omega, beta, x);
    return g2_terms(omega, beta, x).numerator() / (i * i);
}

} // namespace spinglow::closed_form
