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
 * @file correlations.hpp
 * Entanglement and discord measures for two- and three-qubit states.
 * Entropies are in bits.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "eigensolver.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "nelder_mead.hpp"
#include "subsystems.hpp"
#include "thermal.hpp"

namespace spinglow {

inline constexpr double kPhysicalTolerance = 1e-10;

/// Throws ValidationError unless rho is Hermitian, unit-trace and PSD.
inline void validate_density_matrix(const ComplexMatrix &rho,
                                    const char *where,
                                    double tol = kPhysicalTolerance) {
    if (!rho.is_square() || rho.rows() == 0) {
        throw ShapeError(std::string(where) + ": density matrix must be square");
    }
    if (hermiticity_defect(rho) > tol) {
        throw ValidationError(std::string(where) + ": density matrix is not Hermitian");
    }
    const double tr = trace(rho).real();
    if (std::abs(tr - 1.0) > tol) {
        throw ValidationError(std::string(where) + ": trace " +
                              std::to_string(tr) + " != 1");
    }
    const double lowest = eigenvalues(rho).front();
    if (lowest < -tol) {
        throw ValidationError(std::string(where) + ": negative eigenvalue " +
                              std::to_string(lowest));
    }
}

inline double von_neumann_entropy(const ComplexMatrix &rho) {
    validate_density_matrix(rho, "von_neumann_entropy");
    return entropy_bits(eigenvalues(rho));
}

/// Wootters concurrence of a two-qubit state.
inline double concurrence(const ComplexMatrix &rho) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw ShapeError("concurrence: expected a 4x4 density matrix");
    }
    validate_density_matrix(rho, "concurrence");

    const ComplexMatrix sy{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}};
    const auto yy = kron(sy, sy);
    const auto flipped = yy * conjugate(rho) * yy;

    // sqrt eigenvalues of rho*flipped are the eigenvalues of
    // sqrt(sqrt(rho) flipped sqrt(rho)), which is Hermitian.
    const auto eig = hermitian_eig(rho);
    const auto root = eig.apply([](double x) { return std::sqrt(std::max(x, 0.0)); });
    auto m = root * flipped * root;
    // Remove rounding asymmetry before the Hermitian solver sees it.
    m = (m + adjoint(m)) * Complex{0.5};
    auto mu = eigenvalues(m);
    std::array<double, 4> lambda{};
    for (std::size_t k = 0; k < 4; ++k) {
        lambda[k] = std::sqrt(std::max(mu[k], 0.0));
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>{});
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

/// (||rho^T_S||_1 - 1) / 2 for the bipartition S : rest.
inline double negativity(const ComplexMatrix &rho,
                         const std::vector<std::size_t> &dims,
                         const std::vector<std::size_t> &subsystems) {
    validate_density_matrix(rho, "negativity");
    const auto spectrum = eigenvalues(partial_transpose(rho, dims, subsystems));
    double trace_norm = 0.0;
    for (double v : spectrum) {
        trace_norm += std::abs(v);
    }
    return std::max(0.0, 0.5 * (trace_norm - 1.0));
}

/**
 * Squared-negativity monogamy deficit for a three-qubit state,
 *   tau = N^2(f:rest) - N^2(f:a) - N^2(f:b),
 * where f is `focus` and the pair negativities use the reduced states.
 */
struct MonogamyTerms {
    double focus_vs_rest = 0.0;
    double focus_vs_first = 0.0;
    double focus_vs_second = 0.0;
    std::size_t first = 0;
    std::size_t second = 0;

    [[nodiscard]] double score() const {
        return focus_vs_rest * focus_vs_rest - focus_vs_first * focus_vs_first -
               focus_vs_second * focus_vs_second;
    }
};

inline MonogamyTerms monogamy_terms(const ComplexMatrix &rho,
                                    std::size_t focus = 0) {
    if (rho.rows() != 8 || rho.cols() != 8) {
        throw ShapeError("monogamy_score: expected an 8x8 density matrix");
    }
    if (focus > 2) {
        throw ValidationError("monogamy_score: focus must be 0, 1 or 2");
    }
    const auto dims = qubit_dims(3);
    MonogamyTerms t;
    t.first = focus == 0 ? 1 : 0;
    t.second = focus == 2 ? 1 : 2;
    t.focus_vs_rest = negativity(rho, dims, {focus});

    auto pair_negativity = [&](std::size_t other) {
        const auto reduced = partial_trace(rho, dims, {focus, other});
        // Reduced factors are ordered ascending, so the focus sits first iff
        // it has the smaller index.
        return negativity(reduced, qubit_dims(2), {focus < other ? 0U : 1U});
    };
    t.focus_vs_first = pair_negativity(t.first);
    t.focus_vs_second = pair_negativity(t.second);
    return t;
}

inline double monogamy_score(const ComplexMatrix &rho, std::size_t focus = 0) {
    return monogamy_terms(rho, focus).score();
}

enum class MeasuredSide { A, B };

namespace detail {

/// Entropy (bits) of a 2x2 PSD block scaled to trace p, normalized by p.
inline double conditional_entropy_2x2(Complex a, Complex b, Complex d) {
    const double tr = a.real() + d.real();
    if (tr <= 0.0) {
        return 0.0;
    }
    const double diff = a.real() - d.real();
    const double disc = std::sqrt(diff * diff + 4.0 * std::norm(b));
    const double l1 = std::max(0.0, 0.5 * (tr + disc)) / tr;
    const double l2 = std::max(0.0, 0.5 * (tr - disc)) / tr;
    double s = 0.0;
    if (l1 > 0.0) {
        s -= l1 * std::log2(l1);
    }
    if (l2 > 0.0) {
        s -= l2 * std::log2(l2);
    }
    return s;
}

} // namespace detail

/**
 * Average entropy of the unmeasured qubit after a projective measurement on
 * `side` along the Bloch direction (theta, phi).
 */
inline double measured_conditional_entropy(const ComplexMatrix &rho,
                                           MeasuredSide side, double theta,
                                           double phi) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const std::array<std::array<Complex, 2>, 2> basis{{
        {Complex{c}, std::polar(s, phi)},
        {-std::polar(s, -phi), Complex{c}},
    }};

    // Index of (measured, other) in the two-qubit basis.
    auto at = [&](std::size_t m, std::size_t o) {
        return side == MeasuredSide::A ? 2 * m + o : 2 * o + m;
    };

    double total = 0.0;
    for (const auto &n : basis) {
        std::array<std::array<Complex, 2>, 2> block{};
        for (std::size_t o = 0; o < 2; ++o) {
            for (std::size_t o2 = 0; o2 < 2; ++o2) {
                Complex acc{};
                for (std::size_t m = 0; m < 2; ++m) {
                    for (std::size_t m2 = 0; m2 < 2; ++m2) {
                        acc += std::conj(n[m]) * rho(at(m, o), at(m2, o2)) * n[m2];
                    }
                }
                block[o][o2] = acc;
            }
        }
        const double p = block[0][0].real() + block[1][1].real();
        if (p > 0.0) {
            total += p * detail::conditional_entropy_2x2(block[0][0], block[0][1],
                                                         block[1][1]);
        }
    }
    return total;
}

struct DiscordOptions {
    std::size_t grid_theta = 24;
    std::size_t grid_phi = 48;
    NelderMeadOptions refine{1e-8, 1e-8, 500};
};

struct DiscordResult {
    double discord = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    std::size_t evaluations = 0;
};

/**
 * Quantum discord with projective measurements on `side`:
 *   D = S(rho_measured) - S(rho) + min sum_k p_k S(rho_other | k).
 * The minimum comes from a coarse Bloch-sphere grid followed by Nelder-Mead.
 */
inline DiscordResult quantum_discord_detailed(const ComplexMatrix &rho,
                                              MeasuredSide side = MeasuredSide::A,
                                              const DiscordOptions &opt = {}) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw ShapeError("quantum_discord: expected a 4x4 density matrix");
    }
    validate_density_matrix(rho, "quantum_discord");

    const auto dims = qubit_dims(2);
    const std::size_t measured = side == MeasuredSide::A ? 0 : 1;
    const double s_measured = entropy_bits(eigenvalues(partial_trace(rho, dims, {measured})));
    const double s_joint = entropy_bits(eigenvalues(rho));

    auto objective = [&](double theta, double phi) {
        return measured_conditional_entropy(rho, side, theta, phi);
    };

    std::size_t evals = 0;
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    double best_phi = 0.0;
    const double d_theta = std::numbers::pi / static_cast<double>(opt.grid_theta - 1);
    const double d_phi = 2.0 * std::numbers::pi / static_cast<double>(opt.grid_phi);
    for (std::size_t i = 0; i < opt.grid_theta; ++i) {
        for (std::size_t j = 0; j < opt.grid_phi; ++j) {
            const double t = static_cast<double>(i) * d_theta;
            const double p = static_cast<double>(j) * d_phi;
            const double v = objective(t, p);
            ++evals;
            if (v < best) {
                best = v;
                best_theta = t;
                best_phi = p;
            }
        }
    }

    const auto refined = nelder_mead(
        [&](const std::vector<double> &x) { return objective(x[0], x[1]); },
        {best_theta, best_phi}, {d_theta, d_phi}, opt.refine);
    evals += refined.evaluations;
    if (refined.value < best) {
        best = refined.value;
        best_theta = refined.x[0];
        best_phi = refined.x[1];
    }
    const double discord = s_measured - s_joint + best;
    if (!refined.converged) {
        throw ConvergenceError("quantum_discord: measurement optimisation did "
                               "not converge",
                               discord, evals);
    }
    if (discord < -1e-9) {
        throw ConsistencyError("quantum_discord: negative discord " +
                               std::to_string(discord));
    }
    return {std::max(discord, 0.0), best_theta, best_phi, evals};
}

inline double quantum_discord(const ComplexMatrix &rho,
                              MeasuredSide side = MeasuredSide::A,
                              const DiscordOptions &opt = {}) {
    return quantum_discord_detailed(rho, side, opt).discord;
}

} // namespace spinglow
