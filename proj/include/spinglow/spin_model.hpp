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
 * @file spin_model.hpp
 * Pseudo-spin operators and the dipole-coupled Hamiltonian
 *
 *   H = sum_i omega_i S^z_i + sum_{i != j} Omega_ij S^+_i S^-_j
 *
 * in units hbar = 1 with energies measured in the coupling Omega.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace spinglow {

inline constexpr std::size_t kMaxAtoms = 5;

enum class Level { excited = 0, ground = 1 };

/// Atom count, transition frequency, coupling matrix and spacing.
struct SystemConfig {
    std::size_t n_atoms = 3;
    /// omega / Omega, shared by every atom.
    double omega = 1.0;
    /// Omega_ij / Omega, symmetric with zero diagonal.
    std::vector<std::vector<double>> coupling;
    bool equal_spacing = true;
    /// lambda / d.
    double lambda_over_d = 2.0;

    [[nodiscard]] std::size_t dim() const noexcept {
        return std::size_t{1} << n_atoms;
    }

    /// Nearest-neighbour chain with unit couplings.
    static SystemConfig line(std::size_t n_atoms, double omega_over_Omega,
                             double lambda_over_d = 2.0) {
        SystemConfig cfg;
        cfg.n_atoms = n_atoms;
        cfg.omega = omega_over_Omega;
        cfg.lambda_over_d = lambda_over_d;
        cfg.coupling.assign(n_atoms, std::vector<double>(n_atoms, 0.0));
        for (std::size_t i = 0; i + 1 < n_atoms; ++i) {
            cfg.coupling[i][i + 1] = 1.0;
            cfg.coupling[i + 1][i] = 1.0;
        }
        cfg.validate();
        return cfg;
    }

    void validate() const {
        if (n_atoms < 1 || n_atoms > kMaxAtoms) {
            throw ValidationError("SystemConfig: n_atoms must be in [1, 5], got " +
                                  std::to_string(n_atoms));
        }
        if (!std::isfinite(omega)) {
            throw ValidationError("SystemConfig: omega must be finite");
        }
        if (!(lambda_over_d > 0.0) || !std::isfinite(lambda_over_d)) {
            throw ValidationError("SystemConfig: lambda_over_d must be positive");
        }
        if (coupling.size() != n_atoms) {
            throw ValidationError("SystemConfig: coupling must be n_atoms x n_atoms");
        }
        for (std::size_t i = 0; i < n_atoms; ++i) {
            if (coupling[i].size() != n_atoms) {
                throw ValidationError(
                    "SystemConfig: coupling must be n_atoms x n_atoms");
            }
            if (coupling[i][i] != 0.0) {
                throw ValidationError("SystemConfig: coupling diagonal must be 0");
            }
            for (std::size_t j = 0; j < n_atoms; ++j) {
                if (coupling[i][j] != coupling[j][i] || coupling[i][j] < 0.0 ||
                    !std::isfinite(coupling[i][j])) {
                    throw ValidationError(
                        "SystemConfig: coupling must be symmetric, finite and "
                        "non-negative");
                }
            }
        }
    }
};

/// S^+_i, S^-_i, S^z_i embedded in the 2^N space; index i is 0-based.
struct SpinOperatorSet {
    std::size_t n_atoms = 0;
    std::vector<ComplexMatrix> s_plus;
    std::vector<ComplexMatrix> s_minus;
    std::vector<ComplexMatrix> s_z;

    [[nodiscard]] std::size_t dim() const noexcept {
        return std::size_t{1} << n_atoms;
    }
};

/// Single-atom operators in the (|e>, |g>) basis.
inline ComplexMatrix sigma_plus() { return ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}; }
inline ComplexMatrix sigma_minus() { return ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}}; }
inline ComplexMatrix spin_z() { return ComplexMatrix{{0.5, 0.0}, {0.0, -0.5}}; }

/// Identity on every factor except `site`, where `local` acts.
inline ComplexMatrix embed(const ComplexMatrix &local, std::size_t site,
                           std::size_t n_atoms) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    const auto id2 = ComplexMatrix::identity(2);
    for (std::size_t k = 0; k < n_atoms; ++k) {
        out = kron(out, k == site ? local : id2);
    }
    return out;
}

inline SpinOperatorSet build_spin_operators(std::size_t n_atoms) {
    if (n_atoms < 1 || n_atoms > kMaxAtoms) {
        throw ValidationError("build_spin_operators: n_atoms must be in [1, 5], got " +
                              std::to_string(n_atoms));
    }
    SpinOperatorSet ops;
    ops.n_atoms = n_atoms;
    const auto sp = sigma_plus();
    const auto sm = sigma_minus();
    const auto sz = spin_z();
    for (std::size_t i = 0; i < n_atoms; ++i) {
        ops.s_plus.push_back(embed(sp, i, n_atoms));
        ops.s_minus.push_back(embed(sm, i, n_atoms));
        ops.s_z.push_back(embed(sz, i, n_atoms));
    }
    return ops;
}

inline ComplexMatrix build_hamiltonian(const SystemConfig &cfg,
                                       const SpinOperatorSet &ops) {
    cfg.validate();
    if (ops.n_atoms != cfg.n_atoms) {
        throw ShapeError("build_hamiltonian: operator set is for " +
                         std::to_string(ops.n_atoms) + " atoms, config for " +
                         std::to_string(cfg.n_atoms));
    }
    ComplexMatrix h(cfg.dim(), cfg.dim());
    for (std::size_t i = 0; i < cfg.n_atoms; ++i) {
        h += ops.s_z[i] * Complex{cfg.omega};
        for (std::size_t j = 0; j < cfg.n_atoms; ++j) {
            if (i != j && cfg.coupling[i][j] != 0.0) {
                h += (ops.s_plus[i] * ops.s_minus[j]) * Complex{cfg.coupling[i][j]};
            }
        }
    }
    return h;
}

inline ComplexMatrix build_hamiltonian(const SystemConfig &cfg) {
    return build_hamiltonian(cfg, build_spin_operators(cfg.n_atoms));
}

/// Computational-basis index of a product state given atom by atom.
inline std::size_t basis_index(const std::vector<Level> &levels) {
    std::size_t idx = 0;
    for (auto l : levels) {
        idx = (idx << 1U) | static_cast<std::size_t>(l);
    }
    return idx;
}

/// Closed-form energies and eigenstates of the three-atom line.
struct LineSpectrum {
    std::array<double, 8> energies{};
    std::array<std::vector<Complex>, 8> states;
    std::array<std::string, 8> labels;
};

/**
 * Analytic spectrum of the N = 3 line with Omega_12 = Omega_23 = 1 and
 * Omega_13 = 0. Entry k holds the (k+1)-th closed-form level, which is not
 * necessarily the (k+1)-th lowest.
 */
inline LineSpectrum analytic_line_spectrum(double omega_over_Omega,
                                           std::size_t n_atoms = 3) {
    if (n_atoms != 3) {
        throw UnsupportedConfiguration(
            "analytic_line_spectrum: closed forms exist only for N = 3");
    }
    const double w = omega_over_Omega;
    const double r2 = std::numbers::sqrt2;
    LineSpectrum s;
    s.energies = {-1.5 * w,      -r2 - 0.5 * w, -0.5 * w, r2 - 0.5 * w,
                  -r2 + 0.5 * w, 0.5 * w,       r2 + 0.5 * w, 1.5 * w};

    using L = Level;
    constexpr auto e = L::excited;
    constexpr auto g = L::ground;
    auto ket = [](std::initializer_list<std::pair<double, std::vector<Level>>> terms) {
        std::vector<Complex> v(8, Complex{});
        for (const auto &[amp, levels] : terms) {
            v[basis_index(levels)] += amp;
        }
        return v;
    };
    const double h = 0.5;
    const double q = r2 / 2.0;
    const double inv = 1.0 / r2;
    s.states[0] = ket({{1.0, {g, g, g}}});
    s.states[1] = ket({{h, {e, g, g}}, {-q, {g, e, g}}, {h, {g, g, e}}});
    s.states[2] = ket({{inv, {g, g, e}}, {-inv, {e, g, g}}});
    s.states[3] = ket({{h, {e, g, g}}, {q, {g, e, g}}, {h, {g, g, e}}});
    s.states[4] = ket({{h, {e, e, g}}, {-q, {e, g, e}}, {h, {g, e, e}}});
    s.states[5] = ket({{inv, {g, e, e}}, {-inv, {e, e, g}}});
    s.states[6] = ket({{h, {e, e, g}}, {q, {e, g, e}}, {h, {g, e, e}}});
    s.states[7] = ket({{1.0, {e, e, e}}});
    s.labels = {"psi1", "psi2", "psi3", "psi4", "psi5", "psi6", "psi7", "psi8"};
    return s;
}

/// Index (0-based) of the lowest closed-form level; ties go to the lower index.
inline std::size_t analytic_ground_level(double omega_over_Omega) {
    const auto s = analytic_line_spectrum(omega_over_Omega);
    std::size_t best = 0;
    for (std::size_t k = 1; k < s.energies.size(); ++k) {
        if (s.energies[k] < s.energies[best]) {
            best = k;
        }
    }
    return best;
}

/**
 * omega/Omega at which |ggg> and psi2 exchange the role of ground state.
 * Bisection on the sign of eps1 - eps2 over [0, 10].
 */
inline double ground_state_crossover(double tolerance = 1e-12) {
    auto gap = [](double w) {
        const auto s = analytic_line_spectrum(w);
        return s.energies[0] - s.energies[1];
    };
    double lo = 0.0;
    double hi = 10.0;
    // eps1 > eps2 at lo (psi2 lowest), eps1 < eps2 at hi.
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (gap(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace spinglow
