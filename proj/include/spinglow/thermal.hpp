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
#include <limits>
#include <string>
#include <vector>

#include "eigensolver.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "spin_model.hpp"

namespace spinglow {

/// Normalized Gibbs state. Temperatures are in units of hbar*Omega/k_B.
struct ThermalState {
    ComplexMatrix rho;
    double beta = 0.0;
    /// log of sum_i exp(-beta eps_i); kept because Z overflows at low T.
    double log_z = 0.0;

    /// exp(log_z); may be +inf where the log is still representable.
    [[nodiscard]] double z_numeric() const { return std::exp(log_z); }
};

/// Gibbs state at inverse temperature beta >= 0 (beta = 0 is the T -> inf limit).
inline ThermalState thermal_state_at_beta(const EigenSystem &eig, double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw ValidationError("thermal_state: beta must be finite and >= 0");
    }
    const double e_min = eig.eigenvalues.front();
    std::vector<double> weights(eig.dim());
    double sum = 0.0;
    for (std::size_t k = 0; k < eig.dim(); ++k) {
        weights[k] = std::exp(-beta * (eig.eigenvalues[k] - e_min));
        sum += weights[k];
    }
    ThermalState st;
    st.beta = beta;
    st.log_z = std::log(sum) - beta * e_min;

    const std::size_t n = eig.dim();
    st.rho = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double p = weights[k] / sum;
        if (p == 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = eig.eigenvectors(i, k) * p;
            for (std::size_t j = 0; j < n; ++j) {
                st.rho(i, j) += vik * std::conj(eig.eigenvectors(j, k));
            }
        }
    }
    return st;
}

inline ThermalState thermal_state(const EigenSystem &eig, double temperature) {
    if (!(temperature > 0.0)) {
        throw ValidationError("thermal_state: temperature must be > 0, got " +
                              std::to_string(temperature));
    }
    return thermal_state_at_beta(eig, std::isinf(temperature) ? 0.0 : 1.0 / temperature);
}

inline ThermalState thermal_state(const SystemConfig &cfg, double temperature) {
    return thermal_state(hermitian_eig(build_hamiltonian(cfg)), temperature);
}

/**
 * T = 0 limit: equal mixture over the lowest eigenspace. Levels within
 * `degeneracy_tol` of the minimum count as degenerate, so omega/Omega = sqrt 2
 * yields the even mixture of |ggg> and psi2.
 */
inline ComplexMatrix ground_state(const EigenSystem &eig,
                                  double degeneracy_tol = 1e-9) {
    const double e_min = eig.eigenvalues.front();
    const auto count = static_cast<double>(std::count_if(
        eig.eigenvalues.begin(), eig.eigenvalues.end(),
        [&](double e) { return e - e_min <= degeneracy_tol; }));
    return eig.apply([&](double e) {
        return e - e_min <= degeneracy_tol ? 1.0 / count : 0.0;
    });
}

/// Von Neumann entropy in bits from a precomputed spectrum.
inline double entropy_bits(const std::vector<double> &spectrum) {
    double s = 0.0;
    for (double p : spectrum) {
        if (p > 0.0) {
            s -= p * std::log2(p);
        }
    }
    return s;
}

} // namespace spinglow
