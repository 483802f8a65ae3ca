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
#include <complex>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace spinglow {

/// Spectral decomposition of a Hermitian matrix. Eigenvalues ascend and
/// column k of `eigenvectors` belongs to `eigenvalues[k]`.
struct EigenSystem {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    [[nodiscard]] std::size_t dim() const noexcept {
        return eigenvalues.size();
    }

    /// V f(diag) V^dagger for a scalar function f of the eigenvalues.
    template <class Fn>
    [[nodiscard]] ComplexMatrix apply(Fn &&fn) const {
        const std::size_t n = dim();
        ComplexMatrix out(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            const double w = fn(eigenvalues[k]);
            if (w == 0.0) {
                continue;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const Complex vik = eigenvectors(i, k) * w;
                for (std::size_t j = 0; j < n; ++j) {
                    out(i, j) += vik * std::conj(eigenvectors(j, k));
                }
            }
        }
        return out;
    }

    [[nodiscard]] ComplexMatrix reconstruct() const {
        return apply([](double x) { return x; });
    }
};

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kJacobiThreshold = 1e-14;

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

/// Zero a(p,q) with the unitary J = Phase * Rotation acting on columns p, q.
inline void jacobi_rotate(ComplexMatrix &a, ComplexMatrix &v, std::size_t p,
                          std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) {
        return;
    }
    const Complex phase = apq / mag;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Complex jpp = c;
    const Complex jpq = s;
    const Complex jqp = -s * std::conj(phase);
    const Complex jqq = c * std::conj(phase);

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
}

} // namespace detail

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
 *
 * Sweeps stop once the off-diagonal Frobenius norm falls below 1e-14 times
 * max(1, ||m||_F). Eigenvectors of a degenerate cluster are returned in an
 * arbitrary orthonormal basis of that cluster.
 */
inline EigenSystem hermitian_eig(const ComplexMatrix &m) {
    if (!m.is_square() || m.rows() == 0) {
        throw ShapeError("hermitian_eig: matrix must be square and non-empty");
    }
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTolerance) {
        throw ValidationError("hermitian_eig: input is not Hermitian (defect " +
                              std::to_string(defect) + ")");
    }

    const std::size_t n = m.rows();
    // Symmetrize so rounding in the input cannot leak into the rotations.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double threshold = kJacobiThreshold * std::max(1.0, frobenius_norm(a));
    constexpr int max_sweeps = 100;
    int sweep = 0;
    while (detail::off_diagonal_norm(a) > threshold) {
        if (++sweep > max_sweeps) {
            throw ConvergenceError("hermitian_eig: Jacobi sweeps exhausted",
                                   detail::off_diagonal_norm(a),
                                   static_cast<std::size_t>(max_sweeps));
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                detail::jacobi_rotate(a, v, p, q);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) {
                         return a(x, x).real() < a(y, y).real();
                     });

    EigenSystem out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.eigenvectors(i, k) = v(i, order[k]);
        }
    }
    return out;
}

inline std::vector<double> eigenvalues(const ComplexMatrix &m) {
    return hermitian_eig(m).eigenvalues;
}

} // namespace spinglow
