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

// Helpers shared by the test binaries: random states and small independent
// reference implementations that deliberately avoid the library's own code.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <cstddef>
#include <random>
#include <vector>

#include "spinglow/matrix.hpp"

namespace spinglow::testing {

using EigenC = Eigen::MatrixXcd;

inline EigenC to_eigen(const ComplexMatrix &m) {
    EigenC out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
        }
    }
    return out;
}

inline ComplexMatrix from_eigen(const EigenC &m) {
    ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
        }
    }
    return out;
}

/// Ascending eigenvalues from Eigen's self-adjoint solver.
inline std::vector<double> reference_eigenvalues(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<EigenC> solver(to_eigen(m), Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = Complex{g(rng), g(rng)};
        }
    }
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64 &rng) {
    const auto a = random_matrix(n, n, rng);
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        }
    }
    return h;
}

/// Full-rank mixed state G G^dagger / Tr, with G Ginibre.
inline ComplexMatrix random_density(std::size_t n, std::mt19937_64 &rng) {
    const EigenC g = to_eigen(random_matrix(n, n, rng));
    EigenC rho = g * g.adjoint();
    rho /= rho.trace();
    return from_eigen(rho);
}

inline std::vector<Complex> random_ket(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> v(n);
    double norm = 0.0;
    for (auto &c : v) {
        c = Complex{g(rng), g(rng)};
        norm += std::norm(c);
    }
    for (auto &c : v) {
        c /= std::sqrt(norm);
    }
    return v;
}

inline ComplexMatrix pure(const std::vector<Complex> &ket) {
    ComplexMatrix m(ket.size(), ket.size());
    for (std::size_t i = 0; i < ket.size(); ++i) {
        for (std::size_t j = 0; j < ket.size(); ++j) {
            m(i, j) = ket[i] * std::conj(ket[j]);
        }
    }
    return m;
}

inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64 &rng) {
    Eigen::HouseholderQR<EigenC> qr(to_eigen(random_matrix(n, n, rng)));
    return from_eigen(qr.householderQ() * EigenC::Identity(static_cast<Eigen::Index>(n),
                                                           static_cast<Eigen::Index>(n)));
}

inline double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

/// Bell state (|00> + |11>)/sqrt2 in the computational basis.
inline ComplexMatrix bell_phi_plus() {
    const double h = 1.0 / std::sqrt(2.0);
    return pure({h, 0.0, 0.0, h});
}

/// Plain entropy in bits of a Hermitian matrix through Eigen.
inline double reference_entropy_bits(const ComplexMatrix &rho) {
    double s = 0.0;
    for (double p : reference_eigenvalues(rho)) {
        if (p > 1e-15) {
            s -= p * std::log2(p);
        }
    }
    return s;
}

/// Partial trace over qubit `drop` of an n-qubit matrix, by index arithmetic.
inline ComplexMatrix reference_trace_out(const ComplexMatrix &rho, std::size_t n,
                                         std::size_t drop) {
    const std::size_t dim = std::size_t{1} << (n - 1);
    const std::size_t bit = n - 1 - drop;
    auto insert = [&](std::size_t r, std::size_t b) {
        const std::size_t low = r & ((std::size_t{1} << bit) - 1);
        const std::size_t high = r >> bit;
        return (high << (bit + 1)) | (b << bit) | low;
    };
    ComplexMatrix out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            for (std::size_t b = 0; b < 2; ++b) {
                out(i, j) += rho(insert(i, b), insert(j, b));
            }
        }
    }
    return out;
}

/// Partial transpose on qubit `q` of an n-qubit matrix by swapping its bits.
inline ComplexMatrix reference_partial_transpose(const ComplexMatrix &rho, std::size_t n,
                                                 std::size_t q) {
    const std::size_t bit = n - 1 - q;
    const std::size_t mask = std::size_t{1} << bit;
    ComplexMatrix out(rho.rows(), rho.cols());
    for (std::size_t i = 0; i < rho.rows(); ++i) {
        for (std::size_t j = 0; j < rho.cols(); ++j) {
            const std::size_t i2 = (i & ~mask) | (j & mask);
            const std::size_t j2 = (j & ~mask) | (i & mask);
            out(i2, j2) = rho(i, j);
        }
    }
    return out;
}

inline double reference_negativity(const ComplexMatrix &rho, std::size_t n, std::size_t q) {
    double s = 0.0;
    for (double v : reference_eigenvalues(reference_partial_transpose(rho, n, q))) {
        s += std::abs(v);
    }
    return 0.5 * (s - 1.0);
}


/// Entropy in bits of the 2x2 Hermitian matrix [[a, b], [conj b, d]].
inline double entropy2(double a, double d, Complex b) {
    const double mean = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
    double s = 0.0;
    for (double p : {mean + rad, mean - rad}) {
        if (p > 1e-300) {
            s -= p * std::log2(p);
        }
    }
    return s;
}

/// Measured conditional entropy with explicit projectors on qubit A.
inline double reference_conditional(const ComplexMatrix &rho, double theta, double phi) {
    const Complex c = std::cos(theta / 2);
    const Complex s = std::polar(std::sin(theta / 2), phi);
    const std::array<std::array<Complex, 2>, 2> kets{{{c, s}, {-std::conj(s), c}}};
    double total = 0.0;
    for (const auto &k : kets) {
        // <k|_A rho |k>_A, a 2x2 block on B.
        Complex m[2][2] = {};
        for (int b1 = 0; b1 < 2; ++b1) {
            for (int b2 = 0; b2 < 2; ++b2) {
                for (int a1 = 0; a1 < 2; ++a1) {
                    for (int a2 = 0; a2 < 2; ++a2) {
                        m[b1][b2] += std::conj(k[a1]) * rho(2 * a1 + b1, 2 * a2 + b2) * k[a2];
                    }
                }
            }
        }
        const double p = (m[0][0] + m[1][1]).real();
        if (p > 1e-300) {
            total += p * entropy2(m[0][0].real() / p, m[1][1].real() / p, m[0][1] / p);
        }
    }
    return total;
}

/// Discord measured on A with the measurement minimised over a 1-degree grid.
inline double brute_force_discord(const ComplexMatrix &rho) {
    double best = std::numeric_limits<double>::infinity();
    const double deg = std::numbers::pi / 180.0;
    for (int it = 0; it <= 180; ++it) {
        for (int ip = 0; ip < 360; ++ip) {
            best = std::min(best, reference_conditional(rho, it * deg, ip * deg));
        }
    }
    const auto rho_a = reference_trace_out(rho, 2, 1);
    return reference_entropy_bits(rho_a) - reference_entropy_bits(rho) + best;
}

} // namespace spinglow::testing
