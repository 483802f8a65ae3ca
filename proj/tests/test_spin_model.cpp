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

#include <algorithm>
#include <cmath>
#include <random>

#include "spinglow/eigensolver.hpp"
#include "spinglow/errors.hpp"
#include "spinglow/spin_model.hpp"
#include "support.hpp"

using namespace spinglow;
using namespace spinglow::testing;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<double> sorted_energies(double w) {
    const auto s = analytic_line_spectrum(w);
    std::vector<double> e(s.energies.begin(), s.energies.end());
    std::sort(e.begin(), e.end());
    return e;
}

} // namespace

TEST_CASE("spin operators: single atom", "[spin]") {
    const auto ops = build_spin_operators(1);
    REQUIRE(ops.s_plus.size() == 1);
    const auto &sp = ops.s_plus[0];
    const auto e = static_cast<std::size_t>(Level::excited);
    const auto g = static_cast<std::size_t>(Level::ground);
    CHECK(sp(e, g) == Complex{1.0, 0.0});
    CHECK(max_abs(sp) == 1.0);
    CHECK(std::abs(trace(sp)) == 0.0);
}

TEST_CASE("spin operators: algebraic invariants", "[spin]") {
    for (std::size_t n = 1; n <= kMaxAtoms; ++n) {
        const auto ops = build_spin_operators(n);
        CHECK(ops.dim() == (std::size_t{1} << n));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(ops.s_plus[i] == adjoint(ops.s_minus[i]));
            CHECK(max_abs(ops.s_plus[i] * ops.s_plus[i]) == 0.0);
            // [S+, S-] = 2 S^z on the same site.
            CHECK(max_abs_diff(commutator(ops.s_plus[i], ops.s_minus[i]),
                               ops.s_z[i] * Complex{2.0}) == 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    CHECK(max_abs(commutator(ops.s_z[i], ops.s_plus[j])) == 0.0);
                    CHECK(max_abs(commutator(ops.s_plus[i], ops.s_minus[j])) == 0.0);
                }
            }
        }
    }
}

TEST_CASE("spin operators: pair term Hermitian and distant commutator", "[spin]") {
    const auto two = build_spin_operators(2);
    const auto term = two.s_plus[0] * two.s_minus[1] + two.s_plus[1] * two.s_minus[0];
    CHECK(hermiticity_defect(term) == 0.0);
    const auto three = build_spin_operators(3);
    CHECK(max_abs(commutator(three.s_plus[0], three.s_minus[2])) == 0.0);
}

TEST_CASE("spin operators: out of range", "[spin]") {
    CHECK_THROWS_AS(build_spin_operators(0), ValidationError);
    CHECK_THROWS_AS(build_spin_operators(6), ValidationError);
}

TEST_CASE("system config validation", "[spin]") {
    auto cfg = SystemConfig::line(3, 1.0);
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.coupling[0][1] == 1.0);
    CHECK(cfg.coupling[1][2] == 1.0);
    CHECK(cfg.coupling[0][2] == 0.0);

    auto asym = cfg;
    asym.coupling[0][1] = 0.5;
    CHECK_THROWS_AS(asym.validate(), ValidationError);
    auto diag = cfg;
    diag.coupling[1][1] = 1.0;
    CHECK_THROWS_AS(diag.validate(), ValidationError);
    auto neg = cfg;
    neg.coupling[0][2] = neg.coupling[2][0] = -1.0;
    CHECK_THROWS_AS(neg.validate(), ValidationError);
    auto spacing = cfg;
    spacing.lambda_over_d = 0.0;
    CHECK_THROWS_AS(spacing.validate(), ValidationError);
    CHECK_THROWS_AS(SystemConfig::line(6, 1.0).validate(), ValidationError);
    CHECK_THROWS_AS(build_hamiltonian(cfg, build_spin_operators(2)), ShapeError);
}

TEST_CASE("hamiltonian: single atom", "[spin]") {
    const auto h = build_hamiltonian(SystemConfig::line(1, 2.0));
    CHECK(h == ComplexMatrix::diagonal({1.0, -1.0}));
}

TEST_CASE("hamiltonian: Hermitian and excitation conserving", "[spin]") {
    for (std::size_t n = 1; n <= kMaxAtoms; ++n) {
        for (double w : {0.0, 0.3, 1.0, 7.5}) {
            const auto cfg = SystemConfig::line(n, w);
            const auto ops = build_spin_operators(n);
            const auto h = build_hamiltonian(cfg, ops);
            CHECK(hermiticity_defect(h) < 1e-14);
            ComplexMatrix total(ops.dim(), ops.dim());
            for (const auto &sz : ops.s_z) {
                total += sz;
            }
            CHECK(max_abs(commutator(h, total)) < 1e-12);
        }
    }
}

TEST_CASE("hamiltonian: omega = 0 spectrum", "[spin]") {
    const double r2 = std::sqrt(2.0);
    const std::vector<double> expected{-r2, -r2, 0.0, 0.0, 0.0, 0.0, r2, r2};
    CHECK(max_abs_diff(eigenvalues(build_hamiltonian(SystemConfig::line(3, 0.0))), expected) <
          1e-12);
}

TEST_CASE("hamiltonian: numeric spectrum matches closed forms", "[spin]") {
    for (double w : {0.1, 0.5, 1.0, std::sqrt(2.0), 2.0, 5.0, 10.0}) {
        const auto numeric = eigenvalues(build_hamiltonian(SystemConfig::line(3, w)));
        CHECK(max_abs_diff(numeric, sorted_energies(w)) < 1e-10);
    }
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int t = 0; t < 100; ++t) {
        const double w = 10.0 - u(rng);
        const auto numeric = eigenvalues(build_hamiltonian(SystemConfig::line(3, w)));
        CHECK(max_abs_diff(numeric, sorted_energies(w)) < 1e-10);
    }
}

TEST_CASE("analytic spectrum: examples", "[spin]") {
    const auto s = analytic_line_spectrum(2.0);
    CHECK_THAT(s.energies[1], WithinAbs(-std::sqrt(2.0) - 1.0, 1e-15));
    const double h = 1.0 / std::sqrt(2.0);
    using L = Level;
    std::vector<Complex> psi3(8);
    psi3[basis_index({L::ground, L::ground, L::excited})] = h;
    psi3[basis_index({L::excited, L::ground, L::ground})] = -h;
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(std::abs(s.states[2][k] - psi3[k]) < 1e-15);
    }
    CHECK(s.labels[2] == "psi3");
    CHECK_THROWS_AS(analytic_line_spectrum(1.0, 4), UnsupportedConfiguration);
}

TEST_CASE("analytic spectrum: orthonormal eigenvectors of the numeric Hamiltonian", "[spin]") {
    for (double w : {0.0, 1.0, 2.0, 4.5}) {
        const auto s = analytic_line_spectrum(w);
        const auto h = build_hamiltonian(SystemConfig::line(3, w));
        for (std::size_t i = 0; i < 8; ++i) {
            for (std::size_t j = 0; j < 8; ++j) {
                Complex ip{};
                for (std::size_t k = 0; k < 8; ++k) {
                    ip += std::conj(s.states[i][k]) * s.states[j][k];
                }
                CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-14);
            }
            // H psi = eps psi, element by element.
            for (std::size_t r = 0; r < 8; ++r) {
                Complex hv{};
                for (std::size_t k = 0; k < 8; ++k) {
                    hv += h(r, k) * s.states[i][k];
                }
                CHECK(std::abs(hv - s.energies[i] * s.states[i][r]) < 1e-14);
            }
        }
    }
}

TEST_CASE("ground-state crossover", "[spin]") {
    CHECK_THAT(ground_state_crossover(), WithinAbs(std::sqrt(2.0), 1e-9));
    CHECK(analytic_ground_level(2.0) == 0);
    CHECK(analytic_ground_level(1.0) == 1);
    CHECK_THAT(analytic_line_spectrum(1.0).energies[1], WithinAbs(-1.9142135623730951, 1e-12));
}
