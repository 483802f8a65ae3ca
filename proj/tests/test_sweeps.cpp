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

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "spinglow/errors.hpp"
#include "spinglow/io.hpp"
#include "spinglow/sweep.hpp"

using namespace spinglow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

Axis axis(Parameter p, double lo, double hi, std::size_t n) {
    return {p, linspace(lo, hi, n)};
}

void spot_check(const SweepGrid &grid, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> ux(0, grid.x.values.size() - 1);
    std::uniform_int_distribution<std::size_t> uy(0, grid.y.values.size() - 1);
    for (int k = 0; k < 10; ++k) {
        const std::size_t ix = ux(rng);
        const std::size_t iy = uy(rng);
        SweepPoint p = grid.fixed;
        p.set(grid.x.parameter, grid.x.values[ix]);
        p.set(grid.y.parameter, grid.y.values[iy]);
        const double cell = grid.at(iy, ix);
        double direct = std::numeric_limits<double>::quiet_NaN();
        try {
            direct = evaluate_point(grid.observable, p);
        } catch (const UndefinedCorrelation &) {
        }
        if (std::isnan(direct)) {
            CHECK(std::isnan(cell));
        } else {
            CHECK_THAT(cell, WithinAbs(direct, tol));
        }
    }
}

} // namespace

TEST_CASE("linspace", "[sweep]") {
    const auto v = linspace(0.0, 1.0, 5);
    CHECK(v == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(linspace(3.0, 4.0, 1) == std::vector<double>{3.0});
    CHECK_THROWS_AS(linspace(0.0, 1.0, 0), ValidationError);
}

TEST_CASE("parameter and observable names", "[sweep]") {
    for (auto p : {Parameter::omega_over_Omega, Parameter::theta, Parameter::lambda_over_d,
                   Parameter::temperature}) {
        CHECK(parse_parameter(to_string(p)) == p);
    }
    CHECK(parse_parameter("omega") == Parameter::omega_over_Omega);
    CHECK_THROWS_AS(parse_parameter("phi"), ValidationError);
    CHECK(parse_observable("g2") == Observable::g2);
    CHECK_THROWS_AS(parse_observable("entropy"), ValidationError);
}

TEST_CASE("sweep: single cell equals a direct call", "[sweep]") {
    SweepPoint fixed;
    fixed.lambda_over_d = 1.3;
    const Axis x{Parameter::theta, {0.4}};
    const Axis y{Parameter::omega_over_Omega, {0.8}};
    const auto grid = sweep_intensity(x, y, fixed);
    REQUIRE(grid.values.size() == 1);
    SweepPoint p = fixed;
    p.theta = 0.4;
    p.omega_over_Omega = 0.8;
    CHECK_THAT(grid.values[0], WithinAbs(evaluate_point(Observable::intensity, p), 1e-14));
    const auto g = sweep_g2(x, y, fixed);
    CHECK_THAT(g.values[0], WithinAbs(evaluate_point(Observable::g2, p), 1e-14));
}

TEST_CASE("sweep: infinite temperature is flat", "[sweep]") {
    SweepPoint fixed;
    fixed.temperature = std::numeric_limits<double>::infinity();
    const auto grid = sweep_intensity(axis(Parameter::omega_over_Omega, 0.0, 10.0, 30),
                                      axis(Parameter::theta, -kPi, kPi, 30), fixed);
    for (double v : grid.values) {
        CHECK_THAT(v, WithinAbs(1.5, 1e-13));
    }
}

TEST_CASE("sweep: omega-theta intensity map", "[sweep]") {
    SweepPoint fixed;
    fixed.lambda_over_d = 2.0;
    fixed.temperature = 5e-3;
    const auto grid = sweep_intensity(axis(Parameter::omega_over_Omega, 0.0, 10.0, 60),
                                      axis(Parameter::theta, -kPi, kPi, 60), fixed);
    spot_check(grid, 41, 1e-12);
    auto column_spread = [&](std::size_t ix) {
        double lo = 1e300;
        double hi = -1e300;
        for (std::size_t iy = 0; iy < grid.y.values.size(); ++iy) {
            lo = std::min(lo, grid.at(iy, ix));
            hi = std::max(hi, grid.at(iy, ix));
        }
        return hi - lo;
    };
    // Below the crossover the ground state radiates with a theta pattern;
    // well above it the ground state is |ggg> and the map is flat.
    const std::size_t low = 6;  // omega ~ 1.0
    CHECK(grid.x.values[low] < std::sqrt(2.0));
    CHECK(column_spread(low) > 0.5);
    CHECK(column_spread(59) < 1e-10);
}

TEST_CASE("sweep: g2 over lambda/d and theta", "[sweep]") {
    SweepPoint fixed;
    fixed.omega_over_Omega = 1.0;
    const auto x = axis(Parameter::lambda_over_d, 0.2, 3.0, 100);
    std::vector<double> thetas;
    for (std::size_t k = 1; k <= 100; ++k) {
        thetas.push_back(-kPi + 2.0 * kPi * static_cast<double>(k) / 101.0);
    }
    const Axis y{Parameter::theta, thetas};

    fixed.temperature = 5e-3;
    const auto cold = sweep_g2(x, y, fixed);
    CHECK(cold.undefined_cells == 0);
    for (double v : cold.values) {
        CHECK(v < 1.0);
    }
    spot_check(cold, 42, 1e-12);

    fixed.temperature = 1.0;
    const auto warm = sweep_g2(x, y, fixed);
    const auto above = std::count_if(warm.values.begin(), warm.values.end(),
                                     [](double v) { return v > 1.0; });
    CHECK(above * 2 > static_cast<long>(warm.values.size()));
    spot_check(warm, 43, 1e-12);
}

TEST_CASE("sweep: undefined g2 cells are NaN and counted", "[sweep]") {
    SweepPoint fixed;
    fixed.omega_over_Omega = 10.0;
    fixed.temperature = 5e-3;
    const auto grid = sweep_g2(axis(Parameter::theta, -1.0, 1.0, 5),
                               axis(Parameter::lambda_over_d, 1.0, 2.0, 3), fixed);
    CHECK(grid.undefined_cells == grid.values.size());
    for (double v : grid.values) {
        CHECK(std::isnan(v));
    }
    std::ostringstream csv;
    write_grid_csv(grid, csv);
    CHECK(csv.str().find(",nan\n") != std::string::npos);
    CHECK(grid_to_json(grid)["values"][0][0].is_null());
}

TEST_CASE("sweep: correlation measures", "[sweep]") {
    SweepPoint fixed;
    const auto x = axis(Parameter::omega_over_Omega, 0.2, 3.0, 6);
    const auto y = axis(Parameter::temperature, 0.01, 2.0, 5);
    for (auto o : {Observable::concurrence, Observable::discord, Observable::negativity,
                   Observable::monogamy}) {
        const auto grid = sweep_qc(o, x, y, fixed);
        spot_check(grid, 44, 1e-9);
    }
    SweepPoint two = fixed;
    two.n_atoms = 2;
    spot_check(sweep_qc(Observable::concurrence, x, y, two), 45, 1e-12);
    SweepPoint one = fixed;
    one.n_atoms = 1;
    CHECK_THROWS_AS(sweep_qc(Observable::concurrence, x, y, one), UnsupportedConfiguration);
    SweepPoint four = fixed;
    four.n_atoms = 4;
    CHECK_THROWS_AS(sweep_qc(Observable::monogamy, x, y, four), UnsupportedConfiguration);
}

TEST_CASE("sweep: larger atom counts use the same path", "[sweep]") {
    for (std::size_t n : {4U, 5U}) {
        SweepPoint fixed;
        fixed.n_atoms = n;
        const auto grid = sweep_intensity(axis(Parameter::lambda_over_d, 0.5, 3.0, 12),
                                          axis(Parameter::theta, -1.5, 1.5, 9), fixed);
        spot_check(grid, 46 + n, 1e-12);
    }
}

TEST_CASE("sweep: deterministic across thread counts", "[sweep]") {
    SweepPoint fixed;
    const auto x = axis(Parameter::omega_over_Omega, 0.0, 4.0, 37);
    const auto y = axis(Parameter::theta, -kPi, kPi, 41);
    const auto a = sweep_g2(x, y, fixed, {1});
    const auto b = sweep_g2(x, y, fixed, {4});
    const auto c = sweep_g2(x, y, fixed, {7});
    std::ostringstream sa;
    std::ostringstream sb;
    std::ostringstream sc;
    write_grid_csv(a, sa);
    write_grid_csv(b, sb);
    write_grid_csv(c, sc);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str() == sc.str());
}

TEST_CASE("sweep: CSV layout", "[sweep]") {
    SweepPoint fixed;
    const auto grid = sweep_intensity(axis(Parameter::theta, 0.0, 1.0, 3),
                                      axis(Parameter::lambda_over_d, 1.0, 2.0, 2), fixed);
    std::ostringstream out;
    write_grid_csv(grid, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "theta,lambda_over_d,value");
    std::vector<std::pair<double, double>> keys;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        double xv = 0.0;
        double yv = 0.0;
        char comma = 0;
        row >> xv >> comma >> yv;
        keys.emplace_back(yv, xv);
    }
    CHECK(keys.size() == 6);
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    CHECK(out.str().find('\r') == std::string::npos);
    // Round trip at full precision.
    CHECK(std::stod(format_double(grid.values[1])) == grid.values[1]);
}

TEST_CASE("sweep: invalid requests", "[sweep]") {
    SweepPoint fixed;
    const auto t = axis(Parameter::theta, 0.0, 1.0, 3);
    CHECK_THROWS_AS(sweep_intensity(t, t, fixed), ValidationError);
    CHECK_THROWS_AS(sweep_intensity(t, Axis{Parameter::temperature, {0.0, 1.0}}, fixed),
                    ValidationError);
    CHECK_THROWS_AS(sweep_intensity(t, Axis{Parameter::lambda_over_d, {2.0, 1.0}}, fixed),
                    ValidationError);
    CHECK_THROWS_AS(sweep_intensity(t, Axis{Parameter::lambda_over_d, {}}, fixed),
                    ValidationError);
    SweepPoint bad = fixed;
    bad.n_atoms = 6;
    CHECK_THROWS_AS(sweep_intensity(t, axis(Parameter::lambda_over_d, 1.0, 2.0, 2), bad),
                    ValidationError);
}

TEST_CASE("thread count resolution", "[sweep]") {
    CHECK(resolve_threads(3) == 3);
    ::setenv("SPINGLOW_THREADS", "5", 1);
    CHECK(resolve_threads(0) == 5);
    ::setenv("SPINGLOW_THREADS", "0", 1);
    CHECK(resolve_threads(0) >= 1);
    ::unsetenv("SPINGLOW_THREADS");
    CHECK(resolve_threads(0) >= 1);
}
