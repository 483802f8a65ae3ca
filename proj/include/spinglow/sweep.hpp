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
 * @file sweep.hpp
 * Two-dimensional parameter sweeps over (omega/Omega, theta, lambda/d, T).
 *
 * Cells are evaluated independently and may run on several threads; each
 * thread writes a disjoint index range so the output does not depend on the
 * thread count.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "qc_report.hpp"
#include "radiation.hpp"
#include "spin_model.hpp"
#include "thermal.hpp"

namespace spinglow {

enum class Parameter { omega_over_Omega, theta, lambda_over_d, temperature };

inline const char *to_string(Parameter p) {
    switch (p) {
    case Parameter::omega_over_Omega:
        return "omega_over_Omega";
    case Parameter::theta:
        return "theta";
    case Parameter::lambda_over_d:
        return "lambda_over_d";
    case Parameter::temperature:
        return "temperature";
    }
    return "";
}

inline Parameter parse_parameter(const std::string &name) {
    if (name == "omega_over_Omega" || name == "omega") {
        return Parameter::omega_over_Omega;
    }
    if (name == "theta") {
        return Parameter::theta;
    }
    if (name == "lambda_over_d") {
        return Parameter::lambda_over_d;
    }
    if (name == "temperature") {
        return Parameter::temperature;
    }
    throw ValidationError("unknown sweep parameter '" + name + "'");
}

enum class Observable { intensity, g2, concurrence, discord, negativity, monogamy };

inline const char *to_string(Observable o) {
    switch (o) {
    case Observable::intensity:
        return "intensity";
    case Observable::g2:
        return "g2";
    case Observable::concurrence:
        return "concurrence";
    case Observable::discord:
        return "discord";
    case Observable::negativity:
        return "negativity";
    case Observable::monogamy:
        return "monogamy";
    }
    return "";
}

inline Observable parse_observable(const std::string &name) {
    for (auto o : {Observable::intensity, Observable::g2, Observable::concurrence,
                   Observable::discord, Observable::negativity, Observable::monogamy}) {
        if (name == to_string(o)) {
            return o;
        }
    }
    throw ValidationError("unknown observable '" + name + "'");
}

/// A single set of physical parameters.
struct SweepPoint {
    std::size_t n_atoms = 3;
    double omega_over_Omega = 1.0;
    double theta = 0.0;
    double lambda_over_d = 2.0;
    double temperature = 5e-3;

    [[nodiscard]] double get(Parameter p) const {
        switch (p) {
        case Parameter::omega_over_Omega:
            return omega_over_Omega;
        case Parameter::theta:
            return theta;
        case Parameter::lambda_over_d:
            return lambda_over_d;
        case Parameter::temperature:
            return temperature;
        }
        return 0.0;
    }

    void set(Parameter p, double v) {
        switch (p) {
        case Parameter::omega_over_Omega:
            omega_over_Omega = v;
            break;
        case Parameter::theta:
            theta = v;
            break;
        case Parameter::lambda_over_d:
            lambda_over_d = v;
            break;
        case Parameter::temperature:
            temperature = v;
            break;
        }
    }

    [[nodiscard]] ObservationPoint observation() const {
        return ObservationPoint::from_spacing(theta, lambda_over_d);
    }
};

struct Axis {
    Parameter parameter = Parameter::theta;
    std::vector<double> values;
};

/// `count` evenly spaced values from `start` to `stop` inclusive.
inline std::vector<double> linspace(double start, double stop, std::size_t count) {
    if (count == 0) {
        throw ValidationError("linspace: count must be positive");
    }
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = start;
        return out;
    }
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = start + step * static_cast<double>(i);
    }
    out.back() = stop;
    return out;
}

struct SweepGrid {
    Observable observable = Observable::intensity;
    Axis x;
    Axis y;
    /// Row-major, row = y index. NaN marks a g2 cell with vanishing intensity.
    std::vector<double> values;
    SweepPoint fixed;
    std::size_t undefined_cells = 0;

    [[nodiscard]] double at(std::size_t iy, std::size_t ix) const {
        return values[iy * x.values.size() + ix];
    }
};

/// Worker count: explicit request, else SPINGLOW_THREADS, else hardware.
inline std::size_t resolve_threads(std::size_t requested = 0) {
    if (requested > 0) {
        return requested;
    }
    if (const char *env = std::getenv("SPINGLOW_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Run body(i) for i in [0, count) across `threads` workers in fixed blocks.
inline void parallel_for(std::size_t count, std::size_t threads,
                         const std::function<void(std::size_t)> &body) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t block = (count + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                const std::size_t lo = t * block;
                const std::size_t hi = std::min(count, lo + block);
                for (std::size_t i = lo; i < hi; ++i) {
                    body(i);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

inline bool is_state_parameter(Parameter p) {
    return p == Parameter::omega_over_Omega || p == Parameter::temperature;
}

inline void validate_point(const SweepPoint &p) {
    if (p.n_atoms < 1 || p.n_atoms > kMaxAtoms) {
        throw ValidationError("sweep: n_atoms must be in [1, 5]");
    }
    if (!(p.temperature > 0.0)) {
        throw ValidationError("sweep: temperature must be > 0");
    }
    if (!(p.lambda_over_d > 0.0)) {
        throw ValidationError("sweep: lambda_over_d must be > 0");
    }
}

namespace detail {

/// State-derived data shared by every cell with the same (omega, T).
struct CellState {
    ComplexMatrix rho;
    EmissionCorrelations correlations;
    double qc_value = 0.0;
};

inline double qc_value(Observable o, const ComplexMatrix &rho, std::size_t n_atoms) {
    const auto dims = qubit_dims(n_atoms);
    switch (o) {
    case Observable::concurrence:
        return concurrence(n_atoms == 2 ? rho : partial_trace(rho, dims, {0, 1}));
    case Observable::discord:
        return quantum_discord(n_atoms == 2 ? rho : partial_trace(rho, dims, {0, 1}));
    case Observable::negativity:
        return negativity(rho, dims, {0});
    case Observable::monogamy:
        if (n_atoms != 3) {
            throw UnsupportedConfiguration("monogamy sweep requires N = 3");
        }
        return monogamy_score(rho, 0);
    default:
        return 0.0;
    }
}

inline bool is_qc(Observable o) {
    return o != Observable::intensity && o != Observable::g2;
}

} // namespace detail

/// Direct evaluation of one observable at one point, without caching.
inline double evaluate_point(Observable observable, const SweepPoint &p) {
    validate_point(p);
    const auto cfg = SystemConfig::line(p.n_atoms, p.omega_over_Omega, p.lambda_over_d);
    const auto ops = build_spin_operators(p.n_atoms);
    const auto state = thermal_state(hermitian_eig(build_hamiltonian(cfg, ops)), p.temperature);
    switch (observable) {
    case Observable::intensity:
        return intensity_numeric(state.rho, ops, p.observation());
    case Observable::g2:
        return g2_numeric(state.rho, ops, p.observation());
    default:
        if ((observable == Observable::concurrence || observable == Observable::discord) &&
            p.n_atoms < 2) {
            throw UnsupportedConfiguration("pair measures need at least 2 atoms");
        }
        return detail::qc_value(observable, state.rho, p.n_atoms);
    }
}

struct SweepOptions {
    std::size_t threads = 0;
};

/**
 * Evaluate `observable` on the Cartesian product of the two axes with all
 * other parameters taken from `fixed`.
 */
inline SweepGrid sweep(Observable observable, const Axis &x, const Axis &y,
                       const SweepPoint &fixed, const SweepOptions &opt = {}) {
    if (x.parameter == y.parameter) {
        throw ValidationError(std::string("sweep: x and y both set to ") +
                              to_string(x.parameter));
    }
    if (x.values.empty() || y.values.empty()) {
        throw ValidationError("sweep: axes must be non-empty");
    }
    for (const auto *axis : {&x, &y}) {
        if (!std::is_sorted(axis->values.begin(), axis->values.end())) {
            throw ValidationError(std::string("sweep: axis ") +
                                  to_string(axis->parameter) + " must be sorted");
        }
        for (double v : axis->values) {
            SweepPoint probe = fixed;
            probe.set(axis->parameter, v);
            validate_point(probe);
        }
    }
    validate_point(fixed);
    if (detail::is_qc(observable) && fixed.n_atoms < 2) {
        throw UnsupportedConfiguration("sweep: correlation measures need at least 2 atoms");
    }

    const std::size_t nx = x.values.size();
    const std::size_t ny = y.values.size();
    const bool x_state = is_state_parameter(x.parameter);
    const bool y_state = is_state_parameter(y.parameter);
    const std::size_t sx = x_state ? nx : 1;
    const std::size_t sy = y_state ? ny : 1;
    const std::size_t threads = resolve_threads(opt.threads);
    const auto ops = build_spin_operators(fixed.n_atoms);

    std::vector<detail::CellState> states(sx * sy);
    parallel_for(states.size(), threads, [&](std::size_t k) {
        SweepPoint p = fixed;
        if (x_state) {
            p.set(x.parameter, x.values[k % sx]);
        }
        if (y_state) {
            p.set(y.parameter, y.values[k / sx]);
        }
        const auto cfg = SystemConfig::line(p.n_atoms, p.omega_over_Omega);
        const auto st = thermal_state(hermitian_eig(build_hamiltonian(cfg, ops)), p.temperature);
        auto &cell = states[k];
        cell.rho = st.rho;
        if (detail::is_qc(observable)) {
            cell.qc_value = detail::qc_value(observable, st.rho, p.n_atoms);
        } else {
            cell.correlations = emission_correlations(st.rho, ops);
        }
    });

    SweepGrid grid;
    grid.observable = observable;
    grid.x = x;
    grid.y = y;
    grid.fixed = fixed;
    grid.values.assign(nx * ny, 0.0);
    std::vector<char> undefined(nx * ny, 0);

    parallel_for(nx * ny, threads, [&](std::size_t idx) {
        const std::size_t ix = idx % nx;
        const std::size_t iy = idx / nx;
        SweepPoint p = fixed;
        p.set(x.parameter, x.values[ix]);
        p.set(y.parameter, y.values[iy]);
        const auto &cell = states[(y_state ? iy : 0) * sx + (x_state ? ix : 0)];
        switch (observable) {
        case Observable::intensity:
            grid.values[idx] = cell.correlations.intensity(p.observation());
            break;
        case Observable::g2:
            try {
                grid.values[idx] = g2_numeric(cell.rho, ops, p.observation());
            } catch (const UndefinedCorrelation &) {
                grid.values[idx] = std::numeric_limits<double>::quiet_NaN();
                undefined[idx] = 1;
            }
            break;
        default:
            grid.values[idx] = cell.qc_value;
            break;
        }
    });
    grid.undefined_cells =
        static_cast<std::size_t>(std::count(undefined.begin(), undefined.end(), 1));
    return grid;
}

inline SweepGrid sweep_intensity(const Axis &x, const Axis &y, const SweepPoint &fixed,
                                 const SweepOptions &opt = {}) {
    return sweep(Observable::intensity, x, y, fixed, opt);
}

inline SweepGrid sweep_g2(const Axis &x, const Axis &y, const SweepPoint &fixed,
                          const SweepOptions &opt = {}) {
    return sweep(Observable::g2, x, y, fixed, opt);
}

inline SweepGrid sweep_qc(Observable measure, const Axis &x, const Axis &y,
                          const SweepPoint &fixed, const SweepOptions &opt = {}) {
    if (!detail::is_qc(measure)) {
        throw ValidationError("sweep_qc: observable is not a correlation measure");
    }
    return sweep(measure, x, y, fixed, opt);
}

} // namespace spinglow
