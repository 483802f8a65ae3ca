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

#include <cstddef>
#include <optional>
#include <string>

#include "correlations.hpp"
#include "errors.hpp"
#include "spin_model.hpp"
#include "subsystems.hpp"
#include "thermal.hpp"

namespace spinglow {

/// Quantum-correlation summary of a thermal state. Atom labels are 1-based.
struct QCReport {
    std::size_t n_atoms = 0;
    double temperature = 0.0;
    /// Adjacent pair (1,2).
    double concurrence = 0.0;
    double discord = 0.0;
    /// Next-nearest pair (1,3); N = 3 only.
    std::optional<double> concurrence_1_3;
    std::optional<double> discord_1_3;
    /// For N = 2 this is the 1:2 negativity of the whole state.
    double negativity_1_23 = 0.0;
    double negativity_1_2 = 0.0;
    std::optional<double> negativity_1_3;
    std::optional<double> monogamy_score;
    std::string pair_label = "1,2";
    MeasuredSide discord_side = MeasuredSide::A;
};

inline QCReport qc_report(const ComplexMatrix &rho, std::size_t n_atoms,
                          MeasuredSide side = MeasuredSide::A,
                          const DiscordOptions &opt = {}) {
    if (n_atoms != 2 && n_atoms != 3) {
        throw UnsupportedConfiguration(
            "qc_report: only N = 2 or N = 3 is supported, got " +
            std::to_string(n_atoms));
    }
    const auto dims = qubit_dims(n_atoms);
    QCReport r;
    r.n_atoms = n_atoms;
    r.discord_side = side;
    if (n_atoms == 2) {
        r.concurrence = concurrence(rho);
        r.discord = quantum_discord(rho, side, opt);
        r.negativity_1_23 = negativity(rho, dims, {0});
        r.negativity_1_2 = r.negativity_1_23;
        return r;
    }
    const auto rho12 = partial_trace(rho, dims, {0, 1});
    const auto rho13 = partial_trace(rho, dims, {0, 2});
    r.concurrence = concurrence(rho12);
    r.discord = quantum_discord(rho12, side, opt);
    r.concurrence_1_3 = concurrence(rho13);
    r.discord_1_3 = quantum_discord(rho13, side, opt);
    const auto terms = monogamy_terms(rho, 0);
    r.negativity_1_23 = terms.focus_vs_rest;
    r.negativity_1_2 = terms.focus_vs_first;
    r.negativity_1_3 = terms.focus_vs_second;
    r.monogamy_score = terms.score();
    return r;
}

/// Build the Gibbs state of `cfg` at `temperature` and report its correlations.
inline QCReport thermal_qc_report(const SystemConfig &cfg, double temperature,
                                  MeasuredSide side = MeasuredSide::A,
                                  const DiscordOptions &opt = {}) {
    const auto state = thermal_state(cfg, temperature);
    auto r = qc_report(state.rho, cfg.n_atoms, side, opt);
    r.temperature = temperature;
    return r;
}

} // namespace spinglow
