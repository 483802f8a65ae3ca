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
 * @file cli.hpp
 * Command-line front end. `run_cli` is separate from `main` so the commands
 * can be exercised in-process by the test suite.
 *
 * Exit codes: 0 success, 1 internal failure, 2 invalid arguments or input,
 * 3 data that cannot identify the requested quantity.
 */

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <spinglow/spinglow.hpp>

namespace spinglow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnidentifiable = 3;

/// Parses a number with an optional trailing "pi" factor ("pi", "-pi", "0.5pi").
inline double parse_scalar(std::string text) {
    double factor = 1.0;
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
        factor = std::numbers::pi;
        text.erase(text.size() - 2);
        if (text.empty() || text == "+") {
            text = "1";
        } else if (text == "-") {
            text = "-1";
        } else if (text.back() == '*') {
            text.pop_back();
        }
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        throw ValidationError("cannot parse number '" + text + "'");
    }
    if (used != text.size()) {
        throw ValidationError("cannot parse number '" + text + "'");
    }
    return v * factor;
}

/// "name:start:stop[:count]" with count defaulting to 200.
inline Axis parse_axis(const std::string &spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ':')) {
        parts.push_back(part);
    }
    if (parts.size() != 3 && parts.size() != 4) {
        throw ValidationError("axis spec must be name:start:stop[:count], got '" + spec + "'");
    }
    Axis axis;
    axis.parameter = parse_parameter(parts[0]);
    const double start = parse_scalar(parts[1]);
    const double stop = parse_scalar(parts[2]);
    std::size_t count = 200;
    if (parts.size() == 4) {
        const double c = parse_scalar(parts[3]);
        if (!(c >= 1.0) || c != std::floor(c)) {
            throw ValidationError("axis count must be a positive integer");
        }
        count = static_cast<std::size_t>(c);
    }
    if (stop < start) {
        throw ValidationError("axis stop must not be below start");
    }
    axis.values = linspace(start, stop, count);
    return axis;
}

struct Output {
    std::string path;
    /// Empty until parsing picks the command default.
    std::string format;
};

/// Emit `body` to the output path (atomically) or to `out` when no path is set.
inline void emit(const Output &o, const std::string &body, std::ostream &out) {
    if (o.path.empty()) {
        out << body;
        return;
    }
    write_file_atomic(o.path, body);
}

inline Json manifest(const std::string &command, Json parameters, const Output &o) {
    return Json{{"command", command},
                {"parameters", std::move(parameters)},
                {"output", o.path.empty() ? Json("-") : Json(o.path)},
                {"format", o.format},
                {"version", kVersion}};
}

/// JSON results embed the manifest; CSV results get a `.manifest.json` sidecar.
inline void emit_result(const Output &o, const Json &man, Json json_body,
                        const std::string &csv_body, std::ostream &out) {
    if (o.format == "csv") {
        if (!o.path.empty()) {
            write_file_atomic(o.path + ".manifest.json", man.dump(2) + "\n");
        }
        emit(o, csv_body, out);
        return;
    }
    json_body["manifest"] = man;
    emit(o, json_body.dump(2) + "\n", out);
}

inline void add_output_options(CLI::App *cmd, Output &o, bool csv_allowed) {
    cmd->add_option("--out,-o", o.path, "Output file (stdout when omitted)");
    if (csv_allowed) {
        cmd->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
    }
}

inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"spinglow: radiation and correlations of dipole-coupled two-level atoms"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    double omega = 1.0;
    std::size_t atoms = 3;
    double temperature = 5e-3;
    double lambda_over_d = 2.0;
    double theta = std::numbers::pi / 2;
    Output output;

    auto add_omega = [&](CLI::App *c) {
        c->add_option("--omega-ratio", omega, "omega / Omega")->capture_default_str();
    };
    auto add_atoms = [&](CLI::App *c, std::size_t lo, std::size_t hi) {
        c->add_option("--atoms,-n", atoms, "Number of atoms")
            ->check(CLI::Range(lo, hi))
            ->capture_default_str();
    };
    auto add_temperature = [&](CLI::App *c) {
        c->add_option("--temperature,-t", temperature, "k_B T / (hbar Omega)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };
    auto add_geometry = [&](CLI::App *c) {
        c->add_option("--lambda-over-d", lambda_over_d, "lambda / d")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        c->add_option("--theta", theta, "Observation angle in radians")->capture_default_str();
    };

    auto *spectrum = app.add_subcommand("spectrum", "Eigenvalues of the line Hamiltonian");
    add_omega(spectrum);
    add_atoms(spectrum, 1, 5);
    add_output_options(spectrum, output, true);

    auto *thermal = app.add_subcommand("thermal", "Gibbs density matrix");
    add_omega(thermal);
    add_atoms(thermal, 1, 5);
    add_temperature(thermal);
    add_output_options(thermal, output, false);

    auto *intensity = app.add_subcommand("intensity", "Far-field intensity at one point");
    add_omega(intensity);
    add_atoms(intensity, 1, 5);
    add_temperature(intensity);
    add_geometry(intensity);
    add_output_options(intensity, output, false);

    auto *g2 = app.add_subcommand("g2", "Zero-delay photon correlation at one point");
    add_omega(g2);
    add_atoms(g2, 1, 5);
    add_temperature(g2);
    add_geometry(g2);
    add_output_options(g2, output, false);

    std::string side = "A";
    auto *qc = app.add_subcommand("qc", "Concurrence, discord, negativities, monogamy");
    add_omega(qc);
    add_atoms(qc, 2, 3);
    add_temperature(qc);
    qc->add_option("--side", side, "Measured qubit for discord")
        ->check(CLI::IsMember({"A", "B"}));
    add_output_options(qc, output, false);

    std::string observable = "intensity";
    std::string x_spec;
    std::string y_spec;
    std::vector<std::string> fixed_specs;
    auto *sweep_cmd = app.add_subcommand("sweep", "Two-parameter grid of an observable");
    sweep_cmd->add_option("--observable", observable, "Quantity on the grid")
        ->check(CLI::IsMember({"intensity", "g2", "concurrence", "discord", "negativity",
                               "monogamy"}));
    sweep_cmd->add_option("--x", x_spec, "name:start:stop[:count]")->required();
    sweep_cmd->add_option("--y", y_spec, "name:start:stop[:count]")->required();
    sweep_cmd->add_option("--fixed", fixed_specs, "key=value for a held parameter");
    add_output_options(sweep_cmd, output, true);

    std::size_t theta_points = 73;
    auto *conformance = app.add_subcommand("conformance",
                                           "Published closed forms against the trace path");
    add_omega(conformance);
    add_temperature(conformance);
    conformance->add_option("--lambda-over-d", lambda_over_d, "lambda / d")
        ->check(CLI::PositiveNumber);
    conformance->add_option("--theta-points", theta_points, "Theta grid size")
        ->check(CLI::Range(2, 100000));
    add_output_options(conformance, output, false);

    std::string data_path;
    double wavelength = 1.0;
    auto *estimate = app.add_subcommand("estimate", "Fit inter-atomic spacing to intensity data");
    estimate->add_option("--data", data_path, "CSV of theta,intensity rows")->required();
    estimate->add_option("--lambda", wavelength, "Emission wavelength")
        ->check(CLI::PositiveNumber);
    add_omega(estimate);
    add_atoms(estimate, 1, 5);
    add_temperature(estimate);
    add_output_options(estimate, output, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion &) {
        out << kVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        const auto *sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitUsage;
    }
    if (output.format.empty()) {
        output.format = sweep_cmd->parsed() ? "csv" : "json";
    }

    try {
        if (spectrum->parsed()) {
            const auto cfg = SystemConfig::line(atoms, omega);
            const auto eig = hermitian_eig(build_hamiltonian(cfg));
            Json body{{"n_atoms", atoms}, {"omega_over_Omega", omega},
                      {"eigenvalues", eig.eigenvalues}};
            std::vector<double> analytic;
            if (atoms == 3) {
                const auto s = analytic_line_spectrum(omega);
                analytic.assign(s.energies.begin(), s.energies.end());
                std::sort(analytic.begin(), analytic.end());
                double dev = 0.0;
                for (std::size_t k = 0; k < analytic.size(); ++k) {
                    dev = std::max(dev, std::abs(analytic[k] - eig.eigenvalues[k]));
                }
                body["analytic"] = analytic;
                body["max_deviation"] = dev;
            }
            std::ostringstream csv;
            csv << "index,numeric" << (analytic.empty() ? "" : ",analytic") << "\n";
            for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
                csv << k << ',' << format_double(eig.eigenvalues[k]);
                if (!analytic.empty()) {
                    csv << ',' << format_double(analytic[k]);
                }
                csv << '\n';
            }
            emit_result(output, manifest("spectrum", {{"omega_over_Omega", omega}, {"n_atoms", atoms}}, output),
                        body, csv.str(), out);
        } else if (thermal->parsed()) {
            const auto st = thermal_state(SystemConfig::line(atoms, omega), temperature);
            Json body{{"n_atoms", atoms},
                      {"omega_over_Omega", omega},
                      {"temperature", temperature},
                      {"beta", st.beta},
                      {"log_z", st.log_z},
                      {"z_numeric", json_number(st.z_numeric())},
                      {"entropy_bits", von_neumann_entropy(st.rho)},
                      {"rho", matrix_to_json(st.rho)}};
            emit_result(output,
                        manifest("thermal", {{"omega_over_Omega", omega}, {"n_atoms", atoms},
                                             {"temperature", temperature}}, output),
                        body, "", out);
        } else if (intensity->parsed() || g2->parsed()) {
            const bool want_g2 = g2->parsed();
            const auto ops = build_spin_operators(atoms);
            const auto st = thermal_state(
                hermitian_eig(build_hamiltonian(SystemConfig::line(atoms, omega), ops)), temperature);
            const auto obs = ObservationPoint::from_spacing(theta, lambda_over_d);
            const auto sample = radiation_sample(st.rho, ops, obs);
            Json params{{"omega_over_Omega", omega}, {"n_atoms", atoms},
                        {"temperature", temperature}, {"lambda_over_d", lambda_over_d},
                        {"theta", theta}};
            Json body{{"intensity", sample.intensity},
                      {"classification", to_string(sample.classification)},
                      {"g2", sample.g2 ? Json(*sample.g2) : Json(nullptr)}};
            if (want_g2 && !sample.g2) {
                err << "error: g2 undefined, intensity " << format_double(sample.intensity)
                    << " is below the 1e-12 floor\n";
                return kExitUsage;
            }
            if (!want_g2) {
                const auto parts = decompose_intensity(emission_correlations(st.rho, ops), obs);
                body["incoherent"] = parts.incoherent;
                body["dipole"] = parts.dipole;
                body["correlation"] = parts.correlation;
            }
            emit_result(output, manifest(want_g2 ? "g2" : "intensity", params, output), body, "",
                        out);
        } else if (qc->parsed()) {
            const auto r = thermal_qc_report(SystemConfig::line(atoms, omega), temperature,
                                             side == "A" ? MeasuredSide::A : MeasuredSide::B);
            emit_result(output,
                        manifest("qc", {{"omega_over_Omega", omega}, {"n_atoms", atoms},
                                        {"temperature", temperature}, {"side", side}}, output),
                        qc_report_to_json(r), "", out);
        } else if (sweep_cmd->parsed()) {
            const auto x = parse_axis(x_spec);
            const auto y = parse_axis(y_spec);
            SweepPoint fixed;
            Json fixed_json = Json::object();
            for (const auto &kv : fixed_specs) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    throw ValidationError("--fixed expects key=value, got '" + kv + "'");
                }
                const auto key = kv.substr(0, eq);
                const double v = parse_scalar(kv.substr(eq + 1));
                if (key == "n_atoms" || key == "atoms") {
                    if (v != std::floor(v) || v < 1 || v > 5) {
                        throw ValidationError("n_atoms must be an integer in [1, 5]");
                    }
                    fixed.n_atoms = static_cast<std::size_t>(v);
                } else {
                    const auto p = parse_parameter(key);
                    if (p == x.parameter || p == y.parameter) {
                        throw ValidationError("--fixed " + key + " conflicts with a swept axis");
                    }
                    fixed.set(p, v);
                }
                fixed_json[key] = v;
            }
            const auto grid = sweep(parse_observable(observable), x, y, fixed);
            std::ostringstream csv;
            write_grid_csv(grid, csv);
            emit_result(output,
                        manifest("sweep", {{"observable", observable}, {"x", x_spec},
                                           {"y", y_spec}, {"fixed", point_to_json(fixed)}},
                                 output),
                        grid_to_json(grid), csv.str(), out);
        } else if (conformance->parsed()) {
            const auto rep = conformance_report(omega, temperature, lambda_over_d, theta_points);
            emit_result(output,
                        manifest("conformance", {{"omega_over_Omega", omega},
                                                 {"temperature", temperature},
                                                 {"lambda_over_d", lambda_over_d},
                                                 {"theta_points", theta_points}}, output),
                        conformance_to_json(rep), "", out);
        } else if (estimate->parsed()) {
            std::ifstream in(data_path);
            if (!in) {
                err << "error: cannot open " << data_path << "\n";
                return kExitUsage;
            }
            const auto samples = read_samples_csv(in);
            const auto r = estimate_distance(samples, wavelength, atoms, omega, temperature);
            emit_result(output,
                        manifest("estimate", {{"data", data_path}, {"lambda", wavelength},
                                              {"omega_over_Omega", omega}, {"n_atoms", atoms},
                                              {"temperature", temperature}}, output),
                        estimation_to_json(r), "", out);
        }
    } catch (const Unidentifiable &e) {
        err << "error: " << e.what() << "\n";
        return kExitUnidentifiable;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ShapeError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedConfiguration &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace spinglow::cli
