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
 * @file io.hpp
 * Serialization of sweep grids and reports.
 *
 * Grid CSV is long form with header `x_name,y_name,value`, rows ordered by y
 * then x, LF endings. Non-finite values are written as `nan` in CSV and null
 * in JSON. Doubles are printed with 17 significant digits.
 */

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "conformance.hpp"
#include "errors.hpp"
#include "estimation.hpp"
#include "qc_report.hpp"
#include "sweep.hpp"
#include "version.hpp"

namespace spinglow {

using Json = nlohmann::json;

inline std::string format_double(double v) {
    if (!std::isfinite(v)) {
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline Json json_number(double v) {
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

inline void write_grid_csv(const SweepGrid &grid, std::ostream &out) {
    out << to_string(grid.x.parameter) << ',' << to_string(grid.y.parameter) << ",value\n";
    for (std::size_t iy = 0; iy < grid.y.values.size(); ++iy) {
        for (std::size_t ix = 0; ix < grid.x.values.size(); ++ix) {
            out << format_double(grid.x.values[ix]) << ',' << format_double(grid.y.values[iy])
                << ',' << format_double(grid.at(iy, ix)) << '\n';
        }
    }
}

inline Json point_to_json(const SweepPoint &p) {
    return Json{{"n_atoms", p.n_atoms},
                {"omega_over_Omega", p.omega_over_Omega},
                {"theta", p.theta},
                {"lambda_over_d", p.lambda_over_d},
                {"temperature", p.temperature}};
}

inline Json grid_to_json(const SweepGrid &grid) {
    Json values = Json::array();
    for (std::size_t iy = 0; iy < grid.y.values.size(); ++iy) {
        Json row = Json::array();
        for (std::size_t ix = 0; ix < grid.x.values.size(); ++ix) {
            row.push_back(json_number(grid.at(iy, ix)));
        }
        values.push_back(std::move(row));
    }
    Json metadata = point_to_json(grid.fixed);
    metadata.erase(to_string(grid.x.parameter));
    metadata.erase(to_string(grid.y.parameter));
    return Json{{"version", kVersion},
                {"observable", to_string(grid.observable)},
                {"x", {{"name", to_string(grid.x.parameter)}, {"values", grid.x.values}}},
                {"y", {{"name", to_string(grid.y.parameter)}, {"values", grid.y.values}}},
                {"values", std::move(values)},
                {"undefined_cells", grid.undefined_cells},
                {"metadata", std::move(metadata)}};
}

inline Json matrix_to_json(const ComplexMatrix &m) {
    Json re = Json::array();
    Json im = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json rr = Json::array();
        Json ri = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            rr.push_back(m(i, j).real());
            ri.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    return Json{{"real", std::move(re)}, {"imag", std::move(im)}};
}

inline Json density_conformance_to_json(const DensityConformance &d) {
    return Json{{"omega_over_Omega", d.omega_over_Omega},
                {"beta", d.beta},
                {"z_paper", json_number(d.z_paper)},
                {"z_numeric", json_number(d.z_numeric)},
                {"z_ratio", json_number(d.z_ratio)},
                {"rho_paper", matrix_to_json(d.rho_paper)},
                {"rho_numeric", matrix_to_json(d.rho_numeric)},
                {"element_deviation", d.deviation},
                {"max_abs_deviation", d.max_abs_deviation},
                {"numeric_reconstruction_error", d.reconstruction_error},
                {"numeric_trace_error", d.trace_error},
                {"numeric_commutator_norm", d.commutator_norm}};
}

inline Json conformance_to_json(const ConformanceReport &r) {
    auto rows = [](const std::vector<ConformanceRow> &v) {
        Json out = Json::array();
        for (const auto &row : v) {
            out.push_back(Json{{"theta", row.theta},
                               {"closed_form", json_number(row.closed_form)},
                               {"numeric", row.numeric ? json_number(*row.numeric) : Json(nullptr)},
                               {"deviation", row.deviation ? json_number(*row.deviation)
                                                           : Json(nullptr)}});
        }
        return out;
    };
    Json checks = Json::array();
    for (const auto &c : r.checks) {
        checks.push_back(Json{{"name", c.name},
                              {"value", json_number(c.value)},
                              {"tolerance", c.tolerance},
                              {"passed", c.passed}});
    }
    return Json{
        {"version", kVersion},
        {"omega_over_Omega", r.omega_over_Omega},
        {"temperature", r.temperature},
        {"lambda_over_d", r.lambda_over_d},
        {"density", density_conformance_to_json(r.density)},
        {"high_temperature_limit",
         {{"z_paper", json_number(r.high_temperature.z_paper)},
          {"z_numeric", json_number(r.high_temperature.z_numeric)},
          {"z_ratio", json_number(r.high_temperature.z_ratio)},
          {"max_abs_density_deviation", r.high_temperature.max_abs_deviation},
          {"intensity_numeric_min", r.high_t_numeric_min},
          {"intensity_numeric_max", r.high_t_numeric_max},
          {"intensity_closed_form_min", r.high_t_closed_min},
          {"intensity_closed_form_max", r.high_t_closed_max}}},
        {"intensity", rows(r.intensity)},
        {"g2", rows(r.g2)},
        {"max_intensity_deviation", r.max_intensity_deviation},
        {"max_g2_deviation", r.max_g2_deviation},
        {"checks", std::move(checks)},
        {"checks_passed", r.checks_passed()}};
}

/// Keys and value types a conformance report must carry.
inline bool validate_conformance_json(const Json &j, std::string *why = nullptr) {
    auto fail = [&](const std::string &msg) {
        if (why) {
            *why = msg;
        }
        return false;
    };
    for (const char *key : {"version", "omega_over_Omega", "temperature", "lambda_over_d",
                            "density", "high_temperature_limit", "intensity", "g2",
                            "max_intensity_deviation", "max_g2_deviation", "checks",
                            "checks_passed"}) {
        if (!j.contains(key)) {
            return fail(std::string("missing key ") + key);
        }
    }
    if (!j["version"].is_string()) {
        return fail("version must be a string");
    }
    for (const char *key : {"z_paper", "z_numeric", "z_ratio", "element_deviation",
                            "max_abs_deviation"}) {
        if (!j["density"].contains(key)) {
            return fail(std::string("density missing ") + key);
        }
    }
    const auto &dev = j["density"]["element_deviation"];
    if (!dev.is_array() || dev.size() != 8) {
        return fail("element_deviation must be 8x8");
    }
    for (const auto &row : dev) {
        if (!row.is_array() || row.size() != 8) {
            return fail("element_deviation must be 8x8");
        }
    }
    for (const char *table : {"intensity", "g2"}) {
        if (!j[table].is_array() || j[table].empty()) {
            return fail(std::string(table) + " table must be a non-empty array");
        }
        for (const auto &row : j[table]) {
            for (const char *key : {"theta", "closed_form", "numeric", "deviation"}) {
                if (!row.contains(key)) {
                    return fail(std::string(table) + " row missing " + key);
                }
            }
        }
    }
    if (!j["high_temperature_limit"].contains("z_ratio")) {
        return fail("high_temperature_limit missing z_ratio");
    }
    if (!j["checks"].is_array() || !j["checks_passed"].is_boolean()) {
        return fail("checks malformed");
    }
    return true;
}

inline Json qc_report_to_json(const QCReport &r) {
    auto opt = [](const std::optional<double> &v) { return v ? json_number(*v) : Json(nullptr); };
    return Json{{"n_atoms", r.n_atoms},
                {"temperature", r.temperature},
                {"pair", r.pair_label},
                {"discord_side", r.discord_side == MeasuredSide::A ? "A" : "B"},
                {"concurrence", r.concurrence},
                {"discord", r.discord},
                {"concurrence_1_3", opt(r.concurrence_1_3)},
                {"discord_1_3", opt(r.discord_1_3)},
                {"negativity_1_23", r.negativity_1_23},
                {"negativity_1_2", r.negativity_1_2},
                {"negativity_1_3", opt(r.negativity_1_3)},
                {"monogamy_score", opt(r.monogamy_score)}};
}

inline Json estimation_to_json(const EstimationResult &r) {
    return Json{{"d_over_lambda", r.d_over_lambda},
                {"distance", r.distance},
                {"residual", r.residual},
                {"samples_used", r.samples_used}};
}

/// Write `content` to `path` through a sibling temp file and a rename.
inline void write_file_atomic(const std::filesystem::path &path, const std::string &content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open " + tmp.string() + " for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot move result into " + path.string());
    }
}

/// Parse "theta,intensity" rows; an optional header line is skipped.
inline std::vector<IntensitySample> read_samples_csv(std::istream &in) {
    std::vector<IntensitySample> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        auto parse = [&](const std::string &field, double &v) {
            try {
                std::size_t used = 0;
                v = std::stod(field, &used);
                while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) {
                    ++used;
                }
                return used == field.size();
            } catch (const std::exception &) {
                return false;
            }
        };
        IntensitySample s;
        const bool ok = comma != std::string::npos && parse(line.substr(0, comma), s.theta) &&
                        parse(line.substr(comma + 1), s.intensity);
        if (!ok) {
            if (out.empty() && line_no == 1 && line.find_first_of("0123456789") == std::string::npos) {
                continue;
            }
            throw ValidationError("line " + std::to_string(line_no) +
                                  ": expected 'theta,intensity'");
        }
        out.push_back(s);
    }
    return out;
}

} // namespace spinglow
