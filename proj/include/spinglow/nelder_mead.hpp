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
#include <cstddef>
#include <numeric>
#include <vector>

namespace spinglow {

struct NelderMeadOptions {
    /// Stop once max - min of the simplex values drops to this.
    double f_tolerance = 1e-8;
    /// Also require every vertex within this of the best one (0 disables).
    double x_tolerance = 0.0;
    std::size_t max_evaluations = 500;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/**
 * Derivative-free simplex minimisation with the standard coefficients
 * (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
 *
 * The initial simplex is x0 plus one vertex per coordinate offset by
 * `steps[i]`.
 */
template <class Fn>
NelderMeadResult nelder_mead(Fn &&f, std::vector<double> x0,
                             const std::vector<double> &steps,
                             const NelderMeadOptions &opt = {}) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> values(n + 1);
    std::size_t evals = 0;
    auto eval = [&](const std::vector<double> &x) {
        ++evals;
        return f(x);
    };

    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += steps[i];
    }
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = eval(simplex[i]);
    }

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return values[a] < values[b];
        });
        std::vector<std::vector<double>> s(n + 1);
        std::vector<double> v(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s[i] = simplex[order[i]];
            v[i] = values[order[i]];
        }
        simplex.swap(s);
        values.swap(v);
    };

    auto blend = [&](const std::vector<double> &centroid,
                     const std::vector<double> &worst, double coeff) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = centroid[i] + coeff * (worst[i] - centroid[i]);
        }
        return x;
    };

    NelderMeadResult result;
    sort_simplex();
    while (true) {
        double size = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                size = std::max(size, std::abs(simplex[i][k] - simplex[0][k]));
            }
        }
        if (values[n] - values[0] <= opt.f_tolerance && size <= opt.x_tolerance) {
            result.converged = true;
            break;
        }
        if (evals >= opt.max_evaluations) {
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                centroid[k] += simplex[i][k] / static_cast<double>(n);
            }
        }

        const auto reflected = blend(centroid, simplex[n], -1.0);
        const double f_r = eval(reflected);
        if (f_r < values[0]) {
            const auto expanded = blend(centroid, simplex[n], -2.0);
            const double f_e = eval(expanded);
            if (f_e < f_r) {
                simplex[n] = expanded;
                values[n] = f_e;
            } else {
                simplex[n] = reflected;
                values[n] = f_r;
            }
        } else if (f_r < values[n - 1]) {
            simplex[n] = reflected;
            values[n] = f_r;
        } else {
            const bool outside = f_r < values[n];
            const auto contracted =
                blend(centroid, outside ? reflected : simplex[n], 0.5);
            const double f_c = eval(contracted);
            if (f_c < (outside ? f_r : values[n])) {
                simplex[n] = contracted;
                values[n] = f_c;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t k = 0; k < n; ++k) {
                        simplex[i][k] =
                            simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
                    }
                    values[i] = eval(simplex[i]);
                }
            }
        }
        sort_simplex();
    }

    result.x = simplex[0];
    result.value = values[0];
    result.evaluations = evals;
    return result;
}

} // namespace spinglow
