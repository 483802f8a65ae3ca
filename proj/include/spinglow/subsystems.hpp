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
#include <cstddef>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace spinglow {

namespace detail {

inline std::size_t product_of(const std::vector<std::size_t> &dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                           std::multiplies<>{});
}

inline void check_subsystem_dims(const ComplexMatrix &rho,
                                 const std::vector<std::size_t> &dims,
                                 const char *where) {
    if (!rho.is_square()) {
        throw ShapeError(std::string(where) + ": matrix is not square");
    }
    if (dims.empty() ||
        std::any_of(dims.begin(), dims.end(),
                    [](std::size_t d) { return d == 0; })) {
        throw ShapeError(std::string(where) + ": invalid subsystem dims");
    }
    if (product_of(dims) != rho.rows()) {
        throw ShapeError(std::string(where) + ": dims product " +
                         std::to_string(product_of(dims)) +
                         " != matrix dimension " + std::to_string(rho.rows()));
    }
}

/// Mixed-radix digits of `index`, most significant subsystem first.
inline std::vector<std::size_t> digits_of(std::size_t index,
                                          const std::vector<std::size_t> &dims) {
    std::vector<std::size_t> out(dims.size());
    for (std::size_t s = dims.size(); s-- > 0;) {
        out[s] = index % dims[s];
        index /= dims[s];
    }
    return out;
}

inline std::size_t index_of(const std::vector<std::size_t> &digits,
                            const std::vector<std::size_t> &dims) {
    std::size_t index = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
        index = index * dims[s] + digits[s];
    }
    return index;
}

} // namespace detail

/**
 * Reduced density matrix on the subsystems listed in `keep`.
 *
 * Kept factors appear in ascending subsystem order regardless of the order
 * given in `keep`.
 */
inline ComplexMatrix partial_trace(const ComplexMatrix &rho,
                                   const std::vector<std::size_t> &dims,
                                   const std::vector<std::size_t> &keep) {
    detail::check_subsystem_dims(rho, dims, "partial_trace");
    const std::set<std::size_t> kept(keep.begin(), keep.end());
    if (kept.empty() || kept.size() != keep.size() ||
        *kept.rbegin() >= dims.size()) {
        throw ShapeError("partial_trace: keep must be a non-empty set of "
                         "distinct subsystem indices");
    }

    std::vector<std::size_t> kept_dims;
    std::vector<std::size_t> traced_dims;
    std::vector<std::size_t> kept_idx;
    std::vector<std::size_t> traced_idx;
    for (std::size_t s = 0; s < dims.size(); ++s) {
        if (kept.count(s)) {
            kept_dims.push_back(dims[s]);
            kept_idx.push_back(s);
        } else {
            traced_dims.push_back(dims[s]);
            traced_idx.push_back(s);
        }
    }
    const std::size_t dk = detail::product_of(kept_dims);
    const std::size_t dt = detail::product_of(traced_dims);

    ComplexMatrix out(dk, dk);
    std::vector<std::size_t> full(dims.size());
    auto compose = [&](std::size_t k, std::size_t t) {
        const auto kd = detail::digits_of(k, kept_dims);
        const auto td = detail::digits_of(t, traced_dims);
        for (std::size_t s = 0; s < kept_idx.size(); ++s) {
            full[kept_idx[s]] = kd[s];
        }
        for (std::size_t s = 0; s < traced_idx.size(); ++s) {
            full[traced_idx[s]] = td[s];
        }
        return detail::index_of(full, dims);
    };

    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = 0; c < dk; ++c) {
            Complex acc{};
            for (std::size_t t = 0; t < dt; ++t) {
                acc += rho(compose(r, t), compose(c, t));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

/// Transpose applied to the listed tensor factors only.
inline ComplexMatrix partial_transpose(const ComplexMatrix &rho,
                                       const std::vector<std::size_t> &dims,
                                       const std::vector<std::size_t> &subsystems) {
    detail::check_subsystem_dims(rho, dims, "partial_transpose");
    for (auto s : subsystems) {
        if (s >= dims.size()) {
            throw ValidationError("partial_transpose: subsystem index " +
                                  std::to_string(s) + " out of range");
        }
    }
    const std::size_t n = rho.rows();
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto rd = detail::digits_of(r, dims);
        for (std::size_t c = 0; c < n; ++c) {
            auto row = rd;
            auto col = detail::digits_of(c, dims);
            for (auto s : subsystems) {
                std::swap(row[s], col[s]);
            }
            out(detail::index_of(row, dims), detail::index_of(col, dims)) =
                rho(r, c);
        }
    }
    return out;
}

inline ComplexMatrix partial_transpose(const ComplexMatrix &rho,
                                       const std::vector<std::size_t> &dims,
                                       std::size_t subsystem) {
    return partial_transpose(rho, dims, std::vector<std::size_t>{subsystem});
}

/// Dimensions list for n qubits.
inline std::vector<std::size_t> qubit_dims(std::size_t n) {
    return std::vector<std::size_t>(n, 2);
}

} // namespace spinglow
