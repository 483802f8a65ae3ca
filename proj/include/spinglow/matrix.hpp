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
 * @file matrix.hpp
 * Dense complex matrices sized for few-qubit operators (dimension <= 32).
 *
 * Basis convention used throughout the library: qubit 0 is the most
 * significant bit of a computational-basis index, and on each qubit index 0
 * is the excited level |e> while index 1 is the ground level |g>.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "errors.hpp"

namespace spinglow {

using Complex = std::complex<double>;

/// Row-major dense complex matrix with value semantics.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

    /// Build from nested rows; every row must have the same length.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw ShapeError("ComplexMatrix: ragged initializer");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
        return ComplexMatrix(rows, cols);
    }

    static ComplexMatrix diagonal(const std::vector<double> &values) {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            m(i, i) = values[i];
        }
        return m;
    }

    /// |v><v| for a column vector given as amplitudes.
    static ComplexMatrix projector(const std::vector<Complex> &amplitudes) {
        const std::size_t n = amplitudes.size();
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
            }
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    Complex &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    [[nodiscard]] const std::vector<Complex> &data() const noexcept {
        return data_;
    }

    /// Column c as a vector of amplitudes.
    [[nodiscard]] std::vector<Complex> column(std::size_t c) const {
        std::vector<Complex> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            out[r] = (*this)(r, c);
        }
        return out;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &other) {
        require_same_shape(other, "operator+=");
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += other.data_[k];
        }
        return *this;
    }

    ComplexMatrix &operator-=(const ComplexMatrix &other) {
        require_same_shape(other, "operator-=");
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= other.data_[k];
        }
        return *this;
    }

    ComplexMatrix &operator*=(Complex scalar) {
        for (auto &v : data_) {
            v *= scalar;
        }
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        a += b;
        return a;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        a -= b;
        return a;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
        a *= s;
        return a;
    }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
        a *= s;
        return a;
    }

    bool operator==(const ComplexMatrix &) const = default;

  private:
    void require_same_shape(const ComplexMatrix &other,
                            const char *where) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw ShapeError(std::string(where) + ": shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix multiply(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("multiply: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return multiply(a, b);
}

inline ComplexMatrix adjoint(const ComplexMatrix &m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(j, i) = std::conj(m(i, j));
        }
    }
    return out;
}

inline ComplexMatrix transpose(const ComplexMatrix &m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(j, i) = m(i, j);
        }
    }
    return out;
}

inline ComplexMatrix conjugate(const ComplexMatrix &m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(i, j) = std::conj(m(i, j));
        }
    }
    return out;
}

inline Complex trace(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw ShapeError("trace: matrix is not square");
    }
    Complex t{};
    for (std::size_t i = 0; i < m.rows(); ++i) {
        t += m(i, i);
    }
    return t;
}

/// Tr(a b) without forming the product.
inline Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw ShapeError("trace_of_product: shape mismatch");
    }
    Complex t{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            t += a(i, k) * b(k, i);
        }
    }
    return t;
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

inline ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b - b * a;
}

/// Largest entrywise modulus.
inline double max_abs(const ComplexMatrix &m) {
    double best = 0.0;
    for (const auto &v : m.data()) {
        best = std::max(best, std::abs(v));
    }
    return best;
}

inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("max_abs_diff: shape mismatch");
    }
    double best = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        best = std::max(best, std::abs(a.data()[k] - b.data()[k]));
    }
    return best;
}

inline double frobenius_norm(const ComplexMatrix &m) {
    double s = 0.0;
    for (const auto &v : m.data()) {
        s += std::norm(v);
    }
    return std::sqrt(s);
}

/// Max-abs deviation of m from its own adjoint.
inline double hermiticity_defect(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw ShapeError("hermiticity_defect: matrix is not square");
    }
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
            best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return best;
}

} // namespace spinglow
