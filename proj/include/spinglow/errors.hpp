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
#include <stdexcept>
#include <string>

namespace spinglow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operand dimensions are inconsistent.
class ShapeError : public Error {
  public:
    using Error::Error;
};

/// An argument violates a documented precondition.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// The operation is only defined for a different system configuration.
class UnsupportedConfiguration : public Error {
  public:
    using Error::Error;
};

/// A quantity that must be real (or Hermitian) came out otherwise.
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

/// g2 is undefined because the intensity at the observation point vanishes.
class UndefinedCorrelation : public Error {
  public:
    UndefinedCorrelation(const std::string &what, double intensity)
        : Error(what), intensity_(intensity) {}
    [[nodiscard]] double intensity() const noexcept { return intensity_; }

  private:
    double intensity_;
};

/// An iterative routine ran out of budget.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string &what, double best_value,
                     std::size_t evaluations)
        : Error(what), best_value_(best_value), evaluations_(evaluations) {}
    [[nodiscard]] double best_value() const noexcept { return best_value_; }
    [[nodiscard]] std::size_t evaluations() const noexcept {
        return evaluations_;
    }

  private:
    double best_value_;
    std::size_t evaluations_;
};

/// The data carry no information about the estimated parameter.
class Unidentifiable : public Error {
  public:
    using Error::Error;
};

} // namespace spinglow
