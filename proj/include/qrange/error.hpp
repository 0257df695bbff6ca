// Copyright 2026 The qrange Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrange {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Vector or matrix sizes do not line up (also used for out-of-range dimensions).
struct DimensionMismatch : Error {
    using Error::Error;
};

// A matrix expected to be positive semidefinite has a significantly negative eigenvalue.
struct NotPSD : Error {
    using Error::Error;
};

// Iterative eigensolver failed to reach its stopping criterion.
struct ConvergenceFailure : Error {
    using Error::Error;
};

// A matrix expected to be Hermitian has a non-negligible anti-Hermitian part.
struct NotHermitian : Error {
    using Error::Error;
};

// A 2x2 matrix expected to be a positive operator is not.
struct NotPositive : Error {
    using Error::Error;
};

// Wrong number of measurement outcomes.
struct InvalidArity : Error {
    using Error::Error;
};

// Effects do not sum to the identity. Carries the residual
// (sum_t - 1, sum_sx, sum_sy, sum_sz).
struct CompletenessViolation : Error {
    CompletenessViolation(const std::string& msg, std::vector<double> res)
        : Error(msg), residual(std::move(res)) {}
    std::vector<double> residual;
};

// An individual effect fails positivity or the identity bound. Carries its index.
struct PositivityViolation : Error {
    PositivityViolation(const std::string& msg, std::size_t idx) : Error(msg), index(idx) {}
    std::size_t index;
};

// Depolarizing strength outside [0, 1].
struct LambdaOutOfRange : Error {
    using Error::Error;
};

// A separating witness was requested for a point that is not outside the range.
struct NotOutside : Error {
    using Error::Error;
};

// Random measurement generation kept producing singular normalizations.
struct DegenerateDraw : Error {
    using Error::Error;
};

// A Bloch vector with norm above one was supplied as a state.
struct InvalidState : Error {
    using Error::Error;
};

// Malformed input document (JSON schema, number parsing, file access).
struct ParseError : Error {
    using Error::Error;
};

// A correlation table row is not a probability distribution.
struct InvalidTable : Error {
    using Error::Error;
};

// A witness matrix contains non-finite entries.
struct InvalidWitness : Error {
    using Error::Error;
};

}  // namespace qrange
