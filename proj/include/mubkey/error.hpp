// Copyright 2026 The mubkey Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace mubkey {

/// Caller passed arguments that do not fit together (dimension or field mismatch,
/// bad configuration).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of the operation (inverse of zero,
/// composite Wigner dimension, vertical line where a slope is required).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Numerical precondition failed (non-orthonormal basis, unnormalized input,
/// non-unimodular phase).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mubkey
