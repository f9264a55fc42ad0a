// Copyright 2026 The telexp Authors
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

namespace telexp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Register or operator size outside the supported range.
class SizeError : public Error {
  public:
    using Error::Error;
};

/// Unknown, duplicated or overlapping qubit labels.
class LabelError : public Error {
  public:
    using Error::Error;
};

/// Operator or pattern dimension does not match its targets.
class ShapeError : public Error {
  public:
    using Error::Error;
};

class NormalizationError : public Error {
  public:
    using Error::Error;
};

class IndexError : public Error {
  public:
    using Error::Error;
};

/// Matrix is singular within the library's determinant threshold.
class SingularError : public Error {
  public:
    using Error::Error;
};

/// Domain-type invariant violated (channel, input state, correction plan).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A transformation operator failed to split into a Pauli pair times a diagonal.
class FactorizationError : public Error {
  public:
    using Error::Error;
};

}  // namespace telexp
