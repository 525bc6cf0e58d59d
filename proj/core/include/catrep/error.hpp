// Copyright 2026 The catrep Authors
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

#include <stdexcept>
#include <string>

namespace catrep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A Fock truncation is too small for the requested state or operation.
class InsufficientCutoff : public Error {
  public:
    using Error::Error;
};

/// Operands have incompatible mode counts or cutoffs.
class ShapeMismatch : public Error {
  public:
    using Error::Error;
};

/// A conditional state has (numerically) zero norm.
class DegenerateState : public Error {
  public:
    using Error::Error;
};

class InvalidArgument : public Error {
  public:
    using Error::Error;
};

} // namespace catrep
