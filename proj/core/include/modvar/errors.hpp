// Copyright 2026 The modvar Authors
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

#ifndef MODVAR_ERRORS_HPP
#define MODVAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace modvar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested experiment does not fit in the Fock truncation budget, or a
/// state leaks too much probability into the top of the truncated space.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure (optimizer, integrator) failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A caller handed in an argument outside the documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace modvar

#endif  // MODVAR_ERRORS_HPP
