// Copyright 2026 The gapscope Authors
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

namespace gapscope {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed model request, e.g. a chain shorter than two sites.
class InvalidModelError : public Error {
  public:
    using Error::Error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// The request exceeds what the dense simulator can hold.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Internal invariant broken at runtime (norm drift, size mismatch).
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

/// Bad configuration. The message starts with the offending field path.
class ConfigError : public Error {
  public:
    ConfigError(const std::string &field, const std::string &what)
        : Error(field + ": " + what), field_(field) {}
    const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// Nothing left to analyse after filtering.
class EmptySignalError : public Error {
  public:
    using Error::Error;
};

} // namespace gapscope
