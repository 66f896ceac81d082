// Copyright 2026 The hyperdual Authors
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

#include <functional>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hyperdual {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (hypergraph files, lattice spec strings, CSV).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Argument violates an operation's precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class UnsupportedDims : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DependentEdges : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Problem size exceeds what the requested (dense / state-vector) path can hold.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// The self-duality search ran out of budget. The answer is unknown, not "no".
class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotConverged : public Error {
 public:
  using Error::Error;
};

class SectorEmpty : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

using WarningHandler = std::function<void(std::string_view)>;

namespace detail {

inline std::mutex& warning_mutex() {
  static std::mutex m;
  return m;
}

inline WarningHandler& warning_handler_slot() {
  static WarningHandler handler = [](std::string_view msg) {
    std::cerr << "hyperdual: warning: " << msg << '\n';
  };
  return handler;
}

}  // namespace detail

/// Replaces the process-wide warning sink and returns the previous one.
/// Passing an empty handler silences warnings.
inline WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(detail::warning_mutex());
  return std::exchange(detail::warning_handler_slot(), std::move(handler));
}

inline void warn(std::string_view msg) {
  std::lock_guard lock(detail::warning_mutex());
  if (auto& h = detail::warning_handler_slot()) h(msg);
}

}  // namespace hyperdual
