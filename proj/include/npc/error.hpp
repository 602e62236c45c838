/*
   Copyright 2026 The npc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace npc {

/// Process exit codes shared by the library's error types and the CLI.
enum class ExitCode : int {
  ok = 0,
  usage = 1,
  domain = 2,
  cap_exceeded = 3,
  unsupported = 4,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode code() const noexcept = 0;
};

/// Precondition violated by the input value (zero inverse, singular matrix, malformed ring).
class DomainError : public Error {
 public:
  using Error::Error;
  ExitCode code() const noexcept override { return ExitCode::domain; }
};

/// A configured bound (radius, element cap, bit size, search radius) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
  ExitCode code() const noexcept override { return ExitCode::cap_exceeded; }
};

/// The input lies outside the fields this library computes in.
class Unsupported : public Error {
 public:
  using Error::Error;
  ExitCode code() const noexcept override { return ExitCode::unsupported; }
};

/// Bad command line or malformed input document.
class UsageError : public Error {
 public:
  using Error::Error;
  ExitCode code() const noexcept override { return ExitCode::usage; }
};

}  // namespace npc
