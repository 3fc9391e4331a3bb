// Copyright 2026 The evrecon Authors
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

#ifndef EVRECON_ERRORS_HPP
#define EVRECON_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evrecon
{
/// Input data violates a documented contract (malformed file, bad event,
/// too few events for the requested windowing, ...).
class DataError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Carries the 1-based line number of the offending line.
class ParseError : public DataError
{
public:
  ParseError(std::size_t line, const std::string & what)
  : DataError("line " + std::to_string(line) + ": " + what), line_(line)
  {
  }
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Filesystem or stream failure.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace evrecon

#endif  // EVRECON_ERRORS_HPP
