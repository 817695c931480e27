/*
 *   Copyright 2026 The relic authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RELIC_ERROR_HPP
#define RELIC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relic {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary operation on relations living on different carriers.
class SpaceMismatch : public Error {
 public:
  SpaceMismatch() : Error("relations live on incompatible state spaces") {}
};

// Input rejected by a constructor or validator (bad table, not in Ltrel0, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Two routes that must agree produced different answers. Always a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Evaluation cap reached before a search could finish.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t offset, std::size_t line,
             std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        message_(std::move(message)),
        offset_(offset),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
};

// Builds a ParseError whose line/column are computed from `offset` in `text`.
ParseError make_parse_error(std::string message, std::string_view text,
                            std::size_t offset);

}  // namespace relic

#endif  // RELIC_ERROR_HPP
