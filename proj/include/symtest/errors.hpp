// Copyright 2026 the symtest authors.
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

namespace symtest {

enum class ErrorCode {
  DimensionMismatch,
  NonFiniteValue,
  EmptyDataset,
  TooFewObservations,
  EmptyDraws,
  AllZeroDraws,
  ZeroReplicates,
  NonPositiveScale,
  SupportTooLarge,
  InvalidDistribution,
  InvalidScenario,
  InvalidH,
  FileNotFound,
  ParseError,
  RaggedRows,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::TooFewObservations: return "TooFewObservations";
    case ErrorCode::EmptyDraws: return "EmptyDraws";
    case ErrorCode::AllZeroDraws: return "AllZeroDraws";
    case ErrorCode::ZeroReplicates: return "ZeroReplicates";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::SupportTooLarge: return "SupportTooLarge";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::InvalidH: return "InvalidH";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RaggedRows: return "RaggedRows";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  Error(ErrorCode code, const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message +
                           " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        code_(code),
        line_(line),
        column_(column) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  ErrorCode code_;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

[[noreturn]] inline void raise_at(ErrorCode code, const std::string& message,
                                  std::size_t line, std::size_t column) {
  throw Error(code, message, line, column);
}

}  // namespace symtest
