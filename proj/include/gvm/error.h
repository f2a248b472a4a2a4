/*
 * Copyright 2026 The jpeg-gvm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GVM_ERROR_H_
#define GVM_ERROR_H_

#include <stdexcept>
#include <string>

namespace gvm {

enum class ErrorCode {
  kUnsupportedFormat,
  kMalformedStream,
  kInvalidCounts,
  kMissingCode,
  kInsufficientCapacity,
  kDuplicateRsvInput,
  kMalformedMapping,
  kHeaderOverrun,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kMalformedStream: return "MalformedStream";
    case ErrorCode::kInvalidCounts: return "InvalidCounts";
    case ErrorCode::kMissingCode: return "MissingCode";
    case ErrorCode::kInsufficientCapacity: return "InsufficientCapacity";
    case ErrorCode::kDuplicateRsvInput: return "DuplicateRsvInput";
    case ErrorCode::kMalformedMapping: return "MalformedMapping";
    case ErrorCode::kHeaderOverrun: return "HeaderOverrun";
  }
  return "Unknown";
}

}  // namespace gvm

#endif  // GVM_ERROR_H_
