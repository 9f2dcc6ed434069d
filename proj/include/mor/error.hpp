/*
 * Copyright 2026 The MOR-SL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mor {

enum class ErrorCode {
  kSpecMismatch,
  kDomain,
  kIndex,
  kSingular,
  kNotInSL,
  kUnsupportedParameters,
  kInvalidAutomorphism,
  kKeygenFailure,
  kInvalidCiphertext,
  kCapacity,
  kFormat,
  kMalformedInput,
  kWrongAttackModel,
  kNotFound,
  kRefused,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSpecMismatch: return "spec-mismatch";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kIndex: return "index";
    case ErrorCode::kSingular: return "singular";
    case ErrorCode::kNotInSL: return "not-in-SL";
    case ErrorCode::kUnsupportedParameters: return "unsupported-parameters";
    case ErrorCode::kInvalidAutomorphism: return "invalid-automorphism";
    case ErrorCode::kKeygenFailure: return "keygen-failure";
    case ErrorCode::kInvalidCiphertext: return "invalid-ciphertext";
    case ErrorCode::kCapacity: return "capacity";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kMalformedInput: return "malformed-input";
    case ErrorCode::kWrongAttackModel: return "wrong-attack-model";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kRefused: return "refused";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace mor
