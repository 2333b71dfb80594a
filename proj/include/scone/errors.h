/*
 * Copyright 2026 The SCoNE Authors.
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

#ifndef SCONE_ERRORS_H_
#define SCONE_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace scone {

enum class ErrorCode {
  // Parameter validation.
  kPsiTooSmall,
  kPsiExceedsN,
  kKTooSmall,
  kKExceedsPsi,
  kEnsembleSizeTooSmall,
  kEmptyDataset,
  // Geometry and scoring.
  kFewerThanTwoSamples,
  kFingerprintMismatch,
  kIndexOutOfRange,
  // Oracles.
  kKExceedsN,
  kEmptyConsistentSet,
  kDegenerateGenerator,
  kInvalidArgument,
  // Synthetic data.
  kBadConfig,
  kCountExceedsN,
  kPairsExceedN,
  kSingleViewDataset,
  kTooFewFeatures,
  // Metrics.
  kSingleClass,
  // I/O.
  kMissingFile,
  kRowCountMismatch,
  kNonFiniteValue,
  kParseError,
  kIoError,
  kVersionMismatch,
  kCorruptModel,
  // Broken internal invariant.
  kInternal,
};

// Stable upper-case identifier, e.g. "PSI_TOO_SMALL".
std::string_view error_code_name(ErrorCode code);

// True for codes caused by bad user-supplied parameters rather than data.
bool is_parameter_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace scone

#endif  // SCONE_ERRORS_H_
