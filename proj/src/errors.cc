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

#include "scone/errors.h"

#include <string>
#include <string_view>

namespace scone {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPsiTooSmall: return "PSI_TOO_SMALL";
    case ErrorCode::kPsiExceedsN: return "PSI_EXCEEDS_N";
    case ErrorCode::kKTooSmall: return "K_TOO_SMALL";
    case ErrorCode::kKExceedsPsi: return "K_EXCEEDS_PSI";
    case ErrorCode::kEnsembleSizeTooSmall: return "ENSEMBLE_SIZE_TOO_SMALL";
    case ErrorCode::kEmptyDataset: return "EMPTY_DATASET";
    case ErrorCode::kFewerThanTwoSamples: return "FEWER_THAN_TWO_SAMPLES";
    case ErrorCode::kFingerprintMismatch: return "FINGERPRINT_MISMATCH";
    case ErrorCode::kIndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::kKExceedsN: return "K_EXCEEDS_N";
    case ErrorCode::kEmptyConsistentSet: return "EMPTY_CONSISTENT_SET";
    case ErrorCode::kDegenerateGenerator: return "DEGENERATE_GENERATOR";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kBadConfig: return "BAD_CONFIG";
    case ErrorCode::kCountExceedsN: return "COUNT_EXCEEDS_N";
    case ErrorCode::kPairsExceedN: return "PAIRS_EXCEED_N";
    case ErrorCode::kSingleViewDataset: return "SINGLE_VIEW_DATASET";
    case ErrorCode::kTooFewFeatures: return "TOO_FEW_FEATURES";
    case ErrorCode::kSingleClass: return "SINGLE_CLASS";
    case ErrorCode::kMissingFile: return "MISSING_FILE";
    case ErrorCode::kRowCountMismatch: return "ROW_COUNT_MISMATCH";
    case ErrorCode::kNonFiniteValue: return "NON_FINITE_VALUE";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kIoError: return "IO_ERROR";
    case ErrorCode::kVersionMismatch: return "VERSION_MISMATCH";
    case ErrorCode::kCorruptModel: return "CORRUPT_MODEL";
    case ErrorCode::kInternal: return "INTERNAL";
  }
  return "UNKNOWN";
}

bool is_parameter_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPsiTooSmall:
    case ErrorCode::kPsiExceedsN:
    case ErrorCode::kKTooSmall:
    case ErrorCode::kKExceedsPsi:
    case ErrorCode::kEnsembleSizeTooSmall:
    case ErrorCode::kKExceedsN:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kBadConfig:
    case ErrorCode::kCountExceedsN:
    case ErrorCode::kPairsExceedN:
    case ErrorCode::kTooFewFeatures:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

}  // namespace scone
