// Copyright 2026 The RCLC Authors.
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

#include "rclc/error.hpp"

namespace rclc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kUnsupportedColorSpace: return "UnsupportedColorSpace";
    case ErrorCode::kTruncatedFrame: return "TruncatedFrame";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kOddCoordinateWithChroma: return "OddCoordinateWithChroma";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyIntersection: return "EmptyIntersection";
    case ErrorCode::kCalledOnBu: return "CalledOnBu";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidBox: return "InvalidBox";
    case ErrorCode::kCorruptPayload: return "CorruptPayload";
    case ErrorCode::kCommandFailed: return "CommandFailed";
    case ErrorCode::kOutputMissing: return "OutputMissing";
    case ErrorCode::kInvalidTemplate: return "InvalidTemplate";
    case ErrorCode::kInconsistentCount: return "InconsistentCount";
    case ErrorCode::kBoxOutOfFrame: return "BoxOutOfFrame";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kTruncated: return "Truncated";
    case ErrorCode::kInvalidRecord: return "InvalidRecord";
    case ErrorCode::kMissingReference: return "MissingReference";
    case ErrorCode::kEnhancerFailed: return "EnhancerFailed";
    case ErrorCode::kNoOverlap: return "NoOverlap";
    case ErrorCode::kDegenerateFit: return "DegenerateFit";
    case ErrorCode::kMismatchedLengths: return "MismatchedLengths";
    case ErrorCode::kSpecInvalid: return "SpecInvalid";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace rclc
