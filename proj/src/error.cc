// Copyright 2026 The lsp-align Authors.
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

#include "lspalign/error.h"

namespace lspalign {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kMissingDelimiter: return "MissingDelimiter";
    case Errc::kEmptySide: return "EmptySide";
    case Errc::kInvalidEncoding: return "InvalidEncoding";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kUnknownLabel: return "UnknownLabel";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kNonNumericValue: return "NonNumericValue";
    case Errc::kEmptyFile: return "EmptyFile";
    case Errc::kMalformedLink: return "MalformedLink";
    case Errc::kMalformedRecord: return "MalformedRecord";
    case Errc::kSurfaceMismatch: return "SurfaceMismatch";
    case Errc::kIndexOutOfRange: return "IndexOutOfRange";
    case Errc::kLinkOutOfRange: return "LinkOutOfRange";
    case Errc::kEmptyCorpus: return "EmptyCorpus";
    case Errc::kEmptyString: return "EmptyString";
    case Errc::kUnknownSentence: return "UnknownSentence";
    case Errc::kModelMismatch: return "ModelMismatch";
    case Errc::kConfig: return "ConfigError";
    case Errc::kIo: return "IoError";
  }
  return "Unknown";
}

bool is_data_error(Errc code) { return code != Errc::kConfig; }

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

Error Error::with_context(std::string_view file, std::size_t line) const {
  std::string prefix(file);
  if (line > 0) prefix += ":" + std::to_string(line);
  prefix += ": ";
  Error copy(*this);
  static_cast<std::runtime_error&>(copy) = std::runtime_error(prefix + what());
  return copy;
}

}  // namespace lspalign
