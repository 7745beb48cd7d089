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

#ifndef LSPALIGN_ERROR_H_
#define LSPALIGN_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lspalign {

enum class Errc {
  // corpus-io
  kMissingDelimiter,
  kEmptySide,
  kInvalidEncoding,
  kLengthMismatch,
  kUnknownLabel,
  kDimensionMismatch,
  kNonNumericValue,
  kEmptyFile,
  kMalformedLink,
  kMalformedRecord,
  kSurfaceMismatch,
  // aligners and models
  kIndexOutOfRange,
  kLinkOutOfRange,
  kEmptyCorpus,
  kEmptyString,
  kUnknownSentence,
  kModelMismatch,
  // front-end
  kConfig,
  kIo,
};

std::string_view errc_name(Errc code);

// Errors that stem from bad input data (as opposed to usage or config).
bool is_data_error(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const { return code_; }

  // Returns a copy of this error with "file:line: " prepended. Line is 1-based;
  // pass 0 to omit it.
  Error with_context(std::string_view file, std::size_t line) const;

 private:
  Errc code_;
};

}  // namespace lspalign

#endif  // LSPALIGN_ERROR_H_
