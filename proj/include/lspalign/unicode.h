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

#ifndef LSPALIGN_UNICODE_H_
#define LSPALIGN_UNICODE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lspalign {

// UTF-8 helpers backed by ICU. All functions assume valid UTF-8 unless they
// say otherwise.

bool is_valid_utf8(std::string_view text);

// NFC-normalized copy. ASCII input is returned unchanged without calling ICU.
std::string nfc(std::string_view text);

// Full Unicode case folding.
std::string casefold(std::string_view text);

// Decodes to code points; throws Error(kInvalidEncoding) on bad input.
std::u32string to_u32(std::string_view text);
std::string to_utf8(std::u32string_view text);

// Number of Unicode scalar values.
std::size_t length_u32(std::string_view text);

// Splits on Unicode white space, dropping empty pieces.
std::vector<std::string> split_whitespace(std::string_view text);

std::string join(std::span<const std::string> tokens, std::string_view sep = " ");

}  // namespace lspalign

#endif  // LSPALIGN_UNICODE_H_
