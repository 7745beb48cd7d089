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

#ifndef LSPALIGN_VOCABULARY_H_
#define LSPALIGN_VOCABULARY_H_

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lspalign {

using WordId = uint32_t;

inline constexpr WordId kNoWord = std::numeric_limits<WordId>::max();

// Source vocabularies reserve id 0 for the NULL word.
inline constexpr WordId kNullWord = 0;
inline constexpr std::string_view kNullToken = "<NULL>";

// Bidirectional string <-> id map.
class Vocabulary {
 public:
  // With `with_null`, kNullToken is interned first and gets kNullWord.
  Vocabulary() : Vocabulary(false) {}
  explicit Vocabulary(bool with_null);

  WordId intern(std::string_view word);
  // kNoWord when absent.
  WordId find(std::string_view word) const;
  const std::string& word(WordId id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }
  bool has_null() const { return has_null_; }

 private:
  bool has_null_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> ids_;
};

}  // namespace lspalign

#endif  // LSPALIGN_VOCABULARY_H_
