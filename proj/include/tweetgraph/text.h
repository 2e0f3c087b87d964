// Copyright 2026 The tweetgraph Authors.
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

#ifndef TWEETGRAPH_TEXT_H_
#define TWEETGRAPH_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 helpers shared by the tokenizer and subword hashing.
namespace tweetgraph::text {

// Invalid byte sequences decode to U+FFFD.
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view codepoints);
void append_utf8(char32_t cp, std::string& out);

// Simple case folding covering ASCII, Latin-1, Latin Extended-A, Greek and
// Cyrillic capitals. Other scripts pass through unchanged.
char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view utf8);

bool is_space(char32_t cp);
// ASCII punctuation/symbols plus the common Unicode punctuation blocks.
// Emoji and other symbols outside those blocks are not punctuation.
bool is_punctuation(char32_t cp);
bool is_apostrophe(char32_t cp);

// Splits on Unicode whitespace, dropping empty pieces.
std::vector<std::string> split_whitespace(std::string_view utf8);

// 32-bit FNV-1a over the bytes of `s`.
std::uint32_t fnv1a32(std::string_view s);
// 64-bit FNV-1a, used for artifact fingerprints.
std::uint64_t fnv1a64(std::string_view s);

}  // namespace tweetgraph::text

#endif  // TWEETGRAPH_TEXT_H_
