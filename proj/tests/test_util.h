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

#ifndef TWEETGRAPH_TESTS_TEST_UTIL_H_
#define TWEETGRAPH_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "tweetgraph/corpus.h"

namespace tweetgraph::testing {

// Fresh, empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("tweetgraph_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline corpus::Corpus make_corpus(const std::vector<std::vector<std::string>>& token_lists) {
  std::vector<corpus::ProcessedTweet> tweets;
  for (std::size_t i = 0; i < token_lists.size(); ++i) {
    tweets.push_back({"t" + std::to_string(i), token_lists[i]});
  }
  return corpus::Corpus(std::move(tweets));
}

// The two-tweet corpus drawn in the graph-of-words figure.
inline corpus::Corpus figure_corpus() {
  return make_corpus({{"virus", "test", "positive"}, {"corona", "test"}});
}

}  // namespace tweetgraph::testing

#endif  // TWEETGRAPH_TESTS_TEST_UTIL_H_
