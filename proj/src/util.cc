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

#include "tweetgraph/util.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace tweetgraph {

double round_sig9(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  return std::strtod(format_sig9(value).c_str(), nullptr);
}

std::string format_sig9(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

}  // namespace tweetgraph
