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

#ifndef TWEETGRAPH_SUBEVENTS_H_
#define TWEETGRAPH_SUBEVENTS_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tweetgraph/got.h"
#include "tweetgraph/gow.h"

namespace tweetgraph::subevents {

using got::NmiEdge;
using got::TweetNodeId;
using gow::NodeId;

// Simple undirected graph over tweet nodes.
struct Subgraph {
  std::vector<TweetNodeId> vertices;  // sorted
  std::vector<NmiEdge> edges;         // a < b, no duplicates
};

// Vertices are the endpoints of `edges`; the edge set is exactly `edges`.
// Throws InvalidArgument on self-loops or duplicate pairs.
Subgraph induce_subgraph(std::span<const NmiEdge> edges);

// Adds every GoT edge with a shared token between vertices of `g`.
Subgraph with_induced_edges(const Subgraph& g, const got::GraphOfTweets& got);

using CliqueMembers = std::vector<TweetNodeId>;

// All maximal cliques with at least `min_size` members, via Bron-Kerbosch
// with pivoting over a degeneracy ordering. Members ascending, cliques in
// lexicographic order.
std::vector<CliqueMembers> maximal_cliques(const Subgraph& g,
                                           std::size_t min_size = 3);

struct Clique {
  CliqueMembers members;
  std::vector<NodeId> shared_tokens;  // intersection of member token sets
  std::vector<NodeId> all_tokens;     // union
};

Clique describe_clique(const CliqueMembers& members,
                       const got::GraphOfTweets& got);

struct CliqueReport {
  CliqueMembers members;
  std::vector<std::string> source_ids;
  std::vector<std::string> all_tokens;     // leading tokens, sorted
  std::vector<std::string> shared_tokens;  // leading tokens, sorted
  std::size_t size = 0;
};

// Throws NotFoundError for member or token ids missing from the graphs.
CliqueReport clique_report(const Clique& clique, const got::GraphOfTweets& got,
                           const gow::GraphOfWords& gow);

// Largest first, then by member list.
void sort_reports(std::vector<CliqueReport>& reports);

nlohmann::json reports_to_json(std::span<const CliqueReport> reports);
std::string reports_to_text(std::span<const CliqueReport> reports);

// clique size -> count
std::map<std::size_t, std::size_t> size_histogram(
    std::span<const CliqueMembers> cliques);

}  // namespace tweetgraph::subevents

#endif  // TWEETGRAPH_SUBEVENTS_H_
