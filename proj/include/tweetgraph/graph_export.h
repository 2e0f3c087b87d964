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

#ifndef TWEETGRAPH_GRAPH_EXPORT_H_
#define TWEETGRAPH_GRAPH_EXPORT_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tweetgraph/gow.h"
#include "tweetgraph/subevents.h"

// Format-neutral view of a weighted undirected graph for inspection tools.
namespace tweetgraph::graph_export {

enum class Format { kDot, kGraphMl, kJson };

// Parses "dot", "graphml" or "json"; throws InvalidArgument otherwise.
Format parse_format(const std::string& name);
const char* extension(Format format);

struct ExportNode {
  std::uint64_t id = 0;
  std::string label;
  std::size_t size = 1;  // member count for token nodes, frequency for tweets

  bool operator==(const ExportNode&) const = default;
};

struct ExportEdge {
  std::uint64_t source = 0;
  std::uint64_t target = 0;
  double weight = 0.0;

  bool operator==(const ExportEdge&) const = default;
};

struct ExportGraph {
  std::string name;
  std::string weight_name;  // "w_co" or "nmi"
  std::vector<ExportNode> nodes;
  std::vector<ExportEdge> edges;

  bool operator==(const ExportGraph&) const = default;
};

ExportGraph from_gow(const gow::GraphOfWords& graph, std::string name = "gow");
ExportGraph from_subgraph(const subevents::Subgraph& subgraph,
                          const got::GraphOfTweets& got,
                          std::string name = "subgraph");

void write_dot(const ExportGraph& graph, std::ostream& out);
void write_graphml(const ExportGraph& graph, std::ostream& out);
nlohmann::json to_json(const ExportGraph& graph);
ExportGraph from_json(const nlohmann::json& doc);

void write(const ExportGraph& graph, Format format, std::ostream& out);
// Throws Error when the path cannot be written.
void export_graph(const ExportGraph& graph, Format format,
                  const std::string& path);

}  // namespace tweetgraph::graph_export

#endif  // TWEETGRAPH_GRAPH_EXPORT_H_
