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

#include "tweetgraph/graph_export.h"

#include <algorithm>
#include <fstream>

#include "tweetgraph/error.h"
#include "tweetgraph/util.h"

namespace tweetgraph::graph_export {
namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "dot") return Format::kDot;
  if (name == "graphml") return Format::kGraphMl;
  if (name == "json") return Format::kJson;
  throw InvalidArgument("unknown graph format '" + name + "' (dot|graphml|json)");
}

const char* extension(Format format) {
  switch (format) {
    case Format::kDot: return ".dot";
    case Format::kGraphMl: return ".graphml";
    case Format::kJson: return ".json";
  }
  return "";
}

ExportGraph from_gow(const gow::GraphOfWords& graph, std::string name) {
  ExportGraph out{std::move(name), "w_co", {}, {}};
  for (gow::NodeId id : graph.live_nodes()) {
    const gow::TokenNode& n = graph.node(id);
    out.nodes.push_back({id, n.leading_token, n.members.size()});
    std::vector<std::pair<gow::NodeId, double>> adj(graph.neighbors(id).begin(),
                                                    graph.neighbors(id).end());
    std::sort(adj.begin(), adj.end());
    for (const auto& [other, w] : adj) {
      if (id < other) out.edges.push_back({id, other, round_sig9(w)});
    }
  }
  return out;
}

ExportGraph from_subgraph(const subevents::Subgraph& subgraph,
                          const got::GraphOfTweets& got, std::string name) {
  ExportGraph out{std::move(name), "nmi", {}, {}};
  for (got::TweetNodeId id : subgraph.vertices) {
    const got::TweetNode& n = got.node(id);
    out.nodes.push_back({id, "tweet_" + std::to_string(id), n.frequency});
  }
  for (const got::NmiEdge& e : subgraph.edges) {
    out.edges.push_back({e.a, e.b, round_sig9(e.nmi)});
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const ExportEdge& a, const ExportEdge& b) {
    return std::pair(a.source, a.target) < std::pair(b.source, b.target);
  });
  return out;
}

void write_dot(const ExportGraph& graph, std::ostream& out) {
  out << "graph \"" << dot_escape(graph.name) << "\" {\n";
  for (const ExportNode& n : graph.nodes) {
    out << "  " << n.id << " [label=\"" << dot_escape(n.label) << "\", size=" << n.size
        << "];\n";
  }
  for (const ExportEdge& e : graph.edges) {
    out << "  " << e.source << " -- " << e.target << " [" << graph.weight_name << "="
        << format_sig9(e.weight) << "];\n";
  }
  out << "}\n";
}

void write_graphml(const ExportGraph& graph, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      << "  <key id=\"size\" for=\"node\" attr.name=\"size\" attr.type=\"int\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"" << xml_escape(graph.weight_name)
      << "\" attr.type=\"double\"/>\n"
      << "  <graph id=\"" << xml_escape(graph.name) << "\" edgedefault=\"undirected\">\n";
  for (const ExportNode& n : graph.nodes) {
    out << "    <node id=\"n" << n.id << "\">\n"
        << "      <data key=\"label\">" << xml_escape(n.label) << "</data>\n"
        << "      <data key=\"size\">" << n.size << "</data>\n"
        << "    </node>\n";
  }
  for (const ExportEdge& e : graph.edges) {
    out << "    <edge source=\"n" << e.source << "\" target=\"n" << e.target << "\">\n"
        << "      <data key=\"weight\">" << format_sig9(e.weight) << "</data>\n"
        << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

nlohmann::json to_json(const ExportGraph& graph) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const ExportNode& n : graph.nodes) {
    nodes.push_back({{"id", n.id}, {"label", n.label}, {"size", n.size}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const ExportEdge& e : graph.edges) {
    edges.push_back({{"source", e.source}, {"target", e.target}, {"weight", round_sig9(e.weight)}});
  }
  return {{"name", graph.name},
          {"weight_name", graph.weight_name},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

ExportGraph from_json(const nlohmann::json& doc) {
  try {
    ExportGraph g{doc.at("name").get<std::string>(),
                  doc.at("weight_name").get<std::string>(), {}, {}};
    for (const auto& n : doc.at("nodes")) {
      g.nodes.push_back({n.at("id").get<std::uint64_t>(), n.at("label").get<std::string>(),
                         n.at("size").get<std::size_t>()});
    }
    for (const auto& e : doc.at("edges")) {
      g.edges.push_back({e.at("source").get<std::uint64_t>(),
                         e.at("target").get<std::uint64_t>(), e.at("weight").get<double>()});
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad graph export: ") + e.what());
  }
}

void write(const ExportGraph& graph, Format format, std::ostream& out) {
  switch (format) {
    case Format::kDot: write_dot(graph, out); break;
    case Format::kGraphMl: write_graphml(graph, out); break;
    case Format::kJson: out << to_json(graph).dump(1) << '\n'; break;
  }
}

void export_graph(const ExportGraph& graph, Format format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write(graph, format, out);
  if (!out) throw Error("failed writing " + path);
}

}  // namespace tweetgraph::graph_export
