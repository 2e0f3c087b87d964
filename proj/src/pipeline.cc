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

#include "tweetgraph/pipeline.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "tweetgraph/corpus.h"
#include "tweetgraph/embeddings.h"
#include "tweetgraph/got.h"
#include "tweetgraph/gow.h"
#include "tweetgraph/subevents.h"
#include "tweetgraph/text.h"
#include "tweetgraph/util.h"

namespace tweetgraph::pipeline {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

json read_json(const fs::path& path) {
  std::ifstream in = open_in(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out = open_out(path);
  out << doc.dump(1) << '\n';
}

corpus::Corpus read_corpus(const ArtifactPaths& paths) {
  std::ifstream in = open_in(paths.corpus());
  return corpus::read_processed(in);
}

embeddings::EmbeddingTable read_table(const ArtifactPaths& paths) {
  std::optional<std::string> subwords;
  if (fs::exists(paths.subwords())) subwords = paths.subwords().string();
  return embeddings::load_table(paths.vectors().string(), subwords);
}

void maybe_export(const PipelineConfig& config, const graph_export::ExportGraph& graph,
                  const std::string& stem) {
  if (!config.graph_format) return;
  const fs::path path = fs::path(config.output_dir) /
                        (stem + graph_export::extension(*config.graph_format));
  // The JSON artifact of the same stem must not be overwritten.
  const fs::path target = *config.graph_format == graph_export::Format::kJson
                              ? fs::path(config.output_dir) / (stem + ".export.json")
                              : path;
  graph_export::export_graph(graph, *config.graph_format, target.string());
}

json stage_preprocess(const PipelineConfig& config, const ArtifactPaths& paths) {
  corpus::PreprocessConfig rules;
  if (config.stopwords_path) {
    rules.stopwords = corpus::load_stopwords(*config.stopwords_path);
  } else {
    rules = corpus::PreprocessConfig::with_default_stopwords();
  }
  if (config.lemmas_path) rules.lemmas = corpus::load_lemmas(*config.lemmas_path);
  rules.drop_retweets = config.drop_retweets;

  const std::vector<corpus::RawTweet> raw = corpus::load_corpus(config.input);
  const corpus::Corpus processed = corpus::preprocess_corpus(raw, rules);
  {
    std::ofstream out = open_out(paths.corpus());
    corpus::write_processed(processed, out);
  }
  const corpus::Stats stats = corpus::corpus_stats(processed);
  json counts = {{"raw_tweets", raw.size()},
                 {"tweets", stats.tweet_count},
                 {"dropped_tweets", processed.dropped_tweets()},
                 {"unique_tokens", stats.unique_tokens},
                 {"mean_tokens", round_sig9(stats.mean_tokens)},
                 {"std_tokens", round_sig9(stats.std_tokens)}};
  write_json(paths.preprocess_report(), counts);
  return counts;
}

json stage_embeddings(const PipelineConfig& config, const ArtifactPaths& paths) {
  std::optional<embeddings::EmbeddingTable> table;
  json counts;
  if (config.embeddings.train) {
    embeddings::TrainerConfig trainer = config.trainer;
    trainer.seed = config.seed;
    auto result = embeddings::train_subword_skipgram(read_corpus(paths), trainer);
    json losses = json::array();
    for (double l : result.epoch_loss) losses.push_back(round_sig9(l));
    write_json(paths.training_log(), {{"epoch_loss", losses}});
    counts["first_epoch_loss"] = losses.front();
    counts["last_epoch_loss"] = losses.back();
    table.emplace(std::move(result.table));
  } else {
    table.emplace(embeddings::load_table(config.embeddings.path,
                                         config.embeddings.subword_path));
    fs::remove(paths.training_log());
  }
  {
    std::ofstream out = open_out(paths.vectors());
    embeddings::write_vectors(*table, out);
  }
  if (table->subwords()) {
    std::ofstream out = open_out(paths.subwords());
    embeddings::write_subwords(*table->subwords(), table->dim(), out);
  } else {
    fs::remove(paths.subwords());
  }
  counts["words"] = table->size();
  counts["dim"] = table->dim();
  counts["subword_rows"] = table->subwords() ? table->subwords()->buckets.size() : 0;
  counts["source"] = config.embeddings.to_string();
  return counts;
}

json stage_build_gow(const PipelineConfig& config, const ArtifactPaths& paths) {
  const gow::GraphOfWords graph = gow::GraphOfWords::build(read_corpus(paths));
  write_json(paths.gow(), gow::to_json(graph));
  maybe_export(config, graph_export::from_gow(graph, "gow"), "gow");
  return {{"nodes", graph.live_count()},
          {"edges", graph.edge_count()},
          {"total_weight", round_sig9(graph.total_weight())}};
}

json phase_json(const reduction::PhaseReport& r, const std::vector<std::string>& unresolved) {
  return {{"nodes_before", r.nodes_before},
          {"nodes_after", r.nodes_after},
          {"merges", r.merges},
          {"unresolved", unresolved}};
}

json stage_reduce(const PipelineConfig& config, const ArtifactPaths& paths) {
  gow::GraphOfWords graph = gow::from_json(read_json(paths.gow()));
  const embeddings::EmbeddingTable table = read_table(paths);
  reduction::MergeLog log;

  // Unresolved node ids are captured as tokens before later merges.
  const auto p1 = reduction::phase1_reduce(graph, table, config.reduction, log);
  std::vector<std::string> unresolved1;
  for (gow::NodeId id : p1.unresolved) {
    if (graph.is_live(id)) unresolved1.push_back(graph.node(id).leading_token);
  }
  const auto p2 = reduction::phase2_reduce(graph, table, config.reduction, log);
  std::vector<std::string> unresolved2;
  for (gow::NodeId id : p2.unresolved) {
    if (graph.is_live(id)) unresolved2.push_back(graph.node(id).leading_token);
  }

  {
    std::ofstream out = open_out(paths.merges());
    reduction::write_merge_log(log, out);
  }
  write_json(paths.reduced_gow(), gow::to_json(graph));
  maybe_export(config, graph_export::from_gow(graph, "reduced_gow"), "reduced_gow");
  json report = {{"phase1", phase_json(p1, unresolved1)},
                 {"phase2", phase_json(p2, unresolved2)},
                 {"config",
                  {{"min_tweet_df", config.reduction.min_tweet_df},
                   {"top_n", config.reduction.top_n},
                   {"phase1_candidate_pool", config.reduction.phase1_candidate_pool}}}};
  write_json(paths.reduction_report(), report);
  return {{"nodes_initial", p1.nodes_before},
          {"phase1_merges", p1.merges},
          {"phase2_merges", p2.merges},
          {"nodes_final", p2.nodes_after},
          {"phase1_unresolved", p1.unresolved.size()},
          {"phase2_unresolved", p2.unresolved.size()}};
}

json stage_build_got(const PipelineConfig& config, const ArtifactPaths& paths) {
  const gow::GraphOfWords graph = gow::from_json(read_json(paths.reduced_gow()));
  const got::GraphOfTweets tweets =
      got::build_got(read_corpus(paths), graph, config.exclude);
  write_json(paths.got(), got::to_json(tweets));
  return {{"tweet_nodes", tweets.size()},
          {"m", tweets.token_universe()},
          {"excluded_nodes", tweets.report().excluded_nodes.size()},
          {"member_only_matches", tweets.report().member_matches.size()},
          {"dropped_tweets", tweets.report().dropped_tweet_ids.size()}};
}

json stage_top_k(const PipelineConfig& config, const ArtifactPaths& paths) {
  const got::GraphOfTweets tweets = got::from_json(read_json(paths.got()));
  const got::TopKResult top = got::top_k_edges(tweets, config.k, config.threads);
  if (config.k > top.candidate_pairs) {
    spdlog::warn("k = {} exceeds the {} tweet pairs that share a token node; "
                 "returning all of them",
                 config.k, top.candidate_pairs);
  }
  {
    std::ofstream out = open_out(paths.edges());
    got::write_edges_tsv(top.edges, out);
  }
  const subevents::Subgraph sub = subevents::induce_subgraph(top.edges);
  write_json(paths.subgraph(), graph_export::to_json(graph_export::from_subgraph(sub, tweets)));
  maybe_export(config, graph_export::from_subgraph(sub, tweets), "subgraph");
  return {{"k", config.k},
          {"edges", top.edges.size()},
          {"candidate_pairs", top.candidate_pairs},
          {"subgraph_vertices", sub.vertices.size()}};
}

json stage_cliques(const PipelineConfig& config, const ArtifactPaths& paths) {
  std::vector<got::NmiEdge> edges;
  {
    std::ifstream in = open_in(paths.edges());
    edges = got::read_edges_tsv(in);
  }
  subevents::Subgraph sub = subevents::induce_subgraph(edges);
  if (config.clique_edges == CliqueEdges::kInduced) {
    sub = subevents::with_induced_edges(sub, got::from_json(read_json(paths.got())));
  }
  const auto cliques = subevents::maximal_cliques(sub, config.min_clique_size);
  write_json(paths.clique_members(), {{"min_size", config.min_clique_size},
                                      {"edges", config.clique_edges == CliqueEdges::kTopK
                                                    ? "topk"
                                                    : "induced"},
                                      {"cliques", cliques}});
  json histogram = json::object();
  for (const auto& [size, count] : subevents::size_histogram(cliques)) {
    histogram[std::to_string(size)] = count;
  }
  return {{"cliques", cliques.size()}, {"size_histogram", histogram}};
}

json stage_subevents(const PipelineConfig&, const ArtifactPaths& paths) {
  const got::GraphOfTweets tweets = got::from_json(read_json(paths.got()));
  const gow::GraphOfWords graph = gow::from_json(read_json(paths.reduced_gow()));
  const json members = read_json(paths.clique_members());
  std::vector<subevents::CliqueReport> reports;
  for (const auto& c : members.at("cliques")) {
    const auto clique = subevents::describe_clique(c.get<subevents::CliqueMembers>(), tweets);
    reports.push_back(subevents::clique_report(clique, tweets, graph));
  }
  subevents::sort_reports(reports);
  write_json(paths.cliques(), subevents::reports_to_json(reports));
  {
    std::ofstream out = open_out(paths.cliques_text());
    out << subevents::reports_to_text(reports);
  }
  stats_report(paths.dir);
  return {{"reports", reports.size()}};
}

}  // namespace

const char* stage_name(Stage stage) {
  switch (stage) {
    case Stage::kPreprocess: return "preprocess";
    case Stage::kEmbeddings: return "embeddings";
    case Stage::kBuildGow: return "build_gow";
    case Stage::kReduce: return "reduce";
    case Stage::kBuildGot: return "build_got";
    case Stage::kTopK: return "top_k_subgraph";
    case Stage::kCliques: return "maximal_cliques";
    case Stage::kSubevents: return "subevents";
  }
  return "unknown";
}

EmbeddingSource EmbeddingSource::parse(const std::string& text) {
  if (text == "train") return {};
  if (text.starts_with("load:") && text.size() > 5) {
    EmbeddingSource source;
    source.train = false;
    source.path = text.substr(5);
    return source;
  }
  throw InvalidArgument("embedding source must be 'train' or 'load:<path>', got '" +
                        text + "'");
}

std::string EmbeddingSource::to_string() const {
  return train ? "train" : "load:" + path;
}

void PipelineConfig::validate() const {
  if (k == 0) throw InvalidArgument("k must be positive");
  if (min_clique_size < 1) throw InvalidArgument("min clique size must be positive");
  if (threads == 0) throw InvalidArgument("threads must be positive");
  for (const std::string& keyword : exclude) {
    if (keyword != text::to_lower(keyword)) {
      throw InvalidArgument("exclude keywords must be lowercase: " + keyword);
    }
  }
  reduction.validate();
  if (embeddings.train) trainer.validate();
  if (output_dir.empty()) throw InvalidArgument("output directory is required");
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec || !fs::is_directory(output_dir)) {
    throw InvalidArgument("cannot create output directory " + output_dir);
  }
  const fs::path probe = fs::path(output_dir) / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw InvalidArgument("output directory is not writable: " + output_dir);
  }
  fs::remove(probe, ec);
}

json run_stage(Stage stage, const PipelineConfig& config) {
  const ArtifactPaths paths(config.output_dir);
  try {
    switch (stage) {
      case Stage::kPreprocess: return stage_preprocess(config, paths);
      case Stage::kEmbeddings: return stage_embeddings(config, paths);
      case Stage::kBuildGow: return stage_build_gow(config, paths);
      case Stage::kReduce: return stage_reduce(config, paths);
      case Stage::kBuildGot: return stage_build_got(config, paths);
      case Stage::kTopK: return stage_top_k(config, paths);
      case Stage::kCliques: return stage_cliques(config, paths);
      case Stage::kSubevents: return stage_subevents(config, paths);
    }
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
  return {};
}

json Manifest::to_json() const {
  json stage_list = json::array();
  for (const StageRecord& s : stages) {
    stage_list.push_back({{"name", s.name},
                          {"status", s.status},
                          {"seconds", round_sig9(s.seconds)},
                          {"counts", s.counts}});
  }
  json doc = {{"stages", stage_list},
              {"artifacts", artifacts},
              {"complete", complete},
              {"partial_outputs", !complete},
              {"summary", summary}};
  if (!error.empty()) doc["error"] = error;
  return doc;
}

std::string fingerprint_file(const fs::path& path) {
  std::ifstream in = open_in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(text::fnv1a64(buffer.str())));
  return hex;
}

Manifest run_pipeline(const PipelineConfig& config) {
  config.validate();
  const ArtifactPaths paths(config.output_dir);
  Manifest manifest;
  std::optional<StageError> failure;
  for (Stage stage : kAllStages) {
    StageRecord record{stage_name(stage), "skipped", 0.0, json::object()};
    if (!failure) {
      spdlog::info("stage {} ...", stage_name(stage));
      const auto start = std::chrono::steady_clock::now();
      try {
        record.counts = run_stage(stage, config);
        record.status = "completed";
      } catch (const StageError& e) {
        record.status = "failed";
        manifest.error = e.what();
        failure.emplace(e);
      }
      record.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      spdlog::info("stage {} {} in {:.3f}s", record.name, record.status, record.seconds);
    }
    manifest.stages.push_back(std::move(record));
  }

  for (const auto& entry : fs::directory_iterator(paths.dir)) {
    if (!entry.is_regular_file() || entry.path() == paths.manifest()) continue;
    manifest.artifacts[entry.path().filename().string()] = fingerprint_file(entry.path());
  }
  manifest.complete = !failure;
  if (manifest.complete) {
    const json stats = read_json(paths.stats_json());
    manifest.summary = {{"nodes_initial", stats.at("reduction").at("nodes_initial")},
                        {"nodes_final", stats.at("reduction").at("nodes_final")},
                        {"merges", stats.at("reduction").at("merges_total")},
                        {"reduction_pct", stats.at("reduction").at("reduction_pct_total")},
                        {"dropped_tweets_preprocess", stats.at("corpus").at("dropped_tweets")},
                        {"dropped_tweets_got", stats.at("got").at("dropped_tweets")},
                        {"cliques", stats.at("cliques").at("count")}};
  }
  write_json(paths.manifest(), manifest.to_json());
  if (failure) throw *failure;
  return manifest;
}

NodeSizeStats node_size_stats(const gow::GraphOfWords& graph) {
  NodeSizeStats stats;
  const std::vector<gow::NodeId> ids = graph.live_nodes();
  if (ids.empty()) return stats;
  double sum = 0.0;
  stats.min = SIZE_MAX;
  for (gow::NodeId id : ids) {
    const std::size_t size = graph.node(id).members.size();
    (size == 1 ? stats.single : stats.merged) += 1;
    stats.max = std::max(stats.max, size);
    stats.min = std::min(stats.min, size);
    sum += static_cast<double>(size);
  }
  stats.mean = sum / static_cast<double>(ids.size());
  double squares = 0.0;
  for (gow::NodeId id : ids) {
    const double d = static_cast<double>(graph.node(id).members.size()) - stats.mean;
    squares += d * d;
  }
  stats.std = std::sqrt(squares / static_cast<double>(ids.size()));
  return stats;
}

json stats_report(const fs::path& dir) {
  const ArtifactPaths paths(dir);
  const json preprocess = read_json(paths.preprocess_report());
  const json reduction_report = read_json(paths.reduction_report());
  const gow::GraphOfWords reduced = gow::from_json(read_json(paths.reduced_gow()));
  const got::GraphOfTweets tweets = got::from_json(read_json(paths.got()));
  std::vector<got::NmiEdge> edges;
  {
    std::ifstream in = open_in(paths.edges());
    edges = got::read_edges_tsv(in);
  }
  const json members = read_json(paths.clique_members());
  std::size_t phase1 = 0;
  std::size_t phase2 = 0;
  {
    std::ifstream in = open_in(paths.merges());
    for (const auto& e : reduction::read_merge_log(in)) (e.phase == 1 ? phase1 : phase2) += 1;
  }

  const std::size_t initial = reduction_report.at("phase1").at("nodes_before").get<std::size_t>();
  const std::size_t after1 = initial - phase1;
  const std::size_t final_nodes = reduced.live_count();
  auto pct = [](std::size_t before, std::size_t after) {
    return before == 0 ? 0.0
                       : round_sig9(1.0 - static_cast<double>(after) / static_cast<double>(before));
  };
  const NodeSizeStats sizes = node_size_stats(reduced);

  const subevents::Subgraph sub = subevents::induce_subgraph(edges);
  json min_topk = nullptr;
  if (!edges.empty()) {
    double lo = edges.front().nmi;
    for (const auto& e : edges) lo = std::min(lo, e.nmi);
    min_topk = round_sig9(lo);
  }
  json min_induced = nullptr;
  const subevents::Subgraph induced = subevents::with_induced_edges(sub, tweets);
  if (!induced.edges.empty()) {
    double lo = induced.edges.front().nmi;
    for (const auto& e : induced.edges) lo = std::min(lo, e.nmi);
    min_induced = round_sig9(lo);
  }

  std::size_t clique_count = 0;
  std::size_t member_total = 0;
  json histogram = json::object();
  {
    std::map<std::size_t, std::size_t> h;
    for (const auto& c : members.at("cliques")) {
      ++clique_count;
      member_total += c.size();
      ++h[c.size()];
    }
    for (const auto& [size, count] : h) histogram[std::to_string(size)] = count;
  }

  json stats = {
      {"corpus",
       {{"raw_tweets", preprocess.at("raw_tweets")},
        {"tweets", preprocess.at("tweets")},
        {"dropped_tweets", preprocess.at("dropped_tweets")},
        {"unique_tokens", preprocess.at("unique_tokens")},
        {"mean_tokens", preprocess.at("mean_tokens")},
        {"std_tokens", preprocess.at("std_tokens")}}},
      {"reduction",
       {{"nodes_initial", initial},
        {"phase1_merges", phase1},
        {"nodes_after_phase1", after1},
        {"phase2_merges", phase2},
        {"nodes_final", final_nodes},
        {"merges_total", phase1 + phase2},
        {"reduction_pct_phase1", pct(initial, after1)},
        {"reduction_pct_phase2", pct(after1, final_nodes)},
        {"reduction_pct_total", pct(initial, final_nodes)},
        {"phase1_unresolved", reduction_report.at("phase1").at("unresolved").size()},
        {"phase2_unresolved", reduction_report.at("phase2").at("unresolved").size()}}},
      {"node_sizes",
       {{"single", sizes.single},
        {"merged", sizes.merged},
        {"max", sizes.max},
        {"min", sizes.min},
        {"mean", round_sig9(sizes.mean)},
        {"std", round_sig9(sizes.std)}}},
      {"got",
       {{"tweet_nodes", tweets.size()},
        {"m", tweets.token_universe()},
        {"excluded_nodes", tweets.report().excluded_nodes.size()},
        {"dropped_tweets", tweets.report().dropped_tweet_ids.size()}}},
      {"top_k",
       {{"edges", edges.size()},
        {"subgraph_vertices", sub.vertices.size()},
        {"min_nmi_topk_edges", min_topk},
        {"induced_edges", induced.edges.size()},
        {"min_nmi_induced_edges", min_induced}}},
      {"cliques",
       {{"count", clique_count},
        {"member_total", member_total},
        {"size_histogram", histogram}}}};
  write_json(paths.stats_json(), stats);

  std::ofstream tsv = open_out(paths.stats_tsv());
  for (const auto& [section, fields] : stats.items()) {
    for (const auto& [key, value] : fields.items()) {
      tsv << section << '.' << key << '\t' << value.dump() << '\n';
    }
  }
  return stats;
}

}  // namespace tweetgraph::pipeline
