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

#ifndef TWEETGRAPH_PIPELINE_H_
#define TWEETGRAPH_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tweetgraph/error.h"
#include "tweetgraph/graph_export.h"
#include "tweetgraph/reduction.h"
#include "tweetgraph/trainer.h"

// Staged pipeline: each stage reads the previous stage's artifacts from the
// output directory, so any stage can be re-run on its own.
namespace tweetgraph::pipeline {

enum class Stage {
  kPreprocess,
  kEmbeddings,
  kBuildGow,
  kReduce,
  kBuildGot,
  kTopK,
  kCliques,
  kSubevents,
};

inline constexpr Stage kAllStages[] = {
    Stage::kPreprocess, Stage::kEmbeddings, Stage::kBuildGow, Stage::kReduce,
    Stage::kBuildGot,   Stage::kTopK,       Stage::kCliques,  Stage::kSubevents};

const char* stage_name(Stage stage);

class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& cause)
      : Error(std::string("stage ") + stage_name(stage) + ": " + cause),
        stage_(stage) {}
  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

// "train" or "load:<path>".
struct EmbeddingSource {
  bool train = true;
  std::string path;
  // Optional subword table to attach to loaded vectors.
  std::optional<std::string> subword_path;

  static EmbeddingSource parse(const std::string& text);
  std::string to_string() const;
};

enum class CliqueEdges { kTopK, kInduced };

struct PipelineConfig {
  std::string input;
  std::optional<std::string> stopwords_path;
  std::optional<std::string> lemmas_path;
  bool drop_retweets = false;
  EmbeddingSource embeddings;
  embeddings::TrainerConfig trainer;
  reduction::ReductionConfig reduction;
  std::vector<std::string> exclude{"corona", "covid"};
  std::size_t k = 1000;
  std::size_t min_clique_size = 3;
  CliqueEdges clique_edges = CliqueEdges::kTopK;
  std::string output_dir = "tweetgraph_out";
  std::uint64_t seed = 1;
  unsigned threads = 1;
  // Extra inspection exports of the graphs, beside the JSON artifacts.
  std::optional<graph_export::Format> graph_format;

  // Throws InvalidArgument; creates the output directory.
  void validate() const;
};

// Artifact file names inside the output directory.
struct ArtifactPaths {
  explicit ArtifactPaths(std::filesystem::path dir) : dir(std::move(dir)) {}

  std::filesystem::path corpus() const { return dir / "corpus.jsonl"; }
  std::filesystem::path preprocess_report() const { return dir / "preprocess_report.json"; }
  std::filesystem::path vectors() const { return dir / "embeddings.vec"; }
  std::filesystem::path subwords() const { return dir / "embeddings.subwords"; }
  std::filesystem::path training_log() const { return dir / "training_loss.json"; }
  std::filesystem::path gow() const { return dir / "gow.json"; }
  std::filesystem::path merges() const { return dir / "merges.jsonl"; }
  std::filesystem::path reduction_report() const { return dir / "reduction_report.json"; }
  std::filesystem::path reduced_gow() const { return dir / "reduced_gow.json"; }
  std::filesystem::path got() const { return dir / "got.json"; }
  std::filesystem::path edges() const { return dir / "topk_edges.tsv"; }
  std::filesystem::path subgraph() const { return dir / "subgraph.json"; }
  std::filesystem::path clique_members() const { return dir / "clique_members.json"; }
  std::filesystem::path cliques() const { return dir / "cliques.json"; }
  std::filesystem::path cliques_text() const { return dir / "cliques.txt"; }
  std::filesystem::path stats_json() const { return dir / "stats.json"; }
  std::filesystem::path stats_tsv() const { return dir / "stats.tsv"; }
  std::filesystem::path manifest() const { return dir / "manifest.json"; }

  std::filesystem::path dir;
};

// Runs one stage; returns its counts. Wraps failures in StageError.
nlohmann::json run_stage(Stage stage, const PipelineConfig& config);

struct StageRecord {
  std::string name;
  std::string status;  // "completed" | "failed" | "skipped"
  double seconds = 0.0;
  nlohmann::json counts;
};

struct Manifest {
  std::vector<StageRecord> stages;
  // artifact file name -> FNV-1a 64 fingerprint (hex)
  std::map<std::string, std::string> artifacts;
  bool complete = false;
  std::string error;
  nlohmann::json summary;

  nlohmann::json to_json() const;
};

// All eight stages in order, then stats and manifest. On failure the
// manifest is still written (complete = false) and StageError is rethrown.
Manifest run_pipeline(const PipelineConfig& config);

// Stats over the artifacts in `dir`; also writes stats.json and stats.tsv.
nlohmann::json stats_report(const std::filesystem::path& dir);

// Member-count distribution over live nodes of a token graph.
struct NodeSizeStats {
  std::size_t single = 0;
  std::size_t merged = 0;
  std::size_t max = 0;
  std::size_t min = 0;
  double mean = 0.0;
  double std = 0.0;
};
NodeSizeStats node_size_stats(const gow::GraphOfWords& graph);

std::string fingerprint_file(const std::filesystem::path& path);

}  // namespace tweetgraph::pipeline

#endif  // TWEETGRAPH_PIPELINE_H_
