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

#include <fstream>

#include <gtest/gtest.h>

#include "test_util.h"
#include "tweetgraph/error.h"
#include "tweetgraph/pipeline.h"
#include "tweetgraph/synthetic.h"

namespace tweetgraph::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json read_json(const fs::path& path) { return json::parse(testing::read_file(path)); }

void write_synthetic_input(const fs::path& path, std::uint64_t seed) {
  std::ofstream out(path);
  corpus::write_synthetic(corpus::generate_synthetic(corpus::default_synthetic_config(), seed),
                          out);
}

PipelineConfig quick_config(const fs::path& input, const fs::path& out) {
  PipelineConfig c;
  c.input = input.string();
  c.output_dir = out.string();
  c.trainer.dim = 16;
  c.trainer.epochs = 5;
  c.trainer.buckets = 50'000;
  c.seed = 7;
  return c;
}

// Three tweets sharing {a, b}; no embedding resolves any graph token, so no
// merges happen and the tweet graph is a single triangle.
PipelineConfig triangle_config(const fs::path& dir) {
  testing::write_file(dir / "tweets.jsonl",
                      "{\"id\":\"1\",\"text\":\"alpha beta one\"}\n"
                      "{\"id\":\"2\",\"text\":\"alpha beta two\"}\n"
                      "{\"id\":\"3\",\"text\":\"alpha beta three\"}\n");
  testing::write_file(dir / "vectors.vec", "1 2\nzzz 1 0\n");
  PipelineConfig c;
  c.input = (dir / "tweets.jsonl").string();
  c.output_dir = (dir / "out").string();
  c.embeddings = EmbeddingSource::parse("load:" + (dir / "vectors.vec").string());
  c.reduction.min_tweet_df = 1;
  return c;
}

TEST(EmbeddingSource, Parse) {
  EXPECT_TRUE(EmbeddingSource::parse("train").train);
  const auto load = EmbeddingSource::parse("load:/tmp/v.vec");
  EXPECT_FALSE(load.train);
  EXPECT_EQ(load.path, "/tmp/v.vec");
  EXPECT_EQ(load.to_string(), "load:/tmp/v.vec");
  EXPECT_THROW(EmbeddingSource::parse("load:"), InvalidArgument);
  EXPECT_THROW(EmbeddingSource::parse("fasttext"), InvalidArgument);
}

TEST(PipelineConfig, Validation) {
  const auto dir = testing::scratch_dir("validate");
  PipelineConfig c;
  c.output_dir = (dir / "nested" / "out").string();
  EXPECT_NO_THROW(c.validate());
  EXPECT_TRUE(fs::is_directory(dir / "nested" / "out"));
  c.k = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.k = 10;
  c.exclude = {"Corona"};
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(RunPipeline, DeterministicArtifactsAcrossRuns) {
  const auto dir = testing::scratch_dir("determinism");
  write_synthetic_input(dir / "tweets.jsonl", 7);
  const Manifest a = run_pipeline(quick_config(dir / "tweets.jsonl", dir / "a"));
  const Manifest b = run_pipeline(quick_config(dir / "tweets.jsonl", dir / "b"));
  ASSERT_EQ(a.stages.size(), 8u);
  for (const auto& s : a.stages) EXPECT_EQ(s.status, "completed") << s.name;
  EXPECT_TRUE(a.complete);
  EXPECT_EQ(a.artifacts, b.artifacts);
  EXPECT_GE(a.artifacts.size(), 15u);
  for (const auto& [name, hash] : a.artifacts) {
    EXPECT_EQ(testing::read_file(dir / "a" / name), testing::read_file(dir / "b" / name)) << name;
  }
  const json manifest = read_json(dir / "a" / "manifest.json");
  EXPECT_TRUE(manifest.at("complete").get<bool>());
  EXPECT_EQ(manifest.at("stages").size(), 8u);
}

TEST(RunPipeline, ManifestCountsAreConsistent) {
  const auto dir = testing::scratch_dir("consistency");
  write_synthetic_input(dir / "tweets.jsonl", 3);
  const Manifest m = run_pipeline(quick_config(dir / "tweets.jsonl", dir / "out"));
  const auto& s = m.summary;
  EXPECT_EQ(s.at("nodes_initial").get<std::size_t>() - s.at("merges").get<std::size_t>(),
            s.at("nodes_final").get<std::size_t>());
  const json stats = read_json(dir / "out" / "stats.json");
  std::size_t sizes = 0;
  for (const auto& [size, count] : stats.at("cliques").at("size_histogram").items()) {
    sizes += std::stoul(size) * count.get<std::size_t>();
  }
  EXPECT_EQ(sizes, stats.at("cliques").at("member_total").get<std::size_t>());
  EXPECT_GE(sizes, 3 * stats.at("cliques").at("count").get<std::size_t>());
  const auto& r = stats.at("reduction");
  EXPECT_EQ(r.at("phase1_merges").get<std::size_t>() + r.at("phase2_merges").get<std::size_t>(),
            r.at("merges_total").get<std::size_t>());
}

TEST(RunPipeline, MissingVectorsAbortAtEmbeddingStage) {
  const auto dir = testing::scratch_dir("missing_vectors");
  write_synthetic_input(dir / "tweets.jsonl", 1);
  PipelineConfig c = quick_config(dir / "tweets.jsonl", dir / "out");
  c.embeddings = EmbeddingSource::parse("load:/no/such/vectors.vec");
  try {
    run_pipeline(c);
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), Stage::kEmbeddings);
    EXPECT_NE(std::string(e.what()).find("/no/such/vectors.vec"), std::string::npos) << e.what();
  }
  const json manifest = read_json(dir / "out" / "manifest.json");
  EXPECT_FALSE(manifest.at("complete").get<bool>());
  EXPECT_EQ(manifest.at("stages")[0].at("status"), "completed");
  EXPECT_EQ(manifest.at("stages")[1].at("status"), "failed");
  EXPECT_EQ(manifest.at("stages")[2].at("status"), "skipped");
}

TEST(RunStage, StagesAreIndependentlyRerunnable) {
  const auto dir = testing::scratch_dir("rerun");
  const PipelineConfig c = triangle_config(dir);
  c.validate();
  for (Stage s : kAllStages) run_stage(s, c);
  const std::string first = testing::read_file(fs::path(c.output_dir) / "cliques.json");
  run_stage(Stage::kTopK, c);
  run_stage(Stage::kCliques, c);
  run_stage(Stage::kSubevents, c);
  EXPECT_EQ(testing::read_file(fs::path(c.output_dir) / "cliques.json"), first);
}

TEST(RunStage, LaterStageWithoutInputsFails) {
  const auto dir = testing::scratch_dir("no_inputs");
  PipelineConfig c;
  c.output_dir = dir.string();
  EXPECT_THROW(run_stage(Stage::kReduce, c), StageError);
}

TEST(StatsReport, PhaseOneMergesFourOfSixNodes) {
  const auto dir = testing::scratch_dir("phase1_stats");
  std::string tweets;
  for (int i = 0; i < 5; ++i) {
    tweets += "{\"id\":\"f" + std::to_string(i) + "\",\"text\":\"alpha beta\"}\n";
  }
  for (const char* rare : {"ra", "rb", "rc", "rd"}) {
    tweets += std::string("{\"id\":\"") + rare + "\",\"text\":\"alpha " + rare + "\"}\n";
  }
  testing::write_file(dir / "tweets.jsonl", tweets);
  testing::write_file(dir / "vectors.vec",
                      "6 2\nalpha 1 0\nbeta 0 1\nra 1 0.1\nrb 1 0.2\nrc 0.1 1\nrd 0.2 1\n");
  PipelineConfig c;
  c.input = (dir / "tweets.jsonl").string();
  c.output_dir = (dir / "out").string();
  c.embeddings = EmbeddingSource::parse("load:" + (dir / "vectors.vec").string());
  run_pipeline(c);
  const json stats = read_json(dir / "out" / "stats.json");
  EXPECT_EQ(stats.at("reduction").at("nodes_initial"), 6);
  EXPECT_EQ(stats.at("reduction").at("phase1_merges"), 4);
  EXPECT_EQ(stats.at("reduction").at("nodes_after_phase1"), 2);
  EXPECT_NE(testing::read_file(dir / "out" / "stats.tsv").find("reduction.phase1_merges\t4\n"),
            std::string::npos);
}

TEST(StatsReport, SingleTriangleHistogram) {
  const auto dir = testing::scratch_dir("triangle_stats");
  const PipelineConfig c = triangle_config(dir);
  run_pipeline(c);
  const json stats = read_json(fs::path(c.output_dir) / "stats.json");
  EXPECT_EQ(stats.at("cliques").at("size_histogram"), json({{"3", 1}}));
  EXPECT_EQ(stats.at("reduction").at("merges_total"), 0);
  EXPECT_EQ(stats.at("got").at("tweet_nodes"), 3);
  const json cliques = read_json(fs::path(c.output_dir) / "cliques.json");
  ASSERT_EQ(cliques.size(), 1u);
  EXPECT_EQ(cliques[0].at("shared_tokens"), json({"alpha", "beta"}));
}

TEST(NodeSizeStats, SingleNode) {
  gow::GraphOfWords g;
  g.add_node("a", {"a", "b", "c"}, {0});
  const NodeSizeStats s = node_size_stats(g);
  EXPECT_EQ(s.max, 3u);
  EXPECT_EQ(s.min, 3u);
  EXPECT_EQ(s.mean, 3.0);
  EXPECT_EQ(s.std, 0.0);
  EXPECT_EQ(s.merged, 1u);
  EXPECT_EQ(s.single, 0u);
}

TEST(Fingerprint, StableHex) {
  const auto dir = testing::scratch_dir("fingerprint");
  testing::write_file(dir / "a.txt", "");
  EXPECT_EQ(fingerprint_file(dir / "a.txt"), "cbf29ce484222325");
}

}  // namespace
}  // namespace tweetgraph::pipeline
