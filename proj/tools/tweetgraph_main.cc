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

// tweetgraph command-line driver. Exit codes: 0 success, 1 usage error,
// 2 stage failure.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "tweetgraph/error.h"
#include "tweetgraph/pipeline.h"
#include "tweetgraph/synthetic.h"
#include "tweetgraph/text.h"

namespace {

using tweetgraph::pipeline::PipelineConfig;
using tweetgraph::pipeline::Stage;

constexpr int kUsage = 1;
constexpr int kStageFailure = 2;

struct Options {
  PipelineConfig config;
  std::string embeddings = "train";
  std::string subwords;
  std::string format;
  std::string clique_edges = "topk";
  std::string stopwords;
  std::string lemmas;
  std::size_t synth_count = 200;
  double synth_noise = 0.2;
  std::string synth_output;
  bool verbose = false;
};

void add_options(CLI::App& app, Options& o) {
  PipelineConfig& c = o.config;
  app.add_option("--input", c.input, "JSONL tweets, one {id, text} object per line");
  app.add_option("--output-dir", c.output_dir, "artifact directory")->capture_default_str();
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads for top-k scoring")
      ->capture_default_str();
  app.add_option("--k", c.k, "number of top NMI edges")->capture_default_str();
  app.add_option("--min-tweet-df", c.reduction.min_tweet_df,
                 "phase I threshold on tweet frequency")
      ->capture_default_str();
  app.add_option("--top-n", c.reduction.top_n, "phase II most_similar depth")
      ->capture_default_str();
  app.add_option("--phase1-pool", c.reduction.phase1_candidate_pool,
                 "phase I most_similar depth")
      ->capture_default_str();
  app.add_option("--exclude", c.exclude, "keywords whose nodes are dropped from the tweet graph")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--embeddings", o.embeddings, "train | load:<path>")->capture_default_str();
  app.add_option("--subwords", o.subwords, "subword bucket table for load:<path>");
  app.add_option("--format", o.format, "extra graph export: dot | graphml | json")
      ->check(CLI::IsMember({"dot", "graphml", "json"}));
  app.add_option("--min-clique-size", c.min_clique_size)->capture_default_str();
  app.add_option("--clique-edges", o.clique_edges, "topk | induced")
      ->check(CLI::IsMember({"topk", "induced"}))
      ->capture_default_str();
  app.add_option("--stopwords", o.stopwords, "one stopword per line; replaces the default list");
  app.add_option("--lemmas", o.lemmas, "TSV of token<TAB>lemma");
  app.add_flag("--drop-retweets", c.drop_retweets, "skip tweets starting with 'RT '");

  auto& t = c.trainer;
  app.add_option("--dim", t.dim)->capture_default_str();
  app.add_option("--epochs", t.epochs)->capture_default_str();
  app.add_option("--window", t.window)->capture_default_str();
  app.add_option("--negative", t.negative)->capture_default_str();
  app.add_option("--lr", t.learning_rate)->capture_default_str();
  app.add_option("--min-lr", t.min_learning_rate)->capture_default_str();
  app.add_option("--min-count", t.min_count)->capture_default_str();
  app.add_option("--min-n", t.min_n)->capture_default_str();
  app.add_option("--max-n", t.max_n)->capture_default_str();
  app.add_option("--buckets", t.buckets)->capture_default_str();

  app.add_option("--count", o.synth_count, "synth: number of tweets")->capture_default_str();
  app.add_option("--noise", o.synth_noise, "synth: noise fraction")->capture_default_str();
  app.add_option("--output", o.synth_output, "synth: output JSONL path");
  app.add_flag("-v,--verbose", o.verbose, "debug logging");
}

void finish_config(Options& o) {
  PipelineConfig& c = o.config;
  c.embeddings = tweetgraph::pipeline::EmbeddingSource::parse(o.embeddings);
  if (!o.subwords.empty()) c.embeddings.subword_path = o.subwords;
  if (!o.format.empty()) c.graph_format = tweetgraph::graph_export::parse_format(o.format);
  c.clique_edges = o.clique_edges == "induced" ? tweetgraph::pipeline::CliqueEdges::kInduced
                                               : tweetgraph::pipeline::CliqueEdges::kTopK;
  if (!o.stopwords.empty()) c.stopwords_path = o.stopwords;
  if (!o.lemmas.empty()) c.lemmas_path = o.lemmas;
  for (std::string& keyword : c.exclude) keyword = tweetgraph::text::to_lower(keyword);
  c.exclude.erase(std::remove(c.exclude.begin(), c.exclude.end(), std::string()),
                  c.exclude.end());
}

int run_synth(const Options& o) {
  if (o.synth_output.empty()) throw tweetgraph::InvalidArgument("synth needs --output");
  if (o.synth_noise < 0.0 || o.synth_noise >= 1.0) {
    throw tweetgraph::InvalidArgument("--noise must be in [0, 1)");
  }
  auto synth = tweetgraph::corpus::default_synthetic_config();
  synth.tweet_count = o.synth_count;
  synth.noise_rate = o.synth_noise;
  const auto tweets = tweetgraph::corpus::generate_synthetic(synth, o.config.seed);
  std::ofstream out(o.synth_output, std::ios::binary);
  if (!out) throw tweetgraph::InvalidArgument("cannot write " + o.synth_output);
  tweetgraph::corpus::write_synthetic(tweets, out);
  spdlog::info("wrote {} tweets to {}", tweets.size(), o.synth_output);
  return 0;
}

void run_stages(const PipelineConfig& config, std::initializer_list<Stage> stages) {
  for (Stage stage : stages) {
    const auto counts = tweetgraph::pipeline::run_stage(stage, config);
    std::cout << tweetgraph::pipeline::stage_name(stage) << ' ' << counts.dump() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-event detection over tweet corpora"};
  app.set_config("--config", "", "TOML/INI file of option values; command-line flags win");
  app.require_subcommand(1);
  Options options;
  add_options(app, options);

  auto* preprocess = app.add_subcommand("preprocess", "tokenize and filter the input tweets");
  auto* train = app.add_subcommand("train-embeddings", "train or import the embedding table");
  auto* build_gow = app.add_subcommand("build-gow", "build the graph of words");
  auto* reduce = app.add_subcommand("reduce", "run both node-merging phases");
  auto* build_got = app.add_subcommand("build-got", "build the graph of tweets");
  auto* extract = app.add_subcommand("extract", "top-k subgraph, cliques and reports");
  auto* run = app.add_subcommand("run", "full pipeline with manifest");
  auto* synth = app.add_subcommand("synth", "write a synthetic corpus with planted events");
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  spdlog::set_level(options.verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    finish_config(options);
    if (synth->parsed()) return run_synth(options);
    const PipelineConfig& config = options.config;
    if ((preprocess->parsed() || run->parsed()) && config.input.empty()) {
      throw tweetgraph::InvalidArgument("--input is required");
    }
    config.validate();
    if (preprocess->parsed()) run_stages(config, {Stage::kPreprocess});
    if (train->parsed()) run_stages(config, {Stage::kEmbeddings});
    if (build_gow->parsed()) run_stages(config, {Stage::kBuildGow});
    if (reduce->parsed()) run_stages(config, {Stage::kReduce});
    if (build_got->parsed()) run_stages(config, {Stage::kBuildGot});
    if (extract->parsed()) run_stages(config, {Stage::kTopK, Stage::kCliques, Stage::kSubevents});
    if (run->parsed()) {
      const auto manifest = tweetgraph::pipeline::run_pipeline(config);
      std::cout << manifest.summary.dump(1) << '\n';
    }
  } catch (const tweetgraph::InvalidArgument& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const tweetgraph::pipeline::StageError& e) {
    spdlog::error("{}", e.what());
    return kStageFailure;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kStageFailure;
  }
  return 0;
}
