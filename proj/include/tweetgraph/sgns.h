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

#ifndef TWEETGRAPH_SGNS_H_
#define TWEETGRAPH_SGNS_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

// Negative-sampling logistic loss for skip-gram with subword inputs.
//
// The hidden vector h is the mean of R input rows (a word row and its n-gram
// rows). For one context word with output row u_o and negatives u_1..u_K:
//
//   L = -log sigma(u_o . h) - sum_k log sigma(-u_k . h)
//
// The trainer and the gradient check share these kernels.
namespace tweetgraph::embeddings {

// log(sigma(x)), stable for large |x|.
template <typename T>
T log_sigmoid(T x) {
  return x >= T(0) ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

template <typename T>
T sigmoid(T x) {
  if (x >= T(0)) return T(1) / (T(1) + std::exp(-x));
  const T e = std::exp(x);
  return e / (T(1) + e);
}

// One logistic term. Adds dL/dh into `grad_hidden` and writes dL/du into
// `grad_output`; returns the term's loss.
template <typename T>
T logistic_term(std::span<const T> hidden, std::span<const T> output,
                bool positive, std::span<T> grad_hidden,
                std::span<T> grad_output) {
  T score = T(0);
  for (std::size_t d = 0; d < hidden.size(); ++d) score += hidden[d] * output[d];
  const T label = positive ? T(1) : T(0);
  const T coeff = sigmoid(score) - label;
  for (std::size_t d = 0; d < hidden.size(); ++d) {
    grad_hidden[d] += coeff * output[d];
    grad_output[d] = coeff * hidden[d];
  }
  return positive ? -log_sigmoid(score) : -log_sigmoid(-score);
}

// Dense instance used by the gradient check.
struct SgnsSample {
  std::vector<std::vector<double>> inputs;
  std::vector<double> positive;
  std::vector<std::vector<double>> negatives;
};

struct SgnsGradient {
  double loss = 0.0;
  std::vector<std::vector<double>> inputs;
  std::vector<double> positive;
  std::vector<std::vector<double>> negatives;
};

// Analytic loss and gradient through the same kernel the trainer runs.
inline SgnsGradient sgns_gradient(const SgnsSample& sample) {
  const std::size_t dim = sample.positive.size();
  const double rows = static_cast<double>(sample.inputs.size());
  std::vector<double> hidden(dim, 0.0);
  for (const auto& r : sample.inputs) {
    for (std::size_t d = 0; d < dim; ++d) hidden[d] += r[d] / rows;
  }
  SgnsGradient grad;
  std::vector<double> grad_hidden(dim, 0.0);
  grad.positive.assign(dim, 0.0);
  grad.loss += logistic_term<double>(hidden, sample.positive, true, grad_hidden,
                                     grad.positive);
  for (const auto& neg : sample.negatives) {
    grad.negatives.emplace_back(dim, 0.0);
    grad.loss += logistic_term<double>(hidden, neg, false, grad_hidden,
                                       grad.negatives.back());
  }
  for (std::size_t r = 0; r < sample.inputs.size(); ++r) {
    grad.inputs.emplace_back(dim, 0.0);
    for (std::size_t d = 0; d < dim; ++d) {
      grad.inputs.back()[d] = grad_hidden[d] / rows;
    }
  }
  return grad;
}

}  // namespace tweetgraph::embeddings

#endif  // TWEETGRAPH_SGNS_H_
