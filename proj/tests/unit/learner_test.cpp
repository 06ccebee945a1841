/*
 * Copyright 2026 The ExAL Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "exal/data_io.hpp"
#include "exal/error.hpp"
#include "exal/learner.hpp"
#include "exal/rng.hpp"

namespace {

using namespace exal::learner;

Dataset random_dataset(ImageShape shape, std::size_t n, std::uint64_t seed) {
  exal::Rng rng(seed);
  std::vector<double> pixels(n * shape.pixels());
  for (double& p : pixels) p = rng.uniform01();
  std::vector<std::uint8_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::uint8_t>(i % 2);
  return Dataset(shape, std::move(pixels), std::move(labels));
}

Dataset separable(std::uint64_t seed = 42) {
  exal::data_io::SyntheticSpec spec;
  spec.per_class = 200;
  return exal::data_io::make_synthetic(spec, seed);
}

std::filesystem::path temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "exal_learner_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

// ---- Dataset

TEST(Dataset, RejectsInconsistentShapesAndLabels) {
  EXPECT_THROW(Dataset({2, 2}, std::vector<double>(7), std::vector<std::uint8_t>{0, 1}), exal::ContractViolation);
  EXPECT_THROW(Dataset({2, 2}, std::vector<double>(8), std::vector<std::uint8_t>{0, 2}), exal::ContractViolation);
  const Dataset d({2, 2}, std::vector<double>(8, 0.5), std::vector<std::uint8_t>{0, 1});
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.features(), 4u);
  EXPECT_EQ(d.count_label(1), 1u);
}

TEST(Dataset, PerturbedAddsTheVectorToEveryRowWithoutClamping) {
  const Dataset d({1, 2}, {0.9, 0.1, 0.5, 0.5}, {0, 1});
  const Dataset p = d.perturbed(std::vector<double>{0.3, -0.2});
  EXPECT_DOUBLE_EQ(p.row(0)[0], 0.9 + 0.3);
  EXPECT_DOUBLE_EQ(p.row(0)[1], 0.1 - 0.2);
  EXPECT_DOUBLE_EQ(p.row(1)[0], 0.8);
  EXPECT_EQ(d.row(0)[0], 0.9);
  EXPECT_THROW(d.perturbed(std::vector<double>{1.0}), exal::ContractViolation);
}

// ---- construction and snapshots

TEST(Cnn, SnapshotHasDocumentedLayerShapes) {
  const Cnn model({28, 28}, 1);
  const ModelWeights w = model.get_weights();
  ASSERT_EQ(w.tensors.size(), 4u);
  EXPECT_EQ(w.tensors[0].name, "conv.weight");
  EXPECT_EQ(w.tensors[0].dims, (std::vector<std::uint32_t>{8, 1, 3, 3}));
  EXPECT_EQ(w.tensors[1].name, "conv.bias");
  EXPECT_EQ(w.tensors[1].dims, (std::vector<std::uint32_t>{8}));
  EXPECT_EQ(w.tensors[2].name, "dense.weight");
  EXPECT_EQ(w.tensors[2].dims, (std::vector<std::uint32_t>{2, 8 * 14 * 14}));
  EXPECT_EQ(w.tensors[3].name, "dense.bias");
  EXPECT_EQ(w.tensors[3].dims, (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(model.parameter_count(), 72u + 8u + 2u * 1568u + 2u);
}

TEST(Cnn, InitializationIsHeUniformWithZeroBiases) {
  const Cnn model({10, 12}, 3);
  const ModelWeights w = model.get_weights();
  const double conv_limit = std::sqrt(6.0 / 9.0);
  const double dense_limit = std::sqrt(6.0 / (8.0 * 5 * 6));
  for (double v : w.tensors[0].values) EXPECT_LE(std::abs(v), conv_limit);
  for (double v : w.tensors[2].values) EXPECT_LE(std::abs(v), dense_limit);
  for (double v : w.tensors[1].values) EXPECT_EQ(v, 0.0);
  for (double v : w.tensors[3].values) EXPECT_EQ(v, 0.0);
}

TEST(Cnn, SameSeedSameSnapshotDifferentSeedDiffers) {
  EXPECT_EQ(Cnn({28, 28}, 5).get_weights(), Cnn({28, 28}, 5).get_weights());
  EXPECT_NE(Cnn({28, 28}, 5).get_weights(), Cnn({28, 28}, 6).get_weights());
}

TEST(Cnn, TooSmallShapeIsConfigError) { EXPECT_THROW(Cnn({4, 4}, 0), exal::ConfigError); }

TEST(Cnn, WeightRoundTripPreservesPredictions) {
  const Dataset probe = random_dataset({12, 12}, 20, 9);
  Cnn a({12, 12}, 11);
  Cnn b({12, 12}, 99);
  b.set_weights(a.get_weights());
  Workspace wa = a.make_workspace(), wb = b.make_workspace();
  for (std::size_t i = 0; i < probe.size(); ++i) EXPECT_EQ(a.logits(probe.row(i), wa), b.logits(probe.row(i), wb));
  EXPECT_EQ(predict_all(a, probe), predict_all(b, probe));
}

TEST(Cnn, MismatchedSnapshotIsContractViolation) {
  Cnn model({12, 12}, 1);
  EXPECT_THROW(model.set_weights(Cnn({16, 16}, 1).get_weights()), exal::ContractViolation);
  ModelWeights renamed = model.get_weights();
  renamed.tensors[1].name = "conv.offset";
  EXPECT_THROW(model.set_weights(renamed), exal::ContractViolation);
}

TEST(Cnn, ZeroWeightsTieToNegativeClassSoRecallIsZero) {
  Cnn model({8, 8}, 1);
  std::fill(model.parameters().begin(), model.parameters().end(), 0.0);
  const Dataset d = random_dataset({8, 8}, 10, 2);
  const Metrics m = evaluate(model, d);
  EXPECT_EQ(m.recall, 0.0);
  EXPECT_EQ(m.counts.tp + m.counts.fp, 0u);
}

TEST(Cnn, ForwardMatchesDirectConvolutionOracle) {
  const ImageShape shape{9, 8};
  Cnn model(shape, 21);
  exal::Rng rng(3);
  for (double& p : model.parameters()) p = rng.uniform(-0.5, 0.5);
  const Dataset d = random_dataset(shape, 3, 4);
  const auto params = model.parameters();
  const int H = shape.height, W = shape.width, ph = H / 2, pw = W / 2;
  const std::size_t dense_w = 80, nf = 8u * ph * pw, dense_b = dense_w + 2 * nf;

  Workspace ws = model.make_workspace();
  for (std::size_t n = 0; n < d.size(); ++n) {
    const auto img = d.row(n);
    const auto at = [&](int r, int c) { return (r < 0 || c < 0 || r >= H || c >= W) ? 0.0 : img[r * W + c]; };
    std::vector<double> pooled(nf);
    for (int f = 0; f < 8; ++f) {
      for (int pr = 0; pr < ph; ++pr) {
        for (int pc = 0; pc < pw; ++pc) {
          double best = -1.0;
          for (int dr = 0; dr < 2; ++dr) {
            for (int dc = 0; dc < 2; ++dc) {
              const int r = 2 * pr + dr, c = 2 * pc + dc;
              double s = params[72 + f];
              for (int kr = 0; kr < 3; ++kr) {
                for (int kc = 0; kc < 3; ++kc) s += params[f * 9 + kr * 3 + kc] * at(r + kr - 1, c + kc - 1);
              }
              best = std::max(best, std::max(s, 0.0));
            }
          }
          pooled[(f * ph + pr) * pw + pc] = best;
        }
      }
    }
    const auto z = model.logits(img, ws);
    for (std::size_t c = 0; c < 2; ++c) {
      double s = params[dense_b + c];
      for (std::size_t j = 0; j < nf; ++j) s += params[dense_w + c * nf + j] * pooled[j];
      EXPECT_NEAR(z[c], s, 1e-12);
    }
  }
}

TEST(Cnn, LogitsWithOffsetEqualLogitsOfShiftedImage) {
  Cnn model({8, 8}, 4);
  const Dataset d = random_dataset({8, 8}, 1, 5);
  std::vector<double> offset(64), shifted(64);
  exal::Rng rng(6);
  for (std::size_t i = 0; i < 64; ++i) {
    offset[i] = rng.uniform(-0.2, 0.2);
    shifted[i] = d.row(0)[i] + offset[i];
  }
  Workspace ws = model.make_workspace();
  EXPECT_EQ(model.logits(d.row(0), ws, offset), model.logits(shifted, ws));
}

// ---- loss and gradients

TEST(Loss, UniformOutputIsLnTwo) {
  Cnn model({8, 8}, 1);
  std::fill(model.parameters().begin(), model.parameters().end(), 0.0);
  const auto lg = model.loss_and_gradients(random_dataset({8, 8}, 6, 3));
  EXPECT_NEAR(lg.loss, std::log(2.0), 1e-15);
}

TEST(Loss, DuplicatingTheBatchLeavesLossUnchanged) {
  const Cnn model({8, 8}, 2);
  const Dataset d = random_dataset({8, 8}, 8, 4);
  std::vector<std::size_t> once = {0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<std::size_t> twice = once;
  twice.insert(twice.end(), once.begin(), once.end());
  const auto a = model.loss_and_gradients(d, once);
  const auto b = model.loss_and_gradients(d, twice);
  EXPECT_NEAR(a.loss, b.loss, 1e-14);
  for (std::size_t i = 0; i < a.gradients.size(); ++i) EXPECT_NEAR(a.gradients[i], b.gradients[i], 1e-14);
}

TEST(Loss, GradientsMatchCentralFiniteDifferences) {
  Cnn model({8, 8}, 17);
  const Dataset batch = random_dataset({8, 8}, 8, 18);
  const auto analytic = model.loss_and_gradients(batch).gradients;
  const double h = 1e-5;
  double worst = 0.0;
  for (std::size_t i = 0; i < model.parameter_count(); ++i) {
    double& p = model.parameters()[i];
    const double saved = p;
    p = saved + h;
    const double up = model.loss_and_gradients(batch).loss;
    p = saved - h;
    const double down = model.loss_and_gradients(batch).loss;
    p = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double scale = std::max({std::abs(numeric), std::abs(analytic[i]), 1e-8});
    const double rel = std::abs(numeric - analytic[i]) / scale;
    worst = std::max(worst, rel);
    EXPECT_LT(rel, 1e-4) << "parameter " << i << ": analytic " << analytic[i] << ", numeric " << numeric;
  }
  RecordProperty("worst_relative_error", std::to_string(worst));
}

TEST(Loss, EmptyBatchIsContractViolation) {
  const Cnn model({8, 8}, 1);
  const Dataset d = random_dataset({8, 8}, 2, 1);
  EXPECT_THROW(model.loss_and_gradients(d, std::span<const std::size_t>{}), exal::ContractViolation);
}

// ---- training

TEST(Train, SeparableSyntheticReachesHighTrainingF1) {
  const Dataset data = separable();
  TrainConfig config;
  config.seed = 1;
  Cnn model(data.shape(), config.seed);
  const TrainReport report = train(model, data, config);
  EXPECT_GE(evaluate(model, data).f1, 0.95);
  ASSERT_EQ(report.epoch_loss.size(), 5u);
  EXPECT_LT(report.epoch_loss.back(), report.epoch_loss.front());
  EXPECT_EQ(report.weights, model.get_weights());

  // Oracle: nearest class template scores the same data independently.
  const auto [low, high] = exal::data_io::synthetic_templates({});
  std::vector<std::uint8_t> nearest(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    double dl = 0.0, dh = 0.0;
    for (std::size_t j = 0; j < data.features(); ++j) {
      dl += (data.row(i)[j] - low[j]) * (data.row(i)[j] - low[j]);
      dh += (data.row(i)[j] - high[j]) * (data.row(i)[j] - high[j]);
    }
    nearest[i] = dh < dl ? 1 : 0;
  }
  EXPECT_GE(metrics_from_predictions(data.labels(), nearest).f1, 0.95);
}

TEST(Train, DeterministicForEqualSeeds) {
  const Dataset data = separable(7);
  TrainConfig config;
  config.epochs = 2;
  config.seed = 5;
  Cnn a(data.shape(), 5), b(data.shape(), 5);
  EXPECT_EQ(train(a, data, config).weights, train(b, data, config).weights);
}

TEST(Train, RejectsBadConfigAndSingleClassData) {
  const Dataset data = separable();
  Cnn model(data.shape(), 1);
  TrainConfig zero_epochs;
  zero_epochs.epochs = 0;
  EXPECT_THROW(train(model, data, zero_epochs), exal::ConfigError);
  TrainConfig bad_momentum;
  bad_momentum.momentum = 1.0;
  EXPECT_THROW(train(model, data, bad_momentum), exal::ConfigError);

  const Dataset one_class({8, 8}, std::vector<double>(128, 0.5), std::vector<std::uint8_t>{1, 1});
  Cnn small({8, 8}, 1);
  EXPECT_THROW(train(small, one_class, TrainConfig{}), exal::ConfigError);
}

// ---- metrics

TEST(Metrics, PerfectClassifier) {
  const std::vector<std::uint8_t> y = {1, 0, 1, 1, 0};
  const Metrics m = metrics_from_predictions(y, y);
  EXPECT_EQ(m.recall, 1.0);
  EXPECT_EQ(m.precision, 1.0);
  EXPECT_EQ(m.f1, 1.0);
}

TEST(Metrics, ConfusionArithmetic) {
  const Metrics m = metrics_from_counts({8, 0, 5, 2});
  EXPECT_DOUBLE_EQ(m.recall, 0.8);
  EXPECT_DOUBLE_EQ(m.precision, 1.0);
  EXPECT_NEAR(m.f1, 16.0 / 18.0, 1e-15);
}

TEST(Metrics, ZeroDenominatorsReportZero) {
  const Metrics m = metrics_from_counts({0, 0, 4, 0});
  EXPECT_EQ(m.recall, 0.0);
  EXPECT_EQ(m.precision, 0.0);
  EXPECT_EQ(m.f1, 0.0);
}

TEST(Metrics, MatchBruteForceOnRandomTrials) {
  exal::Rng rng(2718);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(60);
    std::vector<std::uint8_t> y(n), p(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<std::uint8_t>(rng.below(2));
      p[i] = static_cast<std::uint8_t>(rng.below(2));
    }
    double tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < n; ++i) {
      tp += y[i] && p[i];
      fp += !y[i] && p[i];
      fn += y[i] && !p[i];
      tn += !y[i] && !p[i];
    }
    const double recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    const double precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    const double f1 = precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
    const Metrics m = metrics_from_predictions(y, p);
    ASSERT_EQ(m.counts.total(), n);
    ASSERT_EQ(static_cast<double>(m.counts.tn), tn);
    ASSERT_NEAR(m.recall, recall, 1e-15);
    ASSERT_NEAR(m.precision, precision, 1e-15);
    ASSERT_NEAR(m.f1, f1, 1e-15);
  }
}

// ---- serialization

TEST(WeightsIo, RoundTripIsBitExact) {
  const ModelWeights w = Cnn({10, 10}, 3).get_weights();
  EXPECT_EQ(decode_weights(encode_weights(w)), w);
  const auto path = temp_path("w.exalw");
  write_weights(w, path);
  EXPECT_EQ(read_weights(path), w);
}

TEST(WeightsIo, LayoutMatchesTheContainerFormat) {
  ModelWeights w;
  w.tensors.push_back({"b", {2}, {1.0, -2.0}});
  const auto bytes = encode_weights(w);
  const std::vector<std::uint8_t> want = {
      'E', 'X', 'A', 'L', 'W', '1', 1, 0, 0, 0,  // magic, count
      1, 0, 0, 0, 'b',                           // name
      1, 0, 0, 0, 2, 0, 0, 0,                    // rank, dims
      0, 0, 0, 0, 0, 0, 0xF0, 0x3F,              // 1.0
      0, 0, 0, 0, 0, 0, 0x00, 0xC0,              // -2.0
  };
  EXPECT_EQ(bytes, want);
}

TEST(WeightsIo, CorruptContainersAreParseErrors) {
  auto bytes = encode_weights(Cnn({8, 8}, 1).get_weights());
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_weights(bad_magic), exal::ParseError);
  EXPECT_THROW(decode_weights(std::span(bytes).first(bytes.size() - 3)), exal::ParseError);
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(decode_weights(trailing), exal::ParseError);
}

TEST(LossCsv, HeaderAndOneBasedEpochs) {
  const auto path = temp_path("loss.csv");
  write_loss_csv(std::vector<double>{0.5, 0.25}, path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_EQ(s.str(), "epoch,loss\n1,0.5\n2,0.25\n");
}

}  // namespace
